//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by state construction, quadrature, sampling and the CLI.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Amplitudes do not satisfy a^2 + b^2 = 1 within the construction tolerance.
    #[error("amplitudes not normalized: a^2 + b^2 = {sum} (|sum - 1| > {tol})")]
    NormalizationError { sum: f64, tol: f64 },

    /// An input value was NaN or infinite.
    #[error("non-finite input: {0}")]
    NonFiniteInput(&'static str),

    /// Detector overlap modulus exceeds 1 beyond rounding slack.
    #[error("detector overlap modulus {0} exceeds 1")]
    OverlapOutOfRange(f64),

    /// A physical parameter violates its domain (must be positive, etc.).
    #[error("invalid parameter {name}: {value} ({constraint})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// Requested quadrature node counts exceed the configured cap.
    #[error("quadrature budget exceeded: {requested} nodes per panel > cap {cap}")]
    QuadratureBudgetExceeded { requested: usize, cap: usize },

    /// The requested sampling mode does not apply to this operation.
    #[error("invalid mode: {0}")]
    InvalidMode(&'static str),

    /// Too few samples for a meaningful estimate.
    #[error("insufficient samples: {got} < {need}")]
    InsufficientSamples { got: u64, need: u64 },

    /// Experiment runs passed together do not have the expected modes or sizes.
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),

    /// A probability pair sums to (numerically) zero, so conditioning on it is undefined.
    #[error("degenerate pair: probability sum {0} below threshold")]
    DegeneratePair(f64),

    /// Command-line usage error (bad flag combination or value).
    #[error("usage: {0}")]
    Usage(String),

    /// I/O failure while writing output.
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

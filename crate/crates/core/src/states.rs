//! Two-path superposition states and which-path detector records.
//!
//! A particle that can take two paths is described by real amplitudes `a`
//! and `b` with a relative phase `chi`. A which-path detector is described
//! only by the complex scalar product of its two pointer states; the modulus
//! of that overlap is the fringe visibility. Detector states are never
//! materialized as vectors because every downstream formula consumes only
//! the overlap.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on |a^2 + b^2 - 1| accepted at construction.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Slack allowed on the overlap modulus before construction fails.
pub const OVERLAP_TOL: f64 = 1e-12;

/// A pure two-path state: real amplitudes `a`, `b` (a^2 + b^2 = 1) and a
/// relative phase `chi` canonicalized into [0, 2*pi).
///
/// Amplitudes may be negative; signs are kept as given and the relative
/// phase is stored separately. Values are immutable after construction, so
/// states can be shared freely across threads.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPathState {
    a: f64,
    b: f64,
    chi: f64,
}

impl TwoPathState {
    /// Builds a state from amplitudes and relative phase.
    ///
    /// Fails with [`Error::NormalizationError`] if |a^2 + b^2 - 1| > 1e-9
    /// (no silent renormalization) and with [`Error::NonFiniteInput`] on
    /// NaN or infinite input. `chi` is wrapped into [0, 2*pi).
    pub fn new(a: f64, b: f64, chi: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || !chi.is_finite() {
            return Err(Error::NonFiniteInput("state amplitude or phase"));
        }
        let sum = a * a + b * b;
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NormalizationError {
                sum,
                tol: NORMALIZATION_TOL,
            });
        }
        Ok(TwoPathState {
            a,
            b,
            chi: wrap_phase(chi),
        })
    }

    /// State with amplitudes cos(theta), sin(theta); always normalized.
    pub fn from_mixing_angle(theta: f64, chi: f64) -> Result<Self> {
        Self::new(theta.cos(), theta.sin(), chi)
    }

    /// State with |a|^2 = `asq` and non-negative amplitudes.
    pub fn from_probability_split(asq: f64, chi: f64) -> Result<Self> {
        if !asq.is_finite() {
            return Err(Error::NonFiniteInput("probability split"));
        }
        if !(0.0..=1.0).contains(&asq) {
            return Err(Error::InvalidParameter {
                name: "asq",
                value: asq,
                constraint: "must lie in [0, 1]",
            });
        }
        Self::new(asq.sqrt(), (1.0 - asq).sqrt(), chi)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Relative phase in [0, 2*pi).
    pub fn chi(&self) -> f64 {
        self.chi
    }
}

/// Wraps a phase into [0, 2*pi).
fn wrap_phase(chi: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut w = chi.rem_euclid(tau);
    // rem_euclid of a tiny negative value can round up to tau itself.
    if w >= tau {
        w = 0.0;
    }
    w
}

/// The complex scalar product of the two which-path detector states.
///
/// The modulus must not exceed 1 (up to 1e-12 rounding slack); the phase is
/// unconstrained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorOverlap {
    overlap: Complex64,
}

impl DetectorOverlap {
    pub fn new(overlap: Complex64) -> Result<Self> {
        if !overlap.re.is_finite() || !overlap.im.is_finite() {
            return Err(Error::NonFiniteInput("detector overlap"));
        }
        let norm = overlap.norm();
        if norm > 1.0 + OVERLAP_TOL {
            return Err(Error::OverlapOutOfRange(norm));
        }
        Ok(DetectorOverlap { overlap })
    }

    /// Real overlap, e.g. the sinc factor of photon emission.
    pub fn from_real(value: f64) -> Result<Self> {
        Self::new(Complex64::new(value, 0.0))
    }

    /// Identical detector states: overlap 1, no which-path record.
    pub fn identity() -> Self {
        DetectorOverlap {
            overlap: Complex64::new(1.0, 0.0),
        }
    }

    /// Orthogonal detector states: full which-path record.
    pub fn orthogonal() -> Self {
        DetectorOverlap {
            overlap: Complex64::new(0.0, 0.0),
        }
    }

    pub fn value(&self) -> Complex64 {
        self.overlap
    }

    /// Modulus of the overlap, clamped into [0, 1].
    pub fn modulus(&self) -> f64 {
        self.overlap.norm().min(1.0)
    }

    /// Phase of the overlap (0 for the zero overlap).
    pub fn arg(&self) -> f64 {
        self.overlap.arg()
    }
}

/// Fringe visibility: the modulus of the detector-state overlap.
pub fn visibility(overlap: &DetectorOverlap) -> f64 {
    overlap.modulus()
}

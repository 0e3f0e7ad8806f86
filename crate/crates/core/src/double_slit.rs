//! Far-field double-slit pattern and the information carried by its fringes.
//!
//! In the Fraunhofer limit the screen density over one fringe period Y is
//! sinusoidal. Complementary point pairs spaced half a period apart define
//! pointwise information measures I_A, I_B analogous to the interferometer
//! pair; averaging them over a period gives the interference information,
//! which equals 4 a^2 b^2 in closed form.

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::states::TwoPathState;

/// Node budget that [`interference_information`] uses.
pub const DEFAULT_FRINGE_NODES: usize = 64;

/// Threshold below which conditioning on a point pair is refused.
const PAIR_SUM_FLOOR: f64 = 1e-15;

/// Double-slit geometry: de Broglie wavenumber `k` (rad/um), slit
/// separation `d` (um) and screen distance `L` (um). The fringe period is
/// Y = 2*pi*L / (k*d).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FringeGeometry {
    k: f64,
    d: f64,
    l: f64,
}

impl FringeGeometry {
    pub fn new(k: f64, d: f64, l: f64) -> Result<Self> {
        for (name, value) in [("k", k), ("d", d), ("L", l)] {
            if !value.is_finite() {
                return Err(Error::NonFiniteInput("fringe geometry parameter"));
            }
            if value <= 0.0 {
                return Err(Error::InvalidParameter {
                    name: match name {
                        "k" => "k",
                        "d" => "d",
                        _ => "L",
                    },
                    value,
                    constraint: "must be positive",
                });
            }
        }
        Ok(FringeGeometry { k, d, l })
    }

    /// Geometry from the particle's de Broglie wavelength.
    pub fn from_wavelength(lambda: f64, d: f64, l: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::NonFiniteInput("wavelength"));
        }
        if lambda <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
                constraint: "must be positive",
            });
        }
        FringeGeometry::new(std::f64::consts::TAU / lambda, d, l)
    }

    pub fn wavenumber(&self) -> f64 {
        self.k
    }

    pub fn slit_separation(&self) -> f64 {
        self.d
    }

    pub fn screen_distance(&self) -> f64 {
        self.l
    }

    /// Fringe period Y = 2*pi*L / (k*d).
    pub fn period(&self) -> f64 {
        std::f64::consts::TAU * self.l / (self.k * self.d)
    }

    /// Fringe phase k*d*y/L + chi at screen coordinate `y`.
    fn phase(&self, y: f64, chi: f64) -> f64 {
        (self.k * self.d / self.l) * y + chi
    }
}

/// One screen point with its probability density, `y` canonicalized into
/// [0, Y).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternPoint {
    pub y: f64,
    pub density: f64,
}

impl PatternPoint {
    pub fn new(y: f64, state: &TwoPathState, geom: &FringeGeometry) -> Self {
        let period = geom.period();
        let mut yc = y.rem_euclid(period);
        if yc >= period {
            yc = 0.0;
        }
        PatternPoint {
            y: yc,
            density: density(yc, state, geom),
        }
    }
}

/// Screen probability density (1/Y)[1 + 2ab cos(k d y / L + chi)],
/// normalized to unit probability over one period.
pub fn density(y: f64, state: &TwoPathState, geom: &FringeGeometry) -> f64 {
    let period = geom.period();
    let modulation = 2.0 * state.a() * state.b() * geom.phase(y, state.chi()).cos();
    // |2ab| can exceed 1 by an ulp; keep the dark fringe at exactly zero.
    ((1.0 + modulation) / period).max(0.0)
}

/// Density sampled on an n-point uniform grid over one period.
pub fn density_grid(state: &TwoPathState, geom: &FringeGeometry, n: usize) -> Vec<PatternPoint> {
    let period = geom.period();
    (0..n)
        .map(|i| PatternPoint::new(period * i as f64 / n as f64, state, geom))
        .collect()
}

/// Pointwise pair information (I_A, I_B) at screen offset `y`.
///
/// I_A compares the densities at y and y + Y/2 through their conditional
/// probabilities; I_B does the same a quarter period later. For the
/// sinusoidal density the two pair sums are the constant 2/Y, so the
/// denominators can never degenerate; the error path exists for callers
/// that feed pathological geometries.
pub fn pair_information(
    y: f64,
    state: &TwoPathState,
    geom: &FringeGeometry,
) -> Result<(f64, f64)> {
    let period = geom.period();
    let quarter = 0.25 * period;
    let pa1 = density(y, state, geom);
    let pa2 = density(y + 2.0 * quarter, state, geom);
    let pb1 = density(y + quarter, state, geom);
    let pb2 = density(y + 3.0 * quarter, state, geom);
    let i_a = pair_measure(pa1, pa2)?;
    let i_b = pair_measure(pb1, pb2)?;
    Ok((i_a, i_b))
}

fn pair_measure(p1: f64, p2: f64) -> Result<f64> {
    let sum = p1 + p2;
    if sum < PAIR_SUM_FLOOR {
        return Err(Error::DegeneratePair(sum));
    }
    let diff = (p1 - p2) / sum;
    Ok(diff * diff)
}

/// Interference information of the full pattern,
/// Y * integral over [0, Y/2] of [p(y) - p(y + Y/2)]^2 dy,
/// the per-period average of I_A + I_B. Equals 4 a^2 b^2 in closed form.
///
/// `quad_nodes` is the total Gauss-Legendre budget (at least 16), applied
/// as a two-panel composite rule.
pub fn interference_information_integral(
    state: &TwoPathState,
    geom: &FringeGeometry,
    quad_nodes: usize,
) -> f64 {
    assert!(quad_nodes >= 16, "need at least 16 quadrature nodes");
    let period = geom.period();
    let half = 0.5 * period;
    let rule = GaussLegendre::new(quad_nodes.div_ceil(2));
    let integrand = |y: f64| {
        let diff = density(y, state, geom) - density(y + half, state, geom);
        diff * diff
    };
    let value =
        rule.integrate(0.0, 0.5 * half, integrand) + rule.integrate(0.5 * half, half, integrand);
    period * value
}

/// [`interference_information_integral`] at the default node budget.
pub fn interference_information(state: &TwoPathState, geom: &FringeGeometry) -> f64 {
    interference_information_integral(state, geom, DEFAULT_FRINGE_NODES)
}

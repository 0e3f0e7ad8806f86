//! Squared-probability information measures and the complementarity split.
//!
//! Each binary observable contributes the square of its probability
//! difference: I1 = (p1-p2)^2 for the path, I2 = (p3-p4)^2 for the outputs
//! and I3 = (p3'-p4')^2 for the phase-shifted outputs. For every pure input
//! state the three add up to exactly one bit, however the state splits it
//! between path knowledge and interference contrast.
//!
//! The measures are dimensionless squares, not logarithms; the analogous
//! construction from binary Shannon entropies ([`shannon_sum`]) is provided
//! to show that it does *not* stay constant across pure states.

use crate::interferometer::PortProbabilities;

/// Information carried by the three binary observables, in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InformationTriple {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
}

impl InformationTriple {
    pub fn total(&self) -> f64 {
        self.i1 + self.i2 + self.i3
    }
}

/// The one-bit budget split between path knowledge and interference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplementaritySplit {
    pub i_path: f64,
    pub i_interf: f64,
}

impl ComplementaritySplit {
    pub fn total(&self) -> f64 {
        self.i_path + self.i_interf
    }
}

/// Squared probability differences of the three measurement contexts.
pub fn info_measures(probs: &PortProbabilities) -> InformationTriple {
    let d1 = probs.p1 - probs.p2;
    let d2 = probs.p3 - probs.p4;
    let d3 = probs.p3_shift - probs.p4_shift;
    InformationTriple {
        i1: d1 * d1,
        i2: d2 * d2,
        i3: d3 * d3,
    }
}

/// Path information is I1; interference information is I2 + I3.
pub fn complementarity_split(triple: &InformationTriple) -> ComplementaritySplit {
    ComplementaritySplit {
        i_path: triple.i1,
        i_interf: triple.i2 + triple.i3,
    }
}

/// Sum of complemented binary Shannon entropies, [1-H(p1)] + [1-H(p3)] +
/// [1-H(p3')], with H in bits.
///
/// Unlike the squared-difference total this quantity is not constant over
/// pure states, which is why the squared measures are used for the
/// complementarity bookkeeping.
pub fn shannon_sum(probs: &PortProbabilities) -> f64 {
    (1.0 - binary_entropy(probs.p1))
        + (1.0 - binary_entropy(probs.p3))
        + (1.0 - binary_entropy(probs.p3_shift))
}

/// Binary entropy in bits; H(0) = H(1) = 0.
fn binary_entropy(p: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&p));
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -(p * p.log2() + (1.0 - p) * (1.0 - p).log2())
}

//! Symmetric beam-splitter model of a two-path interferometer.
//!
//! Incoming beams 1 and 2 carry amplitudes `a` and `b` with relative phase
//! `chi`; the outgoing beams 3 and 4 are their coherent superpositions. The
//! convention is fixed so reflection picks up a factor `i`:
//!
//! ```text
//! psi3 = (i a e^{i chi} + b) / sqrt(2)
//! psi4 = (a e^{i chi} + i b) / sqrt(2)
//! ```
//!
//! Other unitary conventions differ only by global phases and leave every
//! probability unchanged; this one is kept so that amplitude-level values
//! are directly comparable across the crate.

use num_complex::Complex64;

use crate::states::{DetectorOverlap, TwoPathState};

/// Output-beam amplitudes behind the beam splitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputAmplitudes {
    pub psi3: Complex64,
    pub psi4: Complex64,
}

/// Probabilities of the four beams, plus the pair obtained with an extra
/// pi/2 phase shift between the incoming amplitudes.
///
/// For a normalized input state p1+p2, p3+p4 and p3_shift+p4_shift each
/// equal 1 within 1e-12, and every entry lies in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PortProbabilities {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
    pub p3_shift: f64,
    pub p4_shift: f64,
}

impl PortProbabilities {
    /// Largest deviation from the three unit-sum constraints.
    pub fn unitarity_defect(&self) -> f64 {
        let d1 = (self.p1 + self.p2 - 1.0).abs();
        let d2 = (self.p3 + self.p4 - 1.0).abs();
        let d3 = (self.p3_shift + self.p4_shift - 1.0).abs();
        d1.max(d2).max(d3)
    }

    pub fn as_array(&self) -> [f64; 6] {
        [
            self.p1,
            self.p2,
            self.p3,
            self.p4,
            self.p3_shift,
            self.p4_shift,
        ]
    }
}

/// Output amplitudes of the symmetric beam splitter.
pub fn output_amplitudes(state: &TwoPathState) -> OutputAmplitudes {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let a_phase = Complex64::from_polar(state.a(), state.chi());
    let b = Complex64::new(state.b(), 0.0);
    let i = Complex64::new(0.0, 1.0);
    OutputAmplitudes {
        psi3: (i * a_phase + b) * inv_sqrt2,
        psi4: (a_phase + i * b) * inv_sqrt2,
    }
}

/// Beam probabilities for a coherent input state.
///
/// p1 = a^2 and p2 = b^2 are the path probabilities; p3, p4 carry the
/// interference term 2ab sin(chi), and the shifted pair carries
/// 2ab cos(chi). Results agree with |psi3|^2, |psi4|^2 from
/// [`output_amplitudes`] to within 1e-12.
pub fn port_probabilities(state: &TwoPathState) -> PortProbabilities {
    probabilities_with_contrast(state, 1.0, 0.0)
}

/// Beam probabilities when each path is correlated with a detector state.
///
/// The interference terms are scaled by the overlap modulus and shifted by
/// its phase: with s = 1 this reduces to [`port_probabilities`], and with
/// s = 0 both output pairs are balanced at 1/2 (no interference survives a
/// perfect which-path record).
pub fn port_probabilities_with_decoherence(
    state: &TwoPathState,
    overlap: &DetectorOverlap,
) -> PortProbabilities {
    probabilities_with_contrast(state, overlap.modulus(), overlap.arg())
}

fn probabilities_with_contrast(
    state: &TwoPathState,
    modulus: f64,
    phase_shift: f64,
) -> PortProbabilities {
    let (a, b) = (state.a(), state.b());
    let phase = state.chi() + phase_shift;
    let cross = 2.0 * a * b * modulus;
    PortProbabilities {
        p1: clamp_unit(a * a),
        p2: clamp_unit(b * b),
        p3: clamp_unit(0.5 * (1.0 - cross * phase.sin())),
        p4: clamp_unit(0.5 * (1.0 + cross * phase.sin())),
        p3_shift: clamp_unit(0.5 * (1.0 - cross * phase.cos())),
        p4_shift: clamp_unit(0.5 * (1.0 + cross * phase.cos())),
    }
}

// Rounding can push a probability a few ulp outside [0, 1]; clamping keeps
// degenerate cases (e.g. a balanced state at chi = pi/2) exactly on 0 and 1.
fn clamp_unit(p: f64) -> f64 {
    p.clamp(0.0, 1.0)
}

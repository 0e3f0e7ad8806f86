//! Seeded Monte Carlo detection experiments for the analytic models.
//!
//! Path and interference observations are mutually exclusive runs: a run
//! samples exactly one of the discrete modes (path detectors, output
//! beams, phase-shifted output beams) or the continuous screen pattern.
//!
//! Reproducibility contract: draws come from ChaCha8 seeded with the run's
//! 64-bit seed, split into one independent stream per 65536-sample batch
//! (stream index = batch index). Batches may be computed on any number of
//! worker threads; results are concatenated in batch order, so a run's
//! outcome record is bit-identical for a given (state, mode, n, seed) no
//! matter how it is scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::double_slit::FringeGeometry;
use crate::error::{Error, Result};
use crate::information::InformationTriple;
use crate::interferometer::{port_probabilities, port_probabilities_with_decoherence};
use crate::states::{DetectorOverlap, TwoPathState};

/// Samples per RNG stream.
const BATCH: u64 = 1 << 16;

/// Fewest samples the visibility estimator accepts.
const MIN_ESTIMATOR_SAMPLES: u64 = 100;

/// Relative bisection tolerance of the inverse-CDF sampler.
const INVERSE_CDF_TOL: f64 = 1e-12;

/// What a single run measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Which-path detectors in the beams: outcomes (path 1, path 2).
    PathMeasurement,
    /// Output beams behind the splitter: outcomes (beam 3, beam 4).
    InterferometerOutput,
    /// Output beams with the extra pi/2 shift: outcomes (beam 3', beam 4').
    InterferometerShifted,
    /// Continuous screen coordinate in [0, Y).
    ScreenPattern,
}

impl Mode {
    pub fn is_discrete(&self) -> bool {
        !matches!(self, Mode::ScreenPattern)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Mode::PathMeasurement => "path",
            Mode::InterferometerOutput => "output",
            Mode::InterferometerShifted => "shifted",
            Mode::ScreenPattern => "pattern",
        }
    }

    /// Outcome labels of a discrete mode.
    pub fn outcome_labels(&self) -> [&'static str; 2] {
        match self {
            Mode::PathMeasurement => ["beam1", "beam2"],
            Mode::InterferometerOutput => ["beam3", "beam4"],
            Mode::InterferometerShifted => ["beam3_shifted", "beam4_shifted"],
            Mode::ScreenPattern => ["", ""],
        }
    }
}

/// Outcomes of one run: two-outcome counts or screen positions.
#[derive(Debug, Clone, PartialEq)]
pub enum OutcomeRecord {
    Counts([u64; 2]),
    Positions(Vec<f64>),
}

/// An immutable record of one simulated experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRun {
    mode: Mode,
    n_samples: u64,
    seed: u64,
    record: OutcomeRecord,
}

impl ExperimentRun {
    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn n_samples(&self) -> u64 {
        self.n_samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn record(&self) -> &OutcomeRecord {
        &self.record
    }

    pub fn counts(&self) -> Option<[u64; 2]> {
        match &self.record {
            OutcomeRecord::Counts(c) => Some(*c),
            OutcomeRecord::Positions(_) => None,
        }
    }

    pub fn positions(&self) -> Option<&[f64]> {
        match &self.record {
            OutcomeRecord::Counts(_) => None,
            OutcomeRecord::Positions(p) => Some(p),
        }
    }

    /// Wraps externally produced screen positions as a pattern run.
    pub fn from_positions(positions: Vec<f64>, seed: u64) -> Self {
        ExperimentRun {
            mode: Mode::ScreenPattern,
            n_samples: positions.len() as u64,
            seed,
            record: OutcomeRecord::Positions(positions),
        }
    }
}

fn check_sample_count(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n_samples",
            value: 0.0,
            constraint: "must be positive",
        });
    }
    Ok(())
}

/// I.i.d. draws from the two-outcome distribution of a discrete mode.
pub fn sample_ports(state: &TwoPathState, mode: Mode, n: u64, seed: u64) -> Result<ExperimentRun> {
    sample_ports_with_overlap(state, &DetectorOverlap::identity(), mode, n, seed)
}

/// Discrete-mode draws with the interference terms scaled by a detector
/// overlap.
pub fn sample_ports_with_overlap(
    state: &TwoPathState,
    overlap: &DetectorOverlap,
    mode: Mode,
    n: u64,
    seed: u64,
) -> Result<ExperimentRun> {
    check_sample_count(n)?;
    if !mode.is_discrete() {
        return Err(Error::InvalidMode(
            "screen-pattern runs are produced by sample_pattern",
        ));
    }
    let probs = if overlap.modulus() == 1.0 && overlap.arg() == 0.0 {
        port_probabilities(state)
    } else {
        port_probabilities_with_decoherence(state, overlap)
    };
    let p_first = match mode {
        Mode::PathMeasurement => probs.p1,
        Mode::InterferometerOutput => probs.p3,
        Mode::InterferometerShifted => probs.p3_shift,
        Mode::ScreenPattern => unreachable!(),
    };

    let n_batches = n.div_ceil(BATCH);
    let counts = (0..n_batches)
        .into_par_iter()
        .map(|batch| {
            let mut rng = stream_rng(seed, batch);
            let take = batch_size(n, batch);
            let mut first = 0u64;
            for _ in 0..take {
                if rng.random::<f64>() < p_first {
                    first += 1;
                }
            }
            first
        })
        .sum::<u64>();

    Ok(ExperimentRun {
        mode,
        n_samples: n,
        seed,
        record: OutcomeRecord::Counts([counts, n - counts]),
    })
}

/// Screen positions drawn from the fringe density by inverse-CDF bisection.
pub fn sample_pattern(
    state: &TwoPathState,
    geom: &FringeGeometry,
    n: u64,
    seed: u64,
) -> Result<ExperimentRun> {
    sample_pattern_with_overlap(state, &DetectorOverlap::identity(), geom, n, seed)
}

/// Pattern draws with the fringe contrast reduced by a detector overlap:
/// the sampled density is (1/Y)[1 + 2ab|s| cos(2 pi y / Y + chi + arg s)].
pub fn sample_pattern_with_overlap(
    state: &TwoPathState,
    overlap: &DetectorOverlap,
    geom: &FringeGeometry,
    n: u64,
    seed: u64,
) -> Result<ExperimentRun> {
    check_sample_count(n)?;
    let period = geom.period();
    let contrast = 2.0 * state.a() * state.b() * overlap.modulus();
    let phase = state.chi() + overlap.arg();

    let n_batches = n.div_ceil(BATCH);
    let chunks: Vec<Vec<f64>> = (0..n_batches)
        .into_par_iter()
        .map(|batch| {
            let mut rng = stream_rng(seed, batch);
            let take = batch_size(n, batch);
            (0..take)
                .map(|_| period * invert_pattern_cdf(rng.random::<f64>(), contrast, phase))
                .collect()
        })
        .collect();

    let mut positions = Vec::with_capacity(n as usize);
    for chunk in chunks {
        positions.extend(chunk);
    }
    Ok(ExperimentRun {
        mode: Mode::ScreenPattern,
        n_samples: n,
        seed,
        record: OutcomeRecord::Positions(positions),
    })
}

fn stream_rng(seed: u64, batch: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    rng
}

fn batch_size(n: u64, batch: u64) -> u64 {
    BATCH.min(n - batch * BATCH)
}

/// CDF of the normalized pattern coordinate t = y/Y in [0, 1].
fn pattern_cdf(t: f64, contrast: f64, phase: f64) -> f64 {
    use std::f64::consts::TAU;
    t + contrast / TAU * ((TAU * t + phase).sin() - phase.sin())
}

/// Solves pattern_cdf(t) = u for t in [0, 1) by bisection.
fn invert_pattern_cdf(u: f64, contrast: f64, phase: f64) -> f64 {
    if contrast == 0.0 {
        // Flat pattern: the CDF is the identity.
        return u;
    }
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    while hi - lo > INVERSE_CDF_TOL {
        let mid = 0.5 * (lo + hi);
        if pattern_cdf(mid, contrast, phase) < u {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    if t >= 1.0 {
        lo
    } else {
        t
    }
}

/// First-harmonic visibility estimate from pattern data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisibilityEstimate {
    /// Estimate clamped into [0, 1].
    pub value: f64,
    /// Unclamped phasor estimate 2|mean of e^{i 2 pi y / Y}|.
    pub raw: f64,
    /// Set when the raw estimate was out of range and had to be clamped.
    pub out_of_range: bool,
}

/// Estimates the fringe visibility of a pattern run as twice the modulus
/// of the mean first-harmonic phasor. For data drawn from the fringe
/// density this converges to 2ab (times the overlap modulus if the data
/// were decohered).
pub fn estimate_visibility(run: &ExperimentRun, geom: &FringeGeometry) -> Result<VisibilityEstimate> {
    let positions = run
        .positions()
        .ok_or(Error::InvalidMode("visibility estimator needs a screen-pattern run"))?;
    if run.n_samples() < MIN_ESTIMATOR_SAMPLES {
        return Err(Error::InsufficientSamples {
            got: run.n_samples(),
            need: MIN_ESTIMATOR_SAMPLES,
        });
    }
    let period = geom.period();
    let omega = std::f64::consts::TAU / period;
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for &y in positions {
        let (s, c) = (omega * y).sin_cos();
        re += c;
        im += s;
    }
    let n = positions.len() as f64;
    let raw = 2.0 * (re / n).hypot(im / n);
    Ok(VisibilityEstimate {
        value: raw.min(1.0),
        raw,
        out_of_range: raw > 1.0,
    })
}

/// Plug-in estimate of the information triple from one run of each
/// discrete mode. All runs must have the same sample count.
pub fn empirical_information(
    path: &ExperimentRun,
    output: &ExperimentRun,
    shifted: &ExperimentRun,
) -> Result<InformationTriple> {
    let expected = [
        (path, Mode::PathMeasurement),
        (output, Mode::InterferometerOutput),
        (shifted, Mode::InterferometerShifted),
    ];
    for (run, want) in &expected {
        if run.mode() != *want {
            return Err(Error::ModeMismatch(format!(
                "expected a {} run, got {}",
                want.label(),
                run.mode().label()
            )));
        }
    }
    if path.n_samples() != output.n_samples() || path.n_samples() != shifted.n_samples() {
        return Err(Error::ModeMismatch(format!(
            "sample counts differ: {} / {} / {}",
            path.n_samples(),
            output.n_samples(),
            shifted.n_samples()
        )));
    }
    let freq_diff = |run: &ExperimentRun| {
        let [c0, c1] = run.counts().expect("discrete runs checked above");
        (c0 as f64 - c1 as f64) / run.n_samples() as f64
    };
    let d1 = freq_diff(path);
    let d2 = freq_diff(output);
    let d3 = freq_diff(shifted);
    Ok(InformationTriple {
        i1: d1 * d1,
        i2: d2 * d2,
        i3: d3 * d3,
    })
}

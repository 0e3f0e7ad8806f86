//! Numerical laboratory for two-path quantum interference.
//!
//! The crate models the quantitative side of wave-particle duality in a
//! two-path experiment:
//!
//! - [`states`]: two-path superposition states and which-path detector
//!   overlaps; visibility = |overlap|.
//! - [`decoherence`]: visibility surviving photon emission at the slits,
//!   |sin(Kd)/Kd|^N, with an independent spherical-wave quadrature oracle
//!   in prolate spheroidal coordinates.
//! - [`interferometer`]: symmetric beam-splitter port probabilities,
//!   including the pi/2-shifted pair and detector-overlap decoherence.
//! - [`information`]: squared-probability information measures whose total
//!   is exactly one bit for every pure state, and the path/interference
//!   complementarity split.
//! - [`double_slit`]: Fraunhofer fringe density, pointwise pair
//!   information, and the fringe-information integral with closed form
//!   4 a^2 b^2.
//! - [`montecarlo`]: seeded, reproducible sampling experiments that close
//!   the loop between the analytic probabilities and simulated counts.
//! - [`cli`]: parameter sweeps with CSV/JSON output; see the `twopath`
//!   binary.

pub mod cli;
pub mod decoherence;
pub mod double_slit;
pub mod error;
pub mod information;
pub mod interferometer;
pub mod montecarlo;
mod quadrature;
pub mod states;

pub use error::{Error, Result};
pub use states::{DetectorOverlap, TwoPathState};

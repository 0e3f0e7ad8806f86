//! Command implementations and output schemas for the `twopath` binary.
//!
//! Every command produces a [`Report`]: the resolved configuration plus a
//! numeric table. Reports render to CSV (header line, 9 significant
//! digits) or to JSON schema v1, a top-level object with
//! `schema_version`, `config`, `columns` and `rows`. Rendering is pure and
//! row order follows the sweep grids, so identical configurations produce
//! byte-identical output.

use serde_json::json;

use crate::decoherence::{overlap_oracle, sinc_overlap, visibility_for_kd, QuadratureSpec};
use crate::double_slit::{density_grid, interference_information_integral, FringeGeometry};
use crate::error::{Error, Result};
use crate::information::{complementarity_split, info_measures};
use crate::interferometer::{port_probabilities, port_probabilities_with_decoherence};
use crate::montecarlo::{
    estimate_visibility, sample_pattern, sample_ports, ExperimentRun, Mode, OutcomeRecord,
};
use crate::states::{DetectorOverlap, TwoPathState};

/// Output format of a rendered report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// A numeric result table with fixed column order.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

/// Resolved configuration plus the computed table.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub config: serde_json::Value,
    pub table: Table,
}

impl Report {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    /// CSV: one header line, then rows with 9 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.table.columns.join(","));
        out.push('\n');
        for row in &self.table.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_sig9(v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// JSON schema v1: `{schema_version, config, columns, rows}`.
    pub fn to_json(&self) -> String {
        let value = json!({
            "schema_version": "v1",
            "config": self.config,
            "columns": self.table.columns,
            "rows": self.table.rows,
        });
        let mut text = serde_json::to_string_pretty(&value).expect("tables serialize");
        text.push('\n');
        text
    }
}

/// Scientific notation with 9 significant digits; -0 is normalized.
fn format_sig9(value: f64) -> String {
    let v = if value == 0.0 { 0.0 } else { value };
    format!("{v:.8e}")
}

// ---------------------------------------------------------------------------
// visibility
// ---------------------------------------------------------------------------

/// Inputs of the `visibility` command.
#[derive(Debug, Clone)]
pub struct VisibilityArgs {
    /// Dimensionless Kd values; overrides wavelength/slit separation.
    pub kd: Vec<f64>,
    /// Photon wavelength in micrometers (used when `kd` is empty).
    pub wavelength: Option<f64>,
    /// Slit separation in micrometers (used when `kd` is empty).
    pub slit_sep: Option<f64>,
    /// Photon counts to sweep.
    pub photons: Vec<u32>,
    /// Radial cutoff for the oracle column.
    pub xi_max: f64,
    pub nodes_xi: usize,
    pub nodes_eta: usize,
}

impl Default for VisibilityArgs {
    fn default() -> Self {
        VisibilityArgs {
            kd: Vec::new(),
            wavelength: None,
            slit_sep: None,
            photons: vec![1],
            xi_max: 1000.0,
            nodes_xi: 16,
            nodes_eta: 16,
        }
    }
}

/// Closed-form visibility next to the quadrature oracle over a (Kd, N) grid.
pub fn cmd_visibility(args: &VisibilityArgs) -> Result<Report> {
    let kd_values = resolve_kd_grid(args)?;
    if args.photons.is_empty() {
        return Err(Error::Usage("--photons needs at least one value".into()));
    }
    let spec = QuadratureSpec::with_nodes(args.xi_max, args.nodes_xi, args.nodes_eta)?;

    let mut rows = Vec::new();
    for &kd in &kd_values {
        if kd < 0.0 {
            return Err(Error::Usage(format!("Kd must be non-negative, got {kd}")));
        }
        // All physics depends on the product Kd; evaluate at unit separation.
        let oracle = overlap_oracle(kd, 1.0, &spec)?;
        for &n in &args.photons {
            let v_closed = visibility_for_kd(kd, n)?;
            let v_oracle = oracle.value.norm().powi(n as i32);
            rows.push(vec![
                kd,
                n as f64,
                v_closed,
                v_oracle,
                (v_closed - v_oracle).abs(),
            ]);
        }
    }
    Ok(Report {
        config: json!({
            "command": "visibility",
            "kd": kd_values,
            "photons": args.photons,
            "xi_max": args.xi_max,
            "nodes_xi": args.nodes_xi,
            "nodes_eta": args.nodes_eta,
        }),
        table: Table {
            columns: vec!["kd", "photons", "v_closed_form", "v_oracle", "abs_difference"],
            rows,
        },
    })
}

fn resolve_kd_grid(args: &VisibilityArgs) -> Result<Vec<f64>> {
    match (args.kd.is_empty(), args.wavelength, args.slit_sep) {
        (false, None, None) => Ok(args.kd.clone()),
        (true, Some(lambda), Some(d)) => {
            if lambda <= 0.0 || d <= 0.0 || !lambda.is_finite() || !d.is_finite() {
                return Err(Error::Usage(
                    "--wavelength and --slit-sep must be positive".into(),
                ));
            }
            Ok(vec![std::f64::consts::TAU / lambda * d])
        }
        (false, _, _) => Err(Error::Usage(
            "--kd cannot be combined with --wavelength/--slit-sep".into(),
        )),
        (true, _, _) => Err(Error::Usage(
            "give either --kd or both --wavelength and --slit-sep".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// ports and info
// ---------------------------------------------------------------------------

/// Inputs of the `ports` command.
#[derive(Debug, Clone)]
pub struct PortsArgs {
    pub asq: Vec<f64>,
    pub chi: Vec<f64>,
    /// Optional detector overlap modulus applied to the interference terms.
    pub overlap_mod: Option<f64>,
    /// Detector overlap phase (radians).
    pub overlap_arg: f64,
}

/// Beam probabilities over the (a^2, chi) grid.
pub fn cmd_ports(args: &PortsArgs) -> Result<Report> {
    let overlap = match args.overlap_mod {
        Some(m) => Some(DetectorOverlap::new(num_complex::Complex64::from_polar(
            m,
            args.overlap_arg,
        ))?),
        None => None,
    };
    let mut rows = Vec::new();
    for &asq in &args.asq {
        for &chi in &args.chi {
            let state = TwoPathState::from_probability_split(asq, chi)?;
            let p = match &overlap {
                Some(ov) => port_probabilities_with_decoherence(&state, ov),
                None => port_probabilities(&state),
            };
            let mut row = vec![asq, chi];
            row.extend_from_slice(&p.as_array());
            rows.push(row);
        }
    }
    Ok(Report {
        config: json!({
            "command": "ports",
            "asq": args.asq,
            "chi": args.chi,
            "overlap_mod": args.overlap_mod,
            "overlap_arg": args.overlap_arg,
        }),
        table: Table {
            columns: vec!["asq", "chi", "p1", "p2", "p3", "p4", "p3_shift", "p4_shift"],
            rows,
        },
    })
}

/// Inputs of the `info` command.
#[derive(Debug, Clone)]
pub struct InfoArgs {
    pub asq: Vec<f64>,
    pub chi: Vec<f64>,
}

/// Probabilities, information measures and the complementarity split over
/// the (a^2, chi) grid; the `total` column is the invariant one-bit sum.
pub fn cmd_info(args: &InfoArgs) -> Result<Report> {
    let mut rows = Vec::new();
    for &asq in &args.asq {
        for &chi in &args.chi {
            let state = TwoPathState::from_probability_split(asq, chi)?;
            let p = port_probabilities(&state);
            let t = info_measures(&p);
            let split = complementarity_split(&t);
            let mut row = vec![asq, chi];
            row.extend_from_slice(&p.as_array());
            row.extend_from_slice(&[
                t.i1,
                t.i2,
                t.i3,
                split.i_path,
                split.i_interf,
                t.total(),
            ]);
            rows.push(row);
        }
    }
    Ok(Report {
        config: json!({
            "command": "info",
            "asq": args.asq,
            "chi": args.chi,
        }),
        table: Table {
            columns: vec![
                "asq", "chi", "p1", "p2", "p3", "p4", "p3_shift", "p4_shift", "i1", "i2", "i3",
                "i_path", "i_interf", "total",
            ],
            rows,
        },
    })
}

// ---------------------------------------------------------------------------
// pattern and sample
// ---------------------------------------------------------------------------

/// Double-slit geometry flags shared by `pattern` and `sample`.
///
/// Defaults give a fringe period of exactly 1 um.
#[derive(Debug, Clone)]
pub struct GeometryArgs {
    /// De Broglie wavelength (um).
    pub wavelength: f64,
    /// Slit separation (um).
    pub slit_sep: f64,
    /// Screen distance (um).
    pub screen_dist: f64,
}

impl Default for GeometryArgs {
    fn default() -> Self {
        GeometryArgs {
            wavelength: 1.0,
            slit_sep: 1.0,
            screen_dist: 1.0,
        }
    }
}

impl GeometryArgs {
    fn build(&self) -> Result<FringeGeometry> {
        FringeGeometry::from_wavelength(self.wavelength, self.slit_sep, self.screen_dist)
    }

    fn echo(&self) -> serde_json::Value {
        json!({
            "wavelength": self.wavelength,
            "slit_sep": self.slit_sep,
            "screen_dist": self.screen_dist,
        })
    }
}

/// What the `pattern` command should produce.
#[derive(Debug, Clone, PartialEq)]
pub enum PatternAction {
    /// Analytic density on an n-point grid over one period.
    Grid(usize),
    /// Fringe-information integral next to its closed form.
    Integral,
    /// Monte Carlo summary: sampled visibility and information estimates.
    Samples { n: u64, seed: u64 },
}

/// Inputs of the `pattern` command.
#[derive(Debug, Clone)]
pub struct PatternArgs {
    pub asq: f64,
    pub chi: f64,
    pub geometry: GeometryArgs,
    pub action: PatternAction,
    pub quad_nodes: usize,
}

/// Fraunhofer pattern: density grid, information integral, or sampling
/// summary, depending on the action.
pub fn cmd_pattern(args: &PatternArgs) -> Result<Report> {
    let state = TwoPathState::from_probability_split(args.asq, args.chi)?;
    let geom = args.geometry.build()?;
    if args.quad_nodes < 16 {
        return Err(Error::Usage("--quad-nodes must be at least 16".into()));
    }
    let closed = 4.0 * state.a().powi(2) * state.b().powi(2);
    let config_base = |action: &str| {
        json!({
            "command": "pattern",
            "action": action,
            "asq": args.asq,
            "chi": args.chi,
            "geometry": args.geometry.echo(),
            "quad_nodes": args.quad_nodes,
        })
    };

    match args.action {
        PatternAction::Grid(n) => {
            if n == 0 {
                return Err(Error::Usage("--grid needs a positive point count".into()));
            }
            let rows = density_grid(&state, &geom, n)
                .into_iter()
                .map(|p| vec![p.y, p.density])
                .collect();
            Ok(Report {
                config: config_base("grid"),
                table: Table {
                    columns: vec!["y", "density"],
                    rows,
                },
            })
        }
        PatternAction::Integral => {
            let integral = interference_information_integral(&state, &geom, args.quad_nodes);
            Ok(Report {
                config: config_base("integral"),
                table: Table {
                    columns: vec![
                        "asq",
                        "chi",
                        "i_interf_integral",
                        "i_interf_closed",
                        "abs_difference",
                    ],
                    rows: vec![vec![
                        args.asq,
                        args.chi,
                        integral,
                        closed,
                        (integral - closed).abs(),
                    ]],
                },
            })
        }
        PatternAction::Samples { n, seed } => {
            let run = sample_pattern(&state, &geom, n, seed)?;
            let est = estimate_visibility(&run, &geom)?;
            let integral = interference_information_integral(&state, &geom, args.quad_nodes);
            let mut config = config_base("samples");
            config["samples"] = json!(n);
            config["seed"] = json!(seed);
            Ok(Report {
                config,
                table: Table {
                    columns: vec![
                        "asq",
                        "chi",
                        "visibility_estimate",
                        "visibility_closed",
                        "i_interf_integral",
                        "i_interf_closed",
                        "i_interf_empirical",
                    ],
                    rows: vec![vec![
                        args.asq,
                        args.chi,
                        est.value,
                        2.0 * state.a().abs() * state.b().abs(),
                        integral,
                        closed,
                        est.value * est.value,
                    ]],
                },
            })
        }
    }
}

/// Inputs of the `sample` command.
#[derive(Debug, Clone)]
pub struct SampleArgs {
    pub mode: Mode,
    pub asq: f64,
    pub chi: f64,
    pub n: u64,
    pub seed: u64,
    pub geometry: GeometryArgs,
}

/// Runs one experiment and serializes its outcome record: `(outcome,
/// count)` rows for discrete modes, `(index, y)` rows for the pattern.
pub fn cmd_sample(args: &SampleArgs) -> Result<Report> {
    let state = TwoPathState::from_probability_split(args.asq, args.chi)?;
    let config = json!({
        "command": "sample",
        "mode": args.mode.label(),
        "asq": args.asq,
        "chi": args.chi,
        "n": args.n,
        "seed": args.seed,
        "geometry": args.geometry.echo(),
    });
    let run = if args.mode.is_discrete() {
        sample_ports(&state, args.mode, args.n, args.seed)?
    } else {
        let geom = args.geometry.build()?;
        sample_pattern(&state, &geom, args.n, args.seed)?
    };
    Ok(Report {
        config,
        table: record_table(&run),
    })
}

fn record_table(run: &ExperimentRun) -> Table {
    match run.record() {
        OutcomeRecord::Counts(counts) => {
            let outcome_codes = match run.mode() {
                Mode::PathMeasurement => [1.0, 2.0],
                _ => [3.0, 4.0],
            };
            Table {
                columns: vec!["outcome", "count"],
                rows: vec![
                    vec![outcome_codes[0], counts[0] as f64],
                    vec![outcome_codes[1], counts[1] as f64],
                ],
            }
        }
        OutcomeRecord::Positions(ys) => Table {
            columns: vec!["index", "y"],
            rows: ys
                .iter()
                .enumerate()
                .map(|(i, &y)| vec![i as f64, y])
                .collect(),
        },
    }
}

// ---------------------------------------------------------------------------
// oracle
// ---------------------------------------------------------------------------

/// Inputs of the `oracle` command.
#[derive(Debug, Clone)]
pub struct OracleArgs {
    pub kd: f64,
    pub xi_max: Vec<f64>,
    pub nodes_xi: usize,
    pub nodes_eta: usize,
}

/// Convergence table of the spheroidal-region overlap toward sinc(Kd).
pub fn cmd_oracle(args: &OracleArgs) -> Result<Report> {
    if args.xi_max.is_empty() {
        return Err(Error::Usage("--xi-max needs at least one value".into()));
    }
    let sinc_value = sinc_overlap(args.kd, 1.0)?;
    let mut rows = Vec::new();
    for &xi_max in &args.xi_max {
        let spec = QuadratureSpec::with_nodes(xi_max, args.nodes_xi, args.nodes_eta)?;
        let oracle = overlap_oracle(args.kd, 1.0, &spec)?;
        let err = (oracle.value - num_complex::Complex64::new(sinc_value, 0.0)).norm();
        rows.push(vec![xi_max, oracle.value.re, oracle.value.im, sinc_value, err]);
    }
    Ok(Report {
        config: json!({
            "command": "oracle",
            "kd": args.kd,
            "xi_max": args.xi_max,
            "nodes_xi": args.nodes_xi,
            "nodes_eta": args.nodes_eta,
        }),
        table: Table {
            columns: vec!["xi_max", "oracle_value_re", "oracle_value_im", "sinc", "abs_error"],
            rows,
        },
    })
}

//! Command-line front end for the two-path interference laboratory.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use twopath::cli::{
    cmd_info, cmd_oracle, cmd_pattern, cmd_ports, cmd_sample, cmd_visibility, GeometryArgs,
    InfoArgs, OracleArgs, OutputFormat, PatternAction, PatternArgs, PortsArgs, Report, SampleArgs,
    VisibilityArgs,
};
use twopath::montecarlo::Mode;
use twopath::Error;

#[derive(Parser)]
#[command(
    name = "twopath",
    about = "Two-path interference laboratory: visibility, port probabilities, \
             information measures, fringe patterns and seeded sampling",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decoherence visibility |sin(Kd)/Kd|^N next to the quadrature oracle.
    Visibility {
        /// Dimensionless Kd values (comma separated); overrides --wavelength/--slit-sep.
        #[arg(long, value_delimiter = ',')]
        kd: Vec<f64>,
        /// Photon wavelength in micrometers.
        #[arg(long)]
        wavelength: Option<f64>,
        /// Slit separation in micrometers.
        #[arg(long)]
        slit_sep: Option<f64>,
        /// Photon counts N (comma separated).
        #[arg(long, value_delimiter = ',', default_value = "1")]
        photons: Vec<u32>,
        /// Radial cutoff of the oracle region.
        #[arg(long, default_value_t = 1000.0)]
        xi_max: f64,
        /// Quadrature nodes per panel in the radial direction.
        #[arg(long, default_value_t = 16)]
        nodes_xi: usize,
        /// Quadrature nodes per panel in the angular direction.
        #[arg(long, default_value_t = 16)]
        nodes_eta: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Beam probabilities of the symmetric interferometer.
    Ports {
        /// Probability weight a^2 of path 1 (comma separated).
        #[arg(long, value_delimiter = ',', default_value = "0.5")]
        asq: Vec<f64>,
        /// Relative phase chi in radians (comma separated).
        #[arg(long, value_delimiter = ',', default_value = "0")]
        chi: Vec<f64>,
        /// Detector overlap modulus scaling the interference terms.
        #[arg(long)]
        overlap_mod: Option<f64>,
        /// Detector overlap phase in radians.
        #[arg(long, default_value_t = 0.0)]
        overlap_arg: f64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Information measures and the one-bit complementarity total.
    Info {
        #[arg(long, value_delimiter = ',', default_value = "0.5")]
        asq: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        chi: Vec<f64>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Fraunhofer fringe pattern: density grid, information integral, or
    /// sampling summary.
    Pattern {
        #[arg(long, default_value_t = 0.5)]
        asq: f64,
        #[arg(long, default_value_t = 0.0)]
        chi: f64,
        /// Analytic density grid with this many points over one period.
        #[arg(long, conflicts_with_all = ["samples", "integral"])]
        grid: Option<usize>,
        /// Sample this many screen positions and summarize the estimates.
        #[arg(long, conflicts_with = "integral")]
        samples: Option<u64>,
        /// Evaluate the fringe-information integral against its closed form.
        #[arg(long)]
        integral: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Total Gauss-Legendre nodes of the information integral.
        #[arg(long, default_value_t = 64)]
        quad_nodes: usize,
        #[command(flatten)]
        geometry: GeometryOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Spheroidal-region overlap oracle versus sinc(Kd) over cutoffs.
    Oracle {
        #[arg(long)]
        kd: f64,
        /// Radial cutoffs (comma separated).
        #[arg(long, value_delimiter = ',', default_value = "1000")]
        xi_max: Vec<f64>,
        #[arg(long, default_value_t = 16)]
        nodes_xi: usize,
        #[arg(long, default_value_t = 16)]
        nodes_eta: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run one seeded experiment and write its outcome record.
    Sample {
        /// Measurement mode.
        #[arg(long, value_enum)]
        mode: CliMode,
        #[arg(long, default_value_t = 0.5)]
        asq: f64,
        #[arg(long, default_value_t = 0.0)]
        chi: f64,
        /// Number of detection events.
        #[arg(long, default_value_t = 10_000)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        geometry: GeometryOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Args)]
struct OutputOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = CliFormat::Csv)]
    format: CliFormat,
    /// Output path (standard output when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GeometryOpts {
    /// De Broglie wavelength in micrometers.
    #[arg(long = "wavelength", default_value_t = 1.0)]
    wavelength: f64,
    /// Slit separation in micrometers.
    #[arg(long = "slit-sep", default_value_t = 1.0)]
    slit_sep: f64,
    /// Screen distance in micrometers.
    #[arg(long = "screen-dist", default_value_t = 1.0)]
    screen_dist: f64,
}

impl GeometryOpts {
    fn to_args(&self) -> GeometryArgs {
        GeometryArgs {
            wavelength: self.wavelength,
            slit_sep: self.slit_sep,
            screen_dist: self.screen_dist,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CliFormat {
    Csv,
    Json,
}

impl From<CliFormat> for OutputFormat {
    fn from(f: CliFormat) -> Self {
        match f {
            CliFormat::Csv => OutputFormat::Csv,
            CliFormat::Json => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CliMode {
    Path,
    Output,
    Shifted,
    Pattern,
}

impl From<CliMode> for Mode {
    fn from(m: CliMode) -> Self {
        match m {
            CliMode::Path => Mode::PathMeasurement,
            CliMode::Output => Mode::InterferometerOutput,
            CliMode::Shifted => Mode::InterferometerShifted,
            CliMode::Pattern => Mode::ScreenPattern,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> twopath::Result<()> {
    let (report, output) = match command {
        Command::Visibility {
            kd,
            wavelength,
            slit_sep,
            photons,
            xi_max,
            nodes_xi,
            nodes_eta,
            output,
        } => (
            cmd_visibility(&VisibilityArgs {
                kd,
                wavelength,
                slit_sep,
                photons,
                xi_max,
                nodes_xi,
                nodes_eta,
            })?,
            output,
        ),
        Command::Ports {
            asq,
            chi,
            overlap_mod,
            overlap_arg,
            output,
        } => (
            cmd_ports(&PortsArgs {
                asq,
                chi,
                overlap_mod,
                overlap_arg,
            })?,
            output,
        ),
        Command::Info { asq, chi, output } => (cmd_info(&InfoArgs { asq, chi })?, output),
        Command::Pattern {
            asq,
            chi,
            grid,
            samples,
            integral,
            seed,
            quad_nodes,
            geometry,
            output,
        } => {
            let action = match (grid, samples, integral) {
                (Some(n), None, false) => PatternAction::Grid(n),
                (None, Some(n), false) => PatternAction::Samples { n, seed },
                (None, None, true) => PatternAction::Integral,
                _ => {
                    return Err(Error::Usage(
                        "choose exactly one of --grid, --samples, --integral".into(),
                    ))
                }
            };
            (
                cmd_pattern(&PatternArgs {
                    asq,
                    chi,
                    geometry: geometry.to_args(),
                    action,
                    quad_nodes,
                })?,
                output,
            )
        }
        Command::Oracle {
            kd,
            xi_max,
            nodes_xi,
            nodes_eta,
            output,
        } => (
            cmd_oracle(&OracleArgs {
                kd,
                xi_max,
                nodes_xi,
                nodes_eta,
            })?,
            output,
        ),
        Command::Sample {
            mode,
            asq,
            chi,
            n,
            seed,
            geometry,
            output,
        } => (
            cmd_sample(&SampleArgs {
                mode: mode.into(),
                asq,
                chi,
                n,
                seed,
                geometry: geometry.to_args(),
            })?,
            output,
        ),
    };
    emit(&report, &output)
}

/// Renders the full report first, then writes it in one step, so a failed
/// command never leaves a partial table behind.
fn emit(report: &Report, output: &OutputOpts) -> twopath::Result<()> {
    let text = report.render(output.format.into());
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            handle.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

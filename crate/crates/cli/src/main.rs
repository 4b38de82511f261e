//! `photonchip` command-line front end.

mod commands;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use photonchip::circuit::Convention;

#[derive(Parser, Debug)]
#[command(name = "photonchip", version, about = "Linear-optics chip simulation and analysis")]
struct Cli {
    /// Coupler matrix convention.
    #[arg(long, global = true, value_enum, default_value_t = ConventionArg::Real)]
    convention: ConventionArg,

    /// Seed for stochastic commands.
    #[arg(long, global = true, env = "PHOTONCHIP_SEED", default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Real,
    Symmetric,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Real => Convention::Real,
            ConventionArg::Symmetric => Convention::Symmetric,
        }
    }
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct CircuitSource {
    /// Netlist file (.pqc).
    #[arg(long)]
    circuit: Option<PathBuf>,

    /// Build the heralded CNOT from five reflectivities (see --etas).
    #[arg(long, requires = "etas")]
    cnot: bool,
}

#[derive(Args, Debug)]
pub struct CircuitArgs {
    #[command(flatten)]
    source: CircuitSource,

    /// control-third,lower-third-a,lower-third-b,half-1,half-2
    #[arg(long, value_delimiter = ',')]
    etas: Option<Vec<f64>>,

    /// 1-based modes c0,c1,t0,t1 followed by the ancilla modes.
    /// Defaults to the CNOT layout for six-mode circuits.
    #[arg(long, value_delimiter = ',')]
    encoding: Option<Vec<usize>>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Post-selected logical truth table of a circuit.
    TruthTable {
        #[command(flatten)]
        circuit: CircuitArgs,
        /// Write the table as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ideal two-photon interference visibility of a coupler.
    Hom {
        #[arg(long)]
        eta: f64,
        /// Tabulate the visibility over reflectivity in [0, 1].
        #[arg(long)]
        scan: bool,
        #[arg(long, default_value_t = 101, requires = "scan")]
        points: usize,
        /// Scan output, CSV or SVG by extension.
        #[arg(long, requires = "scan")]
        out: Option<PathBuf>,
        /// Bandpass filter width in nm; prints the expected dip width.
        #[arg(long)]
        filter_nm: Option<f64>,
        #[arg(long, default_value_t = 804.0, requires = "filter_nm")]
        center_nm: f64,
        /// Measured dip FWHM in micrometres to compare with the filter estimate.
        #[arg(long, requires = "filter_nm")]
        measured_fwhm_um: Option<f64>,
    },
    /// Fit a dip curve and report its visibility.
    FitDip {
        /// CSV with header `delay_um,counts`.
        #[arg(long)]
        data: PathBuf,
        /// Coupler reflectivity for the relative visibility.
        #[arg(long)]
        eta: Option<f64>,
        /// Accidental coincidence rate subtracted from the fitted rates.
        #[arg(long, default_value_t = 0.0)]
        accidentals: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Iteration cap for the fit.
        #[arg(long, default_value_t = 200)]
        max_iterations: usize,
    },
    /// Sweep labelled coupler reflectivities and summarise a metric.
    Sweep {
        #[command(flatten)]
        circuit: CircuitArgs,
        /// label=half_width, repeatable or comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        vary: Vec<String>,
        /// grid:N or mc:N
        #[arg(long, default_value = "grid:11")]
        mode: String,
        #[arg(long, value_enum, default_value_t = MetricArg::Similarity)]
        metric: MetricArg,
        /// Reference table for the similarity metric. Defaults to the
        /// circuit's own table at its nominal reflectivities.
        #[arg(long)]
        reference: Option<PathBuf>,
        /// Target gate for the fidelity metric.
        #[arg(long, value_enum, default_value_t = TargetArg::Cnot)]
        target: TargetArg,
        /// Read half-widths as fractions of the nominal value.
        #[arg(long)]
        relative: bool,
        #[arg(long, value_enum, default_value_t = DistributionArg::Uniform)]
        distribution: DistributionArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a Poisson-noisy dip curve.
    SynthDip {
        #[arg(long, default_value_t = 1000.0)]
        a: f64,
        #[arg(long, default_value_t = 0.0)]
        b: f64,
        #[arg(long, default_value_t = 0.9)]
        v: f64,
        #[arg(long, default_value_t = 0.0)]
        x0: f64,
        /// Dip FWHM in micrometres.
        #[arg(long, default_value_t = 249.4)]
        fwhm: f64,
        #[arg(long, default_value_t = -750.0, allow_negative_numbers = true)]
        start: f64,
        #[arg(long, default_value_t = 750.0, allow_negative_numbers = true)]
        end: f64,
        #[arg(long, default_value_t = 61)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    Similarity,
    Fidelity,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    Cnot,
    Identity,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum DistributionArg {
    Uniform,
    Gaussian,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let convention = Convention::from(cli.convention);
    let result = match cli.command {
        Command::TruthTable { circuit, out } => commands::truth_table(&circuit, out.as_deref(), convention),
        Command::Hom { eta, scan, points, out, filter_nm, center_nm, measured_fwhm_um } => commands::hom(commands::HomArgs {
            eta,
            scan,
            points,
            out: out.as_deref(),
            filter_nm,
            center_nm,
            measured_fwhm_um,
        }),
        Command::FitDip { data, eta, accidentals, out, plot, max_iterations } => {
            commands::fit_dip(&data, eta, accidentals, &out, plot.as_deref(), max_iterations)
        }
        Command::Sweep { circuit, vary, mode, metric, reference, target, relative, distribution, out } => {
            commands::sweep(commands::SweepArgs {
                circuit: &circuit,
                vary: &vary,
                mode: &mode,
                similarity: metric == MetricArg::Similarity,
                reference: reference.as_deref(),
                identity_target: target == TargetArg::Identity,
                relative,
                gaussian: distribution == DistributionArg::Gaussian,
                out: out.as_deref(),
                convention,
                seed: cli.seed,
            })
        }
        Command::SynthDip { a, b, v, x0, fwhm, start, end, points, out } => {
            commands::synth_dip(a, b, v, x0, fwhm, (start, end, points), &out, cli.seed)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

//! `disc-ergodics`: classify self-maps of the disc, decide mean ergodicity of
//! their composition operators and emit plot-ready experiment data.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use disc_ergodics::dynamics::DynamicsError;
use disc_ergodics::{ErgodicityError, SymbolError, WeightedError};
use thiserror::Error;

const THREADS_VAR: &str = "DISC_ERGODICS_THREADS";

#[derive(Debug, Parser)]
#[command(name = "disc-ergodics", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Denjoy–Wolff classification of a symbol.
    Classify(ClassifyArgs),
    /// Mean ergodicity verdicts on the requested spaces.
    Verdict(VerdictArgs),
    /// Cesàro trace of a test function along one orbit.
    Cesaro(CesaroArgs),
    /// Orbit density sweep over boundary seeds and neighbourhood radii.
    Density(DensityArgs),
    /// Weyl sums of one orbit.
    Weyl(WeylArgs),
    /// Lacunary counterexample pair with weighted-norm probes.
    Counterexample(CounterexampleArgs),
    /// Classification and verdicts for every gallery symbol.
    Gallery(GalleryArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Report,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Directory for output files; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct SymbolArg {
    /// Symbol document path, or `gallery:NAME`.
    #[arg(long)]
    symbol: String,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[command(flatten)]
    symbol: SymbolArg,
    /// Parabolic band half-width for `|φ′(z0)| − 1`.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WeightArg {
    Typical,
    VAlpha,
}

#[derive(Debug, Args)]
struct VerdictArgs {
    #[command(flatten)]
    symbol: SymbolArg,
    /// Spaces to decide (A, Hinf, Hv, Hv0); all four when absent.
    #[arg(long)]
    space: Vec<String>,
    /// Orbit length for density numerics.
    #[arg(long = "N", default_value_t = 100_000)]
    n: usize,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Weight carried by the weighted spaces.
    #[arg(long, value_enum, default_value_t = WeightArg::Typical)]
    weight: WeightArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct CesaroArgs {
    #[command(flatten)]
    symbol: SymbolArg,
    /// Test function: `monomial:J`, `taylor:[...]` or `witness:RE,IM,K`.
    #[arg(long = "f", default_value = "monomial:1")]
    f: String,
    /// Starting point `RE` or `RE,IM`.
    #[arg(long, default_value = "0")]
    z: String,
    #[arg(long = "N", default_value_t = 1_000)]
    n: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct DensityArgs {
    #[command(flatten)]
    symbol: SymbolArg,
    /// Target point; the Denjoy–Wolff point when absent.
    #[arg(long)]
    z0: Option<String>,
    /// Number of boundary seeds, placed at half-step angles.
    #[arg(long, default_value_t = 32)]
    seeds: usize,
    /// Neighbourhood radii; 0.5, 0.1 and 0.02 when absent.
    #[arg(long)]
    radius: Vec<f64>,
    #[arg(long = "N", default_value_t = 100_000)]
    n: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct WeylArgs {
    #[command(flatten)]
    symbol: SymbolArg,
    #[arg(long, default_value = "1")]
    z: String,
    #[arg(long = "N", default_value_t = 100_000)]
    n: usize,
    #[arg(long, default_value_t = 8)]
    j_max: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct CounterexampleArgs {
    /// `golden`, `sqrt2`, `turns:X`, `rational:P/Q` or `quadratic:P,D,Q`.
    #[arg(long, default_value = "golden")]
    angle: String,
    #[arg(long = "R", default_value_t = 2.0)]
    ratio: f64,
    #[arg(long = "K", default_value_t = 40)]
    k: usize,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, default_value_t = 0.5)]
    r0: f64,
    /// Largest admissible exponent.
    #[arg(long, default_value_t = u64::MAX)]
    n_max: u64,
    /// Probe radii `1 − 10^{−m}` for `m = 1..=DEPTH`.
    #[arg(long, default_value_t = 5)]
    probe_depth: i32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct GalleryArgs {
    #[arg(long = "N", default_value_t = 100_000)]
    n: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Ergodicity(#[from] ErgodicityError),
    #[error(transparent)]
    Weighted(#[from] WeightedError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Numerical non-decisions exit with 2, everything else with 1.
    fn exit_code(&self) -> u8 {
        match self {
            Self::Dynamics(DynamicsError::NonConvergence { .. } | DynamicsError::Unclassifiable(_))
            | Self::Ergodicity(ErgodicityError::Dynamics(
                DynamicsError::NonConvergence { .. } | DynamicsError::Unclassifiable(_),
            )) => 2,
            _ => 1,
        }
    }
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Done,
    Undecided,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_VAR} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure {threads} threads: {e}")))
}

fn run(cli: Cli) -> Result<Status, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Classify(args) => commands::classify(args),
        Command::Verdict(args) => commands::verdict(args),
        Command::Cesaro(args) => commands::cesaro(args),
        Command::Density(args) => commands::density(args),
        Command::Weyl(args) => commands::weyl(args),
        Command::Counterexample(args) => commands::counterexample(args),
        Command::Gallery(args) => commands::gallery(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(Status::Done) => ExitCode::SUCCESS,
        Ok(Status::Undecided) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

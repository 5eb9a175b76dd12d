//! `expander-forge`: sampling sweeps, spectral and Cheeger reports, bound
//! tables and expander-family construction, written as CSV and JSON.

mod commands;
mod failure;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use failure::Failure;

#[derive(Debug, Parser)]
#[command(name = "expander-forge", version, about = "Random graphs with boundary: sampling, spectra, Cheeger constants, bounds and constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample graphs and report connectivity, λ1, σ1, exact h and genus per trial.
    Sample(SampleArgs),
    /// Connectivity fraction across χ with n chosen by a rule.
    Sweep(SweepArgs),
    /// μ-pair sum and the per-pair X·Y·Z table.
    Bounds(BoundsArgs),
    /// Monte Carlo estimate of E[N_abs] against its X·Y·Z bound.
    Audit(AuditArgs),
    /// Constructions.
    Construct {
        #[command(subcommand)]
        what: ConstructCommand,
    },
    /// Laplacian and Steklov spectra of a graph file.
    Spectra { graph: PathBuf },
    /// Cheeger constant of a graph file.
    Cheeger(CheegerArgs),
    /// Two-tree split and balanced boundary subset of a graph file.
    Split { graph: PathBuf },
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub chi: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    /// Largest vertex count for exact Cheeger search.
    #[arg(long)]
    pub guard: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated χ values.
    #[arg(long, value_delimiter = ',', required = true)]
    pub chi: Vec<usize>,
    /// `pow:α` for n = ⌊χ^α⌋ or `linear:c` for n = ⌊cχ⌋.
    #[arg(long)]
    pub rule: String,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub chi: usize,
    #[arg(long)]
    pub n: usize,
    /// Threshold μ as a decimal or fraction.
    #[arg(long)]
    pub mu: String,
    #[arg(long)]
    pub out: PathBuf,
    /// List every triple with 1 ≤ a+b ≤ (χ+n)/2 in pairs.csv, not only μ-pairs.
    #[arg(long)]
    pub all_triples: bool,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long)]
    pub chi: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub b: usize,
    #[arg(long)]
    pub s: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Optional output directory; the report always goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum ConstructCommand {
    /// One graph per genus with n(g)/g → θ.
    Family(FamilyArgs),
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Target ratio θ as a decimal or fraction.
    #[arg(long)]
    pub theta: String,
    #[arg(long)]
    pub g_min: u64,
    #[arg(long)]
    pub g_max: u64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub guard: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CheegerArgs {
    pub graph: PathBuf,
    /// Spectral sweep upper bound instead of the exact search.
    #[arg(long)]
    pub upper: bool,
    /// With --upper, only try the median split.
    #[arg(long, requires = "upper")]
    pub no_sweep: bool,
    #[arg(long)]
    pub guard: Option<usize>,
}

fn run(cli: Cli) -> Result<(), Failure> {
    let argv: Vec<String> = std::env::args().collect();
    match cli.command {
        Command::Sample(a) => commands::sample(&a, &argv),
        Command::Sweep(a) => commands::sweep(&a, &argv),
        Command::Bounds(a) => commands::bounds(&a, &argv),
        Command::Audit(a) => commands::audit(&a, &argv),
        Command::Construct { what: ConstructCommand::Family(a) } => commands::family(&a, &argv),
        Command::Spectra { graph } => commands::spectra(&graph),
        Command::Cheeger(a) => commands::cheeger(&a),
        Command::Split { graph } => commands::split(&graph),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

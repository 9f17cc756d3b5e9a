//! `matchpoly`: build, query and verify perfect-matching membership polynomials.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on bad input.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "matchpoly",
    version,
    about = "Multilinear polynomials of perfect-matching membership"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "MATCHPOLY_THREADS")]
    pub threads: Option<usize>,

    /// Lift the size caps that guard against exponential runs.
    #[arg(long, global = true)]
    pub unsafe_caps: bool,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the main output here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    /// Report timings on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the (minimum-weight) perfect-matching polynomial of K_{n,n}.
    Poly(GroundArgs),
    /// Print one coefficient without enumerating the covered graphs.
    Coeff(CoeffArgs),
    /// Check a polynomial against the membership oracle.
    Verify(VerifyArgs),
    /// Build the lattice of covered graphs and report its structure.
    Lattice(LatticeArgs),
    /// Count the covered graphs and check that the count is odd.
    CountCovered(GroundArgs),
}

#[derive(Args, Debug, Clone)]
pub struct GroundArgs {
    /// Side length of K_{n,n}; implied by --weights when omitted.
    #[arg(long)]
    pub n: Option<usize>,

    /// Weight file (`bipartite n`, then `i j w` lines); unit weights otherwise.
    #[arg(long)]
    pub weights: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CoeffArgs {
    #[command(flatten)]
    pub ground: GroundArgs,

    /// Graph file naming the monomial.
    #[arg(
        value_name = "GRAPH",
        required_unless_present = "monomial",
        conflicts_with = "monomial"
    )]
    pub graph: Option<PathBuf>,

    #[arg(long, value_name = "GRAPH")]
    pub monomial: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub ground: GroundArgs,

    /// Compare on every 0/1 point instead of sampling.
    #[arg(long)]
    pub exhaustive: bool,

    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Verify this polynomial file (text or JSON) instead of a freshly built one.
    #[arg(long, value_name = "FILE")]
    pub check_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LatticeArgs {
    #[arg(long, value_enum, default_value_t = Mode::Bipartite)]
    pub mode: Mode,

    /// n for K_{n,n}, or m for K_m.
    #[arg(long)]
    pub n: Option<usize>,

    /// Weight file (bipartite mode only).
    #[arg(long)]
    pub weights: Option<PathBuf>,

    /// Report on this element of the lattice.
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,

    /// Print only μ(0, G) for the --graph element.
    #[arg(long, requires = "graph")]
    pub mobius: bool,

    /// Print the level counts of the interval below this element.
    #[arg(long, value_name = "FILE")]
    pub interval: Option<PathBuf>,

    #[arg(long)]
    pub find_pentagon: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Bipartite,
    Complete,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(commands::Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(commands::Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

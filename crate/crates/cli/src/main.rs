//! `amst-lab`: command-line frontend for the amst lab.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use amst_core::principles::PrincipleId;
use amst_core::Reading;

/// Explosion principles over abstract model structures: principle
/// profiles, the theorem suite, the implication lattice and counterexamples.
///
/// Principles are named gECQ-sat, sECQ-sat, spECQ-sat, pfECQ-sat and their
/// -finsat variants.
#[derive(Parser, Debug)]
#[command(name = "amst-lab", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Search bound (size or co-size) for countable carriers.
    #[arg(long, global = true, default_value_t = amst_core::DEFAULT_BOUND)]
    pub bound: u32,
    /// Compactness reading: fwd (finsat implies sat) or iff.
    #[arg(long, global = true, default_value = "fwd", value_parser = parse_reading)]
    pub reading: Reading,
    /// Seed for random sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; defaults to the available cores.
    #[arg(long, global = true, env = "AMST_LAB_THREADS")]
    pub threads: Option<usize>,
    /// Largest |M| * 2^|L| enumerated exhaustively.
    #[arg(long, global = true, default_value_t = amst_lab::DEFAULT_BIT_BUDGET)]
    pub bit_budget: u64,
}

fn parse_reading(s: &str) -> Result<Reading, String> {
    s.parse()
}

fn parse_principle(s: &str) -> Result<PrincipleId, String> {
    s.parse()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Text,
    Json,
    Dot,
}

#[derive(Args, Debug, Clone)]
pub struct SpaceArgs {
    /// Number of models |M|.
    #[arg(long)]
    pub models: u32,
    /// Number of sentences |L|.
    #[arg(long)]
    pub sentences: u32,
    /// Sample this many random amsts instead of enumerating all of them.
    #[arg(long)]
    pub samples: Option<u64>,
    /// Keep one representative per model and sentence permutation orbit.
    #[arg(long)]
    pub canonical: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the principle profile, theorem suite and characterization
    /// cross-check of an amst read from a JSON file ("-" for stdin).
    Check {
        file: String,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// Count the amsts of a space, optionally running the theorem suite on each.
    Enumerate {
        #[command(flatten)]
        space: SpaceArgs,
        /// Run the theorem suite on every amst.
        #[arg(long)]
        theorems: bool,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// List or run the registered examples.
    Examples {
        #[arg(long, conflicts_with = "run")]
        list: bool,
        /// Run one example, or all of them when no id is given.
        #[arg(long, num_args = 0..=1, default_missing_value = "")]
        run: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// Verify the implication lattice over a space.
    Lattice {
        #[command(flatten)]
        space: SpaceArgs,
        /// Cross-check characterizations on every n-th amst; 0 disables it.
        #[arg(long, default_value_t = 64)]
        cross_check_stride: u64,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// Find the first amst where one principle holds and another fails.
    Mine {
        #[arg(long, value_parser = parse_principle)]
        from: PrincipleId,
        #[arg(long, value_parser = parse_principle)]
        to: PrincipleId,
        /// Search only this many models; with --sentences, a single space.
        #[arg(long, requires = "sentences")]
        models: Option<u32>,
        #[arg(long, requires = "models")]
        sentences: Option<u32>,
        /// Sample size for spaces over the bit budget.
        #[arg(long, default_value_t = 20_000)]
        samples: u64,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

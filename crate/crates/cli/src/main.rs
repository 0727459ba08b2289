//! `nichols`: dimension tables, verification suites, zero-tests and
//! Lie-membership queries for Nichols algebras of diagonal type.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nichols_core::braided::AlgebraError;
use nichols_core::diagram::DiagramError;
use nichols_core::engine::EngineError;
use nichols_core::roots::RootError;
use nichols_core::suites::SuiteError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Suite(#[from] SuiteError),
    #[error("{0}")]
    Output(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Suite(_) | CliError::Output(_) => 1,
            _ => 2,
        }
    }
}

/// Printed text and the exit status it carries.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

/// Exit status when a method disagrees with the oracle.
pub const EXIT_DISCREPANCY: u8 = 3;
/// Exit status when a verification suite fails.
pub const EXIT_FAILED: u8 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "nichols", version, about = "Nichols braided Lie algebras of diagonal type")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Cartan preset, `A3` together with --N, or `A3@N=2`.
    #[arg(long)]
    pub preset: Option<String>,
    /// Diagram file (JSON: rank, modulus, exponents).
    #[arg(long)]
    pub diagram: Option<PathBuf>,
    /// Order of q: an integer, a range `2..4`, or a comma list.
    #[arg(long = "N", value_name = "N")]
    pub orders: Option<String>,
    /// Total-degree cutoff for the engine; required for diagram files.
    #[arg(long)]
    pub cutoff: Option<u32>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// dim B(V) and dim L(V) by every applicable method.
    Dim {
        #[command(flatten)]
        input: InputArgs,
        /// Skip the engine even when the algebra is small enough.
        #[arg(long)]
        no_engine: bool,
    },
    /// Decide whether a word vanishes in B(V).
    ZeroTest {
        #[command(flatten)]
        input: InputArgs,
        /// Print the skew-derivation cascade.
        #[arg(long)]
        trace: bool,
        /// 1-based letters, e.g. "1 2 1".
        word: String,
    },
    /// Classify a word as a member of L(V), a non-member, or zero.
    Lie {
        #[command(flatten)]
        input: InputArgs,
        word: String,
    },
    /// Run property and cross-validation suites.
    Verify {
        /// Suite names (repeatable or comma separated); default: all.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        /// Orders of q for suites that sweep N.
        #[arg(long = "N", value_name = "N")]
        orders: Option<String>,
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Certify every closed form against the oracle, one entry per congruence class.
    Certify,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Dim { input, no_engine } => commands::dim(&input, !no_engine),
        Command::ZeroTest { input, trace, word } => commands::zero_test(&input, &word, trace),
        Command::Lie { input, word } => commands::lie(&input, &word),
        Command::Verify {
            suite,
            orders,
            max_rank,
            preset,
            seed,
        } => commands::verify(&suite, orders.as_deref(), max_rank, preset.as_deref(), seed),
        Command::Certify => commands::certify(),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

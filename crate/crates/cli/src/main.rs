//! `grext`: exact group-ring and crossed-product computations from JSON
//! inputs.
//!
//! Exit status: 0 when the run succeeds and nothing was violated, 1 when the
//! report contains violations or counterexamples, 2 on input errors.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::input::InputError;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = grext::selftest::DEFAULT_SEED;

#[derive(Debug, Parser, Serialize)]
#[command(name = "grext", version, about = "Exact complex group rings of group extensions as crossed products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct Common {
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct SearchArgs {
    /// Group file `{"group": ...}` or factor-system file (crossed product).
    pub algebra: PathBuf,
    /// Word-metric radius of the support window (N-radius for crossed products).
    #[arg(long, default_value_t = 1)]
    pub window: usize,
    /// H-radius for crossed products; defaults to `--window`.
    #[arg(long)]
    pub h_window: Option<usize>,
    /// Grid file (JSON list of coefficients) or preset: rational, gaussian,
    /// gaussian_half, signs, halves, zero.
    #[arg(long, default_value = "rational")]
    pub grid: String,
    #[arg(long, default_value_t = 2)]
    pub max_support: usize,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Check the factor-system relations on a finite window.
    ValidateFs {
        file: PathBuf,
        /// H-radius of the window.
        #[arg(long, default_value_t = 2)]
        window: usize,
        /// N-radius of the window; defaults to `--window`.
        #[arg(long)]
        n_window: Option<usize>,
    },
    /// Multiply two group-ring or crossed-product elements.
    Multiply { left: PathBuf, right: PathBuf },
    /// Transport a group-ring element of an extension into the crossed product.
    Phi {
        file: PathBuf,
        /// Map a crossed-product element back to the group ring.
        #[arg(long)]
        inverse: bool,
    },
    Involute { file: PathBuf },
    /// Invert a trivial unit or a homogeneous unit f d_h.
    Invert { file: PathBuf },
    /// Check the self-adjoint idempotent relations of a crossed-product element.
    IdempotentRelations { file: PathBuf },
    SearchZeroDivisors(SearchArgs),
    SearchUnits(SearchArgs),
    SearchIdempotents(SearchArgs),
    /// Antisymmetrized classes of one or two bilinear cocycles.
    CohomologyClass { file: PathBuf },
    /// Evaluate a central-extension element at a character `q:a1,...`.
    FiberEval {
        file: PathBuf,
        #[arg(long)]
        character: String,
    },
    /// Test idempotency of every fiber image at characters of the given orders.
    FiberScan {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,6")]
        orders: Vec<u32>,
    },
    /// Run the randomized property suite.
    Selftest,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::ValidateFs { .. } => "validate-fs",
            Command::Multiply { .. } => "multiply",
            Command::Phi { .. } => "phi",
            Command::Involute { .. } => "involute",
            Command::Invert { .. } => "invert",
            Command::IdempotentRelations { .. } => "idempotent-relations",
            Command::SearchZeroDivisors(_) => "search-zero-divisors",
            Command::SearchUnits(_) => "search-units",
            Command::SearchIdempotents(_) => "search-idempotents",
            Command::CohomologyClass { .. } => "cohomology-class",
            Command::FiberEval { .. } => "fiber-eval",
            Command::FiberScan { .. } => "fiber-scan",
            Command::Selftest => "selftest",
        }
    }
}

/// What a command produced: a verdict, whether anything was violated, and
/// the command-specific report.
pub struct Outcome {
    pub verdict: String,
    pub violations: bool,
    pub report: serde_json::Value,
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    config: &'a Cli,
    elapsed_ms: u128,
    verdict: &'a str,
    report: &'a serde_json::Value,
}

fn emit(cli: &Cli, outcome: &Outcome, elapsed_ms: u128) -> Result<(), InputError> {
    let env = Envelope {
        tool: "grext",
        version: env!("CARGO_PKG_VERSION"),
        command: cli.command.name(),
        config: cli,
        elapsed_ms,
        verdict: &outcome.verdict,
        report: &outcome.report,
    };
    let text = serde_json::to_string_pretty(&env).expect("reports serialize");
    match &cli.common.out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| InputError::plain(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = commands::run(&cli).and_then(|outcome| {
        emit(&cli, &outcome, start.elapsed().as_millis())?;
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            eprintln!("{}: {}", cli.command.name(), outcome.verdict);
            if outcome.violations {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

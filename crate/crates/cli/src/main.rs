//! `distill`: reproducible experiments around the Kronecker-sum singular
//! value bound and Werner-state distillability.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage error, 3 a
//! mathematical claim was violated (the output then carries the witness).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod emit;

#[derive(Parser, Debug)]
#[command(name = "distill", version, about = "Kronecker-sum singular value bound and Werner-state witnesses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample the feasible set across all families and record the objective.
    Sweep {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// CSV destination; the JSON sidecar goes to `<out>.json`.
        /// Without it the CSV goes to stdout and the sidecar to stderr.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multi-restart projected ascent within one family.
    Optimize {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 2000)]
        max_iters: usize,
    },
    /// The point attaining the bound, and how close it gets.
    Extremal {
        #[arg(long)]
        d: usize,
    },
    /// Classification and Schmidt-rank-2 witness search for a Werner state.
    Werner {
        #[arg(long)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = ConventionArg::Proposition)]
        convention: ConventionArg,
        /// Search two copies (requires d = 4).
        #[arg(long)]
        two_copy: bool,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Randomized checks of the supporting lemmas.
    Oracle {
        #[arg(long, value_enum)]
        lemma: Lemma,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConventionArg {
    Proposition,
    Displayed,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Lemma {
    A1,
    Dichotomy,
    EqualY,
}

/// How a command ended when it did not fail outright.
pub enum Outcome {
    Success,
    Violation,
}

/// Command failures, split by exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<distill_core::Error> for Failure {
    fn from(e: distill_core::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep { d, n, seed, out } => commands::sweep(d, n, seed, out),
        Command::Optimize { d, family, restarts, seed, max_iters } => {
            commands::optimize(d, &family, restarts, seed, max_iters)
        }
        Command::Extremal { d } => commands::extremal(d),
        Command::Werner { d, alpha, convention, two_copy, restarts, seed } => {
            commands::werner(d, alpha, convention, two_copy, restarts, seed)
        }
        Command::Oracle { lemma, n, seed } => commands::oracle(lemma, n, seed),
    };
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(3),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

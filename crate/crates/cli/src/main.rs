//! `superanalytic`: run identity suites, build reduced transformations,
//! compose and classify transformations.
//!
//! Exit status is 0 on success, 1 when a check or cocycle verdict fails and
//! 2 on a usage or input error.

mod commands;
mod io;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

#[derive(Debug, Parser)]
#[command(name = "superanalytic", version, about = "Exact calculus of superanalytic transformations on (1|1) superspace")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run identity checks on random instances.
    Verify {
        #[command(flatten)]
        sampling: Sampling,
        /// Comma-separated check or observation names, or "all".
        #[arg(long, default_value = "all", value_delimiter = ',')]
        suite: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Build the transformation of a reduced pair (g, ψ, spin).
    Reduce {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Compose two transformations given as {"outer": T, "inner": T}.
    Compose {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Reduction kind, Berezinian class and reduction conditions of a transformation.
    Classify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Random SCf and TPt chains over three superdomains with both cocycle verdicts.
    DemoCocycle {
        #[command(flatten)]
        sampling: Sampling,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
struct Sampling {
    /// Number of Grassmann generators L.
    #[arg(long, default_value_t = 4)]
    generators: usize,
    /// Largest degree in z of random component functions.
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    /// Random trials per check.
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Bound on numerators and denominators of random coefficients.
    #[arg(long, default_value_t = 5)]
    coefficient_bound: u32,
}

#[derive(Debug, Args)]
struct Input {
    /// Input JSON document; "-" reads standard input.
    #[arg(long, default_value = "-")]
    input: String,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    output: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// How a command ended, mapped onto the exit status.
enum Outcome {
    Ok,
    CheckFailed,
}

/// A usage or input problem, reported with exit status 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

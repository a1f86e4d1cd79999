//! `ics`: invariant coordinate selection from the command line.
//!
//! Exit codes: 0 success, 2 numerical failure (singular covariance, rank
//! deficiency, ...), 3 usage or parse errors. Errors are reported as one JSON
//! object on stderr.

mod commands;
mod dataset;
mod error;
mod output;
mod svg;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::{CliError, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(name = "ics", version, about = "Invariant coordinate selection via spectral and pivoted-QR routes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run ICS on a dataset and write eigenvalues, unmixing matrix, scores and diagnostics.
    Run(commands::run::RunArgs),
    /// Generate a synthetic dataset (Gaussian mixture or ICA model).
    Gen(commands::gen::GenArgs),
    /// Stability sweep over condition numbers 10^k.
    Sweep(commands::sweep::SweepArgs),
    /// Squared ICS distances of every observation.
    Distances(commands::distances::DistancesArgs),
    /// Time the QR and spectral routes on Gaussian data.
    Bench(commands::bench::BenchArgs),
}

fn report(err: &CliError) -> ExitCode {
    eprintln!("{}", err.to_json());
    ExitCode::from(err.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let err = CliError::usage("UsageError", e.to_string().trim_end());
            eprintln!("{}", err.to_json());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let outcome = match cli.command {
        Command::Run(a) => commands::run::run(&a),
        Command::Gen(a) => commands::gen::run(&a),
        Command::Sweep(a) => commands::sweep::run(&a),
        Command::Distances(a) => commands::distances::run(&a),
        Command::Bench(a) => commands::bench::run(&a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report(&e),
    }
}

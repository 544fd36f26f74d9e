//! `singlering`: exact Weingarten values and trace moments, lemma sweeps and
//! Monte-Carlo spectral experiments from the command line.
//!
//! Exit codes: 0 success, 1 computation or cross-check failure, 2 usage.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// A failed run, split by who is at fault.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit code 2.
    Usage(String),
    /// The computation or one of its internal checks failed: exit code 1.
    Compute(String),
}

impl From<singlering::Error> for Failure {
    fn from(e: singlering::Error) -> Self {
        use singlering::Error as E;
        match e {
            E::InvalidPermutation(_)
            | E::InvalidIndex(_)
            | E::InvalidProfile(_)
            | E::Config(_)
            | E::OutOfRange(_)
            | E::DegreeMismatch { .. }
            | E::SingularSystem { .. }
            | E::BudgetExceeded(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.threads)
        .build_global()
    {
        eprintln!("error: cannot start thread pool: {e}");
        return ExitCode::from(1);
    }
    let result = match &cli.command {
        Command::Wg(a) => commands::wg(a, &cli.global),
        Command::EntryMoment(a) => commands::entry_moment(a, &cli.global),
        Command::ExactMoment(a) => commands::exact_moment(a, &cli.global),
        Command::VerifyLemmas(a) => commands::verify_lemmas(a, &cli.global),
        Command::McMoment(a) => commands::mc_moment(a, &cli.global),
        Command::SpectrumExperiment(a) => commands::spectrum_experiment(a, &cli.global),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

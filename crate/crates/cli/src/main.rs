//! `taperscat`: simulate tapered-wave near-field data, image obstacles from
//! it, and run the numerical self-checks.

mod args;
mod manifest;
mod presets;
mod reconstruct;
mod simulate;
mod validate;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Exit status classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    ValidationFailed = 1,
    BadArguments = 2,
    Runtime = 3,
}

/// An error paired with the exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn usage(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            status: Status::BadArguments,
            error: error.into(),
        }
    }

    pub fn runtime(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            status: Status::Runtime,
            error: error.into(),
        }
    }
}

pub type CliResult<T> = Result<T, Failure>;

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("TAPERSCAT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n >= 1).ok_or_else(|| {
        Failure::usage(anyhow::anyhow!(
            "TAPERSCAT_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(Failure::runtime)
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match cli.command {
        Command::Simulate(a) => simulate::run(a),
        Command::Reconstruct(a) => reconstruct::run(a),
        Command::Validate(a) => validate::run(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.status as u8)
        }
    }
}

//! `qes`: solve, verify, sweep and tabulate quasi-exactly solvable radial
//! models from the command line.
//!
//! Exit codes: 0 success, 2 no admissible root, 3 verification failure,
//! 64 usage error.

mod commands;
mod document;
mod errata;
mod request;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "qes", version, about = "Quasi-exactly solvable radial Schrödinger models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve for the tuned parameter and print a JSON document
    Solve(commands::SolveArgs),
    /// Solve, then check every root against the numerical oracle
    Verify(commands::VerifyArgs),
    /// Re-solve while one fixed parameter varies; CSV output
    Sweep(commands::SweepArgs),
    /// Text table of levels n = 0..n_max
    Table(commands::TableArgs),
    /// Sample a solution's wavefunction and residual; CSV output
    Wavefunction(commands::WavefunctionArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    NoRoot = 2,
    VerificationFailed = 3,
    Usage = 64,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Io(e) => e.fmt(f),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn run(out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Exit::Usage as u8 } else { Exit::Success as u8 };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => commands::solve(a, out, err),
        Command::Verify(a) => commands::verify_cmd(a, out, err),
        Command::Sweep(a) => commands::sweep(a, out),
        Command::Table(a) => commands::table(a, out),
        Command::Wavefunction(a) => commands::wavefunction(a, out, err),
    };
    match result {
        Ok(exit) => exit as u8,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                CliError::Usage(_) => Exit::Usage as u8,
                CliError::Io(_) => 1,
            }
        }
    }
}

fn main() -> ExitCode {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = stderr.lock();
    let code = run(&mut out, &mut err);
    let _ = out.flush();
    ExitCode::from(code)
}

//! `expcert` command-line tool: certify candidate zeros and generate them.

mod certify;
mod solve;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

/// Exit status for malformed input of any kind.
const INPUT_ERROR: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "expcert", version, about = "Alpha-theoretic certification of approximate zeros")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify candidate points against a system.
    Certify(certify::CertifyArgs),
    /// Generate candidate points by Taylor truncation and homotopy continuation.
    Solve(solve::SolveArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Rational,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Writes to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Caps the global thread pool from `EXPCERT_THREADS`.
fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("EXPCERT_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .with_context(|| format!("EXPCERT_THREADS must be a positive integer, got `{value}`"))?;
    if threads == 0 {
        bail!("EXPCERT_THREADS must be a positive integer, got `{value}`");
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("cannot configure the thread pool")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Certify(args) => certify::run(&args),
        Command::Solve(args) => solve::run(&args),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

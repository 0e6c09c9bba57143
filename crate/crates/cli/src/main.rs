mod commands;
mod specs;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde::Serialize;

use commands::{Command, Outcome};

#[derive(Parser, Debug)]
#[command(
    name = "rfseries",
    version,
    about = "Random Fourier series driven by stationary Gaussian noise: fGn spectra, path synthesis, boundedness criteria"
)]
struct Cli {
    /// Worker threads for Monte Carlo replications.
    #[arg(long, global = true, env = "RFSERIES_PARALLEL")]
    parallel: Option<usize>,

    /// Write the result document here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

/// Timing and environment details; excluded from reproducibility comparisons.
#[derive(Serialize)]
struct Metadata {
    wall_clock_seconds: f64,
    threads: usize,
}

#[derive(Serialize)]
struct ResultRecord<'a> {
    command: &'a str,
    version: &'a str,
    config: serde_json::Value,
    outputs: serde_json::Value,
    provenance: serde_json::Value,
    metadata: Metadata,
}

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o failure: {m}"),
        }
    }
}

impl From<rfseries::Error> for CliError {
    fn from(e: rfseries::Error) -> Self {
        if e.is_validation() {
            CliError::Validation(e.to_string())
        } else {
            CliError::Numerical(e.to_string())
        }
    }
}

fn write_document(record: &ResultRecord, path: Option<&PathBuf>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(record).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(k) = cli.parallel {
        if k == 0 {
            return Err(CliError::Validation("--parallel must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| CliError::Numerical(e.to_string()))?;
    }
    let start = Instant::now();
    let name = cli.command.name();
    let Outcome {
        config,
        outputs,
        provenance,
    } = cli.command.run()?;
    let record = ResultRecord {
        command: name,
        version: env!("CARGO_PKG_VERSION"),
        config,
        outputs,
        provenance,
        metadata: Metadata {
            wall_clock_seconds: start.elapsed().as_secs_f64(),
            threads: rayon::current_num_threads(),
        },
    };
    write_document(&record, cli.output.as_ref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rfseries: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

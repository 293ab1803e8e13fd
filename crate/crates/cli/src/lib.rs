//! Library side of `relq`: reproducible runs of the extended oracle
//! algorithms, the 50% rule battery, backdating, and the POR constraint machine.
//!
//! Exit codes: 0 success, 1 a reported claim failed or the machine jammed,
//! 2 usage or IO error.

pub mod commands;
pub mod network_io;
pub mod output;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use relq_core::trials::DEFAULT_SEED;

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "relq",
    version,
    about = "Extended Deutsch, Grover and Simon runs with 50% advance-knowledge comparisons"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Master seed; the RELQ_SEED environment variable takes precedence.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record wall-clock runtimes (makes output vary between runs).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Deutsch's problem for one or all four functions, or the extended form.
    Deutsch(commands::DeutschArgs),
    /// Grover search, conventional, extended, or as the row game.
    Grover(commands::GroverArgs),
    /// Simon's hidden-string problem.
    Simon(commands::SimonArgs),
    /// Sample motions of a POR network machine.
    Machine(commands::MachineArgs),
    /// The two-part y = NOT x toy machine.
    NotMachine(commands::NotMachineArgs),
    /// Quantum cost against a classical algorithm knowing half the answer.
    Rule50(commands::Rule50Args),
    /// Backdate readings of the extended Grover algorithm to t = 0.
    Backdate(commands::BackdateArgs),
}

/// Failure classes mapped onto exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Jammed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Jammed(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

impl From<relq_core::Error> for CliError {
    fn from(e: relq_core::Error) -> Self {
        match e {
            relq_core::Error::Jammed(_) => CliError::Jammed(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Jammed(m) => f.write_str(m),
        }
    }
}

fn effective_seed(flag: u64) -> Result<u64, CliError> {
    match std::env::var("RELQ_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| {
            CliError::Usage(format!("RELQ_SEED=`{s}` is not an unsigned 64-bit integer"))
        }),
        Err(std::env::VarError::NotPresent) => Ok(flag),
        Err(e) => Err(CliError::Usage(format!("RELQ_SEED: {e}"))),
    }
}

/// Runs one invocation; `Ok(false)` when a checked claim failed.
pub fn run(cli: Cli) -> Result<bool, CliError> {
    let seed = effective_seed(cli.global.seed)?;
    let ctx = commands::Context {
        seed,
        timings: cli.global.timings,
        started: Instant::now(),
    };
    let out = commands::dispatch(&cli.command, &ctx)?;
    let text = out.render(cli.global.format);
    match &cli.global.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    Ok(!out.failed)
}

//! Command-line driver for the plane-wave eigensolver.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

pub mod commands;
pub mod config;
pub mod demo;
pub mod error;
pub mod output;
pub mod run;

use config::{Problem, RunArgs, RunConfig};
use error::{CliError, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "PLANEWAVE_QM_THREADS";

#[derive(Debug, Parser)]
#[command(name = "planewave-qm", version, about = "Plane-wave spectral eigensolver for Schrödinger and Dirac bound states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for eigenstates, check them and write the requested artifacts.
    Solve(RunArgs),
    /// Check states from a states CSV, or solved in-process.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        /// States CSV written by `solve --output states-csv`.
        #[arg(long)]
        states: Option<PathBuf>,
    },
    /// Hydrogen 1s momentum distribution against the closed form.
    Momdist {
        #[command(flatten)]
        run: RunArgs,
        /// Use the exact ground state instead of the solved one.
        #[arg(long)]
        analytic: bool,
    },
    /// Run the fixed acceptance suite and print a table.
    Demo {
        #[arg(long, default_value = "demo-out")]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Solve(args) => commands::cmd_solve(&RunConfig::resolve(&args, Problem::Schrodinger)?),
        Command::Verify { run, states } => {
            commands::cmd_verify(&RunConfig::resolve(&run, Problem::Schrodinger)?, states.as_deref())
        }
        Command::Momdist { run, analytic } => {
            commands::cmd_momdist(&RunConfig::resolve(&run, Problem::HydrogenRadial)?, analytic)
        }
        Command::Demo { out_dir, seed } => {
            let rows = demo::run_demo(&out_dir, seed)?;
            demo::print_table(&rows);
            println!("artifacts in {}", out_dir.display());
            Ok(if rows.iter().all(|r| r.passed()) {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Config(format!("{THREADS_ENV} must be a positive integer, got `{value}`")))?;
    // a pool may already exist when called twice in one process
    if rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().is_err() {
        log::debug!("global thread pool already initialized");
    }
    Ok(())
}

/// Parse `args` and run; returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match configure_threads().and_then(|_| dispatch(cli.command)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

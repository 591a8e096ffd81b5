//! Config-driven front end for `macrowave`.
//!
//! Every run reads one TOML file, applies `--set key=value` overrides and
//! writes a JSON envelope (`<prefix>.json`), a CSV table (`<prefix>.csv`) and
//! the effective config (`<prefix>.config.toml`). Exit status: 0 on success,
//! 2 for configuration errors, 3 for physics-domain errors, 1 for I/O failures.

pub mod commands;
pub mod config;
pub mod envelope;
pub mod error;
pub mod reference;

use clap::{Args, Parser, Subcommand};
use commands::{execute, Command, Outcome};
use config::RunConfig;
use envelope::{write_outputs, Written};
use error::CliError;
use macrowave::par::Exec;
use std::path::{Path, PathBuf};

/// Environment variable that overrides the configured output directory.
pub const OUTPUT_DIR_ENV: &str = "MACROWAVE_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "macrowave",
    version,
    about = "Macroscopic matter-wave simulations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Exact and first-order wave number shifts and macroscopic wavelengths.
    Dispersion(RunArgs),
    /// Two-grid fringe pattern against grid separation.
    Fringes(RunArgs),
    /// Energy-swept transmission bands.
    Sweep(RunArgs),
    /// Beat envelope of a two-length sweep.
    Beats(RunArgs),
    /// Split-step evolution of an amplitude field.
    Evolve(RunArgs),
    /// Oscillator transition matrix elements.
    Matrix(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// TOML run configuration.
    #[arg(short, long)]
    pub config: PathBuf,
    /// Override a config value, e.g. `--set beam.energy_ev=600`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    /// Output directory; takes precedence over the environment and config.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Run data-parallel loops on one thread.
    #[arg(long)]
    pub sequential: bool,
    /// Do not print the envelope.
    #[arg(short, long)]
    pub quiet: bool,
}

impl Sub {
    pub fn split(&self) -> (Command, &RunArgs) {
        match self {
            Sub::Dispersion(a) => (Command::Dispersion, a),
            Sub::Fringes(a) => (Command::Fringes, a),
            Sub::Sweep(a) => (Command::Sweep, a),
            Sub::Beats(a) => (Command::Beats, a),
            Sub::Evolve(a) => (Command::Evolve, a),
            Sub::Matrix(a) => (Command::Matrix, a),
        }
    }
}

pub fn exec_mode(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

/// Output directory: flag, then environment, then config, then `.`.
pub fn output_dir(flag: Option<&Path>, env: Option<String>, cfg: &RunConfig) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| env.filter(|s| !s.is_empty()).map(PathBuf::from))
        .or_else(|| cfg.output.dir.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

/// Loads the config, runs the command and writes its files.
pub fn run(cmd: Command, args: &RunArgs) -> Result<(Outcome, Written), CliError> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", args.config.display())))?;
    let cfg = RunConfig::from_toml_with(&text, &args.overrides)?;
    let mut outcome = execute(cmd, &cfg, exec_mode(args.sequential))?;
    let dir = output_dir(
        args.out_dir.as_deref(),
        std::env::var(OUTPUT_DIR_ENV).ok(),
        &cfg,
    );
    let prefix = cfg
        .output
        .prefix
        .clone()
        .unwrap_or_else(|| cmd.name().to_string());
    let written = write_outputs(&dir, &prefix, &mut outcome.envelope, Some(&outcome.table))?;
    Ok((outcome, written))
}

/// Runs a parsed command line and returns the process exit status.
pub fn main_with(cli: Cli) -> i32 {
    let (cmd, args) = cli.command.split();
    match run(cmd, args) {
        Ok((outcome, _)) => {
            if !args.quiet {
                match outcome.envelope.to_json() {
                    Ok(json) => println!("{json}"),
                    Err(e) => eprintln!("{e}"),
                }
            }
            0
        }
        Err(e) => {
            eprintln!("macrowave {}: {e}", cmd.name());
            e.exit_code()
        }
    }
}

//! Experiment driver for `hsd-core`: configuration files, presets, built-in
//! initial data and the `hsd` command line.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod data;
pub mod error;
pub mod presets;
pub mod run;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use config::{Experiment, ExperimentConfig, InitialDataSpec, RawConfig};
pub use data::builtin_initial_data;
pub use error::{CliError, ConfigError};
pub use run::{run_experiment, write_outcome, Outcome};

#[derive(Debug, Parser)]
#[command(name = "hsd", version, about = "Front-tracking experiments for the wedge-flow systems")]
pub struct Cli {
    /// Worker threads for sweep cells (0: one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Output directory (overrides `output_dir` in the config).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed (overrides `seed` in the config).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the experiment described by a config file.
    Run {
        config: PathBuf,
        /// `section.key=value` overrides.
        overrides: Vec<String>,
    },
    /// Run a named preset.
    Preset {
        /// One of optimal_rate, global_rate, riemann_single, front_tracking_run,
        /// asymptotic_checks, semigroup_check, acceptance.
        name: String,
        /// `section.key=value` overrides.
        overrides: Vec<String>,
    },
}

/// Resolves, runs and writes one member; returns the number of failed checks.
fn run_member(raw: &RawConfig, overrides: &[String], cli: &Cli, dir: &Path) -> Result<usize, CliError> {
    let mut raw = raw.clone();
    for o in overrides {
        raw.apply_override(o)?;
    }
    let mut cfg = ExperimentConfig::from_raw(&raw)?;
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    cfg.output_dir = Some(dir.to_path_buf());
    let outcome = run_experiment(&cfg)?;
    write_outcome(dir, &cfg, &outcome)?;
    Ok(outcome.failed_checks())
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let default_dir = PathBuf::from("hsd-output");
    let (members, overrides) = match &cli.command {
        Command::Run { config, overrides } => {
            let raw = RawConfig::from_file(config)?;
            let probe = ExperimentConfig::from_raw(&raw).ok().and_then(|c| c.output_dir);
            let dir = cli.output.clone().or(probe).unwrap_or(default_dir);
            (vec![(dir, raw)], overrides)
        }
        Command::Preset { name, overrides } => {
            let texts = presets::preset(name)
                .ok_or_else(|| ConfigError::new("preset", format!("unknown preset '{name}' (known: {})", presets::NAMES.join(", "))))?;
            let root = cli.output.clone().unwrap_or(default_dir);
            let members = texts
                .into_iter()
                .map(|(sub, text)| Ok((if sub.is_empty() { root.clone() } else { root.join(sub) }, RawConfig::parse(&text)?)))
                .collect::<Result<Vec<_>, ConfigError>>()?;
            (members, overrides)
        }
    };
    let mut failed = 0;
    for (dir, raw) in &members {
        failed += run_member(raw, overrides, cli, dir)?;
    }
    if failed > 0 {
        return Err(CliError::Acceptance { failed });
    }
    Ok(())
}

/// Entry point of the `hsd` binary; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return 2;
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

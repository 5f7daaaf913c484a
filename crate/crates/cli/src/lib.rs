//! Command-line experiment runner: each subcommand reads a JSON config,
//! runs one experiment and writes `report.json` plus CSV tables.

// `!(x <= bound)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::{config_base, Context, Outcome};
pub use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "rieszlab", version, about = "Dimension experiments for Riesz products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON config; omitted means all defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory for report.json and CSV tables.
    #[arg(long, global = true, default_value = "rieszlab-out")]
    pub out: PathBuf,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Dimension bounds and energies of a circle product.
    CircleDim,
    /// Dimension bounds, spectrum and energies of a sphere product.
    SphereDim,
    /// Search for a degree-j polynomial with a large certified delta.
    RwSearch,
    /// Compare a sphere product with the average of its circle slices.
    SliceCheck,
    /// Pluriharmonic measure on the torus and its dimension evidence.
    PlhDemo,
    /// Correlation dimension of uniform samples against known values.
    Calibrate,
}

macro_rules! dispatch {
    ($cli:expr, $ctx:expr, $run:path, $config:ty) => {{
        let mut cfg: $config = config::load($cli.common.config.as_deref())?;
        if let Some(seed) = $cli.common.seed {
            cfg.seed = seed;
        }
        $run(cfg, $ctx)
    }};
}

/// Runs one subcommand. Invariant failures are returned as errors after the
/// report has been written.
pub fn execute(cli: &Cli) -> Result<String> {
    if let Some(n) = cli.common.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let ctx = Context {
        base: config_base(cli.common.config.as_deref()),
        out: cli.common.out.clone(),
    };
    let Outcome { summary, failures } = match cli.command {
        Command::CircleDim => dispatch!(cli, &ctx, commands::circle_dim, config::CircleDimConfig),
        Command::SphereDim => dispatch!(cli, &ctx, commands::sphere_dim, config::SphereDimConfig),
        Command::RwSearch => dispatch!(cli, &ctx, commands::rw_search, config::RwSearchConfig),
        Command::SliceCheck => dispatch!(cli, &ctx, commands::slice_check, config::SliceCheckConfig),
        Command::PlhDemo => dispatch!(cli, &ctx, commands::plh_demo, config::PlhDemoConfig),
        Command::Calibrate => dispatch!(cli, &ctx, commands::calibrate, config::CalibrateConfig),
    }?;
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(CliError::Invariant(failures.join("; ")))
    }
}

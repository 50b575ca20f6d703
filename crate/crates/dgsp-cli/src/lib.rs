// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Batch runner for the `dgsp` command: config parsing, scans over chain
//! lengths, CSV/JSON outputs and SVG plots.

pub mod commands;
pub mod config;
pub mod error;
pub mod io;
pub mod workers;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use dgsp_core::fit::Axes;

pub use config::ExperimentConfig;
pub use error::{CliError, CliResult};

use commands::plot::PlotKind;

#[derive(Debug, Parser)]
#[command(name = "dgsp", version, about = "Dissipative ground-state preparation experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quasi-free covariance dynamics and decay-rate fits over a size scan.
    QuasifreeRun { config: PathBuf },
    /// Exact density-matrix dynamics and mixing times over a size scan.
    DenseRun { config: PathBuf },
    /// Liouvillian gaps, non-Hermitian spectra and mixing bounds.
    GapScan { config: PathBuf },
    /// String order parameter dynamics and ground-state sweep.
    SopRun { config: PathBuf },
    /// Oscillator-norm decay under the adjoint dynamics.
    OscillatorCheck { config: PathBuf },
    /// Adiabatic versus dissipative preparation on an ANNNI ring.
    AspCompare { config: PathBuf },
    /// Scaling fit of two CSV columns; prints JSON.
    Fit {
        csv: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, value_enum, default_value = "loglog")]
        axes: FitAxes,
        /// Also write the JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a CSV written by this tool as an SVG line plot.
    Plot {
        csv: PathBuf,
        #[arg(long, value_enum, default_value = "line")]
        kind: PlotKind,
        #[arg(long)]
        out: PathBuf,
        /// Columns to draw; defaults depend on the file.
        #[arg(long, value_delimiter = ',')]
        y: Vec<String>,
        #[arg(long)]
        title: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum FitAxes {
    Loglog,
    Semilogx,
}

impl From<FitAxes> for Axes {
    fn from(a: FitAxes) -> Self {
        match a {
            FitAxes::Loglog => Axes::LogLog,
            FitAxes::Semilogx => Axes::SemiLogX,
        }
    }
}

fn with_config(
    path: &Path,
    f: fn(&ExperimentConfig, usize) -> CliResult<Vec<String>>,
) -> CliResult<String> {
    let cfg = ExperimentConfig::load(path)?;
    let workers = workers::worker_count()?;
    let files = f(&cfg, workers)?;
    Ok(format!("wrote {} files to {}", files.len(), cfg.output_dir.display()))
}

/// Runs one command and returns the text to print on success.
pub fn execute(cmd: &Command) -> CliResult<String> {
    match cmd {
        Command::QuasifreeRun { config } => with_config(config, commands::quasifree::run),
        Command::DenseRun { config } => with_config(config, commands::dense::run),
        Command::GapScan { config } => with_config(config, commands::gap::run),
        Command::SopRun { config } => with_config(config, commands::sop::run),
        Command::OscillatorCheck { config } => with_config(config, commands::oscillator::run),
        Command::AspCompare { config } => with_config(config, commands::adiabatic::run),
        Command::Fit { csv, x, y, axes, out } => {
            let rec = commands::fit::fit_columns(csv, x, y, (*axes).into())?;
            if let Some(p) = out {
                io::write_json(p, &rec)?;
            }
            Ok(serde_json::to_string_pretty(&rec).expect("fit record serializes"))
        }
        Command::Plot { csv, kind, out, y, title } => {
            commands::plot::plot_file(csv, *kind, y, out, title.as_deref())?;
            Ok(format!("wrote {}", out.display()))
        }
    }
}

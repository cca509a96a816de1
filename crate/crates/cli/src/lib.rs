//! `nrh`: validate, classify and construct infinitesimal models, and run the
//! coordinate checks.
//!
//! Exit codes: 0 success, 2 validation or constraint failure, 1 I/O, schema
//! or usage errors.


pub mod commands;
pub mod coords;
pub mod model_file;
pub mod report;

use clap::{Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "nrh", version, about = "Infinitesimal models of Lorentzian spaces with parallel skew torsion")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for sampled points.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Absolute tolerance for numeric residuals.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Sweep the default parameter grid.
    #[arg(long, global = true)]
    pub grid: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the algebraic identities of a model file.
    Validate { path: PathBuf },
    /// Locate a model in the list of holonomy cases.
    Classify { path: PathBuf },
    /// Build the transvection algebra and its Killing form.
    Transvection { path: PathBuf },
    /// Build a model of a named family.
    Construct {
        #[arg(long)]
        family: String,
        /// `name=value`; values are rationals, `[[a,b],[c,d]]` or names.
        #[arg(long = "param")]
        params: Vec<String>,
        /// Write the model file here instead of stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// List shipped models, optionally of one dimension.
    Catalog {
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Floating-point checks on coordinate metrics.
    Coords {
        #[command(subcommand)]
        metric: coords::CoordsMetric,
    },
}

/// Failure classes mapped onto exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Schema { path: String, source: model_file::SchemaError },
}

pub enum Outcome {
    Pass,
    Fail,
}

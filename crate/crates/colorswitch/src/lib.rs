//! Command-line driver for the colorswitch simulator: run configuration,
//! parallel sweeps, CSV/JSON result files and polynomial fits.

pub mod cli;
pub mod config;
pub mod error;
pub mod fit;
pub mod output;
pub mod sweep;
pub mod validate;

pub use colorswitch_core as core;
pub use config::{FlatConfig, NoiseSpec, RunConfig};
pub use error::CliError;
pub use fit::{fit, FitPoint, FitResult, FitTarget};
pub use output::{CsvRow, Sidecar};
pub use sweep::{run_point, run_sweep, SweepResult};

//! Experiment driver behind the `socrank` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod tables;

pub use config::ExperimentConfig;
pub use error::{CliError, Result};

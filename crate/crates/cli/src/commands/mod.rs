pub mod analyze;
pub mod ingest;
pub mod rank;
pub mod summary;
pub mod synth;

use std::fs;
use std::path::Path;

use crate::error::{CliError, Result};

pub(crate) fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

/// Formats a float with a fixed number of decimals, the only float format
/// used in output files.
pub(crate) fn fixed(x: f64, decimals: usize) -> String {
    format!("{x:.decimals$}")
}

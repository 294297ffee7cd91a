use std::path::PathBuf;

use thiserror::Error;

/// Exit status for invalid input files or arguments.
pub const EXIT_INVALID: i32 = 2;
/// Exit status when the naive sum is refused by the feasibility guard.
pub const EXIT_GUARD: i32 = 3;
/// Exit status for failures writing output.
pub const EXIT_IO: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: malformed spline JSON: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{path}: invalid spline: {source}")]
    InvalidSpline { path: PathBuf, source: spline_product::Error },
    #[error("{0}")]
    Compute(#[from] spline_product::Error),
    #[error("parameter {value} outside the family range {min}..={max}")]
    ParameterRange { value: u32, min: u32, max: u32 },
    #[error("grid needs at least 2 points, got {0}")]
    GridPoints(usize),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("output failed: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(spline_product::Error::NaiveInfeasible { .. }) => EXIT_GUARD,
            CliError::Write { .. } | CliError::Csv(_) | CliError::Io(_) => EXIT_IO,
            _ => EXIT_INVALID,
        }
    }
}

//! Command-line front end for `tropsev-core`: JSON formats, SVG pictures,
//! parallel Severi degree counts and seeded invariant suites.

pub mod check;
pub mod cli;
pub mod json;
pub mod parallel;
pub mod svg;

use tropsev_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("invariant check failed: {0}")]
    Invariant(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 for malformed input, 2 for a violated precondition, 3 for a bug.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) | CliError::Io(_) | CliError::Core(Error::Parse(_)) => 1,
            CliError::Core(Error::Internal(_)) | CliError::Invariant(_) => 3,
            CliError::Core(_) => 2,
        }
    }
}

//! Library backing the `condsteer` binary: named state families, fixed
//! measurement settings, analysis documents, CSV sweeps and bisection
//! threshold finding.

pub mod analyze;
pub mod families;
pub mod output;
pub mod predicate;
pub mod statefile;
pub mod sweep;
pub mod threshold;

use thiserror::Error;

/// CLI-level failure, split by exit code: validation problems exit 1,
/// numerical failures (non-monotone brackets, unobtainable outcomes) exit 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl From<condsteer::Error> for CliError {
    fn from(e: condsteer::Error) -> Self {
        match e {
            condsteer::Error::ZeroProbabilityOutcome => CliError::Numerical(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

use std::process::ExitCode;

use qwkb::QwkbError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] QwkbError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv encoding: {0}")]
    Csv(#[from] csv::Error),
    #[error("json encoding: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for usage and configuration problems, 3 for capacity and
    /// convergence limits.
    pub fn exit_code(&self) -> ExitCode {
        let code = match self {
            CliError::Core(QwkbError::Capacity { .. } | QwkbError::Convergence { .. }) => 3,
            _ => 2,
        };
        ExitCode::from(code)
    }
}

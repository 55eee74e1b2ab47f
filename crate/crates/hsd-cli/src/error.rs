use std::path::PathBuf;

use thiserror::Error;

/// A configuration problem, located by its `section.key` path.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{field}: {message}")]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError { field: field.into(), message: message.into() }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),
    #[error("solver error in {cell}: {source}")]
    Solver { cell: String, source: hsd_core::Error },
    #[error("{failed} acceptance check(s) failed")]
    Acceptance { failed: usize },
    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn solver(cell: impl Into<String>, source: hsd_core::Error) -> Self {
        CliError::Solver { cell: cell.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Solver { .. } => 3,
            CliError::Acceptance { .. } => 4,
            CliError::Io { .. } => 1,
        }
    }
}

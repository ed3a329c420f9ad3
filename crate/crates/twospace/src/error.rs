use std::path::PathBuf;

use twospace_core::{Error as CoreError, Violation};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid scheme:\n{}", list(.0))]
    Invalid(Vec<Violation>),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(CoreError),
}

fn list(v: &[Violation]) -> String {
    v.iter().map(|v| format!("  - {v}")).collect::<Vec<_>>().join("\n")
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidScheme(v) => CliError::Invalid(v),
            CoreError::InvalidConfig(m) => CliError::Usage(m),
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    /// 0 success, 1 validation failure, 2 I/O or parse error, 3 usage error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) | CliError::Core(_) => 1,
            CliError::Io { .. } | CliError::Parse(_) => 2,
            CliError::Usage(_) => 3,
        }
    }
}

use std::path::PathBuf;

/// Errors from the experiment layer, each with a stable exit code.
#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{path}:{line}:{column}: {message}")]
    ConfigSyntax { path: String, line: usize, column: usize, message: String },
    #[error("invalid config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("bracket not found: {0}")]
    BracketNotFound(String),
    #[error(transparent)]
    Core(#[from] surfacelab_core::Error),
}

impl LabError {
    /// 0 success, 1 verification, 2 config, 3 I/O, 4 estimation bracket.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Verification(_) => 1,
            LabError::ConfigSyntax { .. } | LabError::Config(_) | LabError::Core(_) => 2,
            LabError::Io { .. } => 3,
            LabError::BracketNotFound(_) => 4,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        LabError::Io { path: path.into(), source }
    }
}

pub type Result<T, E = LabError> = std::result::Result<T, E>;

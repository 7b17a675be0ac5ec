use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] qgchi_core::Error),
    /// A computed result broke a bound it is guaranteed to satisfy.
    #[error("bound violation: {0}")]
    Violation(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        Self::Input(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }

    /// 1 for a detected bound violation, 2 for bad input or IO.
    pub fn exit_code(&self) -> i32 {
        use qgchi_core::Error as E;
        match self {
            Self::Violation(_) => 1,
            Self::Core(E::NoiseExceedsPlan { .. } | E::CountCheck(_)) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

use std::path::PathBuf;

/// Errors produced by the library and the command-line front end.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("polytope is unbounded: a nonzero x >= 0 satisfies Ax = 0")]
    Unbounded,

    #[error("point is not feasible: {0}")]
    Infeasible(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("unsupported scenario shape: {0}")]
    WrongShape(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{}:{line}:{column}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("cannot read {}: {source}", path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

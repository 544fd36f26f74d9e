use thiserror::Error;

/// Errors raised by the exact and Monte-Carlo routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid index tuple: {0}")]
    InvalidIndex(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("Gram system is singular for k = {k}, n = {n} (need n >= k)")]
    SingularSystem { k: usize, n: usize },

    #[error("integer overflow while counting monotone factorizations (k = {k}, r = {r})")]
    Overflow { k: usize, r: usize },

    #[error("subset is not closed under composition")]
    NotASubgroup,

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("cross-check failure: {0}")]
    CrossCheck(String),

    #[error("eigensolver did not converge (seed {seed:?})")]
    EigenNoConvergence { seed: Option<u64> },

    #[error("singular value decomposition did not converge")]
    SvdNoConvergence,

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Config(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

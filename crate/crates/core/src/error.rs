use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient variable count mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("step budget exhausted: used {used} of {limit} steps")]
    BudgetExceeded { used: u64, limit: u64 },

    #[error("polynomial is not real-rooted: max imaginary part {max_imag:e}")]
    NotRealRooted { max_imag: f64 },

    #[error("inexact division")]
    InexactDivision,

    #[error("cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

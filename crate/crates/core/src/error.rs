use thiserror::Error;

/// Errors produced by strategy construction, evaluation and the LP oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A segment past the end of an explicit prefix without a tail was requested.
    #[error("segment x_{index} is not defined (explicit prefix has {available} segments)")]
    OutOfRange { index: i64, available: usize },

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("every program up to n = {n_max} is infeasible")]
    OracleHorizonTooSmall { n_max: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

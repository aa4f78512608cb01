use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left} vs {right}")]
    DimensionMismatch {
        op: &'static str,
        left: String,
        right: String,
    },
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("outcome outside the reference support: {0}")]
    CausalityViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn mismatch(op: &'static str, left: impl ToString, right: impl ToString) -> Error {
    Error::DimensionMismatch {
        op,
        left: left.to_string(),
        right: right.to_string(),
    }
}

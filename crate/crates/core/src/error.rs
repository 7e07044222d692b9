use thiserror::Error;

/// Errors raised while building rings or evaluating formulas.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("capacity exceeded: {what} needs {requested}, cap is {cap}")]
    Capacity { what: &'static str, requested: u128, cap: u128 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} out of range for ring of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("semantic error at byte {offset}: {message}")]
    Semantic { offset: usize, message: String },

    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for syntax and semantic errors produced by the expression parser.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::Semantic { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

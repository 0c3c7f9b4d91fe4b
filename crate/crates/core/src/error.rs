use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: &'static str,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: &'static str) -> Self {
        ParseError { position, message }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("size {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("series truncated at order {have}, need order {need}")]
    InsufficientOrder { have: usize, need: usize },
    #[error("division by a series whose constant term is not invertible")]
    NonUnitConstant,
    #[error("square root needs constant term 1")]
    SqrtConstant,
    #[error("polynomial quotient is not exact")]
    InexactQuotient,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// A parameter outside the domain of a function or table.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("parameter error: {0}")]
pub struct ParamError(String);

impl ParamError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }
}

#[derive(Debug, Error)]
pub enum GenerateError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
    #[error("triple limit {limit} is smaller than the minimal consistent prefix ({minimal} triples)")]
    LimitTooSmall { limit: u64, minimal: u64 },
}

#[derive(Debug, Error)]
pub enum NTriplesError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

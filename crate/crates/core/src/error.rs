use thiserror::Error;

/// Errors raised by the toolkit's operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("edge {{{0}, {1}}} is not in the graph")]
    MissingEdge(usize, usize),
    #[error("size limit exceeded: {what} is {size}, limit is {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal invariant broken: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn size(what: &'static str, size: usize, limit: usize) -> Self {
        Error::SizeLimit { what, size, limit }
    }

    pub(crate) fn check_size(what: &'static str, size: usize, limit: usize) -> Result<()> {
        if size > limit {
            Err(Error::size(what, size, limit))
        } else {
            Ok(())
        }
    }

    /// True for errors that should map to a usage/size exit status.
    pub fn is_size_limit(&self) -> bool {
        matches!(self, Error::SizeLimit { .. })
    }
}

//! The crate-wide error type.

use thiserror::Error;

/// Coarse classification used for process exit codes and FFI status codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input text or file.
    Parse,
    /// Well-formed input that violates an operation's precondition.
    Semantic,
    /// An internal invariant failed; indicates a bug.
    Internal,
}

/// Errors reported by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Syntax error in a name, word, regex or file.
    #[error("parse error at position {position} in {input:?}: {message}")]
    Parse {
        /// The offending input.
        input: String,
        /// Character offset of the error.
        position: usize,
        /// What went wrong.
        message: String,
    },
    /// Structurally invalid automaton file or value.
    #[error("invalid automaton: {0}")]
    Schema(String),
    /// A word was required to be right-non-shadowing.
    #[error("word `{0}` is not right-non-shadowing")]
    NotRns(String),
    /// A name lies outside the automaton's pool.
    #[error("name `{name}` is outside the pool {{{pool}}}")]
    NameOutsidePool {
        /// The offending name.
        name: String,
        /// The pool, comma separated.
        pool: String,
    },
    /// The pool has too few names for the requested operation.
    #[error("pool too small: {0}")]
    PoolTooSmall(String),
    /// A regular expression failed the grammar side conditions.
    #[error("not a regular deallocation expression: {0}")]
    NotRegdex(String),
    /// An automaton failed NDA validation.
    #[error("not a valid NDA: {0}")]
    InvalidNda(String),
    /// Any other violated precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A post-condition check failed.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(input: &str, position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            position,
            message: message.into(),
        }
    }

    pub(crate) fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }

    /// The coarse class of this error.
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } | Error::Schema(_) => ErrorKind::Parse,
            Error::Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Semantic,
        }
    }
}

/// Result alias for library operations.
pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors raised by the algebra toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An input table or system violates an algebraic axiom.
    #[error("validation failed: {0}")]
    Validation(String),

    /// A size exceeds a configured cap.
    #[error("{what} of size {size} exceeds the cap of {cap}{hint}")]
    Cap {
        what: &'static str,
        size: usize,
        cap: usize,
        hint: &'static str,
    },

    /// An argument lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A precondition of an operation does not hold.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Shapes of two arguments do not agree.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A text file could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An internal invariant failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn cap(what: &'static str, size: usize, cap: usize) -> Self {
        Error::Cap {
            what,
            size,
            cap,
            hint: "",
        }
    }
}

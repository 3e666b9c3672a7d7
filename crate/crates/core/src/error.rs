use thiserror::Error;

use crate::report::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input data: indices out of range, non-total maps, size mismatches.
    #[error("structural error: {0}")]
    Structural(String),

    /// The data is well-formed but violates the axioms of the structure it claims to be.
    #[error("{}", .0.summary())]
    Invalid(Box<ValidationReport>),

    #[error("{what}: budget of {limit} exceeded")]
    Budget { what: String, limit: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A construction that is a theorem produced an invalid object. Reaching this is a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: reference to undeclared {kind} `{name}`")]
    Undeclared {
        line: usize,
        kind: &'static str,
        name: String,
    },
}

impl Error {
    pub fn budget(what: impl Into<String>, limit: usize) -> Self {
        Error::Budget {
            what: what.into(),
            limit,
        }
    }

    pub fn invalid(report: ValidationReport) -> Self {
        Error::Invalid(Box::new(report))
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("inconsistent linear system")]
    Inconsistent,

    #[error("budget exceeded for {what}: need {required}, limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        limit: u128,
    },

    #[error("ill-formed diagram: {0}")]
    IllFormedDiagram(String),

    #[error("base algebra mismatch")]
    BaseMismatch,

    #[error("subspace is not closed under the {0} action")]
    NotASubmodule(&'static str),

    #[error("bialgebra has no antipode")]
    NotHopf,

    #[error("smash coproduct convention failure: {0}")]
    ConventionFailure(String),

    #[error("subspace is not a coideal: {0}")]
    NotACoideal(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("invalid scalar {token:?}: {reason}")]
    InvalidScalar { token: String, reason: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("document field {path}: {message}")]
    DocumentField { path: String, message: String },

    #[error("name collision in store: {0}")]
    NameCollision(String),

    #[error("object not found: {0}")]
    NotFound(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn ensure_dim(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected,
            found,
        })
    }
}

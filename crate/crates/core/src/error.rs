use thiserror::Error;

/// Errors raised by the library. Each variant maps to a stable CLI exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-range input (bad vertex, bad parameter, bad JSON).
    #[error("input error: {0}")]
    Input(String),

    /// A constructed hypergraph would violate an invariant (duplicate edge, ...).
    #[error("construction error: {0}")]
    Construction(String),

    /// The closed-form routes only cover hypertrees and linear unicyclic hypergraphs.
    #[error("unsupported input: {reason}; use the brute-force oracle (`oracle --method bruteforce`) instead")]
    Unsupported { reason: String },

    /// The exponential oracle refused to run past its budget.
    #[error("resource budget exceeded: {what} would need {needed}, budget is {budget}")]
    Resource {
        what: String,
        needed: String,
        budget: String,
    },

    /// A lemma instance does not satisfy the lemma's hypotheses.
    #[error("instance error ({check}): {detail}")]
    Instance { check: String, detail: String },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn unsupported(reason: impl Into<String>) -> Self {
        Error::Unsupported {
            reason: reason.into(),
        }
    }

    pub(crate) fn instance(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Instance {
            check: check.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

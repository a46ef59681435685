use thiserror::Error;

/// Errors produced by the toolkit.
///
/// Precondition and parse failures are the caller's fault; internal
/// consistency failures mean two independent computations of the same
/// quantity disagreed and always indicate a bug.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degree hypothesis violated: {0}")]
    DegreeHypothesis(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("no pass/fail transition found on [{lo}, {hi}]")]
    NoTransition { lo: String, hi: String },
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn inconsistent(msg: impl Into<String>) -> Self {
        Error::InternalConsistency(msg.into())
    }

    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

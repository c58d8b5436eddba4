use thiserror::Error;

use crate::topology::TopologyViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error(
        "universe has {size} elements but the cap is {cap} (raise it with FRANKL_MAX_UNIVERSE)"
    )]
    UniverseTooLarge { size: usize, cap: usize },

    #[error("unknown element {0:?}")]
    UnknownElement(String),

    #[error("{0} is not a member of the family")]
    NotAMember(String),

    #[error("{what} is outside the operation's domain: {detail}")]
    Domain { what: String, detail: String },

    /// A named hypothesis of a theorem or lemma does not hold for the input.
    #[error("{hypothesis}: {detail}")]
    Precondition {
        hypothesis: &'static str,
        detail: String,
    },

    #[error(
        "element {element} is not abundant ({count_in} members contain it, {count_out} do not)"
    )]
    NotAbundant {
        element: String,
        count_in: usize,
        count_out: usize,
    },

    #[error("union closure exceeds the cap of {cap} members")]
    SizeOverflow { cap: usize },

    #[error("invalid topology: {0}")]
    Topology(TopologyViolation),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A constructed object failed its own verification. Never expected.
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn precondition(hypothesis: &'static str, detail: impl Into<String>) -> Self {
        Error::Precondition {
            hypothesis,
            detail: detail.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Precondition { .. } | Error::NotAbundant { .. } => 3,
            Error::Internal(_) => 4,
            _ => 2,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

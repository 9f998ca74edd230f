use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Graph parameters violate `n` even, `n >= 2`, `1 <= delta <= floor(log2 n)`.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("vertex {vertex} is out of range (sides have {half} vertices)")]
    OutOfRange { vertex: Vertex, half: usize },

    /// A caller broke an operation's precondition (mixed sides, empty set, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// The order `n` is outside the domain of a closed-form result.
    #[error("n = {n} is outside the domain: {reason}")]
    OutOfDomain { n: usize, reason: String },

    #[error("instance too large: {0}")]
    TooLarge(String),

    /// The search hit its node budget before proving optimality.
    #[error("search incomplete after {nodes} nodes: optimum lies in [{lower}, {}]", upper.map_or("?".to_string(), |u| u.to_string()))]
    Incomplete {
        nodes: u64,
        lower: usize,
        upper: Option<usize>,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Stable machine-readable name.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameters(_) => "invalid-parameters",
            Error::OutOfRange { .. } => "out-of-range",
            Error::Contract(_) => "contract",
            Error::OutOfDomain { .. } => "out-of-domain",
            Error::TooLarge(_) => "too-large",
            Error::Incomplete { .. } => "incomplete",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }

    /// Process exit status: 3 for bad input or domain errors, 4 for resource limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TooLarge(_) | Error::Incomplete { .. } => 4,
            _ => 3,
        }
    }
}

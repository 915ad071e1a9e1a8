use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("expected {expected} vertices, found {found}")]
    VertexMismatch { expected: usize, found: usize },

    #[error("vertex ({part}, {index}) has an empty list")]
    EmptyList { part: usize, index: usize },

    #[error("request at ({part}, {index}) asks for color {color}, which is not in its list")]
    InvalidRequest { part: usize, index: usize, color: u32 },

    #[error("request has an empty domain")]
    EmptyRequest,

    #[error("pot has {0} colors; at most 64 are supported")]
    PotTooLarge(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search is unbounded: {0}")]
    Unbounded(String),

    #[error("instance exceeds guardrail: {0}")]
    Guardrail(String),

    #[error("{0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

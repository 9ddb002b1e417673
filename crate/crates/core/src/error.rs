use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },

    #[error("line {line}: vertex id {id} outside 1..={max}")]
    IdOutOfRange { line: usize, id: usize, max: usize },

    #[error("line {line}: vertex {id} lists itself")]
    SelfInteraction { line: usize, id: usize },

    #[error("line {line}: source {id} already appeared on line {first}")]
    DuplicateSource { line: usize, id: usize, first: usize },

    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("{measure} needs a bipartition, got {cells} cells")]
    NotBipartition { measure: &'static str, cells: usize },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

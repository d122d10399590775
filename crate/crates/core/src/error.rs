use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("permutations act on different point sets (degree {left} vs {right})")]
    AmbientMismatch { left: usize, right: usize },

    #[error("group has more than {cap} elements")]
    Capacity { cap: usize },

    #[error("{0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("coset enumeration exceeded its limits: {reason} ({cosets} cosets live)")]
    EnumerationLimit { reason: String, cosets: usize },

    #[error("invalid state: {0}")]
    State(String),

    #[error("unknown group {0:?}")]
    UnknownGroup(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

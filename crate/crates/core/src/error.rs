use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("posets must have at least one element")]
    Empty,
    #[error("element index {index} out of range for a poset with {n} elements")]
    Index { index: usize, n: usize },
    #[error("cover relations contain a cycle through element {0}")]
    Cycle(usize),
    #[error("poset is not connected")]
    Disconnected,
    #[error("malformed family description: {0}")]
    Malformed(String),
    #[error("fiber of tree node {node} has {minimals} minimal elements, expected exactly one")]
    Fiber { node: usize, minimals: usize },
    #[error("parent map is not a rooted forest: {0}")]
    Forest(String),
    #[error("labeling is invalid: {0}")]
    Labeling(String),
    #[error("index tuple is invalid: {0}")]
    Range(String),
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("generating function does not match the requested mode: {0}")]
    Mode(String),
    #[error("composition entries must be distinct and strictly increasing: {0:?}")]
    Distinctness(Vec<u64>),
    #[error("n = {n} exceeds the enumeration budget of {cap}; pass an explicit override to run anyway")]
    Budget { n: usize, cap: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("node {node} is out of range for a hypergraph with {n} nodes")]
    InvalidNode { node: usize, n: usize },

    #[error("invalid splitting parameter: {0}")]
    InvalidSplitting(String),

    #[error("hyperedge {edge} has a splitting function that is not delta-linear; only delta-linear gadgets are supported")]
    UnsupportedSplitting { edge: usize },

    #[error("seed node {0} is not a member of the reference set")]
    InvalidSeed(usize),

    #[error("the reference set is empty")]
    EmptyReference,

    #[error("every node of the reference set is isolated")]
    IsolatedReference,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("min cut requested before max flow was computed")]
    StaleFlow,

    #[error("brute-force enumeration is capped at {cap} nodes, got {n}")]
    OracleCapExceeded { n: usize, cap: usize },

    #[error("no set has a positive overlap denominator")]
    NoFeasibleSet,

    #[error("hypergraph is not 2-uniform: edge {edge} has {size} nodes")]
    NotTwoUniform { edge: usize, size: usize },

    #[error("unknown cluster label {0:?}")]
    UnknownCluster(String),

    #[error("cluster {0:?} is empty")]
    EmptyCluster(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

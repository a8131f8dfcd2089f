use thiserror::Error;

/// Errors raised by graph construction, state manipulation and optimization.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph6 parse error: {0}")]
    Graph6(String),

    #[error("edge list parse error on line {line}: {msg}")]
    EdgeList { line: usize, msg: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The requested computation exceeds a built-in size limit.
    #[error("capability exceeded: {0}")]
    Capability(String),

    #[error("LC orbit exceeded cap of {cap} graphs ({found} found so far)")]
    OrbitCap { cap: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid fixed-coordinate spec: {0}")]
    InvalidFix(String),

    #[error("exact value parse error: {0}")]
    ExactValue(String),

    #[error("catalog error on line {line}: {msg}")]
    Catalog { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

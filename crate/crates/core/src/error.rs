use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph contains a directed cycle")]
    CyclicGraph,
    #[error("vertex order is not a topological order of the graph")]
    InvalidOrder,
    #[error("arc set does not separate the source from the target")]
    NotACut,
    #[error("instance too large for brute force: {0}")]
    TooLarge(String),
    #[error("extremality order undefined: {0}")]
    OrderUndefined(String),
    #[error("code parameters overflow: {0}")]
    ParameterOverflow(String),
    #[error("word is not a codeword")]
    NotACodeword,
    #[error("word is not decodable")]
    NotDecodable,
    #[error("family must contain at least one set")]
    EmptyFamily,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("matrix is singular")]
    Singular,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

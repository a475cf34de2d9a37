use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid binary graph: {0}")]
    BadBinary(String),

    #[error("empty input: a graph must have at least one node")]
    EmptyGraph,

    #[error("node id {id} out of range for a graph of {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("degenerate graph: zero hub mass")]
    Degenerate,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("undefined cosine: zero vector")]
    UndefinedCosine,

    #[error("undefined correlation: constant vector")]
    UndefinedCorrelation,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),

    #[error("bench plan error on line {line}: {message}")]
    Plan { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}

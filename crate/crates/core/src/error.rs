use thiserror::Error;

use crate::graph::{PatternId, VertexSet};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pattern {pattern} has {vertices} vertices; at most {max} are supported")]
    UnsupportedPattern {
        pattern: PatternId,
        vertices: usize,
        max: usize,
    },

    #[error("instance has {n} vertices, above the exact-search cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("graph is not {pattern}-free: induced copy on {witness}")]
    NotInClass {
        pattern: PatternId,
        witness: VertexSet,
    },

    #[error("graph is not in the claimed class: {0}")]
    StructureViolation(String),

    #[error("graph is not connected")]
    NotConnected,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no clique or independent set of size {required} (largest found: {found})")]
    EhViolation { found: usize, required: usize },

    #[error("result contradicts a proven guarantee: {0}")]
    TheoremContradiction(String),

    #[error("generation failed: {0}")]
    GenerationFailed(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

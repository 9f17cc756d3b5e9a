use thiserror::Error;

use crate::graph::GroundGraph;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid vertex pair ({u}, {v}) for ground {ground}")]
    InvalidVertexPair { ground: GroundGraph, u: usize, v: usize },

    #[error("ground mismatch: {left} vs {right}")]
    GroundMismatch { left: GroundGraph, right: GroundGraph },

    #[error("invalid ground graph: {0}")]
    InvalidGround(String),

    #[error("operation requires a bipartite ground, got {0}")]
    NotBipartite(GroundGraph),

    #[error("edge {0} is not in the graph")]
    EdgeNotInGraph(usize),

    #[error("no perfect matching satisfies the constraints")]
    Infeasible,

    #[error("family is empty")]
    EmptyFamily,

    #[error("{what} exceeds the configured cap ({value} > {cap})")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("lattice structure violated: {0}")]
    StructureViolation(String),

    #[error("element is not in the lattice")]
    NotAnElement,

    #[error("interval endpoints are not comparable")]
    IncomparableEndpoints,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

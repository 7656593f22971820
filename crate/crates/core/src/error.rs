use thiserror::Error;

use crate::hgraph::Violation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("cut is not a bipartition of the vertex set: {0}")]
    NotAPartition(String),
    #[error("invalid vertex order: {0}")]
    InvalidOrder(String),
    #[error("invalid branch decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("a branch decomposition needs at least two vertices, got {0}")]
    TooFewVertices(usize),
    #[error("unknown host node `{0}`")]
    UnknownNode(String),
    #[error("duplicate host node `{0}`")]
    DuplicateNode(String),
    #[error("no host edge with id {0}")]
    MissingEdge(u32),
    #[error("invalid representation: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidRepresentation(Vec<Violation>),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("contract violation: {0}")]
    ContractViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

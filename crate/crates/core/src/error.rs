use alloc::string::String;

use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("loop edge at vertex {0}")]
    LoopEdge(VertexId),
    #[error("edge endpoint {0} is not a vertex")]
    DanglingEndpoint(VertexId),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("{{{0}, {1}}} is not an edge of the graph")]
    UnknownEdge(VertexId, VertexId),
    #[error("bad parameters for family {family}: {reason}")]
    BadParams { family: String, reason: String },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("target of the first morphism differs from the source of the second")]
    CompositionMismatch,
    #[error("not a valid topological minor morphism: {0}")]
    InvalidMorphism(String),
    #[error("morphism is not a simplicial embedding")]
    NotAnEmbedding,
    #[error("graph is not a subgraph of the ambient graph: {0}")]
    NotASubgraph(String),
    #[error("boundary of boundary is nonzero in degree {0}")]
    NotAComplex(usize),
    #[error("map does not commute with the boundary in degree {0}")]
    NotChainMap(usize),
    #[error("subgroups live in different ambient groups")]
    AmbientMismatch,
    #[error("graph is not a cograph")]
    NotACograph,
    #[error("invalid cotree: {0}")]
    InvalidCotree(String),
    #[error("invalid generator list: {0}")]
    InvalidGenerators(String),
    #[error("matrix dimensions do not match: {0}")]
    Shape(String),
}

pub type Result<T> = core::result::Result<T, Error>;

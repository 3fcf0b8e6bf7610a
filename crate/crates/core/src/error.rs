use thiserror::Error;

use crate::graph::{GraphClass, VertexId};

/// Errors reported by graph operations, counting engines and samplers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {0} is not a leaf")]
    NotALeaf(VertexId),
    #[error("vertex {0} does not exist")]
    VertexNotFound(VertexId),
    #[error("edge ({0}, {1}) does not exist")]
    EdgeNotFound(VertexId, VertexId),
    #[error("graph has fewer than two vertices")]
    TooSmall,
    #[error("vertex sequence is not a simple path: {0}")]
    NotAPath(String),
    #[error("contraction would create a multi-edge or self-loop at {0}")]
    MultiEdge(VertexId),
    #[error("expected a tree, got {0:?}")]
    NotATree(GraphClass),
    #[error("expected a unicyclic graph, got {0:?}")]
    NotUnicyclic(GraphClass),
    #[error("unsupported graph class {0:?}")]
    UnsupportedClass(GraphClass),
    #[error("identical vertices {0} given where two distinct vertices are required")]
    IdenticalVertices(VertexId),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has {size} vertices, exceeding the enumeration cap of {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("graph has {size} edges, exceeding the enumeration limit of {cap}")]
    EdgeCapExceeded { size: usize, cap: usize },
    #[error("chain with {n} hexagons needs {expected} attachment modes, got {got}")]
    InvalidModes { n: usize, expected: usize, got: usize },
    #[error("invalid attachment mode character {0:?} (expected O, M or P)")]
    InvalidModeChar(char),
    #[error("hexagon count must be at least 1")]
    InvalidHexagonCount,
    #[error("invalid probabilities: {0}")]
    InvalidProbability(String),
    #[error("{0} mode sequences exceed the enumeration cap of {1}")]
    SpecCapExceeded(String, u64),
    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(u64),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

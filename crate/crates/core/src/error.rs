use crate::hypergraph::{EdgeId, VertexId};

/// Errors reported by the library.
///
/// Guard errors are deliberate: the exhaustive routines refuse inputs whose
/// search space would explode instead of silently degrading.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex id {0}")]
    UnknownVertex(VertexId),
    #[error("vertex set must not be empty")]
    EmptyVertexSet(),
    #[error("edge {0} has fewer than two vertices")]
    EdgeTooSmall(EdgeId),
    #[error("terminal {0} is not a vertex of the hypergraph")]
    TerminalNotInGraph(VertexId),
    #[error("{what} supports at most {limit}, got {actual}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("instance is not a phi-expander (violating set of {witness_len} vertices)")]
    NotExpander { witness_len: usize },
    #[error("hypergraph must be connected for this operation")]
    Disconnected,
    #[error("budget must be at least 1 for this construction")]
    BudgetTooSmall,
    #[error("contraction map is inconsistent with the claimed result")]
    InconsistentMap,
    #[error("inconsistent part bookkeeping while gluing: {0}")]
    GlueMismatch(String),
    #[error("matroid universes overlap on element {0}")]
    OverlappingUniverse(u64),
    #[error("partition is invalid: {0}")]
    BadPartition(String),
    #[error("parameter out of range: {0}")]
    BadParameter(String),
}

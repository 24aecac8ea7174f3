//! Multicut-mimicking networks for hypergraphs.
//!
//! Given an instance `(G, T, c)` of a hypergraph, a terminal set, and a cut
//! budget, this crate contracts non-essential hyperedges until the remaining
//! network preserves every minimum multicut value over `T` that does not
//! exceed `c`. The pipeline certifies expanders, enumerates connected
//! multiway cuts and useful terminal partitions, prunes them with important
//! cuts, and glues per-part results back together. Everything is backed by
//! exhaustive desk-scale oracles so each step can be verified exactly.
//!
//! Module map:
//! - [`hypergraph`]: the base representation, contraction, and subinstances.
//! - [`oracle`]: exhaustive ground truth for cuts, essentiality, mimicking.
//! - [`expander`]: expansion certificates and a decomposition routine.
//! - [`cuts`]: connected-set and connected-multiway-cut enumeration.
//! - [`important`]: directed important-cut enumeration and useful pruning.
//! - [`engine`]: the sparsifier driver (per-expander pass + outer loop).
//! - [`matroid`]: independence oracles, hyperedge gammoids, and the
//!   unbreakable/dense machinery used by the size-bound experiments.

pub mod cuts;
pub mod engine;
mod error;
pub mod expander;
mod flow;
pub mod hypergraph;
pub mod important;
pub mod matroid;
pub mod oracle;
pub mod ratio;

pub use error::Error;
pub use hypergraph::{ContractionMap, EdgeId, Hypergraph, Instance, Subinstance, VertexId};
pub use ratio::Ratio;

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

//! Minimal separators and the obstructions that force many of them.
//!
//! * [`graph`] and [`vertex_set`]: immutable graphs over dense indices with
//!   bitset vertex sets.
//! * [`families`]: prisms, thetas, skinny ladders, canonical creatures and
//!   random interval graphs, all with labeled vertices.
//! * [`separators`]: minimal-separator predicates, enumeration, brute-force
//!   reference, and per-vertex trace families.
//! * [`zeta`]: the exact ζ invariant with a witness.
//! * [`structures`]: k-creatures (induced subgraphs) and k-skinny-ladders
//!   (induced minors): verification and bounded search.
//! * [`reconstruction`]: separator certificates that rebuild `S` from a small
//!   key plus a separator of strictly smaller ζ in a smaller graph.
//! * [`mwis`]: exact maximum weight independent set via potential maximal
//!   cliques.

pub mod error;
pub mod families;
pub mod graph;
pub mod mwis;
pub mod reconstruction;
pub mod separators;
pub mod structures;
pub mod vertex_set;
pub mod zeta;

pub use error::{Error, Result};
pub use graph::{Graph, InducedSubgraph};
pub use vertex_set::VertexSet;

/// Outcome of a budget-limited exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// The search space was exhausted without a hit.
    None,
    /// The budget ran out first; nothing can be concluded.
    Unknown,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }

    pub fn is_none(&self) -> bool {
        matches!(self, Search::None)
    }
}

/// Default node budget for bounded searches.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

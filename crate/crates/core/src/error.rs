use thiserror::Error;

use crate::structures::CreatureViolation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("connectivity of the empty set is undefined")]
    EmptySet,

    #[error("sets are required to be disjoint but share vertex {0}")]
    Overlapping(usize),

    #[error("{what} of size {size} exceeds the brute-force limit of {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("the given set does not separate {0} from {1}")]
    NotSeparating(usize, usize),

    #[error("the candidate set does not dominate the target set")]
    NotDominating,

    #[error("invalid creature witness: {0}")]
    InvalidWitness(CreatureViolation),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

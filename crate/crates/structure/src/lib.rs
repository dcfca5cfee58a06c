//! Structural machinery for augmenting subgraphs: key instances on subcubic
//! graphs, normalization of a factor pair into one, the five basic-factor
//! shapes, their enumeration and constructive search, and the lift back to
//! an augmenting edge set of the original instance.

mod basic_search;
mod key;
mod normalize;

pub use basic_search::{
    enumerate_basic_factors, find_even_at_u_basic_factor, find_positive_basic_factor,
    BasicFactorStream, ENUMERATION_EDGE_CAP,
};
pub use key::{classify_basic, is_key_instance, BasicFactor, BasicShape, KeyInstance};
pub use normalize::{lift_basic_subgraph, normalize, NormalizationResult};

use factorum_core::{InstanceError, VertexId};
use thiserror::Error;

/// Errors across the key-instance pipeline. Usage errors only: facts the
/// underlying theory guarantees are asserted, not returned.
#[derive(Debug, Error)]
pub enum StructureError {
    #[error("not a key instance: {0}")]
    NotKeyInstance(String),
    #[error("edge set is not a factor of the instance")]
    NotAFactor,
    #[error("vertex {0} needs an interval, parity-interval, or type constraint")]
    InadmissibleConstraint(VertexId),
    #[error("{got} edges exceed the enumeration cap of {cap}")]
    EdgeCapExceeded { got: usize, cap: usize },
    #[error("total weight must be positive")]
    NonPositiveTotal,
    #[error("a basic factor reaches the whole-graph weight")]
    HeavyBasicFactor,
    #[error("vertex {0} must have degree 1, or degree 3 with an even-capable type set")]
    UnsuitableVertex(VertexId),
    #[error("the basic factor must have positive weight to lift")]
    NonPositiveGain,
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

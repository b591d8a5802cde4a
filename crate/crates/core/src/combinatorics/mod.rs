//! Ground-set arithmetic: cyclic orders, k-subsets, cyclic-interval
//! decompositions and the weak-separation predicate.

mod ground;
mod intervals;
mod separation;

pub use ground::{GroundSet, KSubset, MAX_LABEL};
pub use intervals::{cyclic_intervals, is_frozen, CyclicIntervalDecomposition};
pub use separation::{is_weakly_separated, is_ws_collection, WSCollection};

pub(crate) use ground::{bit, format_labels, mask_from_labels, mask_labels};
pub(crate) use separation::weakly_separated_positions;

//! Weak-separation graphs and exact counts of maximal weakly separated
//! collections.

mod clique;
mod graph;
mod validate;

pub use clique::{count_maximal_collections, verify_purity, EnumerationOptions, EnumerationResult, PivotRule};
pub use graph::{build_graph, build_graph_on, CompatibilityGraph, NodeFilter, MAX_NODES};
pub use validate::{cross_validate_theorem, CrossValidationReport, Discrepancy};

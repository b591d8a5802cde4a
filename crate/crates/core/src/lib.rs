//! Blade arrangements on hypersimplices.
//!
//! A vertex `e_I` of `Δ(k,n)` carries a translate of the blade
//! `((1, 2, …, n))`; superpositions of such blades subdivide `Δ(k,n)`. This
//! crate converts vertices to decorated ordered set partitions, computes the
//! induced subdivisions, decides matroidality, tests weak separation,
//! restricts arrangements to boundary facets, counts maximal weakly separated
//! collections and builds the dual tree arrangements on `Δ(3,n)`.

pub mod boundary;
pub mod cli;
pub mod combinatorics;
pub mod enumeration;
pub mod error;
pub mod membership;
pub mod osp;
pub mod subdivision;
pub mod trees;

pub use combinatorics::{
    cyclic_intervals, is_frozen, is_weakly_separated, is_ws_collection, CyclicIntervalDecomposition, GroundSet,
    KSubset, WSCollection,
};
pub use error::{Error, Result};
pub use membership::{blade_membership, translated_blade_membership, MembershipMethod, RationalPoint};
pub use osp::{blade_from_vertex, plate_vertices, Blade, ChainInequality, DecoratedOsp, Plate};
pub use subdivision::{
    eulerian_number, induce_subdivision, is_matroid_cell, is_matroidal, two_split_compatible, BladeArrangement,
    Cell, DualGraph, Subdivision,
};

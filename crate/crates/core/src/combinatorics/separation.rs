use std::collections::HashSet;

use super::ground::{GroundSet, KSubset};
use crate::error::{Error, Result};

/// Weak separation of two equal-size subsets given as σ-position masks.
///
/// Walking around the circle, the elements of `a \ b` and `b \ a` must form at
/// most two cyclic blocks; a third change of side means some
/// `i_1 < j_1 < i_2 < j_2` pattern exists.
#[inline]
pub(crate) fn weakly_separated_positions(a: u64, b: u64) -> bool {
    let only_a = a & !b;
    let only_b = b & !a;
    let mut rest = only_a | only_b;
    if rest == 0 {
        return true;
    }
    let first_in_a = only_a & rest & rest.wrapping_neg() != 0;
    let mut prev = first_in_a;
    let mut changes = 0u32;
    rest &= rest - 1;
    while rest != 0 {
        let lowest = rest & rest.wrapping_neg();
        let in_a = only_a & lowest != 0;
        if in_a != prev {
            changes += 1;
            if changes > 2 {
                return false;
            }
        }
        prev = in_a;
        rest &= rest - 1;
    }
    if prev != first_in_a {
        changes += 1;
    }
    changes <= 2
}

fn check_pair(ground: &GroundSet, a: KSubset, b: KSubset) -> Result<()> {
    for s in [a, b] {
        ground.subset_from_mask(s.mask())?;
    }
    if a.len() != b.len() {
        return Err(Error::CardinalityMismatch(a.len(), b.len()));
    }
    Ok(())
}

/// Leclerc–Zelevinsky weak separation with respect to the cyclic order of `ground`.
pub fn is_weakly_separated(ground: &GroundSet, a: KSubset, b: KSubset) -> Result<bool> {
    check_pair(ground, a, b)?;
    Ok(weakly_separated_positions(
        ground.to_positions(a.mask()),
        ground.to_positions(b.mask()),
    ))
}

/// A set of distinct k-subsets of a common ground set.
///
/// Construction does not require weak separation; use
/// [`WSCollection::is_weakly_separated`] to test it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WSCollection {
    ground: GroundSet,
    k: usize,
    subsets: Vec<KSubset>,
}

impl WSCollection {
    pub fn new(ground: GroundSet, k: usize, subsets: Vec<KSubset>) -> Result<Self> {
        if k == 0 || k >= ground.n() {
            return Err(Error::InvalidCardinality {
                k,
                max: ground.n() - 1,
            });
        }
        let mut seen = HashSet::with_capacity(subsets.len());
        for &s in &subsets {
            ground.subset_from_mask(s.mask())?;
            if s.len() != k {
                return Err(Error::CardinalityMismatch(k, s.len()));
            }
            if !seen.insert(s) {
                return Err(Error::DuplicateSubset(s.to_string()));
            }
        }
        Ok(Self {
            ground,
            k,
            subsets,
        })
    }

    /// Builds a collection from label lists, e.g. `[[1,2,4],[1,3,5]]`.
    pub fn from_labels(ground: GroundSet, k: usize, sets: &[Vec<u32>]) -> Result<Self> {
        let subsets = sets
            .iter()
            .map(|s| ground.subset(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground, k, subsets)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn subsets(&self) -> &[KSubset] {
        &self.subsets
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    /// Subsets in lexicographic order.
    pub fn sorted(&self) -> Vec<KSubset> {
        let mut v = self.subsets.clone();
        v.sort();
        v
    }

    /// First pair (in input order) that is not weakly separated.
    pub fn first_violation(&self) -> Option<(KSubset, KSubset)> {
        let pos: Vec<u64> = self
            .subsets
            .iter()
            .map(|s| self.ground.to_positions(s.mask()))
            .collect();
        for i in 0..pos.len() {
            for j in i + 1..pos.len() {
                if !weakly_separated_positions(pos[i], pos[j]) {
                    return Some((self.subsets[i], self.subsets[j]));
                }
            }
        }
        None
    }

    pub fn is_weakly_separated(&self) -> bool {
        self.first_violation().is_none()
    }
}

/// Pairwise weak separation of every member of the collection.
pub fn is_ws_collection(c: &WSCollection) -> bool {
    c.is_weakly_separated()
}

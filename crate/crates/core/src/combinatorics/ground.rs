use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest label a ground set may carry. Subsets are `u64` bitmasks with bit
/// `i - 1` standing for label `i`.
pub const MAX_LABEL: u32 = 64;

const NO_POSITION: u8 = u8::MAX;

#[inline]
pub(crate) fn bit(label: u32) -> u64 {
    1u64 << (label - 1)
}

/// Labels contained in a mask, ascending.
pub(crate) fn mask_labels(mask: u64) -> impl Iterator<Item = u32> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let label = rest.trailing_zeros() + 1;
        rest &= rest - 1;
        Some(label)
    })
}

pub(crate) fn mask_from_labels(labels: &[u32]) -> Result<u64> {
    let mut mask = 0u64;
    for &label in labels {
        if label == 0 || label > MAX_LABEL {
            return Err(Error::LabelOutOfRange(label));
        }
        if mask & bit(label) != 0 {
            return Err(Error::DuplicateLabel(label));
        }
        mask |= bit(label);
    }
    Ok(mask)
}

/// Compact text form of a label set: a digit string when every label is a
/// single digit, otherwise a bracketed comma list such as `[2,10,11]`.
pub(crate) fn format_labels(mask: u64) -> String {
    let labels: Vec<u32> = mask_labels(mask).collect();
    if labels.iter().all(|&l| l <= 9) {
        labels.iter().map(|l| char::from(b'0' + *l as u8)).collect()
    } else {
        let inner: Vec<String> = labels.iter().map(u32::to_string).collect();
        format!("[{}]", inner.join(","))
    }
}

/// A finite set of labels arranged in a cyclic order `σ = (σ_1, …, σ_n)`.
///
/// The root ground set of `Δ(k,n)` has labels `1..=n`; facet restrictions
/// produce ground sets with one label removed, which keep the induced order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    order: Vec<u32>,
    universe: u64,
    // position[label] = index of the label in `order`
    position: Vec<u8>,
}

impl GroundSet {
    /// `{1, …, n}` with the identity cyclic order.
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=MAX_LABEL as usize).contains(&n) {
            return Err(Error::InvalidGroundSet(format!("n = {n} is outside 2..=64")));
        }
        Self::from_order((1..=n as u32).collect())
    }

    /// `{1, …, n}` ordered by the permutation `sigma`.
    pub fn with_order(sigma: Vec<u32>) -> Result<Self> {
        let n = sigma.len() as u32;
        if let Some(&bad) = sigma.iter().find(|&&l| l == 0 || l > n) {
            return Err(Error::InvalidGroundSet(format!(
                "sigma must be a permutation of 1..={n}, found {bad}"
            )));
        }
        Self::from_order(sigma)
    }

    /// Arbitrary distinct labels in the given cyclic order.
    pub fn from_order(order: Vec<u32>) -> Result<Self> {
        if order.len() < 2 {
            return Err(Error::InvalidGroundSet(
                "a ground set needs at least two labels".into(),
            ));
        }
        let universe = mask_from_labels(&order).map_err(|e| match e {
            Error::DuplicateLabel(l) => {
                Error::InvalidGroundSet(format!("label {l} repeated in the cyclic order"))
            }
            other => other,
        })?;
        let mut position = vec![NO_POSITION; MAX_LABEL as usize + 1];
        for (i, &label) in order.iter().enumerate() {
            position[label as usize] = i as u8;
        }
        Ok(Self {
            order,
            universe,
            position,
        })
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Labels in cyclic order, starting at `σ_1`.
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    /// Labels in increasing numeric order.
    pub fn sorted_labels(&self) -> Vec<u32> {
        mask_labels(self.universe).collect()
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    pub fn contains(&self, label: u32) -> bool {
        label >= 1 && label <= MAX_LABEL && self.universe & bit(label) != 0
    }

    pub fn position(&self, label: u32) -> Option<usize> {
        if self.contains(label) {
            Some(self.position[label as usize] as usize)
        } else {
            None
        }
    }

    pub fn label_at(&self, position: usize) -> u32 {
        self.order[position % self.n()]
    }

    /// Cyclic successor of `label` under σ.
    pub fn successor(&self, label: u32) -> Result<u32> {
        let p = self.position(label).ok_or(Error::LabelOutOfRange(label))?;
        Ok(self.label_at(p + 1))
    }

    /// Maps a label mask to a mask over σ-positions (bit `p` = `σ_{p+1}`).
    pub fn to_positions(&self, mask: u64) -> u64 {
        if self.is_standard() {
            return mask;
        }
        mask_labels(mask & self.universe).fold(0u64, |acc, l| {
            acc | (1u64 << self.position[l as usize])
        })
    }

    /// Inverse of [`GroundSet::to_positions`].
    pub fn from_positions(&self, positions: u64) -> u64 {
        if self.is_standard() {
            return positions;
        }
        let mut rest = positions;
        let mut mask = 0u64;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            mask |= bit(self.order[p]);
        }
        mask
    }

    /// True for `{1..n}` in its natural order, where labels and positions coincide.
    pub fn is_standard(&self) -> bool {
        self.order.iter().enumerate().all(|(i, &l)| l == i as u32 + 1)
    }

    /// The ground set with `label` removed, keeping the induced cyclic order.
    pub fn without(&self, label: u32) -> Result<GroundSet> {
        if !self.contains(label) {
            return Err(Error::LabelOutOfRange(label));
        }
        GroundSet::from_order(self.order.iter().copied().filter(|&l| l != label).collect())
    }

    /// Validates a list of labels as a k-subset with `1 <= k <= n - 1`.
    pub fn subset(&self, labels: &[u32]) -> Result<KSubset> {
        let mask = mask_from_labels(labels)?;
        self.subset_from_mask(mask)
    }

    pub fn subset_from_mask(&self, mask: u64) -> Result<KSubset> {
        if mask & !self.universe != 0 {
            let stray = mask_labels(mask & !self.universe).next().unwrap_or(0);
            return Err(Error::LabelOutOfRange(stray));
        }
        let k = mask.count_ones() as usize;
        if k == 0 || k >= self.n() {
            return Err(Error::InvalidCardinality {
                k,
                max: self.n() - 1,
            });
        }
        Ok(KSubset(mask))
    }

    /// All k-subsets in lexicographic order of their sorted member lists.
    pub fn k_subsets(&self, k: usize) -> Vec<KSubset> {
        let labels = self.sorted_labels();
        let n = labels.len();
        if k == 0 || k >= n {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(KSubset(idx.iter().fold(0, |m, &i| m | bit(labels[i]))));
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] != i + n - k {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    /// Number of maximal cyclic runs of `mask` under σ.
    pub fn cyclic_run_count(&self, mask: u64) -> usize {
        cyclic_runs_in_positions(self.to_positions(mask & self.universe), self.n())
    }

    /// True when `mask` is a nonempty proper cyclic interval of σ.
    pub fn is_cyclic_interval(&self, mask: u64) -> bool {
        let m = mask & self.universe;
        m != 0 && m != self.universe && self.cyclic_run_count(m) == 1
    }
}

pub(crate) fn cyclic_runs_in_positions(positions: u64, n: usize) -> usize {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let p = positions & full;
    if p == 0 || p == full {
        return usize::from(p != 0);
    }
    // a run starts at position i when i is set and its cyclic predecessor is not
    let rotated = ((p << 1) | (p >> (n - 1))) & full;
    (p & !rotated).count_ones() as usize
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("GroundSet").field(&self.order).finish()
    }
}

/// A k-element subset `I` of the ground set, i.e. the vertex `e_I` of `Δ(k,n)`.
///
/// Only the bitmask is stored; operations that depend on the cyclic order take
/// the [`GroundSet`] explicitly.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSubset(u64);

impl KSubset {
    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, label: u32) -> bool {
        (1..=MAX_LABEL).contains(&label) && self.0 & bit(label) != 0
    }

    /// Members in increasing order.
    pub fn members(self) -> Vec<u32> {
        mask_labels(self.0).collect()
    }

    pub(crate) fn from_mask_unchecked(mask: u64) -> Self {
        KSubset(mask)
    }
}

impl Ord for KSubset {
    /// Lexicographic order of the sorted member lists.
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        let diff = self.0 ^ other.0;
        let lowest = diff & diff.wrapping_neg();
        if self.0 & lowest != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for KSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_labels(self.0))
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e_{self}")
    }
}

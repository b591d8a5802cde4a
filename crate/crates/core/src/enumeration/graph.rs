use std::fmt;
use std::str::FromStr;

use crate::combinatorics::{is_frozen, weakly_separated_positions, GroundSet, KSubset};
use crate::error::{Error, Result};

/// Largest node count a compatibility graph may have.
pub const MAX_NODES: usize = 1 << 14;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum NodeFilter {
    /// Every nonfrozen k-subset.
    #[default]
    All,
    /// Collections made only of k-subsets with exactly two cyclic intervals.
    /// Maximality is still judged against every nonfrozen k-subset.
    TwoInterval,
}

impl FromStr for NodeFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Self::All),
            "two-interval" => Ok(Self::TwoInterval),
            other => Err(Error::Parse(format!(
                "unknown filter {other:?}; expected all or two-interval"
            ))),
        }
    }
}

impl fmt::Display for NodeFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::All => "all",
            Self::TwoInterval => "two-interval",
        })
    }
}

/// Weak-separation graph on the nonfrozen k-subsets, with bitset adjacency rows.
///
/// Nodes passing the filter are the candidates: collections are built from
/// them, while the remaining nodes only block maximality.
#[derive(Clone, Debug)]
pub struct CompatibilityGraph {
    ground: GroundSet,
    k: usize,
    filter: NodeFilter,
    nodes: Vec<KSubset>,
    candidates: Vec<u64>,
    words: usize,
    adjacency: Vec<u64>,
}

/// Graph for `Δ(k,n)` with the standard cyclic order.
pub fn build_graph(k: usize, n: usize, filter: NodeFilter) -> Result<CompatibilityGraph> {
    build_graph_on(&GroundSet::new(n)?, k, filter)
}

pub fn build_graph_on(ground: &GroundSet, k: usize, filter: NodeFilter) -> Result<CompatibilityGraph> {
    let n = ground.n();
    if k < 2 || k + 2 > n {
        return Err(Error::ParameterRange(format!(
            "need 2 <= k <= n-2, got k = {k}, n = {n}"
        )));
    }
    let total = binomial(n, k);
    if total > MAX_NODES as u128 {
        return Err(Error::ParameterRange(format!(
            "Δ({k},{n}) has {total} vertices; at most {MAX_NODES} graph nodes are supported"
        )));
    }
    let nodes: Vec<KSubset> = ground
        .k_subsets(k)
        .into_iter()
        .filter(|&v| !is_frozen(ground, v))
        .collect();
    let positions: Vec<u64> = nodes.iter().map(|v| ground.to_positions(v.mask())).collect();
    let words = nodes.len().div_ceil(64).max(1);
    let mut candidates = vec![0u64; words];
    for (i, v) in nodes.iter().enumerate() {
        let keep = match filter {
            NodeFilter::All => true,
            NodeFilter::TwoInterval => ground.cyclic_run_count(v.mask()) == 2,
        };
        if keep {
            candidates[i / 64] |= 1 << (i % 64);
        }
    }
    let mut adjacency = vec![0u64; nodes.len() * words];
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if weakly_separated_positions(positions[i], positions[j]) {
                adjacency[i * words + j / 64] |= 1 << (j % 64);
                adjacency[j * words + i / 64] |= 1 << (i % 64);
            }
        }
    }
    Ok(CompatibilityGraph {
        ground: ground.clone(),
        k,
        filter,
        nodes,
        candidates,
        words,
        adjacency,
    })
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

impl CompatibilityGraph {
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.ground.n()
    }

    pub fn filter(&self) -> NodeFilter {
        self.filter
    }

    /// All nonfrozen k-subsets, in lexicographic order.
    pub fn nodes(&self) -> &[KSubset] {
        &self.nodes
    }

    pub fn is_candidate(&self, i: usize) -> bool {
        self.candidates[i / 64] >> (i % 64) & 1 == 1
    }

    /// Nodes that may appear in a collection under the filter.
    pub fn candidate_count(&self) -> usize {
        self.candidates.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_index(&self, v: KSubset) -> Option<usize> {
        self.nodes.binary_search(&v).ok()
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.adjacency[i * self.words..(i + 1) * self.words]
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of weakly separated pairs of distinct nodes.
    pub fn edge_count(&self) -> usize {
        (0..self.nodes.len()).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    /// Size every maximal collection has under purity: `(k-1)(n-k-1)`.
    pub fn purity_size(&self) -> usize {
        (self.k - 1) * (self.n() - self.k - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_and_edge_counts() {
        let g = build_graph(4, 8, NodeFilter::All).unwrap();
        assert_eq!(g.node_count(), 62);
        assert_eq!(g.edge_count(), 1048);
        let alt = g.node_index(g.ground().subset(&[2, 4, 6, 8]).unwrap()).unwrap();
        assert_eq!(g.degree(alt), 24);

        let g = build_graph(3, 6, NodeFilter::All).unwrap();
        let alt = g.node_index(g.ground().subset(&[2, 4, 6]).unwrap()).unwrap();
        assert_eq!(g.degree(alt), 6);
    }

    #[test]
    fn symmetric_without_loops() {
        let g = build_graph(3, 7, NodeFilter::All).unwrap();
        for i in 0..g.node_count() {
            assert!(!g.is_edge(i, i));
            for j in 0..g.node_count() {
                assert_eq!(g.is_edge(i, j), g.is_edge(j, i));
            }
        }
    }

    #[test]
    fn two_interval_filter() {
        let g = build_graph(3, 6, NodeFilter::TwoInterval).unwrap();
        assert_eq!(g.node_count(), 14);
        for (i, v) in g.nodes().iter().enumerate() {
            assert_eq!(g.is_candidate(i), g.ground().cyclic_run_count(v.mask()) == 2);
        }
        // (n/2) * C(2,1) * C(2,1)
        assert_eq!(g.candidate_count(), 12);
    }

    #[test]
    fn parameter_range() {
        assert!(build_graph(1, 5, NodeFilter::All).is_err());
        assert!(build_graph(4, 5, NodeFilter::All).is_err());
        assert!(build_graph(32, 64, NodeFilter::All).is_err());
    }
}

//! Trees dual to split subdivisions of `Δ(2,m)`, and the tree arrangement of
//! a weakly separated collection on `Δ(3,n)`.

use std::fmt;
use std::fmt::Write as _;

use crate::boundary::restrict_collection;
use crate::combinatorics::{format_labels, mask_labels, GroundSet, WSCollection};
use crate::error::{Error, Result};
use crate::osp::{blade_from_vertex, Blade};
use crate::subdivision::two_split_compatible;

/// A bipartition `{S, Sᶜ}` of the ground set with both sides of size at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Split {
    ground: GroundSet,
    side: u64,
}

impl Split {
    pub fn new(ground: &GroundSet, side: u64) -> Result<Self> {
        let u = ground.universe();
        if side & !u != 0 {
            return Err(Error::LabelOutOfRange(mask_labels(side & !u).next().unwrap_or(0)));
        }
        let size = side.count_ones() as usize;
        if size < 2 || size + 2 > ground.n() {
            return Err(Error::ParameterRange(format!(
                "split side {} must have between 2 and {} labels",
                format_labels(side),
                ground.n().saturating_sub(2)
            )));
        }
        let smallest = u & u.wrapping_neg();
        let side = if side & smallest != 0 { u & !side } else { side };
        Ok(Self {
            ground: ground.clone(),
            side,
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// The side not containing the smallest label.
    pub fn side(&self) -> u64 {
        self.side
    }

    pub fn complement(&self) -> u64 {
        self.ground.universe() & !self.side
    }

    pub fn is_compatible(&self, other: &Split) -> bool {
        two_split_compatible(&self.ground, self.side, other.side)
    }
}

impl PartialOrd for Split {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Split {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |s: &Split| (s.side.count_ones(), mask_labels(s.side).collect::<Vec<_>>());
        key(self).cmp(&key(other))
    }
}

/// Smaller side first, e.g. `34|2567`; equal sides lead with the smallest label.
impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (self.side, self.complement());
        let (first, second) = if a.count_ones() < b.count_ones() { (a, b) } else { (b, a) };
        write!(f, "{}|{}", format_labels(first), format_labels(second))
    }
}

/// One split per two-block blade of type `Δ(2,m)`, deduplicated and sorted.
pub fn splits_from_blades(blades: &[Blade]) -> Result<Vec<Split>> {
    let mut out = Vec::with_capacity(blades.len());
    for b in blades {
        if b.ell() != 2 {
            return Err(Error::NotASplit {
                blade: b.to_string(),
                blocks: b.ell(),
            });
        }
        if b.osp().weights() != [1, 1] {
            return Err(Error::NotHypersimplicial {
                blade: b.to_string(),
                k: 2,
                n: b.ground().n(),
            });
        }
        out.push(Split::new(b.ground(), b.osp().blocks()[0])?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Node {
    label: Option<u32>,
    neighbors: Vec<usize>,
}

/// An unrooted leaf-labeled tree; every internal edge carries a split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitTree {
    ground: GroundSet,
    nodes: Vec<Node>,
}

/// Builds the tree whose internal edges realize exactly the given splits.
///
/// Starts from the star on the ground set and inserts one split at a time in
/// sorted order.
pub fn tree_from_splits(ground: &GroundSet, splits: &[Split]) -> Result<SplitTree> {
    let mut splits: Vec<Split> = splits.to_vec();
    for s in &splits {
        if s.ground.universe() != ground.universe() {
            return Err(Error::GroundMismatch);
        }
    }
    splits.sort();
    splits.dedup();
    for (i, a) in splits.iter().enumerate() {
        for b in &splits[i + 1..] {
            if !a.is_compatible(b) {
                return Err(Error::IncompatibleSplits(a.to_string(), b.to_string()));
            }
        }
    }

    // rooted at the star center, node 0; each child subtree covers a leaf set
    let labels = ground.order().to_vec();
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    let mut cover: Vec<u64> = vec![ground.universe()];
    let mut label: Vec<Option<u32>> = vec![None];
    for &l in &labels {
        let id = children.len();
        children[0].push(id);
        children.push(Vec::new());
        cover.push(1u64 << (l - 1));
        label.push(Some(l));
    }

    // largest clusters first, so every parent exists before its children
    let mut order: Vec<&Split> = splits.iter().collect();
    order.sort_by_key(|s| std::cmp::Reverse(s.side.count_ones()));
    for s in order {
        let side = s.side;
        let mut at = 0;
        while let Some(&c) = children[at].iter().find(|&&c| cover[c] & side == side && label[c].is_none()) {
            at = c;
        }
        let (inside, outside): (Vec<usize>, Vec<usize>) =
            children[at].iter().partition(|&&c| cover[c] & !side == 0);
        let covered = inside.iter().fold(0u64, |acc, &c| acc | cover[c]);
        if covered != side {
            return Err(Error::IncompatibleSplits(s.to_string(), format_labels(covered)));
        }
        let id = children.len();
        children.push(inside);
        cover.push(side);
        label.push(None);
        children[at] = outside;
        children[at].push(id);
    }

    let mut nodes: Vec<Node> = label
        .iter()
        .map(|&l| Node {
            label: l,
            neighbors: Vec::new(),
        })
        .collect();
    for (parent, kids) in children.iter().enumerate() {
        for &c in kids {
            nodes[parent].neighbors.push(c);
            nodes[c].neighbors.push(parent);
        }
    }
    Ok(SplitTree {
        ground: ground.clone(),
        nodes,
    })
}

impl SplitTree {
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.label.is_some()).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n.neighbors.len()).collect()
    }

    /// Pairs of node indices joined by an edge, each once.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, node) in self.nodes.iter().enumerate() {
            for &b in &node.neighbors {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn leaves_beyond(&self, from: usize, to: usize) -> u64 {
        let mut mask = 0u64;
        let mut stack = vec![(from, to)];
        while let Some((prev, at)) = stack.pop() {
            if let Some(l) = self.nodes[at].label {
                mask |= 1u64 << (l - 1);
            }
            for &next in &self.nodes[at].neighbors {
                if next != prev {
                    stack.push((at, next));
                }
            }
        }
        mask
    }

    /// The leaf bipartitions of the internal edges, sorted.
    pub fn edge_splits(&self) -> Result<Vec<Split>> {
        let mut out = Vec::new();
        for (a, b) in self.edges() {
            if self.nodes[a].label.is_none() && self.nodes[b].label.is_none() {
                out.push(Split::new(&self.ground, self.leaves_beyond(a, b))?);
            }
        }
        out.sort();
        Ok(out)
    }

    /// DOT text. Leaves are emitted in the ground set's cyclic order.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for &l in self.ground.order() {
            let _ = writeln!(out, "  l{l} [label=\"{l}\", shape=plaintext];");
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if node.label.is_none() {
                let _ = writeln!(out, "  v{i} [label=\"\", shape=point];");
            }
        }
        let id = |i: usize| match self.nodes[i].label {
            Some(l) => format!("l{l}"),
            None => format!("v{i}"),
        };
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  {} -- {};", id(a), id(b));
        }
        out.push_str("}\n");
        out
    }
}

/// The tree on the facet `x_j = 1` of `Δ(3,n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetTree {
    pub j: u32,
    pub collection: WSCollection,
    pub blades: Vec<Blade>,
    pub splits: Vec<Split>,
    pub tree: SplitTree,
}

impl FacetTree {
    pub fn to_dot(&self) -> String {
        self.tree.to_dot(&format!("facet_{}", self.j))
    }
}

/// Restricts a weakly separated collection of `Δ(3,n)` to each facet
/// `x_j = 1` and builds the dual tree there; facets follow σ.
pub fn tree_arrangement(c: &WSCollection) -> Result<Vec<FacetTree>> {
    if c.k() != 3 {
        return Err(Error::ParameterRange(format!(
            "tree arrangements need k = 3, got k = {}",
            c.k()
        )));
    }
    if let Some((a, b)) = c.first_violation() {
        return Err(Error::NotWeaklySeparated(a.to_string(), b.to_string()));
    }
    c.ground()
        .order()
        .iter()
        .map(|&j| {
            let restricted = restrict_collection(c, j, true)?;
            let child = restricted.ground().clone();
            let blades = restricted
                .subsets()
                .iter()
                .map(|&v| blade_from_vertex(&child, v))
                .collect::<Result<Vec<_>>>()?;
            let splits = splits_from_blades(&blades)?;
            let tree = tree_from_splits(&child, &splits)?;
            Ok(FacetTree {
                j,
                collection: restricted,
                blades,
                splits,
                tree,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split(g: &GroundSet, labels: &[u32]) -> Split {
        Split::new(g, g.subset(labels).unwrap().mask()).unwrap()
    }

    #[test]
    fn canonical_side() {
        let g = GroundSet::from_order(vec![2, 3, 4, 5, 6, 7]).unwrap();
        let s = split(&g, &[2, 3, 4]);
        assert_eq!(s.side(), g.subset(&[5, 6, 7]).unwrap().mask());
        assert_eq!(s, split(&g, &[5, 6, 7]));
        assert_eq!(s.to_string(), "234|567");
        assert_eq!(split(&g, &[3, 4]).to_string(), "34|2567");
        assert!(Split::new(&g, g.subset(&[3]).unwrap().mask()).is_err());
    }

    #[test]
    fn star_and_caterpillar() {
        let g = GroundSet::from_order(vec![2, 3, 4, 5, 6, 7]).unwrap();
        let star = tree_from_splits(&g, &[]).unwrap();
        assert_eq!(star.node_count(), 7);
        assert!(star.edge_splits().unwrap().is_empty());

        let splits = vec![split(&g, &[3, 4]), split(&g, &[2, 3, 4]), split(&g, &[6, 7])];
        let tree = tree_from_splits(&g, &splits).unwrap();
        let mut expected = splits.clone();
        expected.sort();
        assert_eq!(tree.edge_splits().unwrap(), expected);
        assert_eq!(tree.leaf_count(), 6);
        assert_eq!(tree.node_count(), 10);
        assert!(tree
            .degrees()
            .iter()
            .zip(&tree.nodes)
            .all(|(&d, n)| if n.label.is_some() { d == 1 } else { d >= 3 }));
    }

    #[test]
    fn incompatible_pair_reported() {
        let g = GroundSet::new(6).unwrap();
        let err = tree_from_splits(&g, &[split(&g, &[2, 3]), split(&g, &[3, 4])]).unwrap_err();
        assert!(matches!(err, Error::IncompatibleSplits(_, _)));
    }

    #[test]
    fn splits_from_blade_lists() {
        let blades: Vec<Blade> = ["((2567_1 34_1))", "((234_1 567_1))", "((2345_1 67_1))", "((234_1 567_1))"]
            .iter()
            .map(|t| Blade::parse(t).unwrap())
            .collect();
        let splits = splits_from_blades(&blades).unwrap();
        let names: Vec<String> = splits.iter().map(|s| s.to_string()).collect();
        assert_eq!(names, ["34|2567", "67|2345", "234|567"]);
        let three = Blade::parse("((12_1 34_1 56_0))").unwrap();
        assert!(matches!(splits_from_blades(&[three]), Err(Error::NotASplit { .. })));
    }

    #[test]
    fn degenerate_example_tree() {
        let g = GroundSet::from_order(vec![1, 2, 4, 5, 6]).unwrap();
        let blades = vec![
            blade_from_vertex(&g, g.subset(&[2, 6]).unwrap()).unwrap(),
            blade_from_vertex(&g, g.subset(&[4, 6]).unwrap()).unwrap(),
        ];
        let splits = splits_from_blades(&blades).unwrap();
        let tree = tree_from_splits(&g, &splits).unwrap();
        assert_eq!(tree.edge_splits().unwrap().len(), 2);
    }

    #[test]
    fn dot_output() {
        let g = GroundSet::new(4).unwrap();
        let tree = tree_from_splits(&g, &[split(&g, &[1, 2])]).unwrap();
        let dot = tree.to_dot("facet_5");
        assert!(dot.starts_with("graph facet_5 {"));
        let pos: Vec<usize> = (1..=4).map(|l| dot.find(&format!("l{l} [")).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }
}

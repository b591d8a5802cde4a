//! Subdivisions of `Δ(k,n)` induced by blade arrangements.
//!
//! Cells are stored by their 0/1 vertex sets. The engine refines the
//! hypersimplex one blade at a time: every current cell is intersected with
//! each cyclic rotation of the next blade's plate, and only full-dimensional
//! pieces are kept.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::combinatorics::{GroundSet, KSubset};
use crate::error::{Error, Result};
use crate::osp::{blade_from_vertex, Blade, ChainInequality};

/// Largest vertex count `C(n,k)` the engine accepts.
pub const MAX_VERTICES: usize = 1 << 16;

/// One entry of an arrangement: a vertex translate `((σ))_{e_I}` or an explicit blade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BladeEntry {
    Vertex(KSubset),
    Explicit(Blade),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BladeArrangement {
    ground: GroundSet,
    k: usize,
    entries: Vec<BladeEntry>,
    blades: Vec<Blade>,
}

impl BladeArrangement {
    pub fn new(ground: GroundSet, k: usize) -> Result<Self> {
        if k == 0 || k >= ground.n() {
            return Err(Error::InvalidCardinality {
                k,
                max: ground.n() - 1,
            });
        }
        Ok(Self {
            ground,
            k,
            entries: Vec::new(),
            blades: Vec::new(),
        })
    }

    /// Arrangement of vertex translates on the given vertices.
    pub fn from_vertices(ground: GroundSet, k: usize, vertices: &[KSubset]) -> Result<Self> {
        let mut arr = Self::new(ground, k)?;
        for &v in vertices {
            arr.push_vertex(v)?;
        }
        Ok(arr)
    }

    pub fn from_blades(ground: GroundSet, k: usize, blades: Vec<Blade>) -> Result<Self> {
        let mut arr = Self::new(ground, k)?;
        for b in blades {
            arr.push_blade(b)?;
        }
        Ok(arr)
    }

    pub fn push_vertex(&mut self, v: KSubset) -> Result<()> {
        let v = self.ground.subset_from_mask(v.mask())?;
        if v.len() != self.k {
            return Err(Error::CardinalityMismatch(self.k, v.len()));
        }
        self.blades.push(blade_from_vertex(&self.ground, v)?);
        self.entries.push(BladeEntry::Vertex(v));
        Ok(())
    }

    pub fn push_blade(&mut self, blade: Blade) -> Result<()> {
        if blade.ground().universe() != self.ground.universe() {
            return Err(Error::GroundMismatch);
        }
        let blade = Blade::new(
            crate::osp::DecoratedOsp::from_masks(
                self.ground.clone(),
                blade.osp().blocks().to_vec(),
                blade.osp().weights().to_vec(),
            )?,
        );
        let osp = blade.osp();
        if osp.k() != self.k as i64 || !(osp.is_trivial() || osp.is_hypersimplicial()) {
            return Err(Error::NotHypersimplicial {
                blade: blade.to_string(),
                k: self.k as i64,
                n: self.ground.n(),
            });
        }
        self.blades.push(blade.clone());
        self.entries.push(BladeEntry::Explicit(blade));
        Ok(())
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[BladeEntry] {
        &self.entries
    }

    /// The entries as blades of type `Δ(k,n)`, trivial ones included.
    pub fn blades(&self) -> &[Blade] {
        &self.blades
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A fixed-width bitset over the vertex list of `Δ(k,n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct VertexSet(Vec<u64>);

impl VertexSet {
    fn empty(len: usize) -> Self {
        Self(vec![0; len.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + i)
            })
        })
    }
}

/// Affine dimension of a set of 0/1 points given as masks.
pub fn affine_dimension(points: &[u64]) -> Result<usize> {
    let Some((&base, rest)) = points.split_first() else {
        return Ok(0);
    };
    let mut echelon = Echelon::default();
    for &p in rest {
        echelon.push(p, base)?;
    }
    Ok(echelon.rows.len())
}

/// Incremental fraction-free row echelon form over the integers.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<i128>)>,
}

impl Echelon {
    fn push(&mut self, p: u64, base: u64) -> Result<bool> {
        let mut v: Vec<i128> = (0..64)
            .map(|i| i128::from((p >> i) & 1 == 1) - i128::from((base >> i) & 1 == 1))
            .collect();
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c == 0 {
                continue;
            }
            let r = row[*pivot];
            for (x, &y) in v.iter_mut().zip(row) {
                *x = x
                    .checked_mul(r)
                    .and_then(|a| y.checked_mul(c).and_then(|b| a.checked_sub(b)))
                    .ok_or(Error::Overflow("affine rank"))?;
            }
            let g = v.iter().fold(0i128, |g, &x| gcd(g, x));
            if g > 1 {
                v.iter_mut().for_each(|x| *x /= g);
            }
        }
        match v.iter().position(|&x| x != 0) {
            Some(pivot) => {
                self.rows.push((pivot, v));
                Ok(true)
            }
            None => Ok(false),
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A maximal cell: its vertices and the chain inequalities that carve it out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    ground: GroundSet,
    k: usize,
    vertices: Vec<KSubset>,
    inequalities: Vec<ChainInequality>,
    dim: usize,
}

impl Cell {
    /// Vertices of `Δ(k,n)` satisfying every inequality.
    pub fn from_inequalities(ground: &GroundSet, k: usize, inequalities: Vec<ChainInequality>) -> Result<Self> {
        if k == 0 || k >= ground.n() {
            return Err(Error::InvalidCardinality {
                k,
                max: ground.n() - 1,
            });
        }
        let vertices: Vec<KSubset> = ground
            .k_subsets(k)
            .into_iter()
            .filter(|&v| inequalities.iter().all(|q| q.holds_at(v)))
            .collect();
        Self::build(ground.clone(), k, vertices, inequalities)
    }

    fn build(ground: GroundSet, k: usize, mut vertices: Vec<KSubset>, mut inequalities: Vec<ChainInequality>) -> Result<Self> {
        vertices.sort();
        inequalities.sort();
        inequalities.dedup();
        let masks: Vec<u64> = vertices.iter().map(|v| v.mask()).collect();
        let dim = affine_dimension(&masks)?;
        Ok(Self {
            ground,
            k,
            vertices,
            inequalities,
            dim,
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[KSubset] {
        &self.vertices
    }

    pub fn inequalities(&self) -> &[ChainInequality] {
        &self.inequalities
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim + 1 == self.ground.n()
    }

    /// Every defining inequality is supported on a cyclic interval of σ.
    pub fn is_planar(&self) -> bool {
        self.inequalities
            .iter()
            .all(|q| self.ground.is_cyclic_interval(q.subset))
    }

    pub fn is_matroid(&self) -> bool {
        is_matroid_cell(self)
    }

    pub fn is_positroid(&self) -> bool {
        self.is_planar() && self.is_matroid()
    }

    /// Basis `B` lies on the face `x_j = 1` when `j ∈ B`.
    pub fn facet_vertices(&self, j: u32) -> Vec<KSubset> {
        self.vertices.iter().copied().filter(|v| v.contains(j)).collect()
    }

    /// `name` lists the vertices, e.g. `{124,125,134}`.
    pub fn name(&self) -> String {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// First failure of the basis exchange axiom: bases `b1`, `b2` and an
/// element `a ∈ b1 \ b2` with no `b ∈ b2 \ b1` making `b1 - a + b` a basis.
pub fn exchange_violation(vertices: &[KSubset]) -> Option<(KSubset, KSubset, u32)> {
    let set: std::collections::HashSet<u64> = vertices.iter().map(|v| v.mask()).collect();
    for &b1 in vertices {
        for &b2 in vertices {
            if let Some(a) = exchange_fails(&set, b1, b2) {
                return Some((b1, b2, a));
            }
        }
    }
    None
}

fn exchange_fails(set: &std::collections::HashSet<u64>, b1: KSubset, b2: KSubset) -> Option<u32> {
    let only1 = b1.mask() & !b2.mask();
    let only2 = b2.mask() & !b1.mask();
    crate::combinatorics::mask_labels(only1).find(|&a| {
        let without = b1.mask() & !crate::combinatorics::bit(a);
        !crate::combinatorics::mask_labels(only2)
            .any(|b| set.contains(&(without | crate::combinatorics::bit(b))))
    })
}

/// Whether the exchange axiom fails for the ordered pair `(b1, b2)` inside the cell.
pub fn exchange_fails_at(cell: &Cell, b1: KSubset, b2: KSubset) -> bool {
    let set: std::collections::HashSet<u64> = cell.vertices.iter().map(|v| v.mask()).collect();
    set.contains(&b1.mask()) && set.contains(&b2.mask()) && exchange_fails(&set, b1, b2).is_some()
}

/// Basis exchange over the cell's vertex set.
pub fn is_matroid_cell(cell: &Cell) -> bool {
    !cell.vertices.is_empty() && exchange_violation(&cell.vertices).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    ground: GroundSet,
    k: usize,
    cells: Vec<Cell>,
}

impl Subdivision {
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Full-dimensional cells ordered by their sorted vertex lists.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dual_graph(&self) -> Result<DualGraph> {
        let n = self.ground.n();
        let masks: Vec<Vec<u64>> = self
            .cells
            .iter()
            .map(|c| c.vertices.iter().map(|v| v.mask()).collect())
            .collect();
        let mut edges = Vec::new();
        for i in 0..masks.len() {
            for j in i + 1..masks.len() {
                let common: Vec<u64> = masks[i]
                    .iter()
                    .copied()
                    .filter(|m| masks[j].binary_search_by(|x| cmp_mask(*x, *m)).is_ok())
                    .collect();
                if common.len() >= n - 1 && affine_dimension(&common)? + 2 == n {
                    edges.push((i, j));
                }
            }
        }
        let labels = self.cells.iter().map(|c| c.vertices.clone()).collect();
        Ok(DualGraph { labels, edges })
    }
}

fn cmp_mask(a: u64, b: u64) -> std::cmp::Ordering {
    KSubset::from_mask_unchecked(a).cmp(&KSubset::from_mask_unchecked(b))
}

/// Cells sharing an `(n-2)`-dimensional face are adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    labels: Vec<Vec<KSubset>>,
    edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.labels.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// DOT text; each node is labeled by its bases, one per line.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph dual {\n");
        for (i, verts) in self.labels.iter().enumerate() {
            let lines: Vec<String> = verts.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "  c{i} [label=\"{}\"];", lines.join("\\n"));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  c{a} -- c{b};");
        }
        out.push_str("}\n");
        out
    }
}

struct WorkCell {
    set: VertexSet,
    inequalities: Vec<ChainInequality>,
}

/// The subdivision of `Δ(k,n)` cut out by the arrangement.
pub fn induce_subdivision(arr: &BladeArrangement) -> Result<Subdivision> {
    let ground = arr.ground();
    let n = ground.n();
    let k = arr.k();
    let all = ground.k_subsets(k);
    if all.len() > MAX_VERTICES {
        return Err(Error::ParameterRange(format!(
            "Δ({k},{n}) has {} vertices; at most {MAX_VERTICES} are supported",
            all.len()
        )));
    }

    let mut full = VertexSet::empty(all.len());
    (0..all.len()).for_each(|i| full.insert(i));
    let mut cells = vec![WorkCell {
        set: full,
        inequalities: Vec::new(),
    }];

    for blade in arr.blades().iter().filter(|b| !b.is_trivial()) {
        let plates: Vec<(VertexSet, Vec<ChainInequality>)> = blade
            .rotations()
            .into_iter()
            .map(|plate| {
                let ineqs = plate.inequalities();
                let mut set = VertexSet::empty(all.len());
                for (i, v) in all.iter().enumerate() {
                    if ineqs.iter().all(|q| q.holds_at(*v)) {
                        set.insert(i);
                    }
                }
                (set, ineqs)
            })
            .collect();

        let mut next: Vec<WorkCell> = Vec::new();
        let mut seen: HashMap<VertexSet, usize> = HashMap::new();
        for cell in &cells {
            for (plate_set, ineqs) in &plates {
                let set = cell.set.and(plate_set);
                if seen.contains_key(&set) {
                    continue;
                }
                let masks: Vec<u64> = set.iter().map(|i| all[i].mask()).collect();
                if masks.len() < n || affine_dimension(&masks)? + 1 != n {
                    continue;
                }
                let mut inequalities = cell.inequalities.clone();
                inequalities.extend_from_slice(ineqs);
                seen.insert(set.clone(), next.len());
                next.push(WorkCell { set, inequalities });
            }
        }
        cells = next;
    }

    let mut out = cells
        .into_iter()
        .map(|c| {
            let vertices = c.set.iter().map(|i| all[i]).collect();
            Cell::build(ground.clone(), k, vertices, c.inequalities)
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(Subdivision {
        ground: ground.clone(),
        k,
        cells: out,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidalReport {
    pub matroidal: bool,
    pub witness: Option<Cell>,
    pub cell_count: usize,
}

/// Whether every maximal cell of the induced subdivision is a matroid polytope.
pub fn is_matroidal(arr: &BladeArrangement) -> Result<MatroidalReport> {
    let sub = induce_subdivision(arr)?;
    let witness = sub.cells.iter().find(|c| !c.is_matroid()).cloned();
    Ok(MatroidalReport {
        matroidal: witness.is_none(),
        witness,
        cell_count: sub.len(),
    })
}

/// Two 2-splits `{S, Sᶜ}` and `{T, Tᶜ}` are compatible when one of the four
/// intersections is empty.
pub fn two_split_compatible(ground: &GroundSet, s: u64, t: u64) -> bool {
    let u = ground.universe();
    let (s, t) = (s & u, t & u);
    let (sc, tc) = (u & !s, u & !t);
    s & t == 0 || s & tc == 0 || sc & t == 0 || sc & tc == 0
}

/// Eulerian number `A(a, m)`: permutations of `m` letters with `a` descents.
pub fn eulerian_number(a: usize, m: usize) -> Result<u128> {
    if m == 0 || a >= m {
        return Err(Error::ParameterRange(format!("A({a},{m}) needs 0 <= a <= m-1")));
    }
    let mut row: Vec<u128> = vec![1];
    for len in 2..=m {
        let mut next = vec![0u128; len];
        for (j, slot) in next.iter_mut().enumerate() {
            let stay = if j < row.len() { (j as u128 + 1) * row[j] } else { 0 };
            let climb = if j >= 1 { (len - j) as u128 * row[j - 1] } else { 0 };
            *slot = stay
                .checked_add(climb)
                .ok_or(Error::Overflow("eulerian number"))?;
        }
        row = next;
    }
    Ok(row[a])
}

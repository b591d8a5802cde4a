//! Decorated ordered set partitions, plates and blades.
//!
//! A decorated OSP `((S_1)_{s_1}, …, (S_ℓ)_{s_ℓ})` is written in text as
//! `((128_2 34_1 567_1))`: blocks are separated by whitespace, each block is a
//! digit string (labels 1–9) or a bracketed list such as `[2,10,11]`, and the
//! weight suffix `_w` may be omitted when `w = 0`. Top-level commas also
//! separate blocks, so `((1,2,3))` is the undecorated blade on three
//! singletons.

use std::fmt;
use std::str::FromStr;

use crate::combinatorics::{
    bit, cyclic_intervals, format_labels, mask_from_labels, mask_labels, GroundSet, KSubset,
};
use crate::error::{Error, Result};

/// One facet inequality `x_S >= bound` of a plate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainInequality {
    pub subset: u64,
    pub bound: i64,
}

impl ChainInequality {
    pub fn labels(&self) -> Vec<u32> {
        mask_labels(self.subset).collect()
    }

    /// Whether the 0/1 vertex `e_B` satisfies the inequality.
    pub fn holds_at(&self, vertex: KSubset) -> bool {
        i64::from((vertex.mask() & self.subset).count_ones()) >= self.bound
    }
}

impl fmt::Display for ChainInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_{} >= {}", format_labels(self.subset), self.bound)
    }
}

/// An ordered set partition of the ground set with integer weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecoratedOsp {
    ground: GroundSet,
    blocks: Vec<u64>,
    weights: Vec<i64>,
}

impl DecoratedOsp {
    pub fn new(ground: GroundSet, blocks: Vec<Vec<u32>>, weights: Vec<i64>) -> Result<Self> {
        let masks = blocks
            .iter()
            .map(|b| mask_from_labels(b))
            .collect::<Result<Vec<_>>>()?;
        Self::from_masks(ground, masks, weights)
    }

    pub(crate) fn from_masks(ground: GroundSet, blocks: Vec<u64>, weights: Vec<i64>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidOsp("no blocks".into()));
        }
        if blocks.len() != weights.len() {
            return Err(Error::InvalidOsp(format!(
                "{} blocks but {} weights",
                blocks.len(),
                weights.len()
            )));
        }
        let mut seen = 0u64;
        for &b in &blocks {
            if b == 0 {
                return Err(Error::InvalidOsp("empty block".into()));
            }
            if b & seen != 0 {
                return Err(Error::InvalidOsp(format!(
                    "label {} appears in two blocks",
                    mask_labels(b & seen).next().unwrap_or(0)
                )));
            }
            seen |= b;
        }
        if seen != ground.universe() {
            let msg = match mask_labels(seen & !ground.universe()).next() {
                Some(stray) => format!("label {stray} is not in the ground set"),
                None => format!(
                    "blocks miss label {}",
                    mask_labels(ground.universe() & !seen).next().unwrap_or(0)
                ),
            };
            return Err(Error::InvalidOsp(msg));
        }
        Ok(Self {
            ground,
            blocks,
            weights,
        })
    }

    /// The undecorated OSP `((σ_1, σ_2, …, σ_n))` of singletons in σ order.
    pub fn singletons(ground: &GroundSet) -> Self {
        let blocks = ground.order().iter().map(|&l| bit(l)).collect::<Vec<_>>();
        let weights = vec![0; blocks.len()];
        Self {
            ground: ground.clone(),
            blocks,
            weights,
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn block_labels(&self, j: usize) -> Vec<u32> {
        mask_labels(self.blocks[j]).collect()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn ell(&self) -> usize {
        self.blocks.len()
    }

    /// The level `k = Σ s_j` of the ambient hyperplane `x_1 + … + x_n = k`.
    pub fn k(&self) -> i64 {
        self.weights.iter().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.ell() == 1
    }

    pub fn is_undecorated(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    /// Hypersimplicial type `Δ(k,n)`: `1 <= s_j <= |S_j| - 1` for every block.
    pub fn is_hypersimplicial(&self) -> bool {
        self.blocks
            .iter()
            .zip(&self.weights)
            .all(|(&b, &w)| w >= 1 && w <= i64::from(b.count_ones()) - 1)
    }

    /// The OSP starting at block `r`: `(S_r, S_{r+1}, …, S_{r-1})`.
    pub fn rotated(&self, r: usize) -> Self {
        let mut blocks = self.blocks.clone();
        let mut weights = self.weights.clone();
        blocks.rotate_left(r % self.ell());
        weights.rotate_left(r % self.ell());
        Self {
            ground: self.ground.clone(),
            blocks,
            weights,
        }
    }

    /// Index of the block holding `σ_1`.
    pub fn canonical_offset(&self) -> usize {
        let first = bit(self.ground.order()[0]);
        self.blocks
            .iter()
            .position(|&b| b & first != 0)
            .expect("blocks cover the ground set")
    }

    /// The facet inequalities of the plate: `x_{S_1 ∪ … ∪ S_t} >= s_1 + … + s_t`
    /// for `t = 1, …, ℓ - 1`.
    pub fn chain_inequalities(&self) -> Vec<ChainInequality> {
        let mut subset = 0u64;
        let mut bound = 0i64;
        self.blocks[..self.ell() - 1]
            .iter()
            .zip(&self.weights)
            .map(|(&b, &w)| {
                subset |= b;
                bound += w;
                ChainInequality { subset, bound }
            })
            .collect()
    }

    /// Parses the text grammar; the ground set is the sorted label set in
    /// natural order.
    pub fn parse(text: &str) -> Result<Self> {
        let (blocks, weights) = parse_blocks(text)?;
        let universe = blocks.iter().fold(0u64, |acc, &b| acc | b);
        let ground = GroundSet::from_order(mask_labels(universe).collect())?;
        Self::from_masks(ground, blocks, weights)
    }

    /// Parses the text grammar against an explicit ground set.
    pub fn parse_with_ground(text: &str, ground: &GroundSet) -> Result<Self> {
        let (blocks, weights) = parse_blocks(text)?;
        Self::from_masks(ground.clone(), blocks, weights)
    }
}

impl fmt::Display for DecoratedOsp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.ground.order().iter().any(|&l| l > 9);
        f.write_str("((")?;
        for (j, (&b, &w)) in self.blocks.iter().zip(&self.weights).enumerate() {
            if j > 0 {
                f.write_str(" ")?;
            }
            if wide {
                let inner: Vec<String> = mask_labels(b).map(|l| l.to_string()).collect();
                write!(f, "[{}]", inner.join(","))?;
            } else {
                f.write_str(&format_labels(b))?;
            }
            if w != 0 {
                write!(f, "_{w}")?;
            }
        }
        f.write_str("))")
    }
}

impl FromStr for DecoratedOsp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

fn parse_blocks(text: &str) -> Result<(Vec<u64>, Vec<i64>)> {
    let t = text.trim();
    let inner = t
        .strip_prefix("((")
        .and_then(|r| r.strip_suffix("))"))
        .ok_or_else(|| Error::Parse(format!("expected ((…)), got {t:?}")))?;

    // split on whitespace and on commas outside brackets
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut depth = 0usize;
    for ch in inner.chars() {
        match ch {
            '[' => {
                depth += 1;
                current.push(ch);
            }
            ']' => {
                if depth == 0 {
                    return Err(Error::Parse(format!("unbalanced ']' in {t:?}")));
                }
                depth -= 1;
                current.push(ch);
            }
            ',' if depth == 0 => tokens.push(std::mem::take(&mut current)),
            c if c.is_whitespace() && depth == 0 => tokens.push(std::mem::take(&mut current)),
            c => current.push(c),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced '[' in {t:?}")));
    }
    tokens.push(current);

    let mut blocks = Vec::new();
    let mut weights = Vec::new();
    for token in tokens.into_iter().filter(|s| !s.is_empty()) {
        let (block, weight) = parse_block(&token)?;
        blocks.push(block);
        weights.push(weight);
    }
    if blocks.is_empty() {
        return Err(Error::Parse(format!("no blocks in {t:?}")));
    }
    Ok((blocks, weights))
}

fn parse_block(token: &str) -> Result<(u64, i64)> {
    let (body, weight) = match token.rfind('_') {
        Some(i) if !token[i..].contains(']') => {
            let w = token[i + 1..]
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad weight in block {token:?}")))?;
            (&token[..i], w)
        }
        _ => (token, 0),
    };
    let labels: Vec<u32> = if let Some(list) = body.strip_prefix('[') {
        let list = list
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("bad block {token:?}")))?;
        list.split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad label {s:?} in block {token:?}")))
            })
            .collect::<Result<_>>()?
    } else {
        body.chars()
            .map(|c| match c.to_digit(10) {
                Some(d) if d > 0 => Ok(d),
                _ => Err(Error::Parse(format!("bad label {c:?} in block {token:?}"))),
            })
            .collect::<Result<_>>()?
    };
    if labels.is_empty() {
        return Err(Error::Parse(format!("empty block {token:?}")));
    }
    let mask = mask_from_labels(&labels).map_err(|e| Error::Parse(e.to_string()))?;
    Ok((mask, weight))
}

/// The plate `⟦(S_1)_{s_1}, …, (S_ℓ)_{s_ℓ}⟧` cut out by the chain inequalities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plate {
    osp: DecoratedOsp,
}

impl Plate {
    pub fn new(osp: DecoratedOsp) -> Self {
        Self { osp }
    }

    pub fn osp(&self) -> &DecoratedOsp {
        &self.osp
    }

    pub fn inequalities(&self) -> Vec<ChainInequality> {
        self.osp.chain_inequalities()
    }

    /// Vertices of `Δ(k,n)` lying in the plate.
    pub fn vertices(&self) -> Result<Vec<KSubset>> {
        plate_vertices(self)
    }
}

/// All k-subsets `B` with `|B ∩ (S_1 ∪ … ∪ S_t)| >= s_1 + … + s_t` for every `t < ℓ`.
pub fn plate_vertices(plate: &Plate) -> Result<Vec<KSubset>> {
    let osp = plate.osp();
    let n = osp.ground().n();
    let k = osp.k();
    if !osp.is_hypersimplicial() {
        return Err(Error::NotHypersimplicial {
            blade: osp.to_string(),
            k,
            n,
        });
    }
    let ineqs = osp.chain_inequalities();
    Ok(osp
        .ground()
        .k_subsets(k as usize)
        .into_iter()
        .filter(|&v| ineqs.iter().all(|q| q.holds_at(v)))
        .collect())
}

/// A blade `(((S_1)_{s_1}, …, (S_ℓ)_{s_ℓ}))`: the OSP up to cyclic block rotation.
///
/// Stored in canonical rotation, with the block containing `σ_1` first, so
/// equal blades compare and hash equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Blade {
    osp: DecoratedOsp,
}

impl Blade {
    pub fn new(osp: DecoratedOsp) -> Self {
        let r = osp.canonical_offset();
        Self {
            osp: osp.rotated(r),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        DecoratedOsp::parse(text).map(Self::new)
    }

    pub fn osp(&self) -> &DecoratedOsp {
        &self.osp
    }

    pub fn into_osp(self) -> DecoratedOsp {
        self.osp
    }

    pub fn ground(&self) -> &GroundSet {
        self.osp.ground()
    }

    pub fn ell(&self) -> usize {
        self.osp.ell()
    }

    pub fn is_trivial(&self) -> bool {
        self.osp.is_trivial()
    }

    /// The `ℓ` plates whose boundaries make up the blade, in rotation order.
    pub fn rotations(&self) -> Vec<Plate> {
        (0..self.ell()).map(|r| Plate::new(self.osp.rotated(r))).collect()
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.osp.fmt(f)
    }
}

impl FromStr for Blade {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// The decorated OSP that the translate `((σ_1, …, σ_n))_{e_v}` induces on `Δ(k,n)`.
///
/// With `v = I_1 ∪ … ∪ I_ℓ` split into cyclic runs and `C_j` the gap
/// preceding `I_j`, the blocks are `S_j = C_j ∪ I_j` with weights `|I_j|`. A
/// frozen `v` gives the one-block (trivial) OSP.
pub fn blade_from_vertex(ground: &GroundSet, v: KSubset) -> Result<Blade> {
    ground.subset_from_mask(v.mask())?;
    let d = cyclic_intervals(ground, v);
    let mut blocks = Vec::with_capacity(d.ell());
    let mut weights = Vec::with_capacity(d.ell());
    for (gap, run) in d.complements().iter().zip(d.intervals()) {
        let block = gap.iter().chain(run).fold(0u64, |acc, &l| acc | bit(l));
        blocks.push(block);
        weights.push(run.len() as i64);
    }
    let osp = DecoratedOsp::from_masks(ground.clone(), blocks, weights)?;
    Ok(Blade::new(osp))
}

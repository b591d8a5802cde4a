//! Restriction to the boundary facets `x_j = 1` and `x_j = 0` of `Δ(k,n)`.

use crate::combinatorics::{bit, is_frozen, GroundSet, KSubset, WSCollection};
use crate::error::{Error, Result};
use crate::osp::{Blade, DecoratedOsp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FacetKind {
    /// The facet `x_j = 1`, a copy of `Δ(k-1, n-1)`.
    SetToOne,
    /// The facet `x_j = 0`, a copy of `Δ(k, n-1)`.
    SetToZero,
}

/// A facet of `Δ(k,n)` together with the ground set it lives on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetContext {
    parent: GroundSet,
    k: usize,
    j: u32,
    kind: FacetKind,
    child: GroundSet,
}

impl FacetContext {
    pub fn new(parent: &GroundSet, k: usize, j: u32, kind: FacetKind) -> Result<Self> {
        let child = parent.without(j)?;
        let child_k = match kind {
            FacetKind::SetToOne => k.checked_sub(1).unwrap_or(0),
            FacetKind::SetToZero => k,
        };
        if child_k == 0 || child_k >= child.n() {
            return Err(match kind {
                FacetKind::SetToOne => Error::RestrictionNeedsRank(k),
                FacetKind::SetToZero => Error::InvalidCardinality {
                    k,
                    max: child.n().saturating_sub(1),
                },
            });
        }
        Ok(Self {
            parent: parent.clone(),
            k,
            j,
            kind,
            child,
        })
    }

    pub fn parent(&self) -> &GroundSet {
        &self.parent
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn kind(&self) -> FacetKind {
        self.kind
    }

    pub fn child(&self) -> &GroundSet {
        &self.child
    }

    pub fn child_k(&self) -> usize {
        match self.kind {
            FacetKind::SetToOne => self.k - 1,
            FacetKind::SetToZero => self.k,
        }
    }
}

/// Image of a vertex on the facet `x_j = 1`: drop `j` if present, otherwise
/// drop the first member of `v` cyclically after `j`.
pub fn restrict_vertex(ground: &GroundSet, v: KSubset, j: u32) -> Result<(GroundSet, KSubset)> {
    let v = ground.subset_from_mask(v.mask())?;
    let ctx = FacetContext::new(ground, v.len(), j, FacetKind::SetToOne)?;
    let image = restrict_vertex_in(&ctx, v);
    Ok((ctx.child, image))
}

fn restrict_vertex_in(ctx: &FacetContext, v: KSubset) -> KSubset {
    let j = ctx.j;
    let drop = if v.contains(j) {
        j
    } else {
        let mut next = ctx.parent.successor(j).expect("j lies in the ground set");
        while !v.contains(next) {
            next = ctx.parent.successor(next).expect("labels lie in the ground set");
        }
        next
    };
    KSubset::from_mask_unchecked(v.mask() & !bit(drop))
}

/// Result of restricting a blade to `x_j = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedOsp {
    pub blade: Blade,
    /// The blade collapsed to a single block and induces no subdivision.
    pub trivial: bool,
}

/// Restricts a blade of type `Δ(k,n)` to the facet `x_j = 1`.
///
/// With `j ∈ S_a`: if `s_a >= 2` the block and its weight both shrink by one;
/// if `s_a = 1` the rest of `S_a` joins the cyclically next block, which keeps
/// its weight.
pub fn restrict_osp(osp: &DecoratedOsp, j: u32) -> Result<RestrictedOsp> {
    let ground = osp.ground();
    let n = ground.n();
    let k = osp.k();
    if !osp.is_trivial() && !osp.is_hypersimplicial() {
        return Err(Error::NotHypersimplicial {
            blade: osp.to_string(),
            k,
            n,
        });
    }
    if k < 2 {
        return Err(Error::RestrictionNeedsRank(k.max(0) as usize));
    }
    let child = ground.without(j)?;
    let mut blocks = osp.blocks().to_vec();
    let mut weights = osp.weights().to_vec();
    let a = blocks
        .iter()
        .position(|&b| b & bit(j) != 0)
        .expect("blocks cover the ground set");
    blocks[a] &= !bit(j);
    if weights[a] >= 2 || blocks.len() == 1 {
        weights[a] -= 1;
    } else {
        let next = (a + 1) % blocks.len();
        blocks[next] |= blocks[a];
        blocks.remove(a);
        weights.remove(a);
    }
    let restricted = DecoratedOsp::from_masks(child, blocks, weights)?;
    let trivial = restricted.is_trivial();
    Ok(RestrictedOsp {
        blade: Blade::new(restricted),
        trivial,
    })
}

/// Images of the members on `x_j = 1`, in input order, duplicates and frozen
/// images kept.
pub fn restrict_collection_raw(c: &WSCollection, j: u32) -> Result<(GroundSet, Vec<KSubset>)> {
    let ctx = FacetContext::new(c.ground(), c.k(), j, FacetKind::SetToOne)?;
    let images = c.subsets().iter().map(|&v| restrict_vertex_in(&ctx, v)).collect();
    Ok((ctx.child, images))
}

/// The restricted collection on `x_j = 1`, deduplicated and sorted, with
/// frozen images removed when `drop_frozen` is set.
pub fn restrict_collection(c: &WSCollection, j: u32, drop_frozen: bool) -> Result<WSCollection> {
    let (child, mut images) = restrict_collection_raw(c, j)?;
    images.sort();
    images.dedup();
    if drop_frozen {
        images.retain(|&v| !is_frozen(&child, v));
    }
    WSCollection::new(child, c.k() - 1, images)
}

/// The vertex viewed on the facet `x_j = 0`; requires `j ∉ v`.
pub fn delete_coordinate(ground: &GroundSet, v: KSubset, j: u32) -> Result<(GroundSet, KSubset)> {
    let v = ground.subset_from_mask(v.mask())?;
    if v.contains(j) {
        return Err(Error::DeleteMember(j));
    }
    let ctx = FacetContext::new(ground, v.len(), j, FacetKind::SetToZero)?;
    let image = ctx.child.subset_from_mask(v.mask())?;
    Ok((ctx.child, image))
}

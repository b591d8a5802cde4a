//! Samplers and brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::HashSet;

use blade_arrangements::osp::DecoratedOsp;
use blade_arrangements::{GroundSet, KSubset, RationalPoint};
use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn labels_of(mask: u64) -> Vec<u32> {
    (1..=64).filter(|&l| mask >> (l - 1) & 1 == 1).collect()
}

/// Direct four-point test: no `a1, b1, a2, b2` alternating around the circle.
pub fn ws_four_point(ground: &GroundSet, a: KSubset, b: KSubset) -> bool {
    let pos = |l: u32| ground.order().iter().position(|&x| x == l).unwrap();
    let only_a: Vec<usize> = a.members().into_iter().filter(|&x| !b.contains(x)).map(pos).collect();
    let only_b: Vec<usize> = b.members().into_iter().filter(|&x| !a.contains(x)).map(pos).collect();
    for &i1 in &only_a {
        for &i2 in &only_a {
            for &j1 in &only_b {
                for &j2 in &only_b {
                    let w = [i1, j1, i2, j2];
                    let cyclic = (0..4).any(|r| (0..3).all(|t| w[(r + t) % 4] < w[(r + t + 1) % 4]));
                    if i1 != i2 && j1 != j2 && cyclic {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Basis family check through the dual exchange form: for `a ∈ B1 \ B2`
/// some `b ∈ B2 \ B1` makes `B2 - b + a` a basis.
pub fn matroid_dual_exchange(bases: &[KSubset]) -> bool {
    let set: HashSet<u64> = bases.iter().map(|v| v.mask()).collect();
    for &b1 in bases {
        for &b2 in bases {
            for a in labels_of(b1.mask() & !b2.mask()) {
                let ok = labels_of(b2.mask() & !b1.mask())
                    .into_iter()
                    .any(|b| set.contains(&((b2.mask() & !(1 << (b - 1))) | (1 << (a - 1)))));
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Maximal cliques by plain subset enumeration; `candidate[i]` limits members,
/// every node counts for maximality.
pub fn brute_maximal_count(nodes: &[KSubset], adjacent: impl Fn(usize, usize) -> bool, candidate: &[bool]) -> u64 {
    let cands: Vec<usize> = (0..nodes.len()).filter(|&i| candidate[i]).collect();
    assert!(cands.len() <= 22, "too many nodes for brute force");
    let mut count = 0;
    for bits in 1u64..(1 << cands.len()) {
        let members: Vec<usize> = (0..cands.len()).filter(|&t| bits >> t & 1 == 1).map(|t| cands[t]).collect();
        let clique = members.iter().all(|&a| members.iter().all(|&b| a == b || adjacent(a, b)));
        if !clique {
            continue;
        }
        let extendable = (0..nodes.len()).any(|v| !members.contains(&v) && members.iter().all(|&m| adjacent(m, v)));
        if !extendable {
            count += 1;
        }
    }
    count
}

/// Every OSP of the ground set whose first block holds `σ_1`, i.e. one
/// representative per blade, with the given weights function.
pub fn all_canonical_osps(ground: &GroundSet) -> Vec<Vec<u64>> {
    let order = ground.order().to_vec();
    let n = order.len();
    let mut out = Vec::new();
    // restricted growth strings give set partitions with σ_1 in block 0
    let mut rgs = vec![0usize; n];
    loop {
        let ell = rgs.iter().max().unwrap() + 1;
        let mut blocks = vec![0u64; ell];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b] |= 1 << (order[i] - 1);
        }
        let mut rest: Vec<usize> = (1..ell).collect();
        permutations(&mut rest, 0, &mut |perm| {
            let mut osp = vec![blocks[0]];
            osp.extend(perm.iter().map(|&b| blocks[b]));
            out.push(osp);
        });
        // next restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let prefix_max = rgs[..i].iter().max().copied().unwrap();
            if rgs[i] <= prefix_max {
                rgs[i] += 1;
                for x in rgs.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

fn permutations(items: &mut Vec<usize>, start: usize, f: &mut dyn FnMut(&[usize])) {
    if start == items.len() {
        f(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permutations(items, start + 1, f);
        items.swap(start, i);
    }
}

fn small_rational(rng: &mut ChaCha8Rng, span: i64) -> Rational64 {
    let q = rng.gen_range(1..=6);
    Rational64::new(rng.gen_range(-span * q..=span * q), q)
}

/// Splits `total` into `parts` random rational pieces.
fn scatter(rng: &mut ChaCha8Rng, total: Rational64, parts: usize) -> Vec<Rational64> {
    let mut pieces: Vec<Rational64> = (0..parts - 1).map(|_| small_rational(rng, 2)).collect();
    let used: Rational64 = pieces.iter().copied().sum();
    pieces.push(total - used);
    pieces.shuffle(rng);
    pieces
}

/// Points of `Σx = Σ s_j` for an OSP: a third generic rationals, a third
/// small integers, a third built so that the partial sums tie at their
/// minimum (on the blade) or just miss a tie.
pub fn blade_probe_point(rng: &mut ChaCha8Rng, osp: &DecoratedOsp) -> RationalPoint {
    let labels = osp.ground().sorted_labels();
    let n = labels.len();
    let level = Rational64::from_integer(osp.k());
    let mode = rng.gen_range(0..3);
    let mut coords: Vec<Rational64> = match mode {
        0 => (0..n).map(|_| small_rational(rng, 2)).collect(),
        1 => (0..n).map(|_| Rational64::from_integer(rng.gen_range(-1..=1))).collect(),
        _ => {
            let ell = osp.ell();
            let mut f: Vec<Rational64> = (0..ell).map(|_| small_rational(rng, 2)).collect();
            if ell >= 2 {
                let a = rng.gen_range(0..ell);
                let mut b = rng.gen_range(0..ell - 1);
                if b >= a {
                    b += 1;
                }
                let min = *f.iter().min().unwrap();
                f[a] = min;
                f[b] = if rng.gen_bool(0.8) { min } else { min + Rational64::new(1, 7) };
            }
            let f0 = f[0];
            f.iter_mut().for_each(|x| *x -= f0);
            let mut coords = vec![Rational64::from_integer(0); n];
            for t in 0..ell {
                let next = if t + 1 < ell { f[t + 1] } else { Rational64::from_integer(0) };
                let block_sum = next - f[t] + Rational64::from_integer(osp.weights()[t]);
                let members = labels_of(osp.blocks()[t]);
                for (l, piece) in members.iter().zip(scatter(rng, block_sum, members.len())) {
                    coords[labels.binary_search(l).unwrap()] = piece;
                }
            }
            return RationalPoint::new(coords);
        }
    };
    let sum: Rational64 = coords[..n - 1].iter().copied().sum();
    coords[n - 1] = level - sum;
    RationalPoint::new(coords)
}

/// Convex combination with random positive weights of the given 0/1 vertices.
pub fn convex_combination(rng: &mut ChaCha8Rng, ground: &GroundSet, vertices: &[KSubset]) -> RationalPoint {
    let labels = ground.sorted_labels();
    let weights: Vec<i64> = vertices.iter().map(|_| rng.gen_range(1..=20)).collect();
    let total: i64 = weights.iter().sum();
    let coords = labels
        .iter()
        .map(|&l| {
            let hit: i64 = vertices.iter().zip(&weights).filter(|(v, _)| v.contains(l)).map(|(_, w)| w).sum();
            Rational64::new(hit, total)
        })
        .collect();
    RationalPoint::new(coords)
}

/// A random point of `Δ(k,n)` as a convex combination of a few random vertices.
pub fn hypersimplex_point(rng: &mut ChaCha8Rng, ground: &GroundSet, k: usize) -> RationalPoint {
    let all = ground.k_subsets(k);
    let take = rng.gen_range(1..=ground.n() + 2).min(all.len());
    let picked: Vec<KSubset> = all.choose_multiple(rng, take).copied().collect();
    convex_combination(rng, ground, &picked)
}

/// A point of `Δ(k,n)` inside the convex hull of a random few of `vertices`.
pub fn point_among(rng: &mut ChaCha8Rng, ground: &GroundSet, vertices: &[KSubset]) -> Option<RationalPoint> {
    if vertices.is_empty() {
        return None;
    }
    let take = rng.gen_range(1..=vertices.len().min(4));
    let picked: Vec<KSubset> = vertices.choose_multiple(rng, take).copied().collect();
    Some(convex_combination(rng, ground, &picked))
}

/// Partial sums `f_0, …, f_{n-1}` of `e_B - e_v` along σ.
pub fn translate_profile(ground: &GroundSet, v: KSubset, b: KSubset) -> Vec<i64> {
    let mut f = Vec::with_capacity(ground.n());
    let mut acc = 0i64;
    for &l in ground.order() {
        f.push(acc);
        acc += i64::from(b.contains(l)) - i64::from(v.contains(l));
    }
    f
}

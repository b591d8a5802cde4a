mod common;

use blade_arrangements::{cyclic_intervals, is_frozen, is_weakly_separated, DecoratedOsp, GroundSet, KSubset};
use common::*;
use proptest::prelude::*;

fn rotate(g: &GroundSet, v: KSubset, r: u32) -> KSubset {
    let n = g.n() as u32;
    let labels: Vec<u32> = v.members().iter().map(|&l| (l - 1 + r) % n + 1).collect();
    g.subset(&labels).unwrap()
}

#[test]
fn separation_matches_four_point_oracle() {
    for n in 3..=8 {
        let g = GroundSet::new(n).unwrap();
        for k in 1..n {
            let all = g.k_subsets(k);
            for &a in &all {
                assert!(is_weakly_separated(&g, a, a).unwrap());
                for &b in &all {
                    let ws = is_weakly_separated(&g, a, b).unwrap();
                    assert_eq!(ws, ws_four_point(&g, a, b), "{a} {b}");
                    assert_eq!(ws, is_weakly_separated(&g, b, a).unwrap());
                    assert_eq!(ws, is_weakly_separated(&g, rotate(&g, a, 1), rotate(&g, b, 1)).unwrap());
                }
            }
        }
    }
}

#[test]
fn frozen_count_is_n() {
    for n in 3..=8 {
        let g = GroundSet::new(n).unwrap();
        for k in 1..n {
            let frozen = g.k_subsets(k).into_iter().filter(|&v| is_frozen(&g, v)).count();
            assert_eq!(frozen, n, "({k},{n})");
        }
    }
}

#[test]
fn intervals_interlace_to_sigma() {
    for sigma in [vec![1, 2, 3, 4, 5, 6, 7], vec![4, 2, 7, 1, 6, 3, 5]] {
        let g = GroundSet::with_order(sigma).unwrap();
        for k in 1..7 {
            for v in g.k_subsets(k) {
                let d = cyclic_intervals(&g, v);
                let mut union: Vec<u32> = d.intervals().concat();
                union.sort_unstable();
                assert_eq!(union, v.members());
                let walk: Vec<u32> = d
                    .complements()
                    .iter()
                    .zip(d.intervals())
                    .flat_map(|(c, i)| c.iter().chain(i).copied())
                    .collect();
                let start = g.order().iter().position(|&l| l == walk[0]).unwrap();
                let rotated: Vec<u32> = (0..7).map(|t| g.order()[(start + t) % 7]).collect();
                assert_eq!(walk, rotated);
                assert_eq!(d.is_frozen(), is_frozen(&g, v));
            }
        }
    }
}

proptest! {
    #[test]
    fn osp_text_round_trips(n in 2usize..=12, seed in any::<u64>()) {
        use rand::Rng;
        let mut r = rng(seed);
        let g = GroundSet::new(n).unwrap();
        let ell = r.gen_range(1..=n);
        let mut blocks = vec![Vec::new(); ell];
        let mut labels = g.sorted_labels();
        use rand::seq::SliceRandom;
        labels.shuffle(&mut r);
        for (i, l) in labels.into_iter().enumerate() {
            let b = if i < ell { i } else { r.gen_range(0..ell) };
            blocks[b].push(l);
        }
        let weights: Vec<i64> = (0..ell).map(|_| r.gen_range(-3..=3)).collect();
        let osp = DecoratedOsp::new(g, blocks, weights).unwrap();
        let text = osp.to_string();
        prop_assert_eq!(DecoratedOsp::parse(&text).unwrap(), osp);
    }
}

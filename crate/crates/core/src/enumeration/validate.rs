use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{is_frozen, GroundSet, KSubset, WSCollection};
use crate::error::{Error, Result};
use crate::subdivision::{is_matroidal, BladeArrangement};

/// A vertex set on which weak separation and matroidality disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub vertices: Vec<KSubset>,
    pub weakly_separated: bool,
    pub matroidal: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossValidationReport {
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub exhaustive: bool,
    pub discrepancies: Vec<Discrepancy>,
}

impl CrossValidationReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

fn check(ground: &GroundSet, k: usize, vertices: Vec<KSubset>) -> Result<Option<Discrepancy>> {
    let ws = WSCollection::new(ground.clone(), k, vertices.clone())?.is_weakly_separated();
    let arr = BladeArrangement::from_vertices(ground.clone(), k, &vertices)?;
    let matroidal = is_matroidal(&arr)?.matroidal;
    Ok((ws != matroidal).then_some(Discrepancy {
        vertices,
        weakly_separated: ws,
        matroidal,
    }))
}

/// Compares weak separation of a vertex set against matroidality of the
/// subdivision its vertex translates induce.
///
/// For `n <= 6` every pair and triple of nonfrozen vertices is checked;
/// otherwise `sample_size` random pairs and as many random triples, drawn
/// from a generator seeded with `seed`.
pub fn cross_validate_theorem(k: usize, n: usize, sample_size: usize, seed: u64) -> Result<CrossValidationReport> {
    if k < 2 || k + 2 > n {
        return Err(Error::ParameterRange(format!("need 2 <= k <= n-2, got k = {k}, n = {n}")));
    }
    let ground = GroundSet::new(n)?;
    let nodes: Vec<KSubset> = ground
        .k_subsets(k)
        .into_iter()
        .filter(|&v| !is_frozen(&ground, v))
        .collect();
    let m = nodes.len();
    let mut report = CrossValidationReport {
        exhaustive: n <= 6,
        ..Default::default()
    };
    let record = |vertices: Vec<KSubset>, report: &mut CrossValidationReport| -> Result<()> {
        if vertices.len() == 2 {
            report.pairs_checked += 1;
        } else {
            report.triples_checked += 1;
        }
        if let Some(d) = check(&ground, k, vertices)? {
            report.discrepancies.push(d);
        }
        Ok(())
    };
    if report.exhaustive {
        for a in 0..m {
            for b in a + 1..m {
                record(vec![nodes[a], nodes[b]], &mut report)?;
                for c in b + 1..m {
                    record(vec![nodes[a], nodes[b], nodes[c]], &mut report)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for size in [2, 3] {
            for _ in 0..sample_size {
                let picked = sample(&mut rng, m, size).into_iter().map(|i| nodes[i]).collect();
                record(picked, &mut report)?;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octahedron_pairs() {
        let r = cross_validate_theorem(2, 4, 0, 0).unwrap();
        assert_eq!(r.pairs_checked, 1);
        assert!(r.is_clean());
    }

    #[test]
    fn delta_2_5_exhaustive() {
        let r = cross_validate_theorem(2, 5, 0, 0).unwrap();
        assert_eq!(r.pairs_checked, 10);
        assert_eq!(r.triples_checked, 10);
        assert!(r.is_clean(), "{:?}", r.discrepancies);
    }
}

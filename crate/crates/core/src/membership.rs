//! Exact membership tests for blades.
//!
//! Coordinates of a [`RationalPoint`] are indexed by the ground set's labels in
//! increasing order, so for the standard ground set coordinate `i` is `x_{i+1}`.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::combinatorics::{mask_labels, GroundSet, KSubset};
use crate::error::{Error, Result};
use crate::osp::{Blade, DecoratedOsp};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    coords: Vec<Rational64>,
}

impl RationalPoint {
    pub fn new(coords: Vec<Rational64>) -> Self {
        Self { coords }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| Rational64::from_integer(c)).collect())
    }

    /// The indicator vector `e_v`.
    pub fn vertex(ground: &GroundSet, v: KSubset) -> Self {
        Self::new(
            ground
                .sorted_labels()
                .iter()
                .map(|&l| Rational64::from_integer(i64::from(v.contains(l))))
                .collect(),
        )
    }

    /// Parses a comma separated list such as `1/2,1/2,0,1`.
    pub fn parse(text: &str) -> Result<Self> {
        let coords = text
            .split(',')
            .map(|s| parse_rational(s.trim()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coords))
    }

    pub fn coords(&self) -> &[Rational64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn sum(&self) -> Rational64 {
        self.coords.iter().copied().sum()
    }

    /// Coordinate-wise `self - e_v`.
    pub fn minus_vertex(&self, ground: &GroundSet, v: KSubset) -> Result<Self> {
        check_dim(ground, self)?;
        let coords = ground
            .sorted_labels()
            .iter()
            .zip(&self.coords)
            .map(|(&l, &c)| if v.contains(l) { c - 1 } else { c })
            .collect();
        Ok(Self::new(coords))
    }
}

/// Parses `p/q` or an integer.
pub fn parse_rational(text: &str) -> Result<Rational64> {
    let bad = || Error::Parse(format!("bad rational {text:?}"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p = p.trim().parse::<i64>().map_err(|_| bad())?;
            let q = q.trim().parse::<i64>().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(p, q))
        }
        None => text.parse::<i64>().map(Rational64::from_integer).map_err(|_| bad()),
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for RationalPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MembershipMethod {
    /// On the boundary of some cyclic rotation of the plate.
    Chain,
    /// On the Minkowski-sum piece of some block pair.
    Minkowski,
    /// Tropical hypersurface of the linear forms `L_i` (undecorated blades only).
    Tropical,
}

impl FromStr for MembershipMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chain" => Ok(Self::Chain),
            "minkowski" => Ok(Self::Minkowski),
            "tropical" => Ok(Self::Tropical),
            other => Err(Error::Parse(format!("unknown membership method {other:?}"))),
        }
    }
}

impl fmt::Display for MembershipMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Chain => "chain",
            Self::Minkowski => "minkowski",
            Self::Tropical => "tropical",
        })
    }
}

fn check_dim(ground: &GroundSet, x: &RationalPoint) -> Result<()> {
    if x.dim() != ground.n() {
        return Err(Error::WrongDimension {
            found: x.dim(),
            expected: ground.n(),
        });
    }
    Ok(())
}

/// The point scaled to integers, block sums and scaled weights.
struct Scaled {
    block_sums: Vec<i128>,
    weights: Vec<i128>,
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn scale(osp: &DecoratedOsp, x: &RationalPoint) -> Result<Scaled> {
    let ground = osp.ground();
    check_dim(ground, x)?;
    let mut denom: i128 = 1;
    for c in x.coords() {
        let d = i128::from(*c.denom());
        denom = (denom / gcd(denom, d))
            .checked_mul(d)
            .ok_or(Error::Overflow("point denominator"))?;
    }
    let labels = ground.sorted_labels();
    let mut scaled = Vec::with_capacity(labels.len());
    for c in x.coords() {
        let v = i128::from(*c.numer())
            .checked_mul(denom / i128::from(*c.denom()))
            .ok_or(Error::Overflow("point coordinate"))?;
        scaled.push(v);
    }
    let level = osp.k();
    let total: i128 = scaled.iter().sum();
    if total != i128::from(level) * denom {
        return Err(Error::WrongLevel {
            found: x.sum().to_string(),
            expected: level,
        });
    }
    let block_sums = osp
        .blocks()
        .iter()
        .map(|&b| {
            mask_labels(b)
                .map(|l| {
                    let i = labels.binary_search(&l).expect("block labels lie in the ground set");
                    scaled[i]
                })
                .sum()
        })
        .collect();
    let weights = osp.weights().iter().map(|&w| i128::from(w) * denom).collect();
    Ok(Scaled {
        block_sums,
        weights,
    })
}

/// Plate `r` contains the point and at least one of its chain inequalities is tight.
fn chain_member(s: &Scaled) -> bool {
    let ell = s.block_sums.len();
    (0..ell).any(|r| {
        let mut lhs = 0i128;
        let mut rhs = 0i128;
        let mut tight = false;
        for t in 0..ell - 1 {
            let b = (r + t) % ell;
            lhs += s.block_sums[b];
            rhs += s.weights[b];
            if lhs < rhs {
                return false;
            }
            tight |= lhs == rhs;
        }
        tight
    })
}

/// Arc `[from, to)` of blocks, read cyclically; `len` blocks long.
fn arc_plate_holds(s: &Scaled, from: usize, len: usize) -> bool {
    let ell = s.block_sums.len();
    let mut lhs = 0i128;
    let mut rhs = 0i128;
    for t in 0..len.saturating_sub(1) {
        let b = (from + t) % ell;
        lhs += s.block_sums[b];
        rhs += s.weights[b];
        if lhs < rhs {
            return false;
        }
    }
    true
}

/// Some pair `i < j` splits the blocks into two arcs: the arc equality holds
/// and the point lies in both arc plates.
fn minkowski_member(s: &Scaled) -> bool {
    let ell = s.block_sums.len();
    for i in 0..ell {
        for j in i + 1..ell {
            let arc_sum: i128 = s.block_sums[i..j].iter().sum();
            let arc_weight: i128 = s.weights[i..j].iter().sum();
            if arc_sum == arc_weight
                && arc_plate_holds(s, i, j - i)
                && arc_plate_holds(s, j, ell - (j - i))
            {
                return true;
            }
        }
    }
    false
}

/// `min_i L_i(x)` attained at least twice, with
/// `L_i = x_{S_{i+1}} + 2 x_{S_{i+2}} + … + (ℓ-1) x_{S_{i-1}}`.
fn tropical_member(s: &Scaled) -> bool {
    let ell = s.block_sums.len();
    if ell < 2 {
        return false;
    }
    let forms: Vec<i128> = (0..ell)
        .map(|i| {
            (1..ell)
                .map(|m| m as i128 * s.block_sums[(i + m) % ell])
                .sum()
        })
        .collect();
    let min = *forms.iter().min().expect("ℓ >= 2");
    forms.iter().filter(|&&v| v == min).count() >= 2
}

/// Whether `x` lies on the blade. The point must have coordinate sum
/// `Σ s_j`, which is `0` for undecorated blades.
pub fn blade_membership(blade: &Blade, x: &RationalPoint, method: MembershipMethod) -> Result<bool> {
    let osp = blade.osp();
    if method == MembershipMethod::Tropical && !osp.is_undecorated() {
        return Err(Error::TropicalRequiresUndecorated);
    }
    let s = scale(osp, x)?;
    if osp.ell() == 1 {
        return Ok(false);
    }
    Ok(match method {
        MembershipMethod::Chain => chain_member(&s),
        MembershipMethod::Minkowski => minkowski_member(&s),
        MembershipMethod::Tropical => tropical_member(&s),
    })
}

/// Membership in the translate `((σ_1, …, σ_n))_{e_v}`: the undecorated
/// singleton blade evaluated at `x - e_v`.
pub fn translated_blade_membership(ground: &GroundSet, v: KSubset, x: &RationalPoint) -> Result<bool> {
    let v = ground.subset_from_mask(v.mask())?;
    check_dim(ground, x)?;
    let level = Rational64::from_integer(v.len() as i64);
    if x.sum() != level {
        return Err(Error::WrongLevel {
            found: x.sum().to_string(),
            expected: v.len() as i64,
        });
    }
    let blade = Blade::new(DecoratedOsp::singletons(ground));
    blade_membership(&blade, &x.minus_vertex(ground, v)?, MembershipMethod::Chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::osp::blade_from_vertex;

    fn r(p: i64, q: i64) -> Rational64 {
        Rational64::new(p, q)
    }

    fn member(text: &str, x: &[i64], method: MembershipMethod) -> bool {
        blade_membership(&Blade::parse(text).unwrap(), &RationalPoint::from_integers(x), method).unwrap()
    }

    #[test]
    fn undecorated_triangle() {
        for m in [MembershipMethod::Chain, MembershipMethod::Minkowski, MembershipMethod::Tropical] {
            assert!(member("((1 2 3))", &[1, -1, 0], m));
            assert!(member("((1 2 3))", &[0, 0, 0], m));
            assert!(!member("((1 2 3))", &[1, 1, -2], m));
            assert!(!member("((1 2 3))", &[-2, 1, 1], m));
        }
    }

    #[test]
    fn split_of_delta_2_5() {
        for m in [MembershipMethod::Chain, MembershipMethod::Minkowski] {
            assert!(member("((123_1 45_1))", &[0, 0, 1, 0, 1], m));
            assert!(!member("((123_1 45_1))", &[1, 1, 0, 0, 0], m));
            assert!(!member("((123_1 45_1))", &[0, 0, 0, 1, 1], m));
        }
    }

    #[test]
    fn tropical_rejects_decorated() {
        let b = Blade::parse("((123_1 45_1))").unwrap();
        let x = RationalPoint::from_integers(&[0, 0, 1, 0, 1]);
        assert_eq!(
            blade_membership(&b, &x, MembershipMethod::Tropical),
            Err(Error::TropicalRequiresUndecorated)
        );
    }

    #[test]
    fn level_and_dimension_checked() {
        let b = Blade::parse("((123_1 45_1))").unwrap();
        let x = RationalPoint::from_integers(&[1, 0, 0, 0, 0]);
        assert!(matches!(
            blade_membership(&b, &x, MembershipMethod::Chain),
            Err(Error::WrongLevel { .. })
        ));
        let x = RationalPoint::from_integers(&[1, 1]);
        assert!(matches!(
            blade_membership(&b, &x, MembershipMethod::Chain),
            Err(Error::WrongDimension { found: 2, expected: 5 })
        ));
    }

    #[test]
    fn translated_examples() {
        let g = GroundSet::new(6).unwrap();
        let v = g.subset(&[1, 2, 4]).unwrap();
        let blade = blade_from_vertex(&g, v).unwrap();
        let x = RationalPoint::vertex(&g, g.subset(&[1, 3, 5]).unwrap());
        assert_eq!(
            translated_blade_membership(&g, v, &x).unwrap(),
            blade_membership(&blade, &x, MembershipMethod::Chain).unwrap()
        );
        assert!(translated_blade_membership(&g, v, &RationalPoint::vertex(&g, v)).unwrap());

        let g = GroundSet::new(5).unwrap();
        let v = g.subset(&[3, 5]).unwrap();
        let x = RationalPoint::new(vec![r(1, 2), r(1, 2), r(1, 2), r(1, 4), r(1, 4)]);
        let blade = Blade::parse("((123_1 45_1))").unwrap();
        assert_eq!(
            translated_blade_membership(&g, v, &x).unwrap(),
            blade_membership(&blade, &x, MembershipMethod::Chain).unwrap()
        );
    }

    #[test]
    fn point_parsing() {
        let p = RationalPoint::parse("1/2, -3/4,2,0").unwrap();
        assert_eq!(p.coords(), &[r(1, 2), r(-3, 4), r(2, 1), r(0, 1)]);
        assert_eq!(p.to_string(), "1/2,-3/4,2,0");
        assert!(RationalPoint::parse("1/0").is_err());
        assert!(RationalPoint::parse("a").is_err());
    }

    #[test]
    fn nonstandard_ground_uses_sorted_coordinates() {
        let g = GroundSet::with_order(vec![3, 1, 2]).unwrap();
        let b = Blade::new(DecoratedOsp::singletons(&g));
        assert_eq!(b.to_string(), "((3 1 2))");
        // x = (x_1, x_2, x_3)
        let x = RationalPoint::from_integers(&[-1, 0, 1]);
        let chain = blade_membership(&b, &x, MembershipMethod::Chain).unwrap();
        let trop = blade_membership(&b, &x, MembershipMethod::Tropical).unwrap();
        assert_eq!(chain, trop);
    }
}

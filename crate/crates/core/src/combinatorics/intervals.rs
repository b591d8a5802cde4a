use super::ground::{GroundSet, KSubset};

/// Decomposition of a k-subset into maximal cyclic runs `I_1, …, I_ℓ`
/// interlaced with the gaps `C_1, …, C_ℓ`, so that reading
/// `(C_1, I_1, C_2, I_2, …, C_ℓ, I_ℓ)` walks once around σ.
///
/// The pair `(C_1, I_1)` is the one containing `σ_1`. All lists are in σ order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicIntervalDecomposition {
    intervals: Vec<Vec<u32>>,
    complements: Vec<Vec<u32>>,
}

impl CyclicIntervalDecomposition {
    pub fn intervals(&self) -> &[Vec<u32>] {
        &self.intervals
    }

    /// `complements()[j]` is the gap immediately preceding `intervals()[j]`.
    pub fn complements(&self) -> &[Vec<u32>] {
        &self.complements
    }

    pub fn ell(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_frozen(&self) -> bool {
        self.ell() == 1
    }
}

/// Splits `v` into maximal runs under the cyclic order of `ground`.
pub fn cyclic_intervals(ground: &GroundSet, v: KSubset) -> CyclicIntervalDecomposition {
    let n = ground.n();
    let pos = ground.to_positions(v.mask());
    let member = |p: usize| pos >> (p % n) & 1 == 1;
    debug_assert!(pos != 0 && pos.count_ones() < n as u32);

    // begin the walk at the first position of some gap
    let start = (0..n)
        .find(|&p| !member(p) && member(p + n - 1))
        .expect("a proper nonempty subset has a gap");

    let mut intervals = Vec::new();
    let mut complements = Vec::new();
    let mut first_pair = 0;
    let mut p = start;
    let end = start + n;
    while p < end {
        let mut gap = Vec::new();
        let mut run = Vec::new();
        let mut holds_origin = false;
        while p < end && !member(p) {
            holds_origin |= p % n == 0;
            gap.push(ground.label_at(p));
            p += 1;
        }
        while p < end && member(p) {
            holds_origin |= p % n == 0;
            run.push(ground.label_at(p));
            p += 1;
        }
        if holds_origin {
            first_pair = intervals.len();
        }
        complements.push(gap);
        intervals.push(run);
    }
    intervals.rotate_left(first_pair);
    complements.rotate_left(first_pair);
    CyclicIntervalDecomposition {
        intervals,
        complements,
    }
}

/// A subset is frozen when it is a single cyclic interval.
pub fn is_frozen(ground: &GroundSet, v: KSubset) -> bool {
    ground.cyclic_run_count(v.mask()) == 1
}

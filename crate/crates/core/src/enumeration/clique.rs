use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::graph::CompatibilityGraph;
use crate::combinatorics::KSubset;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PivotRule {
    /// Pivot maximizing `|P ∩ N(u)|` over `u ∈ P ∪ X`.
    #[default]
    MaxNeighborhood,
    /// Lowest-index vertex of `P ∪ X`.
    First,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Worker threads; `0` uses the global pool.
    pub threads: usize,
    pub pivot: PivotRule,
    pub time_budget: Option<Duration>,
    /// Keep every maximal collection, not just the count.
    pub materialize: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    pub k: usize,
    pub n: usize,
    pub filter: super::NodeFilter,
    pub count: u64,
    /// Smallest and largest maximal collection; both `0` for an empty graph.
    pub min_size: usize,
    pub max_size: usize,
    pub purity_size: usize,
    pub collections: Option<Vec<Vec<KSubset>>>,
    pub elapsed: Duration,
}

impl EnumerationResult {
    /// Every maximal collection has `(k-1)(n-k-1)` members.
    pub fn is_pure(&self) -> bool {
        self.count > 0 && self.min_size == self.purity_size && self.max_size == self.purity_size
    }
}

#[derive(Default)]
struct Tally {
    count: u64,
    min: usize,
    max: usize,
    cliques: Vec<Vec<usize>>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        if other.count > 0 {
            self.min = if self.count == 0 { other.min } else { self.min.min(other.min) };
            self.max = self.max.max(other.max);
            self.count += other.count;
            self.cliques.extend(other.cliques);
        }
        self
    }
}

struct Search<'a> {
    graph: &'a CompatibilityGraph,
    pivot: PivotRule,
    materialize: bool,
    deadline: Option<Instant>,
    aborted: &'a AtomicBool,
    calls: u32,
    stack: Vec<usize>,
    tally: Tally,
}

fn bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
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

fn is_empty(set: &[u64]) -> bool {
    set.iter().all(|&w| w == 0)
}

impl Search<'_> {
    fn report(&mut self) {
        let size = self.stack.len();
        let t = &mut self.tally;
        t.min = if t.count == 0 { size } else { t.min.min(size) };
        t.max = t.max.max(size);
        t.count += 1;
        if self.materialize {
            t.cliques.push(self.stack.clone());
        }
    }

    fn out_of_time(&mut self) -> bool {
        self.calls = self.calls.wrapping_add(1);
        if self.calls % 1024 == 1 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.aborted.store(true, Ordering::Relaxed);
                }
            }
        }
        self.aborted.load(Ordering::Relaxed)
    }

    fn choose_pivot(&self, p: &[u64], x: &[u64]) -> usize {
        let union = p.iter().zip(x).map(|(a, b)| a | b);
        match self.pivot {
            PivotRule::First => union
                .enumerate()
                .find(|(_, w)| *w != 0)
                .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
                .expect("P ∪ X is nonempty"),
            PivotRule::MaxNeighborhood => {
                let union: Vec<u64> = union.collect();
                bits(&union)
                    .max_by_key(|&u| {
                        let row = self.graph.row(u);
                        let shared: u32 = p.iter().zip(row).map(|(a, b)| (a & b).count_ones()).sum();
                        (shared, std::cmp::Reverse(u))
                    })
                    .expect("P ∪ X is nonempty")
            }
        }
    }

    fn expand(&mut self, mut p: Vec<u64>, mut x: Vec<u64>) {
        if self.out_of_time() {
            return;
        }
        if is_empty(&p) {
            if is_empty(&x) {
                self.report();
            }
            return;
        }
        let u = self.choose_pivot(&p, &x);
        let pivot_row = self.graph.row(u);
        let candidates: Vec<u64> = p.iter().zip(pivot_row).map(|(a, b)| a & !b).collect();
        for v in bits(&candidates).collect::<Vec<_>>() {
            let row = self.graph.row(v);
            let np = p.iter().zip(row).map(|(a, b)| a & b).collect();
            let nx = x.iter().zip(row).map(|(a, b)| a & b).collect();
            self.stack.push(v);
            self.expand(np, nx);
            self.stack.pop();
            p[v / 64] &= !(1 << (v % 64));
            x[v / 64] |= 1 << (v % 64);
        }
    }
}

/// Vertices sorted by repeatedly removing one of minimum remaining degree.
fn degeneracy_order(g: &CompatibilityGraph) -> Vec<usize> {
    let n = g.node_count();
    let mut degree: Vec<usize> = (0..n).map(|i| g.degree(i)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&i| !removed[i])
            .min_by_key(|&i| (degree[i], i))
            .expect("vertices remain");
        removed[v] = true;
        order.push(v);
        for u in bits(g.row(v)) {
            if !removed[u] {
                degree[u] -= 1;
            }
        }
    }
    order
}

/// Counts the maximal cliques of the graph, i.e. the maximal weakly separated
/// collections of nonfrozen vertices.
pub fn count_maximal_collections(g: &CompatibilityGraph, opts: &EnumerationOptions) -> Result<EnumerationResult> {
    let start = Instant::now();
    let n = g.node_count();
    let words = g.words();
    let order = degeneracy_order(g);
    let mut rank = vec![0usize; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    let roots: Vec<usize> = order.iter().copied().filter(|&v| g.is_candidate(v)).collect();
    let aborted = AtomicBool::new(false);
    let deadline = opts.time_budget.map(|b| start + b);

    // non-candidates never join a collection but still spoil maximality
    let root = |v: usize| -> Tally {
        let mut p = vec![0u64; words];
        let mut x = vec![0u64; words];
        for u in bits(g.row(v)) {
            let target = if g.is_candidate(u) && rank[u] > rank[v] { &mut p } else { &mut x };
            target[u / 64] |= 1 << (u % 64);
        }
        let mut search = Search {
            graph: g,
            pivot: opts.pivot,
            materialize: opts.materialize,
            deadline,
            aborted: &aborted,
            calls: 0,
            stack: vec![v],
            tally: Tally::default(),
        };
        search.expand(p, x);
        search.tally
    };

    let tally = if opts.threads == 1 {
        roots.iter().map(|&v| root(v)).fold(Tally::default(), Tally::merge)
    } else {
        let run = || {
            roots
                .par_iter()
                .map(|&v| root(v))
                .reduce(Tally::default, Tally::merge)
        };
        if opts.threads == 0 {
            run()
        } else {
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.threads)
                .build()
                .map_err(|e| Error::ParameterRange(format!("thread pool: {e}")))?
                .install(run)
        }
    };
    if aborted.load(Ordering::Relaxed) {
        return Err(Error::TimeBudgetExceeded);
    }

    let collections = opts.materialize.then(|| {
        let mut all: Vec<Vec<KSubset>> = tally
            .cliques
            .iter()
            .map(|c| {
                let mut members: Vec<KSubset> = c.iter().map(|&i| g.nodes()[i]).collect();
                members.sort();
                members
            })
            .collect();
        all.sort();
        all
    });
    Ok(EnumerationResult {
        k: g.k(),
        n: g.n(),
        filter: g.filter(),
        count: tally.count,
        min_size: tally.min,
        max_size: tally.max,
        purity_size: g.purity_size(),
        collections,
        elapsed: start.elapsed(),
    })
}

/// Whether every maximal collection has size `(k-1)(n-k-1)`.
pub fn verify_purity(g: &CompatibilityGraph) -> Result<bool> {
    Ok(count_maximal_collections(g, &EnumerationOptions::default())?.is_pure())
}

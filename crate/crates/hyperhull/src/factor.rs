//! Deterministic factorization by walking the hull: the lattice points on
//! the hyperbola itself are exactly the divisor pairs (d, n/d), and every
//! one of them is a vertex of the chain, so a walk of the vertices with
//! x ≤ √n visits every divisor below the square root.

use std::collections::BTreeSet;
use std::thread;

use num_traits::{One, Signed};

use crate::exactmath::{floor_sqrt, Int, Rat};
use crate::hull::{next_vertex_from_x, nextpt, HullWalk, NextResult};
use crate::lattice::AffineLattice;
use crate::metrics;

/// Operation counts for one factorization run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FactorStats {
    pub vertices_visited: u64,
    pub nextpt_calls: u64,
}

impl FactorStats {
    fn add(&mut self, other: &FactorStats) {
        self.vertices_visited += other.vertices_visited;
        self.nextpt_calls += other.nextpt_calls;
    }
}

/// Divisor enumeration result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorOutcome {
    /// All divisors of n, ascending (each d ≤ √n found on the hull plus its
    /// cofactor n/d).
    pub divisors: Vec<Int>,
    /// Smallest divisor strictly between 1 and n, when one exists.
    pub first_nontrivial: Option<Int>,
    pub stats: FactorStats,
}

/// Walks the chain from the first vertex while x ≤ ⌊√n⌋ and collects the
/// vertices lying exactly on the hyperbola. Streaming: a constant number of
/// points is retained.
pub fn divisors_via_hull(n: &Int) -> FactorOutcome {
    assert!(n.is_positive(), "divisors_via_hull: n must be at least 1");
    let before = metrics::snapshot();
    let level = Rat::from_integer(n.clone());
    let sqrt_n = Rat::from_integer(floor_sqrt(n));
    let mut visited = 0u64;
    let mut small: Vec<Int> = Vec::new();
    for v in HullWalk::new(&level, &AffineLattice::z2()) {
        if v.x > sqrt_n {
            break;
        }
        visited += 1;
        if &v.x * &v.y == level {
            small.push(v.x.to_integer());
        }
    }
    let mut divisors: BTreeSet<Int> = BTreeSet::new();
    for d in small {
        divisors.insert(n / &d);
        divisors.insert(d);
    }
    let first_nontrivial = divisors
        .iter()
        .find(|d| **d > Int::one() && *d < n)
        .cloned();
    let used = metrics::snapshot().since(&before);
    FactorOutcome {
        divisors: divisors.into_iter().collect(),
        first_nontrivial,
        stats: FactorStats {
            vertices_visited: visited,
            nextpt_calls: used.nextpt_calls,
        },
    }
}

/// Smallest divisor of `n` in (1, √n], found by walking `chunks` disjoint
/// x-intervals of [1, ⌊√n⌋] independently. `None` means no divisor ≤ √n
/// exists, i.e. n is prime.
pub fn find_factor(n: &Int, chunks: u32) -> Option<Int> {
    find_factor_with_stats(n, chunks).0
}

/// As [`find_factor`], also returning merged per-chunk operation counts.
pub fn find_factor_with_stats(n: &Int, chunks: u32) -> (Option<Int>, FactorStats) {
    assert!(*n >= Int::from(2), "find_factor: n must be at least 2");
    assert!(chunks >= 1, "find_factor: need at least one chunk");
    let sqrt_n = floor_sqrt(n);
    let chunks_int = Int::from(chunks);
    let mut boundaries: Vec<(Int, Int)> = Vec::with_capacity(chunks as usize);
    for i in 0..chunks {
        let lo = Int::one() + Int::from(i) * &sqrt_n / &chunks_int;
        let hi = Int::from(i + 1) * &sqrt_n / &chunks_int;
        if lo <= hi {
            boundaries.push((lo, hi));
        }
    }

    let level = Rat::from_integer(n.clone());
    let mut outcomes: Vec<(Option<Int>, FactorStats)> = Vec::new();
    if boundaries.len() == 1 {
        let (lo, hi) = &boundaries[0];
        outcomes.push(scan_chunk(&level, lo, hi));
    } else {
        thread::scope(|scope| {
            let mut handles = Vec::new();
            for (lo, hi) in &boundaries {
                let level = &level;
                handles.push(scope.spawn(move || scan_chunk(level, lo, hi)));
            }
            for h in handles {
                outcomes.push(h.join().expect("factor worker panicked"));
            }
        });
    }

    // Chunks are ordered by x, so the first hit is the smallest divisor.
    let mut stats = FactorStats::default();
    let mut found: Option<Int> = None;
    for (hit, s) in outcomes {
        stats.add(&s);
        if found.is_none() {
            found = hit;
        }
    }
    (found, stats)
}

/// Scans hull vertices with x in [lo, hi] for the first one on the curve
/// with x > 1; its x-coordinate is the smallest divisor in the interval.
fn scan_chunk(level: &Rat, lo: &Int, hi: &Int) -> (Option<Int>, FactorStats) {
    let before = metrics::snapshot();
    let z2 = AffineLattice::z2();
    let lo_r = Rat::from_integer(lo.clone());
    let hi_r = Rat::from_integer(hi.clone());
    let one = Rat::one();
    let mut visited = 0u64;
    let mut cur = match next_vertex_from_x(level, &z2, &lo_r) {
        NextResult::Finite(v) => v,
        NextResult::Infinite => return (None, stats_since(&before, 0)),
    };
    let mut hit = None;
    loop {
        if cur.x > hi_r {
            break;
        }
        visited += 1;
        if cur.x > one && &cur.x * &cur.y == *level {
            hit = Some(cur.x.to_integer());
            break;
        }
        match nextpt(level, &z2, &cur) {
            NextResult::Finite(v) => cur = v,
            NextResult::Infinite => break,
        }
    }
    (hit, stats_since(&before, visited))
}

fn stats_since(before: &metrics::Tally, visited: u64) -> FactorStats {
    let used = metrics::snapshot().since(before);
    FactorStats {
        vertices_visited: visited,
        nextpt_calls: used.nextpt_calls,
    }
}

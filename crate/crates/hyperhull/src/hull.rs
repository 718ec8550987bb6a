//! The vertex-chain machinery: first vertex, `Nextpt`/`Minsl` via right
//! search bases, the full hull walk, the bottom-row exception, and the
//! next-vertex-from-arbitrary-x query.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exactmath::{rat_ceil, rat_floor, rat_int, Int, Rat};
use crate::lattice::{AffineLattice, Point2, Vec2};
use crate::metrics;
use crate::raycast::contains;
use crate::scaled::{self, CoreNext};

/// Either the next vertex, or infinity when the query point lies on or
/// beyond the final horizontal tail of the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NextResult {
    Finite(Point2),
    Infinite,
}

impl NextResult {
    pub fn is_infinite(&self) -> bool {
        matches!(self, NextResult::Infinite)
    }

    pub fn finite(self) -> Option<Point2> {
        match self {
            NextResult::Finite(p) => Some(p),
            NextResult::Infinite => None,
        }
    }

    pub fn as_finite(&self) -> Option<&Point2> {
        match self {
            NextResult::Finite(p) => Some(p),
            NextResult::Infinite => None,
        }
    }
}

impl fmt::Display for NextResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NextResult::Finite(p) => write!(f, "{},{}", p.x, p.y),
            NextResult::Infinite => write!(f, "infinity"),
        }
    }
}

/// Finite vertex chain of the hull, ordered by increasing x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullPath {
    points: Vec<Point2>,
}

impl HullPath {
    pub fn new(points: Vec<Point2>) -> HullPath {
        HullPath { points }
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point2> {
        self.points.iter()
    }

    pub fn into_points(self) -> Vec<Point2> {
        self.points
    }

    /// Strict convex position: x strictly increasing, y strictly decreasing,
    /// consecutive edges turning strictly left (no three collinear points).
    pub fn is_strictly_convex_chain(&self) -> bool {
        let ordered = self
            .points
            .windows(2)
            .all(|w| w[1].x > w[0].x && w[1].y < w[0].y);
        let strict_turns = self.points.windows(3).all(|w| {
            let e1 = w[1].sub_point(&w[0]);
            let e2 = w[2].sub_point(&w[1]);
            e1.cross(&e2).is_positive()
        });
        ordered && strict_turns
    }
}

impl IntoIterator for HullPath {
    type Item = Point2;
    type IntoIter = std::vec::IntoIter<Point2>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.into_iter()
    }
}

impl<'a> IntoIterator for &'a HullPath {
    type Item = &'a Point2;
    type IntoIter = std::slice::Iter<'a, Point2>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

fn in_exception_band(y: &Rat) -> bool {
    *y > rat_int(1) && *y < rat_int(2)
}

/// The vertex of smallest x: the unique vertex on the leftmost vertical
/// lattice line with x > 0, reached by shifting the anchor into the column
/// x ∈ (0, b1ₓ] and descending to the bottommost in-region point.
pub fn first_vertex(n: &Rat, lat: &AffineLattice) -> Point2 {
    assert!(n.is_positive(), "first_vertex: level must be positive");
    let anchor = lat.anchor();
    let b1 = lat.b1();
    let k = rat_ceil(&(&anchor.x / &b1.x)) - Int::one();
    let q = anchor.sub(&b1.scale(&k));
    debug_assert!(q.x.is_positive() && q.x <= b1.x);
    let lift = rat_ceil(&(&(&(n / &q.x) - &q.y) / lat.basis().b2_y()));
    q.add(&lat.b2().scale(&lift))
}

/// The vertex of largest x, via the reflected problem's first vertex.
pub fn last_vertex(n: &Rat, lat: &AffineLattice) -> Point2 {
    first_vertex(n, &lat.reflect()).swapped()
}

/// Iteration budget for one `nextpt` search loop on a reduced lattice with
/// the query point outside the band y ∈ (1, 2): the largest `k` with
/// `2^(k-12) ≤ (n + det Λ + 2)³`, i.e. `k ≤ 3·log₂(n + det Λ + 2) + 12`,
/// decided exactly.
fn loop_iter_budget(n: &Rat, lat: &AffineLattice) -> u32 {
    let v = n + lat.det() + rat_int(2);
    let q = if v.is_integer() {
        v.numer().pow(3)
    } else {
        rat_floor(&(&v * &v * &v))
    };
    debug_assert!(q.is_positive());
    12 + (q.bits() as u32 - 1)
}

fn lift_core(core: CoreNext<i128>) -> CoreNext<Int> {
    CoreNext {
        next: core.next.map(|(x, y)| (Int::from(x), Int::from(y))),
        minsl: (Int::from(core.minsl.0), Int::from(core.minsl.1)),
        loop_iters: core.loop_iters,
    }
}

/// Shared implementation for `nextpt`, `minsl` and the reverse walk.
fn nextpt_impl(n: &Rat, lat: &AffineLattice, p: &Point2) -> (NextResult, Vec2, u32) {
    assert!(contains(n, p), "nextpt: starting point is outside the region");
    debug_assert!(
        lat.contains_point(p),
        "nextpt: starting point is not in the lattice"
    );
    let budget = if lat.is_reduced_sublattice() && !in_exception_band(&p.y) {
        Some(loop_iter_budget(n, lat))
    } else {
        None
    };
    let (view, scales) = scaled::walk_view(n, lat, p);
    let core = match view.to_i128() {
        Some(small) => match scaled::nextpt_core(&small, budget) {
            Some(res) => lift_core(res),
            None => scaled::nextpt_core(&view, budget).expect("bigint walk cannot overflow"),
        },
        None => scaled::nextpt_core(&view, budget).expect("bigint walk cannot overflow"),
    };
    let next = match core.next {
        Some((x, y)) => NextResult::Finite(scales.point_back(x, y)),
        None => NextResult::Infinite,
    };
    (next, scales.vector_back(core.minsl.0, core.minsl.1), core.loop_iters)
}

/// `Nextpt(p)`: the farthest in-region lattice point along the minimal-slope
/// direction from `p`, which for a vertex `p` is exactly the next vertex.
///
/// Panics if `p` is outside the region or (in debug builds) not in the
/// lattice.
pub fn nextpt(n: &Rat, lat: &AffineLattice, p: &Point2) -> NextResult {
    metrics::bump(|t| t.nextpt_calls += 1);
    nextpt_impl(n, lat, p).0
}

/// `Minsl(p)`: the primitive lattice direction of smallest slope among
/// displacements from `p` into the region with nonnegative x. Defined also
/// when `Nextpt(p)` is infinite (it is horizontal there).
pub fn minsl(n: &Rat, lat: &AffineLattice, p: &Point2) -> Vec2 {
    nextpt_impl(n, lat, p).1
}

/// The previous vertex of the chain, computed as `nextpt` in the reflected
/// problem; infinity when `q` is the first vertex.
pub fn prev_vertex(n: &Rat, lat: &AffineLattice, q: &Point2) -> NextResult {
    metrics::bump(|t| t.prev_vertex_calls += 1);
    prev_vertex_reflected(n, &lat.reflect(), q)
}

/// `prev_vertex` against a pre-reflected lattice (callers that walk backward
/// repeatedly reflect once and reuse it).
fn prev_vertex_reflected(n: &Rat, reflected: &AffineLattice, q: &Point2) -> NextResult {
    match nextpt_impl(n, reflected, &q.swapped()).0 {
        NextResult::Finite(v) => NextResult::Finite(v.swapped()),
        NextResult::Infinite => NextResult::Infinite,
    }
}

/// Final vertex for a reduced lattice when the current point has y ∈ (1, 2):
/// the lattice point on the row y = p.y − 1 with minimal x ≥ max(p.x,
/// n/(p.y − 1)), found through the reflected lattice's leftmost column.
pub fn last_vertex_exception(n: &Rat, lat: &AffineLattice, p: &Point2) -> Point2 {
    assert!(
        lat.is_reduced_sublattice(),
        "last_vertex_exception: lattice must be reduced"
    );
    assert!(
        in_exception_band(&p.y),
        "last_vertex_exception: p.y must lie in (1, 2)"
    );
    assert!(contains(n, p), "last_vertex_exception: p is outside the region");
    debug_assert!(lat.contains_point(p));

    let refl = lat.reflect();
    let b1r = refl.b1();
    debug_assert!(b1r.x.is_one(), "reflected reduced lattice has b1.x = 1");
    let pr = p.swapped();
    let q0 = pr.sub(b1r);
    let lift = rat_ceil(&(&(&(n / &q0.x) - &q0.y) / refl.basis().b2_y()));
    let q1 = q0.add(&refl.b2().scale(&lift));
    let leftmost = q1.swapped();

    // A non-vertex query point may lie right of the row's leftmost in-region
    // point; advance by the horizontal primitive vector (det Λ, 0).
    let gap = &p.x - &leftmost.x;
    if gap.is_positive() {
        let d = lat.det();
        let steps = rat_ceil(&(&gap / &d));
        leftmost.add(&Vec2::new(&d * Rat::from_integer(steps), Rat::zero()))
    } else {
        leftmost
    }
}

/// Streaming walk over the vertex chain, in order of increasing x. Holds a
/// constant number of points at a time.
pub struct HullWalk {
    n: Rat,
    lat: AffineLattice,
    cur: Option<Point2>,
    started: bool,
    done: bool,
}

impl HullWalk {
    pub fn new(n: &Rat, lat: &AffineLattice) -> HullWalk {
        assert!(n.is_positive(), "hull walk: level must be positive");
        HullWalk {
            n: n.clone(),
            lat: lat.clone(),
            cur: None,
            started: false,
            done: false,
        }
    }
}

impl Iterator for HullWalk {
    type Item = Point2;

    fn next(&mut self) -> Option<Point2> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            let v = first_vertex(&self.n, &self.lat);
            self.cur = Some(v.clone());
            return Some(v);
        }
        let cur = self.cur.clone().expect("walk in progress");
        if self.lat.is_reduced_sublattice() && in_exception_band(&cur.y) {
            self.done = true;
            let v = last_vertex_exception(&self.n, &self.lat, &cur);
            self.cur = Some(v.clone());
            return Some(v);
        }
        match nextpt(&self.n, &self.lat, &cur) {
            NextResult::Finite(v) => {
                self.cur = Some(v.clone());
                Some(v)
            }
            NextResult::Infinite => {
                self.done = true;
                None
            }
        }
    }
}

/// The full vertex chain: the first vertex, then `nextpt` until infinity,
/// with the bottom-row exception closing the chain on reduced lattices.
pub fn enumerate_hull(n: &Rat, lat: &AffineLattice) -> HullPath {
    HullPath::new(HullWalk::new(n, lat).collect())
}

fn forward_step_allowance(n: &Rat, lat: &AffineLattice) -> u32 {
    let v = rat_ceil(&(n + lat.det()));
    debug_assert!(v.is_positive());
    v.bits() as u32 + 1
}

/// The hull vertex of minimal x among those with x ≥ x_start, or infinity
/// when there is none.
///
/// Starts from the bottommost lattice point on the first column at or right
/// of `x_start`, iterates `nextpt` logarithmically many times (each step at
/// least halves the vertical distance to the supporting edge, so the
/// trajectory lands on genuine vertices), then walks `prev_vertex` back to
/// the first vertex at or right of `x_start`.
pub fn next_vertex_from_x(n: &Rat, lat: &AffineLattice, x_start: &Rat) -> NextResult {
    assert!(n.is_positive());
    assert!(
        !x_start.is_negative(),
        "next_vertex_from_x: x_start must be nonnegative"
    );
    let fv = first_vertex(n, lat);
    if *x_start <= fv.x {
        return NextResult::Finite(fv);
    }

    let anchor = lat.anchor();
    let b1 = lat.b1();
    let k = rat_floor(&(&(&anchor.x - x_start) / &b1.x));
    let col = anchor.sub(&b1.scale(&k));
    debug_assert!(col.x >= *x_start && col.x < x_start + &b1.x);
    let lift = rat_ceil(&(&(&(n / &col.x) - &col.y) / lat.basis().b2_y()));
    let mut cur = col.add(&lat.b2().scale(&lift));

    let mut hit_tail = false;
    for _ in 0..forward_step_allowance(n, lat) {
        match nextpt(n, lat, &cur) {
            NextResult::Finite(v) => cur = v,
            NextResult::Infinite => {
                hit_tail = true;
                break;
            }
        }
    }
    if hit_tail {
        cur = last_vertex(n, lat);
    }

    let reflected = lat.reflect();
    let mut answer: Option<Point2> = None;
    while cur.x >= *x_start {
        answer = Some(cur.clone());
        metrics::bump(|t| t.prev_vertex_calls += 1);
        match prev_vertex_reflected(n, &reflected, &cur) {
            NextResult::Finite(v) => cur = v,
            NextResult::Infinite => break,
        }
    }
    match answer {
        Some(v) => NextResult::Finite(v),
        None => NextResult::Infinite,
    }
}

//! Desk-scale brute-force ground truth: the per-column staircase plus a
//! monotone-chain hull, a literal ray-cast scanner, and an independent
//! root-floor computation.
//!
//! Deliberately shares nothing with the walk machinery beyond the scalar
//! kernel and the plain point types; agreement between the two routes is the
//! primary correctness check.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{ext_gcd, rat_ceil, rat_floor, rat_gcd, Int, Rat};
use crate::hull::HullPath;
use crate::lattice::{AffineLattice, Point2, Vec2};

/// Per lattice column, the bottommost lattice point of the region, for every
/// column from the leftmost positive one out to just past the hull's final
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    points: Vec<Point2>,
}

impl Staircase {
    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Default cap on the number of columns the staircase will enumerate.
pub const DEFAULT_COLUMN_CAP: u64 = 10_000_000;

pub fn staircase(n: &Rat, lat: &AffineLattice) -> Result<Staircase> {
    staircase_capped(n, lat, DEFAULT_COLUMN_CAP)
}

/// Builds the staircase for columns `0 < x ≤ max(⌊n⌋ + 1, x_last)`, where
/// `x_last` is the column of the chain's final vertex (the leftmost
/// in-region lattice point of the bottommost positive row). The second term
/// matters for anchors with fractional y, where the final vertex sits far
/// right of `n + 1`.
pub fn staircase_capped(n: &Rat, lat: &AffineLattice, cap: u64) -> Result<Staircase> {
    assert!(n.is_positive(), "staircase: level must be positive");
    let b1 = lat.b1();
    let b2 = lat.b2();
    let b2y = lat.basis().b2_y();
    let anchor = lat.anchor();

    // Leftmost column with x > 0.
    let k = rat_ceil(&(&anchor.x / &b1.x)) - Int::one();
    let mut col = anchor.sub(&b1.scale(&k));
    debug_assert!(col.x.is_positive() && col.x <= b1.x);

    let right = {
        let simple = Rat::from_integer(rat_floor(n) + Int::one());
        let last_col = last_vertex_column(n, lat);
        if last_col > simple {
            last_col
        } else {
            simple
        }
    };

    let columns = rat_floor(&(&(&right - &col.x) / &b1.x)) + Int::one();
    if columns > Int::from(cap) {
        return Err(Error::StaircaseCap {
            columns: columns.to_string(),
            cap,
        });
    }

    // Integer instances at desk scale run on plain i128 arithmetic; values
    // stay far below overflow (products are at most ~n²).
    if let Some(points) = integer_staircase(n, &col, b1, b2y, &right) {
        return Ok(Staircase { points });
    }

    let mut points = Vec::new();
    while col.x <= right {
        let lift = rat_ceil(&(&(&(n / &col.x) - &col.y) / b2y));
        points.push(col.add(&b2.scale(&lift)));
        col = col.add(b1);
    }
    Ok(Staircase { points })
}

const ORACLE_I128_MAX_BITS: u64 = 40;

fn as_small_int(v: &Rat) -> Option<i128> {
    use num_traits::ToPrimitive;
    if !v.is_integer() || v.numer().bits() > ORACLE_I128_MAX_BITS {
        return None;
    }
    v.numer().to_i128()
}

fn integer_staircase(
    n: &Rat,
    start: &Point2,
    b1: &Vec2,
    b2y: &Rat,
    right: &Rat,
) -> Option<Vec<Point2>> {
    let n = as_small_int(n)?;
    let mut x = as_small_int(&start.x)?;
    let mut y = as_small_int(&start.y)?;
    let b1x = as_small_int(&b1.x)?;
    let b1y = as_small_int(&b1.y)?;
    let b2y = as_small_int(b2y)?;
    let right = as_small_int(right)?;
    let mut points = Vec::with_capacity(((right - x) / b1x + 1).max(0) as usize);
    while x <= right {
        // Smallest k with x·(y + k·b2y) ≥ n.
        let k = Integer::div_ceil(&(n - x * y), &(x * b2y));
        points.push(Point2::new(
            Rat::from_integer(Int::from(x)),
            Rat::from_integer(Int::from(y + k * b2y)),
        ));
        x += b1x;
        y += b1y;
    }
    Some(points)
}

/// x-coordinate of the leftmost in-region lattice point on the bottommost
/// positive lattice row.
fn last_vertex_column(n: &Rat, lat: &AffineLattice) -> Rat {
    let b1 = lat.b1();
    let b2y = lat.basis().b2_y();
    let anchor = lat.anchor();

    // The y-projection of the lattice is g·ℤ.
    let g = rat_gcd(&b1.y, b2y);
    // Bottommost positive row: anchor.y reduced into (0, g].
    let k0 = Int::one() - rat_ceil(&(&anchor.y / &g));
    let ym = &anchor.y + &g * Rat::from_integer(k0.clone());
    debug_assert!(ym.is_positive() && ym <= g);

    // A base lattice point on that row: α·b1.y + β·b2.y = g·k0 via Bézout.
    let q = b1.y.denom().lcm(b2y.denom());
    let qr = Rat::from_integer(q);
    let iy1 = (&b1.y * &qr).to_integer();
    let iy2 = (b2y * &qr).to_integer();
    let (alpha, beta) = if iy1.is_zero() && iy2.is_zero() {
        unreachable!("b2.y is positive");
    } else {
        let (_, s, t) = ext_gcd(&iy1, &iy2);
        (&s * &k0, &t * &k0)
    };
    let base = anchor.add(&b1.scale(&alpha)).add(&lat.b2().scale(&beta));
    debug_assert!(base.y == ym);

    // Row spacing in x is det/g; step right to the first x ≥ n/ym.
    let spacing = lat.det() / &g;
    let steps = (&(&(n / &ym) - &base.x) / &spacing).ceil();
    &base.x + &spacing * steps
}

/// Lower-left convex chain of the staircase with strict turns, truncated to
/// the genuine vertex set: collinear interior points are dropped, and the
/// chain ends at the leftmost point of the bottommost row (everything after
/// it lies on the unbounded horizontal edge).
pub fn brute_hull(st: &Staircase) -> HullPath {
    assert!(!st.is_empty(), "brute_hull: empty staircase");
    if let Some(path) = integer_brute_hull(st) {
        return path;
    }
    let mut chain: Vec<Point2> = Vec::new();
    for p in st.points() {
        while chain.len() >= 2 {
            let a = &chain[chain.len() - 2];
            let b = &chain[chain.len() - 1];
            let cross = b.sub_point(a).cross(&p.sub_point(a));
            if cross.is_positive() {
                break;
            }
            chain.pop();
        }
        chain.push(p.clone());
    }
    truncate_to_bottom_row(&mut chain, |p| p.y.clone());
    HullPath::new(chain)
}

fn integer_brute_hull(st: &Staircase) -> Option<HullPath> {
    let mut pts: Vec<(i128, i128)> = Vec::with_capacity(st.len());
    for p in st.points() {
        pts.push((as_small_int(&p.x)?, as_small_int(&p.y)?));
    }
    let mut chain: Vec<(i128, i128)> = Vec::new();
    for &(px, py) in &pts {
        while chain.len() >= 2 {
            let (ax, ay) = chain[chain.len() - 2];
            let (bx, by) = chain[chain.len() - 1];
            let cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
            if cross > 0 {
                break;
            }
            chain.pop();
        }
        chain.push((px, py));
    }
    truncate_to_bottom_row(&mut chain, |p| p.1);
    Some(HullPath::new(
        chain
            .into_iter()
            .map(|(x, y)| {
                Point2::new(Rat::from_integer(Int::from(x)), Rat::from_integer(Int::from(y)))
            })
            .collect(),
    ))
}

/// Cuts the chain after the leftmost point of the bottommost row; later
/// points lie on the unbounded horizontal edge and are not vertices.
fn truncate_to_bottom_row<P, K: Ord + Clone>(chain: &mut Vec<P>, key: impl Fn(&P) -> K) {
    let y_min = chain.iter().map(&key).min().expect("nonempty chain");
    let cut = chain
        .iter()
        .position(|p| key(p) == y_min)
        .expect("minimum exists");
    chain.truncate(cut + 1);
}

/// Outcome of the budget-limited literal scanner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NaiveStep {
    Hit(u64),
    NoHitWithinBudget,
}

/// Scans m = 0..=budget for the first index at which membership flips
/// between consecutive ray points, testing the region predicate literally.
pub fn naive_raycast(n: &Rat, p: &Point2, v: &Vec2, budget: u64) -> NaiveStep {
    assert!(budget >= 1);
    let inside = |pt: &Point2| -> bool {
        !pt.x.is_negative() && !pt.y.is_negative() && &pt.x * &pt.y >= *n
    };
    let mut cur = p.clone();
    let mut cur_in = inside(&cur);
    for m in 0..=budget {
        let nxt = cur.add(v);
        let nxt_in = inside(&nxt);
        if cur_in != nxt_in {
            return NaiveStep::Hit(m);
        }
        cur = nxt;
        cur_in = nxt_in;
    }
    NaiveStep::NoHitWithinBudget
}

/// Floors of the real roots of `a·x² + b·x + c`, computed without the
/// radical formula: each floor is found by binary search on an exact
/// monotone rational predicate. Returns `(count, floors ascending,
/// degenerate)` with the same conventions as `exactmath::quad_roots_floor`.
pub fn naive_root_floors(a: &Rat, b: &Rat, c: &Rat) -> (u8, Vec<Int>, bool) {
    if a.is_zero() {
        if b.is_zero() {
            return (0, vec![], true);
        }
        return (1, vec![rat_floor(&(-(c / b)))], false);
    }
    // Normalize to a positive leading coefficient; roots are unchanged.
    let (a, b, c) = if a.is_negative() {
        (-a.clone(), -b.clone(), -c.clone())
    } else {
        (a.clone(), b.clone(), c.clone())
    };
    let disc = &b * &b - Rat::from_integer(Int::from(4)) * &a * &c;
    if disc.is_negative() {
        return (0, vec![], false);
    }
    let vertex = -(&b / (&a + &a));
    if disc.is_zero() {
        return (1, vec![rat_floor(&vertex)], false);
    }
    let eval = |x: &Rat| -> Rat { &(&(&a * x) * x) + &(&b * x) + &c };
    // Cauchy-style bound: all roots lie in [−bound, bound].
    let bound = rat_ceil(&(Rat::one() + (b.abs() + c.abs()) / &a)) + Int::one();
    let lo = -&bound;
    // Smaller root r₂: k ≤ r₂ iff k ≤ vertex and f(k) ≥ 0.
    let below_small = |k: &Int| -> bool {
        let kr = Rat::from_integer(k.clone());
        kr <= vertex && !eval(&kr).is_negative()
    };
    // Larger root r₁: k ≤ r₁ iff k ≤ vertex or f(k) ≤ 0.
    let below_large = |k: &Int| -> bool {
        let kr = Rat::from_integer(k.clone());
        kr <= vertex || !eval(&kr).is_positive()
    };
    let f2 = last_true(&lo, &bound, below_small);
    let f1 = last_true(&lo, &bound, below_large);
    (2, vec![f2, f1], false)
}

/// Largest k in [lo, hi] with pred(k) true; pred must be monotone
/// true-then-false and true at lo.
fn last_true(lo: &Int, hi: &Int, pred: impl Fn(&Int) -> bool) -> Int {
    debug_assert!(pred(lo));
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    while lo < hi {
        let mid: Int = (&lo + &hi + Int::one()).div_floor(&Int::from(2));
        if pred(&mid) {
            lo = mid;
        } else {
            hi = mid - Int::one();
        }
    }
    lo
}

//! Integer-rescaled views of an enumeration problem.
//!
//! Scaling x-coordinates by an integer `sx > 0` and y-coordinates by
//! `sy > 0` maps the region `{xy ≥ n}` onto `{xy ≥ sx·sy·n}`, sends lattices
//! to lattices, and preserves membership, convexity and the ordering of
//! slopes. Every decision the walk makes downstairs therefore matches the
//! walk upstairs step for step. Choosing the scales so that every quantity
//! becomes an integer lets the inner loops run on `i128` with checked
//! arithmetic in the common case and on `BigInt` when values are large or a
//! checked operation overflows.

use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::exactmath::{quad_floor_core, Int, QuadFloorsCore, Rat, WalkInt};
use crate::lattice::{AffineLattice, Point2, Vec2};
use crate::metrics;

/// Inputs whose magnitudes stay below these bit counts run on `i128`; the
/// bounds leave room for the products formed inside a ray cast (and for the
/// Euclid-style growth of the search-basis vectors in a walk).
pub(crate) const RAY_I128_MAX_BITS: u64 = 28;
pub(crate) const WALK_I128_MAX_BITS: u64 = 24;

/// Positive integer scales making a problem integral.
#[derive(Clone, Debug)]
pub(crate) struct Scales {
    pub sx: Int,
    pub sy: Int,
}

impl Scales {
    pub fn identity() -> Scales {
        Scales {
            sx: Int::one(),
            sy: Int::one(),
        }
    }

    fn apply(scale: &Int, v: &Rat) -> Int {
        if scale.is_one() {
            debug_assert!(v.is_integer());
            v.numer().clone()
        } else {
            let scaled = v * Rat::from_integer(scale.clone());
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        }
    }

    pub fn x(&self, v: &Rat) -> Int {
        Scales::apply(&self.sx, v)
    }

    pub fn y(&self, v: &Rat) -> Int {
        Scales::apply(&self.sy, v)
    }

    pub fn level(&self, n: &Rat) -> Int {
        let prod = &self.sx * &self.sy;
        Scales::apply(&prod, n)
    }

    /// Original-coordinate point from a scaled one.
    pub fn point_back(&self, x: Int, y: Int) -> Point2 {
        Point2::new(Rat::new(x, self.sx.clone()), Rat::new(y, self.sy.clone()))
    }

    /// Original-coordinate vector from a scaled one.
    pub fn vector_back(&self, x: Int, y: Int) -> Vec2 {
        Vec2::new(Rat::new(x, self.sx.clone()), Rat::new(y, self.sy.clone()))
    }
}

/// Scales under which every listed coordinate and `sx·sy·n` are integers.
pub(crate) fn scales_for(n: &Rat, xs: &[&Rat], ys: &[&Rat]) -> Scales {
    if n.is_integer() && xs.iter().all(|v| v.is_integer()) && ys.iter().all(|v| v.is_integer()) {
        return Scales::identity();
    }
    let mut sx = Int::one();
    for v in xs {
        sx = sx.lcm(v.denom());
    }
    let mut sy = Int::one();
    for v in ys {
        sy = sy.lcm(v.denom());
    }
    // Fold whatever of n's denominator the coordinate scales do not cover
    // into the x-scale.
    let residue = (n * Rat::from_integer(&sx * &sy)).denom().clone();
    sx *= residue;
    Scales { sx, sy }
}

/// A ray cast instance with integral level, base point and direction.
#[derive(Clone, Debug)]
pub(crate) struct RayView<T> {
    pub n: T,
    pub px: T,
    pub py: T,
    pub vx: T,
    pub vy: T,
}

/// A `nextpt` instance: integral level, query point and standard basis
/// (`b2 = (0, −b2y)` is reconstructed where needed).
#[derive(Clone, Debug)]
pub(crate) struct WalkView<T> {
    pub n: T,
    pub px: T,
    pub py: T,
    pub b1x: T,
    pub b1y: T,
    pub b2y: T,
}

pub(crate) fn ray_view(n: &Rat, p: &Point2, v: &Vec2) -> (RayView<Int>, Scales) {
    let s = scales_for(n, &[&p.x, &v.x], &[&p.y, &v.y]);
    let view = RayView {
        n: s.level(n),
        px: s.x(&p.x),
        py: s.y(&p.y),
        vx: s.x(&v.x),
        vy: s.y(&v.y),
    };
    (view, s)
}

pub(crate) fn walk_view(n: &Rat, lat: &AffineLattice, p: &Point2) -> (WalkView<Int>, Scales) {
    let b1 = lat.b1();
    let b2y = lat.basis().b2_y();
    let s = scales_for(n, &[&p.x, &b1.x], &[&p.y, &b1.y, b2y]);
    let view = WalkView {
        n: s.level(n),
        px: s.x(&p.x),
        py: s.y(&p.y),
        b1x: s.x(&b1.x),
        b1y: s.y(&b1.y),
        b2y: Scales::apply(&s.sy, b2y),
    };
    (view, s)
}

impl RayView<Int> {
    pub fn to_i128(&self) -> Option<RayView<i128>> {
        let fields = [&self.n, &self.px, &self.py, &self.vx, &self.vy];
        if fields.iter().any(|f| f.bits() > RAY_I128_MAX_BITS) {
            return None;
        }
        Some(RayView {
            n: self.n.to_i128()?,
            px: self.px.to_i128()?,
            py: self.py.to_i128()?,
            vx: self.vx.to_i128()?,
            vy: self.vy.to_i128()?,
        })
    }
}

impl WalkView<Int> {
    pub fn to_i128(&self) -> Option<WalkView<i128>> {
        let fields = [
            &self.n, &self.px, &self.py, &self.b1x, &self.b1y, &self.b2y,
        ];
        if fields.iter().any(|f| f.bits() > WALK_I128_MAX_BITS) {
            return None;
        }
        Some(WalkView {
            n: self.n.to_i128()?,
            px: self.px.to_i128()?,
            py: self.py.to_i128()?,
            b1x: self.b1x.to_i128()?,
            b1y: self.b1y.to_i128()?,
            b2y: self.b2y.to_i128()?,
        })
    }
}

/// Result of a ray cast: least step index at which membership flips between
/// consecutive points, or infinite when it never does.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum CoreStep<T> {
    Finite(T),
    Infinite,
}

/// Membership of `(x, y)` in the scaled region `{x ≥ 0, y ≥ 0, xy ≥ n}`.
fn point_member<T: WalkInt>(n: &T, x: &T, y: &T) -> Option<bool> {
    if x.is_negative() || y.is_negative() {
        return Some(false);
    }
    Some(&x.checked_mul(y)? >= n)
}

/// Membership of `p + m·v` in the scaled region.
fn member_at<T: WalkInt>(view: &RayView<T>, m: &T) -> Option<bool> {
    let x = view.px.checked_add(&m.checked_mul(&view.vx)?)?;
    let y = view.py.checked_add(&m.checked_mul(&view.vy)?)?;
    point_member(&view.n, &x, &y)
}

fn push_window<T: WalkInt>(cands: &mut Vec<T>, f: &T) -> Option<()> {
    cands.push(f.checked_sub(&T::one())?);
    cands.push(f.clone());
    cands.push(f.checked_add(&T::one())?);
    Some(())
}

/// Ray cast against the hyperbola in O(1) arithmetic.
///
/// Membership along the ray can only change where the product polynomial
/// `(pₓ+m·vₓ)(pᵧ+m·vᵧ) − n` changes sign or where a coordinate changes sign;
/// all such events are bracketed by the ±1 windows around the root floors
/// collected here. Returns `None` if checked arithmetic overflowed.
pub(crate) fn raycast_core<T: WalkInt>(view: &RayView<T>) -> Option<CoreStep<T>> {
    metrics::bump(|t| t.raycast_calls += 1);

    let a = view.vx.checked_mul(&view.vy)?;
    let b = view
        .vx
        .checked_mul(&view.py)?
        .checked_add(&view.vy.checked_mul(&view.px)?)?;
    let c = view.px.checked_mul(&view.py)?.checked_sub(&view.n)?;

    metrics::bump(|t| t.quad_root_calls += 1);
    let mut cands: Vec<T> = Vec::with_capacity(16);
    match quad_floor_core(&a, &b, &c)? {
        QuadFloorsCore::Degenerate | QuadFloorsCore::None => {}
        QuadFloorsCore::One(f) => push_window(&mut cands, &f)?,
        QuadFloorsCore::Two(f, g) => {
            push_window(&mut cands, &f)?;
            push_window(&mut cands, &g)?;
        }
    }
    // Zeros of the two coordinate functions.
    for (coef, off) in [(&view.vx, &view.px), (&view.vy, &view.py)] {
        if !coef.is_zero() {
            let z = T::zero().checked_sub(off)?.div_floor(coef);
            push_window(&mut cands, &z)?;
        }
    }
    cands.push(T::zero());
    cands.retain(|m| !m.is_negative());
    cands.sort();
    cands.dedup();

    let mut tested = 0u32;
    let mut cached: Option<(T, bool)> = None;
    let mut hit: Option<T> = None;
    for m in cands {
        let at_m = match &cached {
            Some((cm, cv)) if cm == &m => *cv,
            _ => {
                tested += 1;
                member_at(view, &m)?
            }
        };
        let m1 = m.checked_add(&T::one())?;
        tested += 1;
        let at_m1 = member_at(view, &m1)?;
        cached = Some((m1, at_m1));
        if at_m != at_m1 {
            hit = Some(m);
            break;
        }
    }

    metrics::bump(|t| t.membership_tests += tested as u64);
    if tested > 20 {
        metrics::note_raycast_budget_violation();
        debug_assert!(false, "raycast exceeded its membership budget: {tested} > 20");
    }
    Some(match hit {
        Some(m) => CoreStep::Finite(m),
        None => CoreStep::Infinite,
    })
}

/// Outcome of one `nextpt` computation in scaled coordinates.
#[derive(Clone, Debug)]
pub(crate) struct CoreNext<T> {
    /// The next point, or `None` when the walk has left the finite part of
    /// the chain.
    pub next: Option<(T, T)>,
    /// The primitive minimal-slope direction that was found.
    pub minsl: (T, T),
    /// Search-loop iterations taken (0 when the vertical shortcut fired).
    pub loop_iters: u32,
}

fn ray<T: WalkInt>(n: &T, px: &T, py: &T, vx: &T, vy: &T) -> RayView<T> {
    RayView {
        n: n.clone(),
        px: px.clone(),
        py: py.clone(),
        vx: vx.clone(),
        vy: vy.clone(),
    }
}

#[cfg(debug_assertions)]
fn check_search_invariants<T: WalkInt>(w: &WalkView<T>, inv: &(T, T), outv: &(T, T)) {
    // det(in, out) stays equal to det(b1, −b2) = −b1x·b2y.
    if let (Some(d1), Some(d2), Some(expect)) = (
        inv.0.checked_mul(&outv.1),
        inv.1.checked_mul(&outv.0),
        w.b1x.checked_mul(&w.b2y),
    ) {
        if let (Some(det), Some(neg)) = (d1.checked_sub(&d2), T::zero().checked_sub(&expect)) {
            assert!(det == neg, "search basis determinant drifted");
        }
    }
    assert!(inv.0.is_positive(), "in.x must stay positive");
    assert!(!outv.0.is_negative(), "out.x must stay non-negative");
    let p_in = (w.px.checked_add(&inv.0), w.py.checked_add(&inv.1));
    let p_out = (w.px.checked_add(&outv.0), w.py.checked_add(&outv.1));
    if let ((Some(ix), Some(iy)), (Some(ox), Some(oy))) = (p_in, p_out) {
        if let (Some(inside), Some(outside)) = (
            point_member(&w.n, &ix, &iy),
            point_member(&w.n, &ox, &oy),
        ) {
            assert!(inside, "p + in left the region");
            assert!(!outside, "p + out entered the region");
        }
    }
}

/// `Nextpt` in scaled integer coordinates: vertical shortcut, then the
/// Euclid-style search-basis loop, then the final cast along the minimal
/// slope. Returns `None` if checked arithmetic overflowed (caller retries
/// with `BigInt`).
pub(crate) fn nextpt_core<T: WalkInt>(
    w: &WalkView<T>,
    iter_budget: Option<u32>,
) -> Option<CoreNext<T>> {
    let below_y = w.py.checked_sub(&w.b2y)?;
    let neg_b2y = T::zero().checked_sub(&w.b2y)?;
    if point_member(&w.n, &w.px, &below_y)? {
        // p − b2 is still inside: descend the column to its bottommost point.
        let down = ray(&w.n, &w.px, &w.py, &T::zero(), &neg_b2y);
        match raycast_core(&down)? {
            CoreStep::Finite(m) => {
                let y = w.py.checked_sub(&m.checked_mul(&w.b2y)?)?;
                return Some(CoreNext {
                    next: Some((w.px.clone(), y)),
                    minsl: (T::zero(), neg_b2y),
                    loop_iters: 0,
                });
            }
            CoreStep::Infinite => unreachable!("a descending column ray always leaves the region"),
        }
    }

    let mut inv = (w.b1x.clone(), w.b1y.clone());
    let mut outv = (T::zero(), neg_b2y);
    let mut iters = 0u32;
    let minsl = loop {
        iters += 1;
        let from_in = ray(
            &w.n,
            &w.px.checked_add(&inv.0)?,
            &w.py.checked_add(&inv.1)?,
            &outv.0,
            &outv.1,
        );
        let o = match raycast_core(&from_in)? {
            CoreStep::Finite(o) => o,
            CoreStep::Infinite => {
                unreachable!("ray in the out direction cannot stay inside forever")
            }
        };
        inv = (
            inv.0.checked_add(&o.checked_mul(&outv.0)?)?,
            inv.1.checked_add(&o.checked_mul(&outv.1)?)?,
        );
        #[cfg(debug_assertions)]
        check_search_invariants(w, &inv, &outv);

        let from_out = ray(
            &w.n,
            &w.px.checked_add(&outv.0)?,
            &w.py.checked_add(&outv.1)?,
            &inv.0,
            &inv.1,
        );
        match raycast_core(&from_out)? {
            CoreStep::Finite(i) => {
                outv = (
                    outv.0.checked_add(&i.checked_mul(&inv.0)?)?,
                    outv.1.checked_add(&i.checked_mul(&inv.1)?)?,
                );
                #[cfg(debug_assertions)]
                check_search_invariants(w, &inv, &outv);
            }
            CoreStep::Infinite => break inv.clone(),
        }
    };

    metrics::bump(|t| t.nextpt_loop_iters += iters as u64);
    if let Some(budget) = iter_budget {
        if iters > budget {
            metrics::note_nextpt_budget_violation();
            debug_assert!(
                false,
                "nextpt search loop exceeded its budget: {iters} > {budget}"
            );
        }
    }

    let along = ray(&w.n, &w.px, &w.py, &minsl.0, &minsl.1);
    let next = match raycast_core(&along)? {
        CoreStep::Infinite => None,
        CoreStep::Finite(m) => Some((
            w.px.checked_add(&m.checked_mul(&minsl.0)?)?,
            w.py.checked_add(&m.checked_mul(&minsl.1)?)?,
        )),
    };
    Some(CoreNext {
        next,
        minsl,
        loop_iters: iters,
    })
}

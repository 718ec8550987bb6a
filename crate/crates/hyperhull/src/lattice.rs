//! Rational lattices in the plane: standard bases, the reduced-sublattice
//! predicate and reduction, coordinate reflection, affine lattices.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{ext_gcd, rat_floor, Int, Rat};

/// Displacement vector with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vec2 {
    pub x: Rat,
    pub y: Rat,
}

/// Point with exact rational coordinates. Distinct from [`Vec2`] only in
/// role: points translate, vectors scale.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point2 {
    pub x: Rat,
    pub y: Rat,
}

impl Vec2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        Vec2 { x, y }
    }

    /// Integer-coordinate vector, mostly for tests and small constructions.
    pub fn ints(x: i64, y: i64) -> Self {
        Vec2::new(crate::exactmath::rat_int(x), crate::exactmath::rat_int(y))
    }

    pub fn add(&self, o: &Vec2) -> Vec2 {
        Vec2::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn neg(&self) -> Vec2 {
        Vec2::new(-self.x.clone(), -self.y.clone())
    }

    /// Scalar multiple by an integer.
    pub fn scale(&self, k: &Int) -> Vec2 {
        let k = Rat::from_integer(k.clone());
        Vec2::new(&self.x * &k, &self.y * &k)
    }

    /// Signed cross product `self.x·o.y − self.y·o.x`.
    pub fn cross(&self, o: &Vec2) -> Rat {
        &self.x * &o.y - &self.y * &o.x
    }

    /// Coordinates swapped.
    pub fn swapped(&self) -> Vec2 {
        Vec2::new(self.y.clone(), self.x.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl Point2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point2 { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Point2::new(crate::exactmath::rat_int(x), crate::exactmath::rat_int(y))
    }

    pub fn origin() -> Self {
        Point2::new(Rat::zero(), Rat::zero())
    }

    pub fn add(&self, v: &Vec2) -> Point2 {
        Point2::new(&self.x + &v.x, &self.y + &v.y)
    }

    pub fn sub(&self, v: &Vec2) -> Point2 {
        Point2::new(&self.x - &v.x, &self.y - &v.y)
    }

    /// Displacement from `o` to `self`.
    pub fn sub_point(&self, o: &Point2) -> Vec2 {
        Vec2::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn swapped(&self) -> Point2 {
        Point2::new(self.y.clone(), self.x.clone())
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An ordered pair of linearly independent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis2 {
    w1: Vec2,
    w2: Vec2,
}

impl Basis2 {
    pub fn new(w1: Vec2, w2: Vec2) -> Result<Self> {
        if w1.cross(&w2).is_zero() {
            return Err(Error::DegenerateBasis);
        }
        Ok(Basis2 { w1, w2 })
    }

    pub fn w1(&self) -> &Vec2 {
        &self.w1
    }

    pub fn w2(&self) -> &Vec2 {
        &self.w2
    }
}

/// Unsigned lattice determinant `|det(w1, w2)|`, the covolume of the lattice.
pub fn det_lattice(basis: &Basis2) -> Rat {
    basis.w1.cross(&basis.w2).abs()
}

/// The unique basis `b₁ = (b₁ₓ, b₁ᵧ)`, `b₂ = (0, b₂ᵧ)` of a lattice with
/// `b₁ₓ > 0`, `b₂ᵧ > 0` and `0 ≤ b₁ᵧ < b₂ᵧ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StdBasis {
    b1: Vec2,
    b2: Vec2,
}

impl StdBasis {
    pub fn b1(&self) -> &Vec2 {
        &self.b1
    }

    pub fn b2(&self) -> &Vec2 {
        &self.b2
    }

    pub fn b1_x(&self) -> &Rat {
        &self.b1.x
    }

    pub fn b1_y(&self) -> &Rat {
        &self.b1.y
    }

    pub fn b2_y(&self) -> &Rat {
        &self.b2.y
    }

    /// Lattice determinant, `b₁ₓ · b₂ᵧ > 0`.
    pub fn det(&self) -> Rat {
        &self.b1.x * &self.b2.y
    }

    /// Whether `v` is an integer combination of the basis vectors.
    pub fn contains_vector(&self, v: &Vec2) -> bool {
        // Solve v = α·b1 + β·b2 exactly; membership is integrality of (α, β).
        let alpha = &v.x / &self.b1.x;
        if !alpha.is_integer() {
            return false;
        }
        let beta = (&v.y - &alpha * &self.b1.y) / &self.b2.y;
        beta.is_integer()
    }
}

/// Standard basis of the lattice spanned by an arbitrary basis.
///
/// `b₁ₓ` is the positive generator of the x-coordinate group, `b₂ᵧ` the
/// lattice determinant divided by it, and `b₁ᵧ` a Bézout combination of the
/// input y-coordinates reduced into `[0, b₂ᵧ)`.
pub fn standard_basis(basis: &Basis2) -> StdBasis {
    let w1 = basis.w1();
    let w2 = basis.w2();
    let det = det_lattice(basis);

    // Positive generator of w1.x·ℤ + w2.x·ℤ, with Bézout coefficients.
    let q = w1.x.denom().lcm(w2.x.denom());
    let qr = Rat::from_integer(q.clone());
    let m1 = (&w1.x * &qr).to_integer();
    let m2 = (&w2.x * &qr).to_integer();
    // A valid basis cannot have both x-coordinates zero.
    let (g, s, t) = ext_gcd(&m1, &m2);
    let b1x = Rat::new(g, q);
    let b2y = &det / &b1x;

    let by = Rat::from_integer(s) * &w1.y + Rat::from_integer(t) * &w2.y;
    // Reduce into [0, b2y). The representative must stay in the lattice, so
    // we subtract an integer multiple of b2y.
    let k = rat_floor(&(&by / &b2y));
    let b1y = by - Rat::from_integer(k) * &b2y;

    debug_assert!(b1x.is_positive() && b2y.is_positive());
    debug_assert!(!b1y.is_negative() && b1y < b2y);
    StdBasis {
        b1: Vec2::new(b1x, b1y),
        b2: Vec2::new(Rat::zero(), b2y),
    }
}

/// Whether an integer basis spans a reduced sublattice of ℤ²: both
/// coordinate projections are all of ℤ, equivalently both coordinate gcds
/// are 1.
pub fn is_reduced(basis: &Basis2) -> Result<bool> {
    let coords = [
        &basis.w1().x,
        &basis.w1().y,
        &basis.w2().x,
        &basis.w2().y,
    ];
    if coords.iter().any(|c| !c.is_integer()) {
        return Err(Error::NonIntegerBasis);
    }
    let gx = basis.w1().x.to_integer().gcd(&basis.w2().x.to_integer());
    let gy = basis.w1().y.to_integer().gcd(&basis.w2().y.to_integer());
    Ok(gx.is_one() && gy.is_one())
}

/// Divide the x-coordinates by their gcd and the y-coordinates by theirs,
/// producing a reduced basis plus the two scale factors `(sx, sy)` needed to
/// map results back.
pub fn reduce_lattice(basis: &Basis2) -> Result<(Basis2, Int, Int)> {
    let coords = [
        &basis.w1().x,
        &basis.w1().y,
        &basis.w2().x,
        &basis.w2().y,
    ];
    if coords.iter().any(|c| !c.is_integer()) {
        return Err(Error::NonIntegerBasis);
    }
    let sx = basis.w1().x.to_integer().gcd(&basis.w2().x.to_integer());
    let sy = basis.w1().y.to_integer().gcd(&basis.w2().y.to_integer());
    let sxr = Rat::from_integer(sx.clone());
    let syr = Rat::from_integer(sy.clone());
    let w1 = Vec2::new(&basis.w1().x / &sxr, &basis.w1().y / &syr);
    let w2 = Vec2::new(&basis.w2().x / &sxr, &basis.w2().y / &syr);
    Ok((Basis2::new(w1, w2)?, sx, sy))
}

/// A translate `p + Λ` of a rational lattice, held in standard-basis form.
///
/// Operations never depend on which representative of `p + Λ` the anchor is;
/// the stored anchor is simply the one the lattice was built with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLattice {
    anchor: Point2,
    basis: StdBasis,
    reduced: bool,
}

impl AffineLattice {
    pub fn new(anchor: Point2, basis: &Basis2) -> AffineLattice {
        AffineLattice::from_std(anchor, standard_basis(basis))
    }

    pub fn from_std(anchor: Point2, basis: StdBasis) -> AffineLattice {
        let reduced = basis_is_reduced(&basis);
        AffineLattice {
            anchor,
            basis,
            reduced,
        }
    }

    /// `ℤ²` anchored at the origin.
    pub fn z2() -> AffineLattice {
        AffineLattice::from_std(
            Point2::origin(),
            StdBasis {
                b1: Vec2::ints(1, 0),
                b2: Vec2::ints(0, 1),
            },
        )
    }

    /// `ℤ²` with a chosen anchor.
    pub fn z2_at(anchor: Point2) -> AffineLattice {
        let mut lat = AffineLattice::z2();
        lat.anchor = anchor;
        lat
    }

    pub fn anchor(&self) -> &Point2 {
        &self.anchor
    }

    pub fn basis(&self) -> &StdBasis {
        &self.basis
    }

    pub fn b1(&self) -> &Vec2 {
        self.basis.b1()
    }

    pub fn b2(&self) -> &Vec2 {
        self.basis.b2()
    }

    pub fn det(&self) -> Rat {
        self.basis.det()
    }

    /// Whether the underlying lattice is a reduced sublattice of ℤ².
    pub fn is_reduced_sublattice(&self) -> bool {
        self.reduced
    }

    /// Exact membership of `p` in `anchor + Λ`.
    pub fn contains_point(&self, p: &Point2) -> bool {
        self.basis.contains_vector(&p.sub_point(&self.anchor))
    }

    /// The lattice `{(y, x) : (x, y) ∈ p + Λ}`, re-standardized.
    pub fn reflect(&self) -> AffineLattice {
        let b = Basis2::new(self.basis.b1().swapped(), self.basis.b2().swapped())
            .expect("reflection preserves independence");
        AffineLattice::new(self.anchor.swapped(), &b)
    }
}

fn basis_is_reduced(basis: &StdBasis) -> bool {
    let ints = basis.b1().x.is_integer() && basis.b1().y.is_integer() && basis.b2().y.is_integer();
    if !ints {
        return false;
    }
    // gcd of x-coordinates is b1.x itself (b2.x = 0); gcd of y-coordinates.
    basis.b1().x.to_integer().is_one()
        && basis
            .b1()
            .y
            .to_integer()
            .gcd(&basis.b2().y.to_integer())
            .is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat, rat_int};
    use proptest::prelude::*;

    fn basis(w1: (i64, i64), w2: (i64, i64)) -> Basis2 {
        Basis2::new(Vec2::ints(w1.0, w1.1), Vec2::ints(w2.0, w2.1)).unwrap()
    }

    #[test]
    fn det_examples() {
        assert_eq!(det_lattice(&basis((1, 0), (0, 1))), rat_int(1));
        assert_eq!(det_lattice(&basis((2, 1), (1, 3))), rat_int(5));
        assert_eq!(det_lattice(&basis((0, 2), (3, 1))), rat_int(6));
    }

    #[test]
    fn degenerate_basis_rejected() {
        assert!(matches!(
            Basis2::new(Vec2::ints(2, 4), Vec2::ints(1, 2)),
            Err(Error::DegenerateBasis)
        ));
    }

    #[test]
    fn standard_basis_examples() {
        let s = standard_basis(&basis((1, 0), (0, 1)));
        assert_eq!((s.b1(), s.b2()), (&Vec2::ints(1, 0), &Vec2::ints(0, 1)));

        let s = standard_basis(&basis((2, 1), (1, 3)));
        assert_eq!((s.b1(), s.b2()), (&Vec2::ints(1, 3), &Vec2::ints(0, 5)));
        // The original vectors are integer combinations of the output.
        assert!(s.contains_vector(&Vec2::ints(2, 1)));
        assert!(s.contains_vector(&Vec2::ints(1, 3)));

        let s = standard_basis(&basis((0, 2), (3, 1)));
        assert_eq!((s.b1(), s.b2()), (&Vec2::ints(3, 1), &Vec2::ints(0, 2)));
    }

    #[test]
    fn is_reduced_examples() {
        assert!(is_reduced(&basis((1, 0), (0, 1))).unwrap());
        assert!(!is_reduced(&basis((2, 0), (0, 2))).unwrap());
        assert!(is_reduced(&basis((1, 3), (0, 5))).unwrap());
        let rational = Basis2::new(Vec2::new(rat(1, 2), rat_int(0)), Vec2::ints(0, 1)).unwrap();
        assert!(matches!(is_reduced(&rational), Err(Error::NonIntegerBasis)));
    }

    #[test]
    fn reduce_lattice_examples() {
        let (b, sx, sy) = reduce_lattice(&basis((2, 0), (0, 2))).unwrap();
        assert_eq!((b.w1(), b.w2()), (&Vec2::ints(1, 0), &Vec2::ints(0, 1)));
        assert_eq!((sx, sy), (int(2), int(2)));

        let (b, sx, sy) = reduce_lattice(&basis((1, 3), (0, 5))).unwrap();
        assert_eq!((b.w1(), b.w2()), (&Vec2::ints(1, 3), &Vec2::ints(0, 5)));
        assert_eq!((sx, sy), (int(1), int(1)));

        let (b, sx, sy) = reduce_lattice(&basis((4, 2), (2, 4))).unwrap();
        assert_eq!((b.w1(), b.w2()), (&Vec2::ints(2, 1), &Vec2::ints(1, 2)));
        assert_eq!((sx, sy), (int(2), int(2)));
        assert!(is_reduced(&b).unwrap());
    }

    #[test]
    fn reflect_examples() {
        let lat = AffineLattice::new(Point2::origin(), &basis((1, 0), (0, 1)));
        assert_eq!(lat.reflect(), lat);

        let lat = AffineLattice::new(Point2::origin(), &basis((1, 3), (0, 5)));
        let r = lat.reflect();
        assert_eq!(r.b1(), &Vec2::ints(1, 2));
        assert_eq!(r.b2(), &Vec2::ints(0, 5));
        // Membership transfers through the swap both ways.
        assert!(r.contains_point(&Point2::ints(3, 1)));
        assert!(r.contains_point(&Point2::ints(5, 0)));
        assert!(lat.contains_point(&Point2::ints(1, 3)));
    }

    #[test]
    fn z2_membership() {
        let lat = AffineLattice::z2();
        assert!(lat.contains_point(&Point2::ints(-3, 7)));
        assert!(!lat.contains_point(&Point2::new(rat(1, 2), rat_int(0))));
        assert!(lat.is_reduced_sublattice());
    }

    fn arb_basis() -> impl Strategy<Value = Basis2> {
        (
            -9i64..10,
            -9i64..10,
            -9i64..10,
            -9i64..10,
            1i64..5,
            1i64..5,
            1i64..5,
            1i64..5,
        )
            .prop_filter_map("degenerate", |(a, b, c, d, p, q, r, s)| {
                let w1 = Vec2::new(rat(a, p), rat(b, q));
                let w2 = Vec2::new(rat(c, r), rat(d, s));
                Basis2::new(w1, w2).ok()
            })
    }

    proptest! {
        #[test]
        fn standard_basis_spans_same_lattice(b in arb_basis()) {
            let s = standard_basis(&b);
            // Each input vector is an integer combination of the output pair
            // and vice versa.
            prop_assert!(s.contains_vector(b.w1()));
            prop_assert!(s.contains_vector(b.w2()));
            let back = Basis2::new(s.b1().clone(), s.b2().clone()).unwrap();
            let inv = invert_membership(&back);
            prop_assert!(inv(b.w1()) && inv(b.w2()));

            // Eq-style constraints and determinant preservation.
            prop_assert!(s.b1().x.is_positive());
            prop_assert!(s.b2().x.is_zero() && s.b2().y.is_positive());
            prop_assert!(!s.b1().y.is_negative() && s.b1().y < s.b2().y);
            prop_assert_eq!(s.det(), det_lattice(&b));

            // Idempotence.
            let again = standard_basis(&back);
            prop_assert_eq!(&again, &s);
        }

        #[test]
        fn reflect_is_involution(b in arb_basis()) {
            let lat = AffineLattice::new(Point2::new(rat(1, 3), rat(-2, 5)), &b);
            let twice = lat.reflect().reflect();
            // Same point set: compare standard bases and anchor membership.
            prop_assert_eq!(twice.basis(), lat.basis());
            prop_assert!(twice.contains_point(lat.anchor()));
            prop_assert!(lat.contains_point(twice.anchor()));
        }

        #[test]
        fn integer_lattice_std_coords_bounded_by_det(
            a in -30i64..31, b in -30i64..31, c in -30i64..31, d in -30i64..31,
        ) {
            prop_assume!(a * d != b * c);
            let bas = Basis2::new(Vec2::ints(a, b), Vec2::ints(c, d)).unwrap();
            let s = standard_basis(&bas);
            let det = s.det();
            prop_assert!(s.b1().x <= det);
            prop_assert!(s.b1().y <= det);
            prop_assert!(s.b2().y <= det);
        }
    }

    /// Membership test against an arbitrary (not standard) basis, solving the
    /// 2×2 system exactly.
    fn invert_membership(b: &Basis2) -> impl Fn(&Vec2) -> bool + '_ {
        move |v: &Vec2| {
            let det = b.w1().cross(b.w2());
            let alpha = v.cross(b.w2()) / &det;
            let beta = b.w1().cross(v) / &det;
            alpha.is_integer() && beta.is_integer()
        }
    }
}

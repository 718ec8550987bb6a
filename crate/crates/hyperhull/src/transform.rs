//! Reduction of a general hyperbola with rational asymptote slopes to the
//! standard hyperbola over an affine sublattice of ℤ², and the exact map
//! back to original coordinates.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{floor_sqrt, Int, Rat};
use crate::hull::HullPath;
use crate::lattice::{AffineLattice, Basis2, Point2, Vec2};
use crate::raycast::contains;

/// `a(x−x₀)² + b(x−x₀)(y−y₀) + c(y−y₀)² = n` with integer coefficients and
/// a positive integer discriminant root Δ = √(b²−4ac).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralHyperbola {
    a: Int,
    b: Int,
    c: Int,
    x0: Rat,
    y0: Rat,
    n: Rat,
    delta: Int,
    content: Int,
}

impl GeneralHyperbola {
    pub fn new(a: Int, b: Int, c: Int, x0: Rat, y0: Rat, n: Rat) -> Result<GeneralHyperbola> {
        if n.is_zero() {
            return Err(Error::DegenerateConic);
        }
        let disc = &b * &b - Int::from(4) * &a * &c;
        if !disc.is_positive() {
            return Err(Error::NotRationalHyperbola {
                disc: disc.to_string(),
            });
        }
        let delta = floor_sqrt(&disc);
        if &delta * &delta != disc {
            return Err(Error::NotRationalHyperbola {
                disc: disc.to_string(),
            });
        }
        let content = a.gcd(&b).gcd(&c);
        Ok(GeneralHyperbola {
            a,
            b,
            c,
            x0,
            y0,
            n,
            delta,
            content,
        })
    }

    pub fn a(&self) -> &Int {
        &self.a
    }

    pub fn b(&self) -> &Int {
        &self.b
    }

    pub fn c(&self) -> &Int {
        &self.c
    }

    pub fn x0(&self) -> &Rat {
        &self.x0
    }

    pub fn y0(&self) -> &Rat {
        &self.y0
    }

    pub fn level(&self) -> &Rat {
        &self.n
    }

    pub fn delta(&self) -> &Int {
        &self.delta
    }

    /// gcd(a, b, c); dividing it out shrinks Δ and keeps n/Δ unchanged.
    pub fn content(&self) -> &Int {
        &self.content
    }

    /// The same curve with gcd(a, b, c) divided out of the whole equation.
    pub fn primitive(&self) -> GeneralHyperbola {
        let g = &self.content;
        if g.is_one() {
            return self.clone();
        }
        GeneralHyperbola::new(
            &self.a / g,
            &self.b / g,
            &self.c / g,
            self.x0.clone(),
            self.y0.clone(),
            &self.n / Rat::from_integer(g.clone()),
        )
        .expect("dividing by the content preserves validity")
    }

    /// Value of the quadratic form at `p`, relative to the center.
    pub fn eval(&self, p: &Point2) -> Rat {
        let dx = &p.x - &self.x0;
        let dy = &p.y - &self.y0;
        Rat::from_integer(self.a.clone()) * &dx * &dx
            + Rat::from_integer(self.b.clone()) * &dx * &dy
            + Rat::from_integer(self.c.clone()) * &dy * &dy
    }
}

/// Which convex component of the plane minus the hyperbola to enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchSelector {
    /// A point strictly inside the chosen component.
    Sample(Point2),
    /// Canonical choice by the sign of the transformed x-coordinate.
    Tag(BranchTag),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchTag {
    /// The component whose image lands in `{x > 0}` of standard coordinates.
    Plus,
    /// The mirror component (image in `{x < 0}` before the sign flips).
    Minus,
}

/// Invertible affine map `p ↦ M·p + t` with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub m11: Rat,
    pub m12: Rat,
    pub m21: Rat,
    pub m22: Rat,
    pub t: Vec2,
}

impl AffineMap {
    pub fn new(m11: Rat, m12: Rat, m21: Rat, m22: Rat, t: Vec2) -> AffineMap {
        let map = AffineMap {
            m11,
            m12,
            m21,
            m22,
            t,
        };
        assert!(!map.det().is_zero(), "affine map must be invertible");
        map
    }

    pub fn identity() -> AffineMap {
        AffineMap::new(
            Rat::one(),
            Rat::zero(),
            Rat::zero(),
            Rat::one(),
            Vec2::new(Rat::zero(), Rat::zero()),
        )
    }

    pub fn det(&self) -> Rat {
        &self.m11 * &self.m22 - &self.m12 * &self.m21
    }

    pub fn apply_point(&self, p: &Point2) -> Point2 {
        Point2::new(
            &(&self.m11 * &p.x + &self.m12 * &p.y) + &self.t.x,
            &(&self.m21 * &p.x + &self.m22 * &p.y) + &self.t.y,
        )
    }

    pub fn apply_vector(&self, v: &Vec2) -> Vec2 {
        Vec2::new(
            &self.m11 * &v.x + &self.m12 * &v.y,
            &self.m21 * &v.x + &self.m22 * &v.y,
        )
    }

    /// Exact inverse; composing the two gives the identity bit for bit.
    pub fn inverse(&self) -> AffineMap {
        let d = self.det();
        let i11 = &self.m22 / &d;
        let i12 = -(&self.m12 / &d);
        let i21 = -(&self.m21 / &d);
        let i22 = &self.m11 / &d;
        let tx = -(&(&i11 * &self.t.x) + &(&i12 * &self.t.y));
        let ty = -(&(&i21 * &self.t.x) + &(&i22 * &self.t.y));
        AffineMap::new(i11, i12, i21, i22, Vec2::new(tx, ty))
    }
}

/// The asymptote-direction decomposition `a = a₁a₂`, `c = c₁c₂` with
/// `a₁c₁ = (b−Δ)/2` and `a₂c₂ = (b+Δ)/2` (fixed by `a₁ = gcd(a, (b−Δ)/2)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub a1: Int,
    pub a2: Int,
    pub c1: Int,
    pub c2: Int,
}

/// A standard-hyperbola instance equivalent to a general one: positive level
/// `n′`, the affine lattice image of ℤ², and the exact map back.
#[derive(Clone, Debug)]
pub struct StandardProblem {
    n_prime: Rat,
    lat: AffineLattice,
    forward: AffineMap,
    back: AffineMap,
    flips: (i8, i8),
    decomp: Option<Decomposition>,
}

impl StandardProblem {
    pub fn n_prime(&self) -> &Rat {
        &self.n_prime
    }

    pub fn lattice(&self) -> &AffineLattice {
        &self.lat
    }

    /// Original coordinates ← standard coordinates.
    pub fn back(&self) -> &AffineMap {
        &self.back
    }

    /// Standard coordinates ← original coordinates.
    pub fn forward(&self) -> &AffineMap {
        &self.forward
    }

    pub fn quadrant_flips(&self) -> (i8, i8) {
        self.flips
    }

    pub fn decomposition(&self) -> Option<&Decomposition> {
        self.decomp.as_ref()
    }
}

/// Integer linear part `G` (columns generate the lattice, |det G| = Δ), the
/// post-transform signed level, and the decomposition when ac ≠ 0.
fn linear_part(h: &GeneralHyperbola) -> (Int, Int, Int, Int, Rat, Option<Decomposition>) {
    let (a, b, c, n) = (&h.a, &h.b, &h.c, &h.n);
    if c.is_zero() {
        // Asymptotes x = const and bx + ay = const; normalize b > 0 by
        // negating the whole equation if needed.
        let (aa, bb, nn) = if b.is_negative() {
            (-a.clone(), -b.clone(), -n.clone())
        } else {
            (a.clone(), b.clone(), n.clone())
        };
        debug_assert!(bb == h.delta);
        (Int::one(), Int::zero(), aa, bb, nn, None)
    } else if a.is_zero() {
        // Swap the roles of x and y and reuse the c = 0 case; the swap is
        // folded into G by exchanging its columns.
        let (cc, bb, nn) = if b.is_negative() {
            (-c.clone(), -b.clone(), -n.clone())
        } else {
            (c.clone(), b.clone(), n.clone())
        };
        debug_assert!(bb == h.delta);
        (Int::zero(), Int::one(), bb, cc, nn, None)
    } else {
        let beta_minus = (b - &h.delta) / Int::from(2);
        let beta_plus = (b + &h.delta) / Int::from(2);
        debug_assert!(&beta_minus * &beta_plus == a * c);
        let a1 = a.gcd(&beta_minus);
        let c1 = &beta_minus / &a1;
        let a2 = a / &a1;
        let c2 = &beta_plus / &a2;
        debug_assert!(&c1 * &c2 == *c);
        let decomp = Decomposition {
            a1: a1.clone(),
            a2: a2.clone(),
            c1: c1.clone(),
            c2: c2.clone(),
        };
        (a1, c2, a2, c1, n.clone(), Some(decomp))
    }
}

/// Reduces `h` to a standard problem: an affine map sending the selected
/// convex component onto `{(x, y) : x, y ≥ 0, xy ≥ n′}` and ℤ² onto an
/// affine sublattice of determinant Δ.
pub fn to_standard(h: &GeneralHyperbola, branch: &BranchSelector) -> Result<StandardProblem> {
    let (g11, g12, g21, g22, n_signed, decomp) = linear_part(h);
    let gr = (
        Rat::from_integer(g11.clone()),
        Rat::from_integer(g12.clone()),
        Rat::from_integer(g21.clone()),
        Rat::from_integer(g22.clone()),
    );
    let tx = -(&(&gr.0 * &h.x0) + &(&gr.1 * &h.y0));
    let ty = -(&(&gr.2 * &h.x0) + &(&gr.3 * &h.y0));

    // Image of the branch sample before sign flips.
    let (u0, v0) = match branch {
        BranchSelector::Sample(p) => (
            &(&gr.0 * &p.x + &gr.1 * &p.y) + &tx,
            &(&gr.2 * &p.x + &gr.3 * &p.y) + &ty,
        ),
        BranchSelector::Tag(tag) => {
            let one = Rat::one();
            let inner = if n_signed.is_positive() {
                &n_signed + &one
            } else {
                &n_signed - &one
            };
            match tag {
                BranchTag::Plus => (one, inner),
                BranchTag::Minus => (-one, -inner),
            }
        }
    };
    if u0.is_zero() || v0.is_zero() {
        return Err(Error::BranchSelection(
            "sample lies on an asymptote of the transformed hyperbola".into(),
        ));
    }
    let ex: i8 = if u0.is_positive() { 1 } else { -1 };
    let ey: i8 = if v0.is_positive() { 1 } else { -1 };
    if (ex * ey > 0) != n_signed.is_positive() {
        return Err(Error::BranchSelection(
            "sample does not lie inside a convex component".into(),
        ));
    }
    let product = &u0 * &v0;
    if product.abs() <= n_signed.abs() {
        return Err(Error::BranchSelection(
            "sample is not strictly inside the component".into(),
        ));
    }
    let n_prime = n_signed.abs();

    let exr = Rat::from_integer(Int::from(ex));
    let eyr = Rat::from_integer(Int::from(ey));
    let forward = AffineMap::new(
        &exr * &gr.0,
        &exr * &gr.1,
        &eyr * &gr.2,
        &eyr * &gr.3,
        Vec2::new(&exr * &tx, &eyr * &ty),
    );
    let back = forward.inverse();

    let basis = Basis2::new(
        Vec2::new(forward.m11.clone(), forward.m21.clone()),
        Vec2::new(forward.m12.clone(), forward.m22.clone()),
    )
    .expect("lattice image of an invertible map");
    let anchor = Point2::new(forward.t.x.clone(), forward.t.y.clone());
    let lat = AffineLattice::new(anchor, &basis);
    assert!(
        lat.det() == Rat::from_integer(h.delta.clone()),
        "lattice determinant must equal the discriminant root"
    );

    Ok(StandardProblem {
        n_prime,
        lat,
        forward,
        back,
        flips: (ex, ey),
        decomp,
    })
}

/// Maps standard-coordinate hull vertices back to original coordinates.
/// Every input must belong to the problem's affine lattice; outputs are
/// integer points in the closed original component.
pub fn map_back(sp: &StandardProblem, path: &HullPath) -> Result<HullPath> {
    let mut out = Vec::with_capacity(path.len());
    for p in path {
        if !sp.lat.contains_point(p) {
            return Err(Error::PointNotInLattice(p.to_string()));
        }
        debug_assert!(contains(&sp.n_prime, p));
        let q = sp.back.apply_point(p);
        assert!(
            q.x.is_integer() && q.y.is_integer(),
            "mapped-back vertex must be an integer point"
        );
        out.push(q);
    }
    Ok(HullPath::new(out))
}

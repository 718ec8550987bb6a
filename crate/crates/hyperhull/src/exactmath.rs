//! Exact integer and rational arithmetic kernel.
//!
//! Every geometric predicate in this crate is a sign test over these
//! scalars; there is no floating point anywhere. The operation set is
//! comparison, `+`, `-`, `*`, floored division, integer square root and
//! extended gcd, plus floored real roots of quadratics built on top of them.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, Zero};

/// Arbitrary-precision signed integer.
pub type Int = BigInt;

/// Exact rational in canonical reduced form: positive denominator, coprime
/// numerator and denominator. Canonicity is maintained by every constructor
/// and operation, so equality and ordering are plain cross-multiplication.
pub type Rat = BigRational;

/// Shorthand constructor for integer literals in code and tests.
pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

/// Shorthand constructor for rational literals; `den` must be nonzero.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(int(num), int(den))
}

/// Rational with denominator one.
pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(int(v))
}

/// Floor of a rational as an integer.
pub fn rat_floor(r: &Rat) -> Int {
    r.floor().to_integer()
}

/// Ceiling of a rational as an integer.
pub fn rat_ceil(r: &Rat) -> Int {
    r.ceil().to_integer()
}

/// `⌊a / b⌋`, rounding toward negative infinity.
///
/// Panics if `b = 0`.
pub fn floor_div(a: &Int, b: &Int) -> Int {
    assert!(!b.is_zero(), "floor_div: division by zero");
    a.div_floor(b)
}

/// `⌈a / b⌉`, rounding toward positive infinity.
///
/// Panics if `b = 0`.
pub fn ceil_div(a: &Int, b: &Int) -> Int {
    assert!(!b.is_zero(), "ceil_div: division by zero");
    a.div_ceil(b)
}

/// `⌊√a⌋` for `a ≥ 0`.
///
/// Panics if `a < 0`.
pub fn floor_sqrt(a: &Int) -> Int {
    assert!(!a.is_negative(), "floor_sqrt: negative input");
    a.sqrt()
}

/// Extended gcd: returns `(g, s, t)` with `g = gcd(|a|, |b|) > 0` and
/// `s·a + t·b = g`.
///
/// Panics if `a = b = 0`.
pub fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    assert!(
        !(a.is_zero() && b.is_zero()),
        "ext_gcd: gcd(0, 0) is undefined"
    );
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Positive generator of the group `aℤ + bℤ ⊂ ℚ`.
///
/// Panics if `a = b = 0`.
pub fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    assert!(
        !(a.is_zero() && b.is_zero()),
        "rat_gcd: both arguments are zero"
    );
    let q = a.denom().lcm(b.denom());
    let ma = (a * Rat::from_integer(q.clone())).to_integer();
    let mb = (b * Rat::from_integer(q.clone())).to_integer();
    Rat::new(ma.gcd(&mb), q)
}

/// Floors of the real roots of `a·x² + b·x + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadRoots {
    /// Number of distinct real roots (0, 1 or 2). A double root counts once.
    pub count: u8,
    /// Floors of the roots, ascending; length equals `count`.
    pub floors: Vec<Int>,
    /// Set when `a = b = 0`: the polynomial is constant and has either no
    /// root or every real as a root.
    pub degenerate: bool,
}

/// Exact floors of the real roots of a rational quadratic.
///
/// Denominators are cleared first; the floors are then obtained from the
/// sign-adjusted radical formula using a single integer square root, so that
/// no rounding can creep in.
pub fn quad_roots_floor(a: &Rat, b: &Rat, c: &Rat) -> QuadRoots {
    let l = a.denom().lcm(b.denom()).lcm(c.denom());
    let lr = Rat::from_integer(l);
    let ai = (a * &lr).to_integer();
    let bi = (b * &lr).to_integer();
    let ci = (c * &lr).to_integer();
    let core = quad_floor_core(&ai, &bi, &ci).expect("bigint arithmetic cannot overflow");
    match core {
        QuadFloorsCore::Degenerate => QuadRoots {
            count: 0,
            floors: vec![],
            degenerate: true,
        },
        QuadFloorsCore::None => QuadRoots {
            count: 0,
            floors: vec![],
            degenerate: false,
        },
        QuadFloorsCore::One(f) => QuadRoots {
            count: 1,
            floors: vec![f],
            degenerate: false,
        },
        QuadFloorsCore::Two(lo, hi) => QuadRoots {
            count: 2,
            floors: vec![lo, hi],
            degenerate: false,
        },
    }
}

/// Integer scalars the inner enumeration loops are generic over: `i128` with
/// checked arithmetic for the common small case, `BigInt` as the always-exact
/// fallback. A `None` from any checked operation aborts the attempt and the
/// caller retries with `BigInt`.
pub(crate) trait WalkInt:
    Integer + Roots + Signed + CheckedAdd + CheckedSub + CheckedMul + FromPrimitive + Clone
{
}

impl WalkInt for i128 {}
impl WalkInt for BigInt {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum QuadFloorsCore<T> {
    /// `a = b = 0`; no information about roots.
    Degenerate,
    None,
    One(T),
    /// Floors in ascending order (they may coincide).
    Two(T, T),
}

/// Root-floor computation shared by the public rational wrapper and the
/// integerized ray cast. Returns `None` on arithmetic overflow.
pub(crate) fn quad_floor_core<T: WalkInt>(a: &T, b: &T, c: &T) -> Option<QuadFloorsCore<T>> {
    if a.is_zero() {
        if b.is_zero() {
            return Some(QuadFloorsCore::Degenerate);
        }
        let neg_c = T::zero().checked_sub(c)?;
        return Some(QuadFloorsCore::One(neg_c.div_floor(b)));
    }
    let four = T::from_i8(4)?;
    let disc = b.checked_mul(b)?.checked_sub(&a.checked_mul(c)?.checked_mul(&four)?)?;
    if disc.is_negative() {
        return Some(QuadFloorsCore::None);
    }
    let two_abs_a = a.abs().checked_add(&a.abs())?;
    if disc.is_zero() {
        // Double root −b/(2a); floored division by the signed denominator.
        let neg_b = T::zero().checked_sub(b)?;
        let two_a = a.checked_add(a)?;
        return Some(QuadFloorsCore::One(neg_b.div_floor(&two_a)));
    }
    let sqrt_floor = disc.sqrt();
    let sqrt_ceil = if &sqrt_floor.clone().checked_mul(&sqrt_floor)? == &disc {
        sqrt_floor.clone()
    } else {
        sqrt_floor.checked_add(&T::one())?
    };
    // Floors of (−sign(a)·b ± sign(a)·√disc) / (2|a|); the radical's floor and
    // ceiling swap roles when a < 0.
    let (sb, rad_plus, rad_minus) = if a.is_positive() {
        (
            T::zero().checked_sub(b)?,
            sqrt_floor.clone(),
            T::zero().checked_sub(&sqrt_ceil)?,
        )
    } else {
        (
            b.clone(),
            T::zero().checked_sub(&sqrt_ceil)?,
            sqrt_floor.clone(),
        )
    };
    let f_plus = sb.checked_add(&rad_plus)?.div_floor(&two_abs_a);
    let f_minus = sb.checked_add(&rad_minus)?.div_floor(&two_abs_a);
    let (lo, hi) = if f_plus <= f_minus {
        (f_plus, f_minus)
    } else {
        (f_minus, f_plus)
    };
    Some(QuadFloorsCore::Two(lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn floor_div_rounds_toward_negative_infinity() {
        assert_eq!(floor_div(&int(7), &int(2)), int(3));
        assert_eq!(floor_div(&int(-7), &int(2)), int(-4));
        assert_eq!(floor_div(&int(7), &int(-2)), int(-4));
    }

    #[test]
    #[should_panic(expected = "division by zero")]
    fn floor_div_rejects_zero_divisor() {
        floor_div(&int(1), &int(0));
    }

    #[test]
    fn floor_sqrt_examples() {
        assert_eq!(floor_sqrt(&int(0)), int(0));
        assert_eq!(floor_sqrt(&int(15)), int(3));
        let big: Int = int(10).pow(18);
        assert_eq!(floor_sqrt(&big), int(10).pow(9));
    }

    #[test]
    #[should_panic(expected = "negative input")]
    fn floor_sqrt_rejects_negative() {
        floor_sqrt(&int(-1));
    }

    #[test]
    fn ext_gcd_examples() {
        let (g, s, t) = ext_gcd(&int(12), &int(8));
        assert_eq!(g, int(4));
        assert_eq!(&s * 12 + &t * 8, int(4));

        let (g, s, t) = ext_gcd(&int(1), &int(0));
        assert_eq!((g, s, t), (int(1), int(1), int(0)));

        let (g, s, t) = ext_gcd(&int(240), &int(46));
        assert_eq!(g, int(2));
        assert_eq!(&s * 240 + &t * 46, int(2));
        // The worked identity: -9·240 + 47·46 = 2.
        assert_eq!(int(-9) * 240 + int(47) * 46, int(2));
    }

    #[test]
    #[should_panic(expected = "undefined")]
    fn ext_gcd_rejects_double_zero() {
        ext_gcd(&int(0), &int(0));
    }

    #[test]
    fn rat_gcd_examples() {
        assert_eq!(rat_gcd(&rat(1, 2), &rat(1, 3)), rat(1, 6));
        assert_eq!(rat_gcd(&rat_int(2), &rat_int(3)), rat_int(1));
        assert_eq!(rat_gcd(&rat_int(0), &rat(5, 4)), rat(5, 4));
    }

    #[test]
    fn quad_roots_examples() {
        let r = quad_roots_floor(&rat_int(0), &rat_int(2), &rat_int(-3));
        assert_eq!((r.count, r.floors), (1, vec![int(1)]));
        assert!(!r.degenerate);

        let r = quad_roots_floor(&rat_int(1), &rat_int(0), &rat_int(-2));
        assert_eq!((r.count, r.floors), (2, vec![int(-2), int(1)]));

        let r = quad_roots_floor(&rat_int(1), &rat_int(0), &rat_int(1));
        assert_eq!((r.count, r.floors), (0, vec![]));
        assert!(!r.degenerate);

        let r = quad_roots_floor(&rat_int(0), &rat_int(0), &rat_int(5));
        assert!(r.degenerate);
        assert_eq!(r.count, 0);

        // Double root at 3/2: counted once, for either sign of a.
        let r = quad_roots_floor(&rat_int(4), &rat_int(-12), &rat_int(9));
        assert_eq!((r.count, r.floors), (1, vec![int(1)]));
        let r = quad_roots_floor(&rat_int(-4), &rat_int(12), &rat_int(-9));
        assert_eq!((r.count, r.floors), (1, vec![int(1)]));

        // Negative leading coefficient, roots at 1 ± √2.
        let r = quad_roots_floor(&rat_int(-1), &rat_int(2), &rat_int(1));
        assert_eq!((r.count, r.floors), (2, vec![int(-1), int(2)]));
    }

    proptest! {
        #[test]
        fn floor_div_remainder_in_range(a in -10_000_000i64..10_000_000, b in 1i64..1_000_000) {
            let (a, b) = (int(a), int(b));
            let q = floor_div(&a, &b);
            let r = &a - &b * &q;
            prop_assert!(!r.is_negative() && r < b);
        }

        #[test]
        fn floor_sqrt_brackets(a in 0u64..u64::MAX) {
            let a = Int::from(a);
            let r = floor_sqrt(&a);
            prop_assert!(&r * &r <= a);
            let r1 = &r + 1;
            prop_assert!(&r1 * &r1 > a);
        }

        #[test]
        fn ext_gcd_is_bezout(a in -100_000i64..100_000, b in -100_000i64..100_000) {
            prop_assume!(a != 0 || b != 0);
            let (a, b) = (int(a), int(b));
            let (g, s, t) = ext_gcd(&a, &b);
            prop_assert!(g.is_positive());
            prop_assert_eq!(&s * &a + &t * &b, g.clone());
            prop_assert!((&a % &g).is_zero() && (&b % &g).is_zero());
        }

        #[test]
        fn rat_gcd_divides_both(an in -50i64..50, ad in 1i64..12, bn in -50i64..50, bd in 1i64..12) {
            prop_assume!(an != 0 || bn != 0);
            let (a, b) = (rat(an, ad), rat(bn, bd));
            let g = rat_gcd(&a, &b);
            prop_assert!(g.is_positive());
            prop_assert!((&a / &g).is_integer());
            prop_assert!((&b / &g).is_integer());
        }
    }
}

//! Membership in the region above the hyperbola and the lattice ray cast:
//! the least step index `m ≥ 0` at which membership differs between the
//! consecutive points `p + m·v` and `p + (m+1)·v`.

use std::fmt;

use num_traits::Signed;

use crate::exactmath::{Int, Rat};
use crate::lattice::{Point2, Vec2};
use crate::scaled::{self, CoreStep};

/// Result of a ray cast: the first flip index, or infinity when membership
/// never changes along the ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepCount {
    Finite(Int),
    Infinite,
}

impl StepCount {
    pub fn is_infinite(&self) -> bool {
        matches!(self, StepCount::Infinite)
    }

    pub fn finite(&self) -> Option<&Int> {
        match self {
            StepCount::Finite(m) => Some(m),
            StepCount::Infinite => None,
        }
    }
}

impl fmt::Display for StepCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepCount::Finite(m) => write!(f, "{m}"),
            StepCount::Infinite => write!(f, "infinity"),
        }
    }
}

/// Whether `pt` lies in the closed region `{(x, y) : x ≥ 0, y ≥ 0, xy ≥ n}`.
/// Points exactly on the hyperbola are inside.
pub fn contains(n: &Rat, pt: &Point2) -> bool {
    debug_assert!(n.is_positive(), "contains: level must be positive");
    !pt.x.is_negative() && !pt.y.is_negative() && &pt.x * &pt.y >= *n
}

/// Least `m ≥ 0` with exactly one of `p + m·v`, `p + (m+1)·v` in the region,
/// or [`StepCount::Infinite`] when no such `m` exists.
///
/// Runs in O(1) arithmetic: the flip indices are bracketed by the root
/// floors of the product quadratic and of the two coordinate functions, so
/// only a constant-size candidate set is ever tested.
pub fn raycast(n: &Rat, p: &Point2, v: &Vec2) -> StepCount {
    assert!(n.is_positive(), "raycast: level must be positive");
    assert!(!v.is_zero(), "raycast: direction must be nonzero");
    let (view, _) = scaled::ray_view(n, p, v);
    if let Some(small) = view.to_i128() {
        if let Some(step) = scaled::raycast_core(&small) {
            return match step {
                CoreStep::Finite(m) => StepCount::Finite(Int::from(m)),
                CoreStep::Infinite => StepCount::Infinite,
            };
        }
    }
    match scaled::raycast_core(&view).expect("bigint arithmetic cannot overflow") {
        CoreStep::Finite(m) => StepCount::Finite(m),
        CoreStep::Infinite => StepCount::Infinite,
    }
}

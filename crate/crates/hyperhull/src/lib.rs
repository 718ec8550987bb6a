//! Exact enumeration of the vertices of the convex hull of lattice points on
//! or above a hyperbola.
//!
//! The standard region is `H_n = {(x, y) : x ≥ 0, y ≥ 0, xy ≥ n}` for a
//! positive rational level `n`; lattice points may come from any translate
//! of a rational lattice. The enumerator walks the vertex chain in
//! logarithmically many arithmetic operations per vertex, using a
//! Stern–Brocot-style search over lattice bases driven by an O(1) ray cast.
//! General hyperbolas with rational asymptote slopes reduce to the standard
//! region over an affine sublattice of ℤ² and map back exactly.
//!
//! On top of the walk sit exact checkers for the vertex-count bounds (with a
//! CSV scan), divisor enumeration / deterministic factorization, and a
//! brute-force oracle used by the test suites.
//!
//! All arithmetic is exact; there is no floating point in any code path.

pub mod bounds;
pub mod error;
pub mod exactmath;
pub mod factor;
pub mod hull;
pub mod lattice;
pub mod metrics;
pub mod oracle;
pub mod raycast;
pub mod transform;

mod scaled;

pub use error::{Error, Result};

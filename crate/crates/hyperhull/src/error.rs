use thiserror::Error;

/// Errors surfaced by fallible constructors and user-facing operations.
///
/// Kernel-level precondition violations (division by zero, negative square
/// root inputs, walking from a point outside the region) are programming
/// errors and panic instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate basis: the two vectors are linearly dependent")]
    DegenerateBasis,

    #[error("basis has non-integer coordinates")]
    NonIntegerBasis,

    #[error("not a hyperbola with rational asymptote slopes: b^2 - 4ac = {disc} is not a positive perfect square")]
    NotRationalHyperbola { disc: String },

    #[error("degenerate conic: level n must be nonzero")]
    DegenerateConic,

    #[error("branch selector error: {0}")]
    BranchSelection(String),

    #[error("point ({0}) does not belong to the affine lattice")]
    PointNotInLattice(String),

    #[error("invalid scan range: from={from}, to={to}")]
    InvalidRange { from: u64, to: u64 },

    #[error("vertex-count bound violated at n={n} (V={v}); either the bound is wrong or this is a bug")]
    BoundViolation { n: u64, v: u64 },

    #[error("staircase needs {columns} columns, above the desk-scale cap of {cap}")]
    StaircaseCap { columns: String, cap: u64 },

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

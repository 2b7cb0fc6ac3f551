//! Cech cohomology of monomial line bundles on toric chart covers, computed
//! one multidegree at a time with exact linear algebra.

mod bundle;
mod complex;
mod lattice;
mod report;
mod space;

pub use bundle::LineBundleDatum;
pub use complex::{CechComplex, Cochain, SliceCohomology};
pub use lattice::{Constraint, SectionLattice};
pub use report::{
    cech_cohomology, projective_box, CochainTerm, CohomologyReport, DegreeTable, SliceEntry,
};
pub use space::{Chart, CoveredSpace, Grading, TwistSlot};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CechError {
    #[error("dimension must be at least 1, got {0}")]
    InvalidDimension(i64),
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("chart lattices disagree on the bound of '{0}'; intersections are undefined")]
    Incompatible(String),
    #[error("{0} charts exceed the supported maximum of 16")]
    TooManyCharts(usize),
    #[error("{0} distinct constraints exceed the supported maximum of 128")]
    TooManyConstraints(usize),
    #[error("coefficient {0} outside {{-1, 0, 1}}")]
    BadCoefficient(i32),
    #[error("box has {got} axes, space has {expected} variables")]
    BoxMismatch { expected: usize, got: usize },
    #[error("{0}")]
    Invalid(String),
}

/// Standard cover of `P^n`.
pub fn projective_cover(n: i64) -> Result<CoveredSpace, CechError> {
    CoveredSpace::projective(n)
}

/// Blowup of `A^(n+1)` at the origin.
pub fn blowup_cover(n: i64) -> Result<CoveredSpace, CechError> {
    CoveredSpace::blowup(n)
}

/// `X x P^1`.
pub fn product_with_line(space: &CoveredSpace) -> Result<CoveredSpace, CechError> {
    space.product_with_line()
}

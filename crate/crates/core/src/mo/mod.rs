//! The filtered structure sheaf `MO(A, f) = {a/f : a in sqrt(f)}` on affine
//! modulus pairs: generators, membership, pullbacks and box checks.

mod checks;
mod divisor;
mod element;
mod module;
mod pair;

pub use checks::{box_elements, check_divisor_shift, check_exhaustion, check_poly_extension};
pub use divisor::FactoredDivisor;
pub use element::LocalizedElement;
pub use module::{
    mo_contains, mo_contains_with, mo_generator, mo_pullback, MOModule, Membership,
    MembershipOptions,
};
pub use pair::{AffineModulusPair, PairSpec};

use thiserror::Error;

use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("unsupported coefficient ring: {0}")]
    UnsupportedRing(String),
    #[error("map is not admissible: {0}")]
    NotAdmissible(String),
    #[error("'{0}' is not an element of the localization")]
    NotInLocalization(String),
    #[error("internal defect: {0}")]
    Defect(String),
}

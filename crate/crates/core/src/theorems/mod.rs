//! One checker per concrete statement, each producing a [`TheoremVerdict`].

mod blowup;
mod cube;
mod examples;
mod filtration;
mod gabber;
mod projective;
mod snc;
mod suite;
mod verdict;

pub use blowup::{check_basic_blowup_invariance, check_blowup_pushforward, mo_blowup_bundle};
pub use cube::{check_cube_invariance, cube_slices, CubeSlice};
pub use examples::{
    base_change_case, counterexample_flat_base_change, counterexample_nonreduced, BaseChangeCase,
};
pub use filtration::check_filtration_exhaustive;
pub use gabber::{counterexample_gabber, cubic_ring, fermat_cubic, gabber_rows, GabberRow};
pub use projective::{binomial, check_projective_cohomology};
pub use snc::{check_snc, snc_datum_ok, CoordinateForm, SncDatum};
pub use suite::{default_cube_pairs, run_checker, run_suite, SuiteConfig};
pub use verdict::{AggregateReport, TheoremId, TheoremVerdict, VerdictStatus};

use thiserror::Error;

use crate::cech::CechError;
use crate::mo::MoError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error(transparent)]
    Mo(#[from] MoError),
    #[error(transparent)]
    Cech(#[from] CechError),
    #[error("datum not admissible: {0}")]
    NotAdmissible(String),
    #[error("invalid parameters: {0}")]
    Invalid(String),
}

impl From<crate::poly::PolyError> for TheoremError {
    fn from(e: crate::poly::PolyError) -> Self {
        TheoremError::Mo(MoError::Poly(e))
    }
}

//! Exact computations on modulus pairs: the filtered structure sheaf
//! `MO(A, f)`, Cech cohomology of monomial line bundles on toric covers, and
//! checkers for the concrete statements built on them.

pub mod cech;
pub mod linalg;
pub mod mo;
pub mod poly;
pub mod theorems;
pub mod truncation;

pub use mo::{AffineModulusPair, FactoredDivisor, LocalizedElement, MOModule, MoError};
pub use poly::{Coeff, CoeffRing, Poly, PolyError, PolyRing, RingMap};
pub use theorems::{AggregateReport, TheoremId, TheoremVerdict, VerdictStatus};
pub use truncation::TruncationBox;

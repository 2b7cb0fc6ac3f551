//! Exact sparse (Laurent) polynomial arithmetic over Q and Q[eps]/(eps^2).

mod coeff;
mod map;
mod parse;
#[allow(clippy::module_inception)]
mod poly;
mod ring;

pub use coeff::{Coeff, CoeffRing, Rational};
pub use map::RingMap;
pub use parse::{monomial_string, parse_fraction, parse_poly, Fraction};
pub use poly::{Exponent, Poly};
pub use ring::PolyRing;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different rings: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("invalid variable name '{0}'")]
    InvalidVariable(String),
    #[error("variable '{0}' declared twice")]
    DuplicateVariable(String),
    #[error("exponent vector has {got} entries, ring has {expected} variables")]
    ExponentLength { expected: usize, got: usize },
    #[error("negative exponent on a variable that is not inverted in {ring}")]
    NegativeExponent { ring: String },
    #[error("'eps' is only available over the dual numbers")]
    EpsilonOutsideDualNumbers,
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor has a non-unit leading coefficient")]
    NonUnitLeadingCoefficient,
    #[error("inverted variable '{0}' must map to a unit")]
    NonUnitImage(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

//! Exact scalar arithmetic.
//!
//! Three scalar domains are provided, all with exact (never rounded)
//! arithmetic:
//!
//! * [`Rational`] — arbitrary-precision rationals, always in lowest terms.
//! * [`TowerScalar`] — elements of a multi-quadratic extension
//!   ℚ(√r₁,…,√r_k) where each radicand is a square-free integer, possibly
//!   negative (−1 encodes i).
//! * [`QuotientScalar`] — elements of a zero-dimensional quotient algebra
//!   ℚ[y₁,…]/J presented by a fixed Gröbner basis of J; used for catalog
//!   entries whose coordinates satisfy quadratic relations without a
//!   radical closed form.
//!
//! Certified numeric evaluation goes through [`interval`]: intervals with
//! exact rational endpoints and outward-rounded square roots, so every
//! enclosure is a guarantee.

mod interval;
mod quotient;
mod rational;
mod scalar;
mod tower;

pub use interval::{ComplexInterval, RatInterval};
pub use quotient::{DefiningIdeal, QuotientScalar};
pub use rational::{
    format_rational, integer_sqrt_floor, parse_rational, square_free_decomposition, Rational,
};
pub use scalar::Scalar;
pub use tower::{parse_in_tower, parse_tower_scalar, TowerDescriptor, TowerScalar};

use thiserror::Error;

/// Errors raised by exact scalar arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible towers: no common embedding exists")]
    IncompatibleTowers,
    #[error("generator index {0} out of range (tower has {1} generators)")]
    IndexOutOfRange(usize, usize),
    #[error("element is not a unit in the quotient algebra")]
    NotAUnit,
    #[error("scalars belong to different quotient algebras")]
    IncompatibleQuotients,
    #[error("parse error: {0}")]
    Parse(String),
}

//! A common interface over the exact scalar domains.
//!
//! Verification, Jacobian ranks, energies and orbit scans are generic over
//! this trait so the same code runs on rationals, tower scalars and
//! quotient-algebra scalars. Values carry their own context (tower
//! descriptor or defining ideal), so constants are derived from an
//! existing value via `zero_like`/`from_rational`.

use std::fmt::{Debug, Display};

use super::rational::Rational;
use super::ScalarError;

pub trait Scalar: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    /// Exact zero test. Named to avoid clashing with `num_traits::Zero`.
    fn vanishes(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// A rational constant in the same context as `self`.
    fn from_rational(&self, q: &Rational) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ScalarError>;
    /// The value as a rational, when it is one.
    fn as_rational(&self) -> Option<Rational>;
}

impl Scalar for Rational {
    fn vanishes(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn zero_like(&self) -> Self {
        num_traits::Zero::zero()
    }

    fn one_like(&self) -> Self {
        num_traits::One::one()
    }

    fn from_rational(&self, q: &Rational) -> Self {
        q.clone()
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        if num_traits::Zero::is_zero(self) {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Scalar for super::tower::TowerScalar {
    fn vanishes(&self) -> bool {
        self.coeffs().iter().all(num_traits::Zero::is_zero)
    }

    fn zero_like(&self) -> Self {
        Self::zero(self.tower())
    }

    fn one_like(&self) -> Self {
        Self::one(self.tower())
    }

    fn from_rational(&self, q: &Rational) -> Self {
        Self::from_rational(self.tower(), q.clone())
    }

    fn add(&self, other: &Self) -> Self {
        Self::add(self, other)
    }

    fn sub(&self, other: &Self) -> Self {
        Self::sub(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        Self::mul(self, other)
    }

    fn neg(&self) -> Self {
        Self::neg(self)
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        Self::inv(self)
    }

    fn as_rational(&self) -> Option<Rational> {
        Self::as_rational(self)
    }
}

//! Certified interval arithmetic with exact rational endpoints.
//!
//! Field operations on rational endpoints are exact, so the only outward
//! rounding happens in [`RatInterval::sqrt_outward`], which brackets the
//! root between consecutive dyadic rationals at the requested precision.
//! Every enclosure produced here is therefore a mathematical guarantee,
//! which is what the sign-certification paths rely on.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{integer_sqrt_floor, Rational};

/// Closed interval \[lo, hi\] with exact rational endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn point(value: Rational) -> Self {
        Self { lo: value.clone(), hi: value }
    }

    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    pub fn zero() -> Self {
        Self::point(Rational::zero())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn midpoint_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains(&self, value: &Rational) -> bool {
        &self.lo <= value && value <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn neg(&self) -> Self {
        Self { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        Self { lo, hi }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_negative() {
            Self { lo: &self.hi * factor, hi: &self.lo * factor }
        } else {
            Self { lo: &self.lo * factor, hi: &self.hi * factor }
        }
    }

    /// Reciprocal; the interval must not contain zero.
    pub fn recip(&self) -> Self {
        assert!(
            !self.contains_zero(),
            "interval reciprocal across zero is undefined"
        );
        Self {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    /// Outward enclosure of the square root.
    ///
    /// The interval must be non-negative (a tiny negative lower bound is
    /// clamped to zero, which keeps the enclosure valid for values known
    /// to be squares). Endpoints of the result are dyadic with denominator
    /// 2^bits, so the enclosure width is at most 2·2^(−bits) plus the
    /// spread of the input.
    pub fn sqrt_outward(&self, bits: u32) -> Self {
        assert!(
            !self.hi.is_negative(),
            "sqrt_outward of a negative interval"
        );
        let lo = if self.lo.is_negative() { Rational::zero() } else { self.lo.clone() };
        Self {
            lo: sqrt_rational_lower(&lo, bits),
            hi: sqrt_rational_upper(&self.hi, bits),
        }
    }

    /// Grows the interval symmetrically; used only in tests.
    pub fn inflate(&self, eps: &Rational) -> Self {
        Self { lo: &self.lo - eps, hi: &self.hi + eps }
    }
}

/// Dyadic lower bound for √q, q ≥ 0: floor(√(q·4^bits))/2^bits.
fn sqrt_rational_lower(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << (2 * bits);
    // √(p/d) = √(p·d)/d; scale the radicand so the integer sqrt carries
    // `bits` fractional bits.
    let radicand = q.numer() * q.denom() * &scale;
    let root = integer_sqrt_floor(&radicand);
    Rational::new(root, q.denom() * (BigInt::one() << bits))
}

/// Dyadic upper bound for √q, q ≥ 0.
fn sqrt_rational_upper(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << (2 * bits);
    let radicand = q.numer() * q.denom() * &scale;
    let root = integer_sqrt_floor(&radicand);
    let exact = &root * &root == radicand;
    let up = if exact { root } else { root + BigInt::one() };
    Rational::new(up, q.denom() * (BigInt::one() << bits))
}

/// Rectangular complex enclosure: re + i·im with certified real intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexInterval {
    pub re: RatInterval,
    pub im: RatInterval,
}

impl ComplexInterval {
    pub fn real(re: RatInterval) -> Self {
        Self { re, im: RatInterval::zero() }
    }

    pub fn zero() -> Self {
        Self { re: RatInterval::zero(), im: RatInterval::zero() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { re: self.re.add(&other.re), im: self.im.add(&other.im) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn is_certainly_real(&self) -> bool {
        self.im.lo.is_zero() && self.im.hi.is_zero()
    }

    pub fn midpoint_f64(&self) -> (f64, f64) {
        (self.re.midpoint_f64(), self.im.midpoint_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn sqrt_bounds_bracket_the_root() {
        let two = RatInterval::point(q("2"));
        let r = two.sqrt_outward(60);
        // r contains √2 and is tight.
        assert!(r.lo.clone() * r.lo.clone() <= q("2"));
        assert!(r.hi.clone() * r.hi.clone() >= q("2"));
        assert!(r.width() < q("1/1000000000000000"));
    }

    #[test]
    fn sqrt_of_exact_square_is_exact() {
        let nine = RatInterval::point(q("9"));
        let r = nine.sqrt_outward(16);
        assert_eq!(r.lo, q("3"));
        assert_eq!(r.hi, q("3"));
    }

    #[test]
    fn products_respect_signs() {
        let a = RatInterval::new(q("-2"), q("3"));
        let b = RatInterval::new(q("-1"), q("4"));
        let p = a.mul(&b);
        assert_eq!(p.lo, q("-8"));
        assert_eq!(p.hi, q("12"));
    }

    #[test]
    fn reciprocal_flips_endpoints() {
        let a = RatInterval::new(q("2"), q("4"));
        let r = a.recip();
        assert_eq!(r.lo, q("1/4"));
        assert_eq!(r.hi, q("1/2"));
    }
}

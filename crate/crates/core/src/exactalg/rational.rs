//! Arbitrary-precision rationals and small integer utilities.
//!
//! `Rational` is `num_rational::BigRational`, which already maintains the
//! invariants we need: values are kept in lowest terms with a positive
//! denominator, and all arithmetic is exact.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::ScalarError;

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Floor of the integer square root of a non-negative integer.
pub fn integer_sqrt_floor(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "integer_sqrt_floor of a negative number");
    n.sqrt()
}

/// Writes n = s·m² with s square-free; returns (s, m).
///
/// The sign of n goes into s, so s may be negative (e.g. −12 → (−3, 2)).
/// Radicands in this crate are tiny, so trial division is plenty.
pub fn square_free_decomposition(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::zero(), BigInt::one());
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut rest = n.abs();
    let mut square_free = BigInt::one();
    let mut square = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        let mut count = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            count += 1;
        }
        if count % 2 == 1 {
            square_free *= &p;
        }
        for _ in 0..count / 2 {
            square *= &p;
        }
        p += 1;
    }
    square_free *= rest;
    (square_free * sign, square)
}

/// Parses "p", "-p" or "p/q" into a rational.
pub fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| ScalarError::Parse(format!("invalid integer '{num}'")))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| ScalarError::Parse(format!("invalid integer '{d}'")))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(ScalarError::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

/// Formats a rational as "p" or "p/q".
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// True if the rational is the square of another rational; returns the
/// positive square root when it is.
pub fn rational_sqrt_exact(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let num_root = q.numer().sqrt();
    let den_root = q.denom().sqrt();
    if &(&num_root * &num_root) == q.numer() && &(&den_root * &den_root) == q.denom() {
        Some(Rational::new(num_root, den_root))
    } else {
        None
    }
}

/// Sign of a rational as -1, 0, or 1.
pub fn rational_sign(q: &Rational) -> i8 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_free_splits_squares() {
        let (s, m) = square_free_decomposition(&BigInt::from(12));
        assert_eq!((s, m), (BigInt::from(3), BigInt::from(2)));
        let (s, m) = square_free_decomposition(&BigInt::from(-75));
        assert_eq!((s, m), (BigInt::from(-3), BigInt::from(5)));
        let (s, m) = square_free_decomposition(&BigInt::from(1));
        assert_eq!((s, m), (BigInt::from(1), BigInt::from(1)));
        let (s, m) = square_free_decomposition(&BigInt::from(-1));
        assert_eq!((s, m), (BigInt::from(-1), BigInt::from(1)));
    }

    #[test]
    fn parse_and_format_round_trip() {
        for text in ["3", "-7/5", "0", "11/4"] {
            let q = parse_rational(text).unwrap();
            assert_eq!(format_rational(&q), text);
        }
        // Normalization on input.
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn exact_sqrt_detection() {
        let q = parse_rational("9/16").unwrap();
        assert_eq!(rational_sqrt_exact(&q), Some(parse_rational("3/4").unwrap()));
        assert_eq!(rational_sqrt_exact(&parse_rational("2").unwrap()), None);
    }
}

//! Multi-quadratic tower fields ℚ(√r₁,…,√r_k).
//!
//! Radicands are square-free integers, possibly negative (−1 encodes i),
//! and jointly independent modulo squares, so the 2^k subset products
//! ∏_{j∈S} √r_j form a vector-space basis over ℚ. Every value is a exact
//! coefficient vector over that basis.
//!
//! The canonical numeric embedding takes √r to the principal root:
//! the positive root for r > 0 and i·√|r| for r < 0. With that convention
//! √r·√r = r holds for every generator, which is what the multiplication
//! table uses.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::interval::{ComplexInterval, RatInterval};
use super::rational::{format_rational, square_free_decomposition, Rational};
use super::ScalarError;

/// Maximum number of generators; dimension 2^4 = 16 covers every catalog
/// field (ℚ(√2,√3,√5) and ℚ(i,√5) are the largest needed).
pub const MAX_GENERATORS: usize = 4;

/// An ordered set of independent square-free radicands.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct TowerDescriptor {
    radicands: Vec<BigInt>,
}

impl TowerDescriptor {
    /// The rational field ℚ (no generators).
    pub fn rationals() -> Arc<Self> {
        Arc::new(Self { radicands: Vec::new() })
    }

    /// Builds a descriptor from the given radicands.
    ///
    /// Radicands are replaced by their square-free parts, deduplicated,
    /// sorted, and dependent ones dropped (a radicand expressible as a
    /// subset product of the others times a square adds nothing, e.g.
    /// {2,3,6} normalizes to {2,3}).
    pub fn new(radicands: &[BigInt]) -> Result<Arc<Self>, ScalarError> {
        let mut gens: Vec<BigInt> = Vec::new();
        let mut parts: Vec<BigInt> = radicands
            .iter()
            .map(|r| square_free_decomposition(r).0)
            .collect();
        parts.sort();
        parts.dedup();
        for s in parts {
            if s.is_one() || s.is_zero() {
                continue;
            }
            let candidate = Self { radicands: gens.clone() };
            if candidate.decompose_sqrt(&s).is_none() {
                gens.push(s);
            }
        }
        gens.sort();
        if gens.len() > MAX_GENERATORS {
            return Err(ScalarError::Parse(format!(
                "tower would need {} generators; at most {} supported",
                gens.len(),
                MAX_GENERATORS
            )));
        }
        Ok(Arc::new(Self { radicands: gens }))
    }

    pub fn generator_count(&self) -> usize {
        self.radicands.len()
    }

    pub fn dimension(&self) -> usize {
        1 << self.radicands.len()
    }

    pub fn radicands(&self) -> &[BigInt] {
        &self.radicands
    }

    /// Expresses √s (s square-free) as c·∏_{j∈mask} √r_j, if possible.
    ///
    /// Returns the basis mask and the rational multiplier c, with the sign
    /// chosen so the principal embeddings of both sides agree.
    fn decompose_sqrt(&self, s: &BigInt) -> Option<(usize, Rational)> {
        for mask in 0..self.dimension() {
            let mut product = BigInt::one();
            let mut negatives = 0usize;
            for (j, r) in self.radicands.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    product *= r;
                    if r.is_negative() {
                        negatives += 1;
                    }
                }
            }
            let scaled = s * &product;
            if scaled.is_negative() {
                continue;
            }
            let root = scaled.sqrt();
            if &root * &root == scaled {
                // s·P = m² with P = ∏ r_j, so |c| = m/|P|; the sign corrects
                // for i-powers picked up by negative radicands.
                let s_neg = usize::from(s.is_negative());
                debug_assert_eq!(negatives % 2, s_neg % 2);
                let sign = if (negatives - s_neg) % 4 == 0 { 1 } else { -1 };
                let c = Rational::new(root * sign, product.abs());
                return Some((mask, c));
            }
        }
        None
    }

    /// Union of two descriptors: the smallest tower embedding both.
    pub fn union(a: &Arc<Self>, b: &Arc<Self>) -> Result<Arc<Self>, ScalarError> {
        if a.radicands == b.radicands {
            return Ok(Arc::clone(a));
        }
        let mut all = a.radicands.clone();
        all.extend_from_slice(&b.radicands);
        Self::new(&all)
    }
}

/// Exact element of a multi-quadratic tower field.
#[derive(Debug, Clone)]
pub struct TowerScalar {
    tower: Arc<TowerDescriptor>,
    /// One rational per subset-product basis element, indexed by mask.
    coeffs: Vec<Rational>,
}

impl TowerScalar {
    pub fn zero(tower: &Arc<TowerDescriptor>) -> Self {
        Self {
            tower: Arc::clone(tower),
            coeffs: vec![Rational::zero(); tower.dimension()],
        }
    }

    pub fn from_rational(tower: &Arc<TowerDescriptor>, q: Rational) -> Self {
        let mut v = Self::zero(tower);
        v.coeffs[0] = q;
        v
    }

    pub fn rational(q: Rational) -> Self {
        Self::from_rational(&TowerDescriptor::rationals(), q)
    }

    pub fn one(tower: &Arc<TowerDescriptor>) -> Self {
        Self::from_rational(tower, Rational::one())
    }

    /// The generator √r_j.
    pub fn generator(tower: &Arc<TowerDescriptor>, index: usize) -> Result<Self, ScalarError> {
        if index >= tower.generator_count() {
            return Err(ScalarError::IndexOutOfRange(index, tower.generator_count()));
        }
        let mut v = Self::zero(tower);
        v.coeffs[1 << index] = Rational::one();
        Ok(v)
    }

    /// √s for an arbitrary integer s, in the given tower.
    ///
    /// Fails when the square-free part of s is not a subset product of the
    /// tower's radicands.
    pub fn sqrt_int(tower: &Arc<TowerDescriptor>, s: &BigInt) -> Result<Self, ScalarError> {
        if s.is_zero() {
            return Ok(Self::zero(tower));
        }
        let (part, square) = square_free_decomposition(s);
        if part.is_one() {
            return Ok(Self::from_rational(tower, Rational::from_integer(square)));
        }
        let (mask, c) = tower
            .decompose_sqrt(&part)
            .ok_or(ScalarError::IncompatibleTowers)?;
        let mut v = Self::zero(tower);
        v.coeffs[mask] = c * Rational::from_integer(square);
        Ok(v)
    }

    pub fn tower(&self) -> &Arc<TowerDescriptor> {
        &self.tower
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// The rational part if the value is rational, else None.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the value in `target`, which must contain this tower.
    pub fn embed(&self, target: &Arc<TowerDescriptor>) -> Result<Self, ScalarError> {
        if self.tower.radicands() == target.radicands() {
            let mut v = self.clone();
            v.tower = Arc::clone(target);
            return Ok(v);
        }
        // Map each source generator, then rebuild basis elements by
        // multiplication in the target.
        let mut gen_images = Vec::with_capacity(self.tower.generator_count());
        for r in self.tower.radicands() {
            gen_images.push(Self::sqrt_int(target, r)?);
        }
        let mut out = Self::zero(target);
        for (mask, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = Self::from_rational(target, c.clone());
            for (j, image) in gen_images.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    term = term.mul(image);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Brings two values into a shared tower.
    pub fn unify(a: &Self, b: &Self) -> Result<(Self, Self), ScalarError> {
        if a.tower.radicands() == b.tower.radicands() {
            return Ok((a.clone(), b.clone()));
        }
        let common = TowerDescriptor::union(&a.tower, &b.tower)?;
        Ok((a.embed(&common)?, b.embed(&common)?))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.tower.radicands() == other.tower.radicands() {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect();
            return Self { tower: Arc::clone(&self.tower), coeffs };
        }
        let (a, b) = Self::unify(self, other).expect("tower unification failed");
        a.add(&b)
    }

    pub fn neg(&self) -> Self {
        Self {
            tower: Arc::clone(&self.tower),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.tower.radicands() != other.tower.radicands() {
            let (a, b) = Self::unify(self, other).expect("tower unification failed");
            return a.mul(&b);
        }
        let dim = self.tower.dimension();
        let radicands = self.tower.radicands();
        let mut coeffs = vec![Rational::zero(); dim];
        for (ma, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (mb, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                // √-basis product: shared generators square to their
                // radicand, the rest combine by symmetric difference.
                let shared = ma & mb;
                let mut factor = ca * cb;
                for (j, r) in radicands.iter().enumerate() {
                    if shared >> j & 1 == 1 {
                        factor *= Rational::from_integer(r.clone());
                    }
                }
                coeffs[ma ^ mb] += factor;
            }
        }
        Self { tower: Arc::clone(&self.tower), coeffs }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            tower: Arc::clone(&self.tower),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Flips √r_j ↦ −√r_j; a field automorphism fixing the other generators.
    pub fn conjugate(&self, generator_index: usize) -> Result<Self, ScalarError> {
        if generator_index >= self.tower.generator_count() {
            return Err(ScalarError::IndexOutOfRange(
                generator_index,
                self.tower.generator_count(),
            ));
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mask, c)| {
                if mask >> generator_index & 1 == 1 {
                    -c
                } else {
                    c.clone()
                }
            })
            .collect();
        Ok(Self { tower: Arc::clone(&self.tower), coeffs })
    }

    /// Multiplicative inverse via the product of all conjugates: the full
    /// conjugate product is the rational field norm, which vanishes only
    /// at zero.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut partial = Self::one(&self.tower);
        let mut running = self.clone();
        for j in 0..self.tower.generator_count() {
            let conj = running.conjugate(j)?;
            partial = partial.mul(&conj);
            running = running.mul(&conj);
        }
        let norm = running
            .as_rational()
            .expect("conjugate product must be rational");
        if norm.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(partial.scale(&norm.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        if self.tower.radicands() != other.tower.radicands() {
            let (a, b) = Self::unify(self, other)?;
            return a.div(&b);
        }
        Ok(self.mul(&other.inv()?))
    }

    /// Certified complex enclosure at the given precision (bits of the
    /// dyadic square-root enclosures).
    pub fn numeric(&self, bits: u32) -> ComplexInterval {
        let mut out = ComplexInterval::zero();
        let radicands = self.tower.radicands();
        for (mask, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut product = BigInt::one();
            let mut negatives = 0u32;
            for (j, r) in radicands.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    product *= r.abs();
                    if r.is_negative() {
                        negatives += 1;
                    }
                }
            }
            let magnitude = RatInterval::point(Rational::from_integer(product))
                .sqrt_outward(bits)
                .scale(c);
            // i^negatives places the term on the axes.
            match negatives % 4 {
                0 => out.re = out.re.add(&magnitude),
                1 => out.im = out.im.add(&magnitude),
                2 => out.re = out.re.sub(&magnitude),
                _ => out.im = out.im.sub(&magnitude),
            }
        }
        out
    }

    /// Midpoint of the numeric enclosure as a complex double.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        self.numeric(96).midpoint_f64()
    }

    /// Midpoint as f64; the value must be real.
    pub fn to_f64(&self) -> f64 {
        let enc = self.numeric(96);
        debug_assert!(enc.is_certainly_real(), "to_f64 on a non-real value");
        enc.re.midpoint_f64()
    }

    /// Exact sign of a real value: certified by refining the enclosure
    /// (the exact zero test makes this terminate).
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let mut bits = 64;
        loop {
            let enc = self.numeric(bits);
            assert!(
                enc.is_certainly_real(),
                "sign of a value with imaginary part"
            );
            if enc.re.is_strictly_positive() {
                return 1;
            }
            if enc.re.is_strictly_negative() {
                return -1;
            }
            bits *= 2;
            assert!(bits <= 1 << 16, "sign certification did not converge");
        }
    }

    /// True when the value has no imaginary component under the canonical
    /// embedding, i.e. no basis mask with an odd number of negative
    /// radicands carries a nonzero coefficient.
    pub fn is_real(&self) -> bool {
        let radicands = self.tower.radicands();
        self.coeffs.iter().enumerate().all(|(mask, c)| {
            if c.is_zero() {
                return true;
            }
            let negatives = radicands
                .iter()
                .enumerate()
                .filter(|(j, r)| mask >> j & 1 == 1 && r.is_negative())
                .count();
            negatives % 2 == 0
        })
    }
}

impl PartialEq for TowerScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.tower.radicands() == other.tower.radicands() {
            return self.coeffs == other.coeffs;
        }
        match Self::unify(self, other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

impl fmt::Display for TowerScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mask, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut radicand = BigInt::one();
            for (j, r) in self.tower.radicands().iter().enumerate() {
                if mask >> j & 1 == 1 {
                    radicand *= r;
                }
            }
            let coeff_text = format_rational(&c.abs());
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{sign}")?;
            }
            if mask == 0 {
                write!(f, "{coeff_text}")?;
            } else if c.abs().is_one() {
                write!(f, "sqrt({radicand})")?;
            } else {
                write!(f, "{coeff_text}*sqrt({radicand})")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Textual scalar syntax: rationals as "p/q", radicals as "sqrt(m)", i as
// "sqrt(-1)", e.g. "(-7+3*sqrt(6))/5". Parse/display round-trips exactly.
// ---------------------------------------------------------------------------

/// Parses the textual scalar syntax into a tower scalar. The tower is the
/// smallest one containing every radical mentioned.
pub fn parse_tower_scalar(text: &str) -> Result<TowerScalar, ScalarError> {
    let radicands = scan_radicands(text)?;
    let tower = TowerDescriptor::new(&radicands)?;
    parse_in_tower(text, &tower)
}

/// Parses the textual scalar syntax in a caller-supplied tower.
pub fn parse_in_tower(
    text: &str,
    tower: &Arc<TowerDescriptor>,
) -> Result<TowerScalar, ScalarError> {
    let mut parser = Parse { input: text.as_bytes(), pos: 0, tower: Arc::clone(tower) };
    let value = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.input.len() {
        return Err(ScalarError::Parse(format!(
            "unexpected trailing input at byte {}",
            parser.pos
        )));
    }
    Ok(value)
}

fn scan_radicands(text: &str) -> Result<Vec<BigInt>, ScalarError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i + 4 < bytes.len() {
        if &bytes[i..i + 5] == b"sqrt(" {
            let mut j = i + 5;
            let start = j;
            while j < bytes.len() && bytes[j] != b')' {
                j += 1;
            }
            if j == bytes.len() {
                return Err(ScalarError::Parse("unterminated sqrt(".into()));
            }
            let inner: BigInt = text[start..j]
                .trim()
                .parse()
                .map_err(|_| ScalarError::Parse(format!("invalid radicand '{}'", &text[start..j])))?;
            out.push(inner);
            i = j;
        }
        i += 1;
    }
    Ok(out)
}

struct Parse<'a> {
    input: &'a [u8],
    pos: usize,
    tower: Arc<TowerDescriptor>,
}

impl<'a> Parse<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<TowerScalar, ScalarError> {
        let mut value = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    value = value.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    value = value.sub(&self.term()?);
                }
                _ => return Ok(value),
            }
        }
    }

    fn term(&mut self) -> Result<TowerScalar, ScalarError> {
        let mut value = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    value = value.mul(&self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    value = value.div(&self.factor()?)?;
                }
                _ => return Ok(value),
            }
        }
    }

    fn factor(&mut self) -> Result<TowerScalar, ScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            Some(b'(') => {
                self.pos += 1;
                let value = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(ScalarError::Parse("expected ')'".into()));
                }
                self.pos += 1;
                Ok(value)
            }
            Some(b's') => {
                let rest = &self.input[self.pos..];
                if rest.len() < 5 || &rest[..5] != b"sqrt(" {
                    return Err(ScalarError::Parse("expected sqrt(".into()));
                }
                self.pos += 5;
                let radicand = self.integer()?;
                if self.peek() != Some(b')') {
                    return Err(ScalarError::Parse("expected ')' after radicand".into()));
                }
                self.pos += 1;
                TowerScalar::sqrt_int(&self.tower, &radicand)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(TowerScalar::from_rational(
                    &self.tower,
                    Rational::from_integer(n),
                ))
            }
            other => Err(ScalarError::Parse(format!(
                "unexpected input: {:?}",
                other.map(char::from)
            ))),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ScalarError::Parse("expected integer".into()));
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ScalarError::Parse("invalid integer".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_rational;

    fn sqrt6_tower() -> Arc<TowerDescriptor> {
        TowerDescriptor::new(&[BigInt::from(6)]).unwrap()
    }

    fn ts(text: &str) -> TowerScalar {
        parse_tower_scalar(text).unwrap()
    }

    #[test]
    fn sqrt6_squares_to_six() {
        let t = sqrt6_tower();
        let s = TowerScalar::generator(&t, 0).unwrap();
        let six = s.mul(&s);
        assert_eq!(six.as_rational(), Some(parse_rational("6").unwrap()));
    }

    #[test]
    fn conjugate_sum_is_rational() {
        let a = ts("(-7+3*sqrt(6))/5");
        let b = ts("(-7-3*sqrt(6))/5");
        let sum = a.add(&b);
        assert_eq!(sum.as_rational(), Some(parse_rational("-14/5").unwrap()));
    }

    #[test]
    fn inverse_of_one_minus_x_multiplies_back_to_one() {
        let x = ts("(-7+3*sqrt(6))/5");
        let one = TowerScalar::one(x.tower());
        let inv = one.sub(&x).inv().unwrap();
        assert_eq!(inv.mul(&one.sub(&x)), one);
        // The reduced form of the inverse: (4+sqrt(6))/6.
        assert_eq!(inv, ts("(4+sqrt(6))/6"));
    }

    #[test]
    fn conjugation_is_an_involution_and_fixes_rationals() {
        let a = ts("(-7+3*sqrt(6))/5");
        let conj = a.conjugate(0).unwrap();
        assert_eq!(conj, ts("(-7-3*sqrt(6))/5"));
        assert_eq!(conj.conjugate(0).unwrap(), a);
        let r = ts("22/7");
        assert_eq!(r.conjugate(0).is_err(), true); // rationals have no generators
        let r6 = r.embed(&sqrt6_tower()).unwrap();
        assert_eq!(r6.conjugate(0).unwrap(), r6);
    }

    #[test]
    fn conjugation_distributes_over_products() {
        let a = ts("(1+2*sqrt(6))/3");
        let b = ts("(5-sqrt(6))/2");
        let lhs = a.mul(&b).conjugate(0).unwrap();
        let rhs = a.conjugate(0).unwrap().mul(&b.conjugate(0).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dependent_radicands_normalize() {
        let t = TowerDescriptor::new(&[BigInt::from(2), BigInt::from(3), BigInt::from(6)])
            .unwrap();
        assert_eq!(t.radicands(), &[BigInt::from(2), BigInt::from(3)]);
        // √6 still representable: √6 = √2·√3.
        let s6 = TowerScalar::sqrt_int(&t, &BigInt::from(6)).unwrap();
        assert_eq!(s6.mul(&s6).as_rational(), Some(parse_rational("6").unwrap()));
    }

    #[test]
    fn numeric_enclosures_match_known_values() {
        let a = ts("(-7+3*sqrt(6))/5");
        let enc = a.numeric(60);
        assert!(enc.is_certainly_real());
        let mid = enc.re.midpoint_f64();
        assert!((mid - 0.069_693_845_669).abs() < 1e-9);

        let i_over_sqrt5 = ts("sqrt(-1)/sqrt(5)");
        let enc = i_over_sqrt5.numeric(60);
        assert!(enc.re.contains_zero());
        assert!((enc.im.midpoint_f64() - 0.447_213_595).abs() < 1e-8);

        // Appendix-C-style sign certificate: 36 − 15√6 < 0.
        let cert = ts("36-15*sqrt(6)");
        let enc = cert.numeric(60);
        assert!(enc.re.is_strictly_negative());
        assert!((enc.re.midpoint_f64() + 0.742).abs() < 5e-3);
        assert_eq!(cert.sign(), -1);
    }

    #[test]
    fn embedding_into_a_larger_tower_preserves_values() {
        let small = ts("1-sqrt(6)");
        let target = TowerDescriptor::new(&[
            BigInt::from(2),
            BigInt::from(3),
            BigInt::from(5),
        ])
        .unwrap();
        let big = small.embed(&target).unwrap();
        assert_eq!(big.mul(&big), ts("7-2*sqrt(6)").embed(&target).unwrap());
        assert_eq!(big, small); // cross-tower equality unifies
    }

    #[test]
    fn i_behaves_like_a_square_root_of_minus_one() {
        let i = ts("sqrt(-1)");
        assert_eq!(i.mul(&i).as_rational(), Some(parse_rational("-1").unwrap()));
        assert!(!i.is_real());
        // Complex conjugation is the generator conjugation of −1.
        let z = ts("3+2*sqrt(-1)");
        let zbar = z.conjugate(0).unwrap();
        assert_eq!(z.mul(&zbar).as_rational(), Some(parse_rational("13").unwrap()));
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "(-7+3*sqrt(6))/5",
            "1/2",
            "sqrt(-1)/sqrt(5)",
            "(11-4*sqrt(6))/5",
            "-23/25",
            "sqrt(10)/10+sqrt(15)/3",
        ] {
            let v = ts(text);
            let reparsed = parse_tower_scalar(&v.to_string()).unwrap();
            assert_eq!(v, reparsed, "round trip failed for {text}");
        }
    }

    #[test]
    fn division_by_zero_is_reported() {
        let z = TowerScalar::zero(&sqrt6_tower());
        assert_eq!(z.inv().unwrap_err(), ScalarError::DivisionByZero);
    }
}

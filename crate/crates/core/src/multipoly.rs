//! Multivariate polynomials over ℚ with pluggable monomial orders.
//!
//! Terms are stored sorted descending under grevlex, which makes equality
//! and the canonical text form order-independent; operations that care
//! about a different active order (the Gröbner engine, `reduce`) sort a
//! working view on entry. Exponent vectors are dense — the Fekete systems
//! stay at 2·C(n,2) ≤ 56 variables, so dense wins on simplicity and speed.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactalg::{format_rational, parse_rational, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials use different variable tables")]
    DomainMismatch,
    #[error("missing assignment for variable '{0}'")]
    MissingAssignment(String),
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expected a univariate polynomial")]
    NotUnivariate,
}

/// Ordered list of variable identifiers shared by a family of polynomials.
#[derive(Debug)]
pub struct VariableTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VariableTable {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Arc<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        Arc::new(Self { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

impl PartialEq for VariableTable {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

/// Dense exponent vector with cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
    degree: u32,
}

impl Monomial {
    pub fn one(width: usize) -> Self {
        Self { exps: vec![0; width], degree: 0 }
    }

    pub fn from_exps(exps: Vec<u16>) -> Self {
        let degree = exps.iter().map(|&e| u32::from(e)).sum();
        Self { exps, degree }
    }

    pub fn variable(width: usize, var: usize, power: u16) -> Self {
        let mut exps = vec![0; width];
        exps[var] = power;
        Self { exps, degree: u32::from(power) }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Self { exps, degree: self.degree + other.degree }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.degree <= other.degree
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn try_div(&self, divisor: &Self) -> Option<Self> {
        if !divisor.divides(self) {
            return None;
        }
        let exps = self
            .exps
            .iter()
            .zip(&divisor.exps)
            .map(|(a, b)| a - b)
            .collect();
        Some(Self { exps, degree: self.degree - divisor.degree })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let exps: Vec<u16> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Self::from_exps(exps)
    }

    pub fn coprime_with(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// True when the monomial is a power of a single variable (or 1).
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut var = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if var.is_some() {
                    return None;
                }
                var = Some(i);
            }
        }
        var
    }
}

/// Monomial orders used by the engine.
///
/// `Grevlex` is the graded reverse lexicographic order (a graded order, as
/// the finiteness test requires). `Block` is an elimination order: the
/// front block dominates, so any monomial containing a front-block
/// variable exceeds any monomial free of them; ties fall back to grevlex
/// inside each block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialOrder {
    Grevlex,
    Block { front: Vec<bool> },
}

impl MonomialOrder {
    pub fn block_eliminating(width: usize, keep: usize) -> Self {
        let mut front = vec![true; width];
        front[keep] = false;
        MonomialOrder::Block { front }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self {
            MonomialOrder::Grevlex => grevlex_cmp(&a.exps, &b.exps, None),
            MonomialOrder::Block { front } => {
                let fa: u32 = a
                    .exps
                    .iter()
                    .zip(front)
                    .filter(|(_, f)| **f)
                    .map(|(e, _)| u32::from(*e))
                    .sum();
                let fb: u32 = b
                    .exps
                    .iter()
                    .zip(front)
                    .filter(|(_, f)| **f)
                    .map(|(e, _)| u32::from(*e))
                    .sum();
                match fa.cmp(&fb) {
                    Ordering::Equal => {}
                    other => return other,
                }
                match grevlex_cmp(&a.exps, &b.exps, Some((front, true))) {
                    Ordering::Equal => {}
                    other => return other,
                }
                grevlex_cmp(&a.exps, &b.exps, Some((front, false)))
            }
        }
    }

    /// A short tag for cache keys.
    pub fn tag(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Block { front } => {
                let flags: String = front.iter().map(|f| if *f { '1' } else { '0' }).collect();
                format!("block{flags}")
            }
        }
    }
}

/// Grevlex comparison, optionally restricted to the variables where
/// `front[i] == flag`.
fn grevlex_cmp(
    a: &[u16],
    b: &[u16],
    restrict: Option<(&Vec<bool>, bool)>,
) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let included = |i: usize| match restrict {
        None => true,
        Some((front, flag)) => front[i] == flag,
    };
    let da: u32 = a
        .iter()
        .enumerate()
        .filter(|(i, _)| included(*i))
        .map(|(_, e)| u32::from(*e))
        .sum();
    let db: u32 = b
        .iter()
        .enumerate()
        .filter(|(i, _)| included(*i))
        .map(|(_, e)| u32::from(*e))
        .sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    // Same degree: rightmost differing exponent decides, smaller exponent
    // wins (reverse lexicographic on the reversed difference).
    for i in (0..a.len()).rev() {
        if !included(i) {
            continue;
        }
        if a[i] != b[i] {
            return if a[i] < b[i] { Ordering::Greater } else { Ordering::Less };
        }
    }
    Ordering::Equal
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Rational,
    pub mono: Monomial,
}

/// Multivariate polynomial with rational coefficients.
///
/// Invariants: no zero coefficients, no duplicate monomials, terms sorted
/// strictly descending under grevlex.
#[derive(Debug, Clone)]
pub struct MultiPoly {
    vars: Arc<VariableTable>,
    terms: Vec<Term>,
}

impl MultiPoly {
    pub fn zero(vars: &Arc<VariableTable>) -> Self {
        Self { vars: Arc::clone(vars), terms: Vec::new() }
    }

    pub fn constant(vars: &Arc<VariableTable>, value: Rational) -> Self {
        Self::from_terms(
            vars,
            vec![Term { coeff: value, mono: Monomial::one(vars.len()) }],
        )
    }

    pub fn one(vars: &Arc<VariableTable>) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn variable(vars: &Arc<VariableTable>, index: usize) -> Self {
        Self::from_terms(
            vars,
            vec![Term {
                coeff: Rational::one(),
                mono: Monomial::variable(vars.len(), index, 1),
            }],
        )
    }

    /// Builds a polynomial from arbitrary terms, normalizing to canonical
    /// form (merged duplicates, no zeros, grevlex-descending).
    pub fn from_terms(vars: &Arc<VariableTable>, mut terms: Vec<Term>) -> Self {
        terms.retain(|t| !t.coeff.is_zero());
        terms.sort_by(|a, b| MonomialOrder::Grevlex.cmp(&b.mono, &a.mono));
        let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff += t.coeff;
                    if last.coeff.is_zero() {
                        merged.pop();
                    }
                }
                _ => merged.push(t),
            }
        }
        Self { vars: Arc::clone(vars), terms: merged }
    }

    pub fn vars(&self) -> &Arc<VariableTable> {
        &self.vars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0)
    }

    fn check_domain(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars == other.vars || self.vars.names() == other.vars.names() {
            Ok(())
        } else {
            Err(PolyError::DomainMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_domain(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Self::from_terms(&self.vars, terms))
    }

    pub fn neg(&self) -> Self {
        Self {
            vars: Arc::clone(&self.vars),
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: -t.coeff.clone(), mono: t.mono.clone() })
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_domain(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(Term {
                    coeff: &a.coeff * &b.coeff,
                    mono: a.mono.mul(&b.mono),
                });
            }
        }
        Ok(Self::from_terms(&self.vars, terms))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: Arc::clone(&self.vars),
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: &t.coeff * factor, mono: t.mono.clone() })
                .collect(),
        }
    }

    pub fn mul_term(&self, coeff: &Rational, mono: &Monomial) -> Self {
        if coeff.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: Arc::clone(&self.vars),
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: &t.coeff * coeff, mono: t.mono.mul(mono) })
                .collect(),
        }
    }

    /// Leading term under the given order.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<&Term> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.mono, &b.mono))
    }

    /// Terms sorted descending under the given order.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<Term> {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        terms
    }

    /// Partial derivative with respect to one variable.
    pub fn derivative(&self, var: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.mono.exps()[var] > 0)
            .map(|t| {
                let e = t.mono.exps()[var];
                let mut exps = t.mono.exps().to_vec();
                exps[var] = e - 1;
                Term {
                    coeff: &t.coeff * Rational::from_integer(e.into()),
                    mono: Monomial::from_exps(exps),
                }
            })
            .collect();
        Self::from_terms(&self.vars, terms)
    }

    /// Exact evaluation at a total assignment, in any exact scalar domain.
    pub fn evaluate<S: Scalar>(&self, values: &[S]) -> Result<S, PolyError> {
        if values.len() != self.vars.len() {
            let missing = self.vars.name(values.len().min(self.vars.len() - 1));
            return Err(PolyError::MissingAssignment(missing.to_string()));
        }
        let context = values
            .first()
            .ok_or_else(|| PolyError::MissingAssignment("<none>".into()))?;
        let mut acc = context.zero_like();
        for t in &self.terms {
            let mut term = context.from_rational(&t.coeff);
            for (i, &e) in t.mono.exps().iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&values[i]);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Clears denominators and content: the result has integer
    /// coefficients with no common factor and positive leading coefficient
    /// under the given order. Returns the normalized polynomial.
    pub fn integer_normalized(&self, order: &MonomialOrder) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = num_bigint::BigInt::one();
        for t in &self.terms {
            denom_lcm = num_integer::lcm(denom_lcm, t.coeff.denom().clone());
        }
        let scaled: Vec<num_bigint::BigInt> = self
            .terms
            .iter()
            .map(|t| t.coeff.numer() * (&denom_lcm / t.coeff.denom()))
            .collect();
        let mut content = num_bigint::BigInt::zero();
        for c in &scaled {
            content = num_integer::gcd(content, c.clone());
        }
        let lead_idx = self
            .terms
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| order.cmp(&a.mono, &b.mono))
            .map(|(i, _)| i)
            .unwrap();
        if scaled[lead_idx].is_negative() {
            content = -content;
        }
        let terms = self
            .terms
            .iter()
            .zip(scaled)
            .map(|(t, c)| Term {
                coeff: Rational::from_integer(c / &content),
                mono: t.mono.clone(),
            })
            .collect();
        Self::from_terms(&self.vars, terms)
    }

    /// Monic under the given order.
    pub fn monic(&self, order: &MonomialOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some(lt) => self.scale(&lt.coeff.recip()),
        }
    }

    /// True when only `var` occurs.
    pub fn is_univariate_in(&self, var: usize) -> bool {
        self.terms
            .iter()
            .all(|t| t.mono.exps().iter().enumerate().all(|(i, &e)| e == 0 || i == var))
    }

    /// The single variable occurring, if there is exactly one.
    pub fn sole_variable(&self) -> Option<usize> {
        let mut var = None;
        for t in &self.terms {
            for (i, &e) in t.mono.exps().iter().enumerate() {
                if e > 0 {
                    match var {
                        None => var = Some(i),
                        Some(v) if v == i => {}
                        Some(_) => return None,
                    }
                }
            }
        }
        var
    }

    /// Dense univariate coefficients (constant first) for a polynomial in
    /// the given variable.
    pub fn univariate_coeffs(&self, var: usize) -> Result<Vec<Rational>, PolyError> {
        if !self.is_univariate_in(var) {
            return Err(PolyError::NotUnivariate);
        }
        let deg = self
            .terms
            .iter()
            .map(|t| t.mono.exps()[var])
            .max()
            .unwrap_or(0) as usize;
        let mut out = vec![Rational::zero(); deg + 1];
        for t in &self.terms {
            out[t.mono.exps()[var] as usize] = t.coeff.clone();
        }
        Ok(out)
    }

    /// Builds a univariate polynomial from dense coefficients.
    pub fn from_univariate(
        vars: &Arc<VariableTable>,
        var: usize,
        coeffs: &[Rational],
    ) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(e, c)| Term {
                coeff: c.clone(),
                mono: Monomial::variable(vars.len(), var, e as u16),
            })
            .collect();
        Self::from_terms(vars, terms)
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.vars.names() == other.vars.names() && self.terms == other.terms
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let coeff = &t.coeff;
            if i == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = coeff.abs();
            let mono_text = monomial_text(&t.mono, &self.vars);
            if mono_text.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono_text}")?;
            } else {
                write!(f, "{}*{mono_text}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

fn monomial_text(mono: &Monomial, vars: &VariableTable) -> String {
    let mut parts = Vec::new();
    for (i, &e) in mono.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars.name(i).to_string()),
            _ => parts.push(format!("{}^{}", vars.name(i), e)),
        }
    }
    parts.join("*")
}

// ---------------------------------------------------------------------------
// Multivariate division
// ---------------------------------------------------------------------------

/// Full normal form of `p` modulo `basis` under `order`.
///
/// No term of the result is divisible by any basis leading term, and
/// p − result lies in the ideal generated by the basis. Ties between
/// divisors are broken by basis index, so the result is deterministic.
pub fn reduce(p: &MultiPoly, basis: &[MultiPoly], order: &MonomialOrder) -> MultiPoly {
    reduce_with_quotients(p, basis, order).0
}

/// Division with quotients: returns (r, q) with p = Σ qᵢ·basisᵢ + r.
pub fn reduce_with_quotients(
    p: &MultiPoly,
    basis: &[MultiPoly],
    order: &MonomialOrder,
) -> (MultiPoly, Vec<MultiPoly>) {
    let vars = p.vars();
    let leads: Vec<Option<Term>> = basis
        .iter()
        .map(|b| b.leading_term(order).cloned())
        .collect();
    let mut quotients = vec![MultiPoly::zero(vars); basis.len()];
    let mut remainder: Vec<Term> = Vec::new();
    let mut work = p.sorted_terms(order);

    while let Some(lead) = work.first().cloned() {
        let mut divided = false;
        for (i, lt) in leads.iter().enumerate() {
            let Some(lt) = lt else { continue };
            if let Some(q_mono) = lead.mono.try_div(&lt.mono) {
                let q_coeff = &lead.coeff / &lt.coeff;
                let subtrahend = basis[i].mul_term(&q_coeff, &q_mono).sorted_terms(order);
                work = merge_sub(work, &subtrahend, order);
                quotients[i] = quotients[i]
                    .add(&MultiPoly::from_terms(
                        vars,
                        vec![Term { coeff: q_coeff, mono: q_mono }],
                    ))
                    .expect("same table");
                divided = true;
                break;
            }
        }
        if !divided {
            remainder.push(work.remove(0));
        }
    }
    (MultiPoly::from_terms(vars, remainder), quotients)
}

/// a − b for term lists sorted descending under `order`.
fn merge_sub(a: Vec<Term>, b: &[Term], order: &MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = 0;
    let mut ib = 0;
    while ia < a.len() && ib < b.len() {
        match order.cmp(&a[ia].mono, &b[ib].mono) {
            std::cmp::Ordering::Greater => {
                out.push(a[ia].clone());
                ia += 1;
            }
            std::cmp::Ordering::Less => {
                out.push(Term { coeff: -b[ib].coeff.clone(), mono: b[ib].mono.clone() });
                ib += 1;
            }
            std::cmp::Ordering::Equal => {
                let coeff = &a[ia].coeff - &b[ib].coeff;
                if !coeff.is_zero() {
                    out.push(Term { coeff, mono: a[ia].mono.clone() });
                }
                ia += 1;
                ib += 1;
            }
        }
    }
    out.extend(a[ia..].iter().cloned());
    out.extend(b[ib..].iter().map(|t| Term { coeff: -t.coeff.clone(), mono: t.mono.clone() }));
    out
}

// ---------------------------------------------------------------------------
// Canonical text form
// ---------------------------------------------------------------------------

/// Parses the canonical polynomial text form, e.g. "3*x12*z12 - z12 + 1".
pub fn parse_poly(text: &str, vars: &Arc<VariableTable>) -> Result<MultiPoly, PolyError> {
    let mut p = PolyParser { input: text.as_bytes(), pos: 0, vars: Arc::clone(vars) };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(PolyError::Parse(format!("trailing input at byte {}", p.pos)));
    }
    Ok(value)
}

/// Collects identifiers from polynomial texts in order of first appearance;
/// used to build a variable table for user-supplied systems.
pub fn scan_variables(texts: &[&str]) -> Vec<String> {
    let mut seen = Vec::new();
    for text in texts {
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i].is_ascii_alphabetic() || bytes[i] == b'_' {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let name = &text[start..i];
                if !seen.iter().any(|s| s == name) {
                    seen.push(name.to_string());
                }
            } else {
                i += 1;
            }
        }
    }
    seen
}

struct PolyParser<'a> {
    input: &'a [u8],
    pos: usize,
    vars: Arc<VariableTable>,
}

impl<'a> PolyParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut value = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    value = value.add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    value = value.sub(&self.term()?)?;
                }
                _ => return Ok(value),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut value = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    value = value.mul(&self.power()?)?;
                }
                Some(b'/') => {
                    // Only rational constants may appear as divisors.
                    self.pos += 1;
                    let divisor = self.power()?;
                    let c = constant_of(&divisor)
                        .ok_or_else(|| PolyError::Parse("polynomial divisor".into()))?;
                    if c.is_zero() {
                        return Err(PolyError::Parse("division by zero".into()));
                    }
                    value = value.scale(&c.recip());
                }
                _ => return Ok(value),
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.input[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| PolyError::Parse("invalid exponent".into()))?;
            let mut out = MultiPoly::one(&self.vars);
            for _ in 0..e {
                out = out.mul(&base)?;
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            Some(b'(') => {
                self.pos += 1;
                let value = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(PolyError::Parse("expected ')'".into()));
                }
                self.pos += 1;
                Ok(value)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.input.len()
                    && (self.input[self.pos].is_ascii_digit())
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
                let value = parse_rational(text)
                    .map_err(|e| PolyError::Parse(e.to_string()))?;
                Ok(MultiPoly::constant(&self.vars, value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.input.len()
                    && (self.input[self.pos].is_ascii_alphanumeric()
                        || self.input[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
                let index = self
                    .vars
                    .index_of(name)
                    .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
                Ok(MultiPoly::variable(&self.vars, index))
            }
            other => Err(PolyError::Parse(format!(
                "unexpected input: {:?}",
                other.map(char::from)
            ))),
        }
    }
}

fn constant_of(p: &MultiPoly) -> Option<Rational> {
    match p.terms() {
        [] => Some(Rational::zero()),
        [t] if t.mono.is_one() => Some(t.coeff.clone()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy_table() -> Arc<VariableTable> {
        VariableTable::new(vec!["x", "y"])
    }

    fn poly(text: &str, vars: &Arc<VariableTable>) -> MultiPoly {
        parse_poly(text, vars).unwrap()
    }

    #[test]
    fn grevlex_orders_classically() {
        use std::cmp::Ordering::*;
        let o = MonomialOrder::Grevlex;
        let m = |a: u16, b: u16| Monomial::from_exps(vec![a, b]);
        assert_eq!(o.cmp(&m(2, 0), &m(1, 1)), Greater); // x² > xy
        assert_eq!(o.cmp(&m(1, 1), &m(0, 2)), Greater); // xy > y²
        assert_eq!(o.cmp(&m(0, 3), &m(2, 0)), Greater); // degree first
    }

    #[test]
    fn block_order_eliminates_front_variables() {
        let o = MonomialOrder::Block { front: vec![true, false] };
        let x = Monomial::from_exps(vec![1, 0]);
        let y5 = Monomial::from_exps(vec![0, 5]);
        // Any monomial containing x beats any power of y.
        assert_eq!(o.cmp(&x, &y5), std::cmp::Ordering::Greater);
    }

    #[test]
    fn product_of_conjugates() {
        let vars = VariableTable::new(vec!["x12"]);
        let p = poly("x12 + 1", &vars);
        let q = poly("x12 - 1", &vars);
        assert_eq!(p.mul(&q).unwrap(), poly("x12^2 - 1", &vars));
    }

    #[test]
    fn additive_inverse_gives_empty_term_list() {
        let vars = xy_table();
        let p = poly("3*x*y - y + 1", &vars);
        let zero = p.add(&p.neg()).unwrap();
        assert!(zero.is_zero());
        assert_eq!(zero.terms().len(), 0);
    }

    #[test]
    fn z_definition_expands() {
        let vars = VariableTable::new(vec!["x12", "z12"]);
        let z = MultiPoly::variable(&vars, 1);
        let x = MultiPoly::variable(&vars, 0);
        let one = MultiPoly::one(&vars);
        let expanded = z.mul(&one.sub(&x).unwrap()).unwrap().sub(&one).unwrap();
        assert_eq!(expanded, poly("-z12*x12 + z12 - 1", &vars));
    }

    #[test]
    fn reduce_examples() {
        let vars = VariableTable::new(vec!["x12"]);
        let o = MonomialOrder::Grevlex;
        let r = reduce(&poly("x12^2", &vars), &[poly("x12", &vars)], &o);
        assert!(r.is_zero());
        let r = reduce(&poly("x12^2 + 1", &vars), &[poly("x12^2 - 6", &vars)], &o);
        assert_eq!(r, poly("7", &vars));
    }

    #[test]
    fn division_reconstructs_the_input() {
        let vars = xy_table();
        let o = MonomialOrder::Grevlex;
        let p = poly("x^3*y + x*y^2 + y + 3", &vars);
        let basis = [poly("x*y - 1", &vars), poly("y^2 - 1", &vars)];
        let (r, q) = reduce_with_quotients(&p, &basis, &o);
        // No remainder term divisible by a leading term.
        for t in r.terms() {
            for b in &basis {
                let lt = b.leading_term(&o).unwrap();
                assert!(!lt.mono.divides(&t.mono));
            }
        }
        let mut rebuilt = r.clone();
        for (qi, bi) in q.iter().zip(&basis) {
            rebuilt = rebuilt.add(&qi.mul(bi).unwrap()).unwrap();
        }
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn reduce_is_idempotent() {
        let vars = xy_table();
        let o = MonomialOrder::Grevlex;
        let p = poly("x^2*y + x + 4", &vars);
        let basis = [poly("x^2 - y", &vars), poly("y^2 - 1", &vars)];
        let r1 = reduce(&p, &basis, &o);
        let r2 = reduce(&r1, &basis, &o);
        assert_eq!(r1, r2);
    }

    #[test]
    fn evaluation_in_rationals() {
        // z12(1−x12)−1 at x12=−1/3, z12=3/4 → 0.
        let vars = VariableTable::new(vec!["x12", "z12"]);
        let p = poly("z12 - z12*x12 - 1", &vars);
        let v = p
            .evaluate(&[
                parse_rational("-1/3").unwrap(),
                parse_rational("3/4").unwrap(),
            ])
            .unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn canonical_text_round_trips() {
        let vars = VariableTable::new(vec!["x12", "z12"]);
        for text in ["3*x12*z12 - z12 + 1", "x12^2 - 1/3", "0", "-x12 + 2"] {
            let p = poly(text, &vars);
            let reparsed = parse_poly(&p.to_string(), &vars).unwrap();
            assert_eq!(p, reparsed);
        }
    }

    #[test]
    fn integer_normalization() {
        let vars = xy_table();
        let o = MonomialOrder::Grevlex;
        let p = poly("x/2 - y/3", &vars).integer_normalized(&o);
        assert_eq!(p, poly("3*x - 2*y", &vars));
        let p = poly("-4*x - 6", &vars).integer_normalized(&o);
        assert_eq!(p, poly("2*x + 3", &vars));
    }

    #[test]
    fn domain_mismatch_is_an_error() {
        let a = MultiPoly::one(&xy_table());
        let b = MultiPoly::one(&VariableTable::new(vec!["u"]));
        assert_eq!(a.add(&b).unwrap_err(), PolyError::DomainMismatch);
    }
}

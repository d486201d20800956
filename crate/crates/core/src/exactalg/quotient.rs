//! Elements of zero-dimensional quotient algebras ℚ[y…]/J.
//!
//! A `DefiningIdeal` holds a fixed grevlex Gröbner basis of the relation
//! ideal, computed once at construction, so normal forms are canonical and
//! equality is syntactic. `QuotientScalar` values are always stored fully
//! reduced. Inversion solves the multiplication-matrix linear system on
//! the standard-monomial basis; an element is a unit exactly when that
//! system is solvable.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::rational::Rational;
use super::scalar::Scalar;
use super::ScalarError;
use crate::groebner::{buchberger, standard_monomials, Budget, GroebnerBasis};
use crate::multipoly::{reduce, Monomial, MonomialOrder, MultiPoly, Term, VariableTable};

/// A zero-dimensional relation ideal with its fixed grevlex basis.
#[derive(Debug)]
pub struct DefiningIdeal {
    vars: Arc<VariableTable>,
    gb: GroebnerBasis,
    std_monos: Vec<Monomial>,
    index: HashMap<Vec<u16>, usize>,
}

impl DefiningIdeal {
    /// Computes the grevlex basis of the relations; the ideal must be
    /// zero-dimensional (these are tiny systems, so no budget applies).
    pub fn new(relations: &[MultiPoly]) -> Result<Arc<Self>, ScalarError> {
        let vars = relations
            .first()
            .map(|r| Arc::clone(r.vars()))
            .ok_or_else(|| ScalarError::Parse("empty defining ideal".into()))?;
        let gb = buchberger(relations, &MonomialOrder::Grevlex, &Budget::unlimited())
            .map_err(|e| ScalarError::Parse(format!("defining ideal basis: {e}")))?;
        if !crate::groebner::finiteness_test(&gb) {
            return Err(ScalarError::Parse(
                "defining ideal is not zero-dimensional".into(),
            ));
        }
        let std_monos = standard_monomials(&gb);
        let index = std_monos
            .iter()
            .enumerate()
            .map(|(i, m)| (m.exps().to_vec(), i))
            .collect();
        Ok(Arc::new(Self { vars, gb, std_monos, index }))
    }

    pub fn vars(&self) -> &Arc<VariableTable> {
        &self.vars
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// Dimension of the quotient algebra (number of solution branches
    /// counted with multiplicity).
    pub fn dimension(&self) -> usize {
        self.std_monos.len()
    }

    pub fn normal_form(&self, p: &MultiPoly) -> MultiPoly {
        reduce(p, &self.gb.basis, &self.gb.order)
    }

    fn coords(&self, nf: &MultiPoly) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.std_monos.len()];
        for t in nf.terms() {
            let at = self
                .index
                .get(t.mono.exps())
                .expect("normal form lies in the staircase");
            out[*at] = t.coeff.clone();
        }
        out
    }

    fn from_coords(&self, coords: &[Rational]) -> MultiPoly {
        MultiPoly::from_terms(
            &self.vars,
            coords
                .iter()
                .zip(&self.std_monos)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, m)| Term { coeff: c.clone(), mono: m.clone() })
                .collect(),
        )
    }

    /// Numeric solution branches, when the defining system is sequentially
    /// solvable by quadratics (one new variable per relation). Returns one
    /// complete complex assignment per branch. Floating point; intended
    /// for display and cross-checks, not certification.
    pub fn numeric_branches(&self) -> Option<Vec<Vec<Complex64>>> {
        let width = self.vars.len();
        let mut branches: Vec<Vec<Option<Complex64>>> = vec![vec![None; width]];
        let mut solved = vec![false; width];
        let mut remaining: Vec<&MultiPoly> = self.gb.basis.iter().collect();

        while solved.iter().any(|s| !s) {
            // A relation whose support adds exactly one unsolved variable,
            // with degree ≤ 2 in it.
            let mut pick: Option<(usize, usize)> = None;
            for (ri, r) in remaining.iter().enumerate() {
                let mut new_var = None;
                let mut ok = true;
                for t in r.terms() {
                    for (v, &e) in t.mono.exps().iter().enumerate() {
                        if e == 0 || solved[v] {
                            continue;
                        }
                        match new_var {
                            None => new_var = Some(v),
                            Some(w) if w == v => {}
                            Some(_) => {
                                ok = false;
                            }
                        }
                        if e > 2 {
                            ok = false;
                        }
                    }
                }
                if ok {
                    if let Some(v) = new_var {
                        pick = Some((ri, v));
                        break;
                    }
                }
            }
            let (ri, v) = pick?;
            let relation = remaining.remove(ri);
            let mut next: Vec<Vec<Option<Complex64>>> = Vec::new();
            for branch in &branches {
                // Collapse to a univariate quadratic a·v² + b·v + c.
                let mut a = Complex64::new(0.0, 0.0);
                let mut b = Complex64::new(0.0, 0.0);
                let mut c = Complex64::new(0.0, 0.0);
                for t in relation.terms() {
                    let mut factor = Complex64::new(t.coeff.to_f64()?, 0.0);
                    let mut v_power = 0u16;
                    for (w, &e) in t.mono.exps().iter().enumerate() {
                        if w == v {
                            v_power = e;
                        } else if e > 0 {
                            let value = branch[w]?;
                            for _ in 0..e {
                                factor *= value;
                            }
                        }
                    }
                    match v_power {
                        0 => c += factor,
                        1 => b += factor,
                        _ => a += factor,
                    }
                }
                let roots: Vec<Complex64> = if a.norm() < 1e-14 {
                    vec![-c / b]
                } else {
                    let disc = (b * b - 4.0 * a * c).sqrt();
                    vec![(-b + disc) / (2.0 * a), (-b - disc) / (2.0 * a)]
                };
                for root in roots {
                    let mut extended = branch.clone();
                    extended[v] = Some(root);
                    next.push(extended);
                }
            }
            branches = next;
            solved[v] = true;
        }
        Some(
            branches
                .into_iter()
                .map(|b| b.into_iter().map(Option::unwrap).collect())
                .collect(),
        )
    }
}

impl PartialEq for DefiningIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.vars.names() == other.vars.names() && self.gb.basis == other.gb.basis
    }
}

/// An element of a zero-dimensional quotient algebra, stored as its
/// canonical normal form.
#[derive(Clone)]
pub struct QuotientScalar {
    ideal: Arc<DefiningIdeal>,
    rep: MultiPoly,
}

impl QuotientScalar {
    pub fn new(ideal: &Arc<DefiningIdeal>, poly: MultiPoly) -> Self {
        let rep = ideal.normal_form(&poly);
        Self { ideal: Arc::clone(ideal), rep }
    }

    pub fn from_rational(ideal: &Arc<DefiningIdeal>, q: Rational) -> Self {
        Self::new(ideal, MultiPoly::constant(ideal.vars(), q))
    }

    pub fn variable(ideal: &Arc<DefiningIdeal>, name: &str) -> Result<Self, ScalarError> {
        let idx = ideal
            .vars()
            .index_of(name)
            .ok_or_else(|| ScalarError::Parse(format!("unknown variable '{name}'")))?;
        Ok(Self::new(ideal, MultiPoly::variable(ideal.vars(), idx)))
    }

    pub fn ideal(&self) -> &Arc<DefiningIdeal> {
        &self.ideal
    }

    /// The canonical (fully reduced) representative.
    pub fn representative(&self) -> &MultiPoly {
        &self.rep
    }

    fn check_same_ideal(&self, other: &Self) -> Result<(), ScalarError> {
        if Arc::ptr_eq(&self.ideal, &other.ideal) || self.ideal == other.ideal {
            Ok(())
        } else {
            Err(ScalarError::IncompatibleQuotients)
        }
    }

    /// Inverse via the multiplication matrix on the standard-monomial
    /// basis; fails when the element is not a unit.
    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.rep.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let ideal = &self.ideal;
        let dim = ideal.dimension();
        // Columns: coordinates of self·s_j.
        let mut matrix: Vec<Vec<Rational>> = Vec::with_capacity(dim);
        for s in &ideal.std_monos {
            let shifted = self.rep.mul_term(&Rational::one(), s);
            let nf = ideal.normal_form(&shifted);
            matrix.push(ideal.coords(&nf));
        }
        let one_at = *ideal
            .index
            .get(Monomial::one(ideal.vars().len()).exps())
            .expect("1 is a standard monomial");
        let mut rhs = vec![Rational::zero(); dim];
        rhs[one_at] = Rational::one();
        let solution = solve_rational(&matrix, &rhs).ok_or(ScalarError::NotAUnit)?;
        Ok(Self {
            ideal: Arc::clone(ideal),
            rep: ideal.from_coords(&solution),
        })
    }

    /// Evaluates the representative at a numeric branch assignment (the
    /// caller's root-selection policy).
    pub fn numeric_at(&self, assignment: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in self.rep.terms() {
            let mut factor = Complex64::new(t.coeff.to_f64().unwrap_or(f64::NAN), 0.0);
            for (v, &e) in t.mono.exps().iter().enumerate() {
                for _ in 0..e {
                    factor *= assignment[v];
                }
            }
            acc += factor;
        }
        acc
    }
}

/// Solves M·x = rhs over ℚ by column-major Gaussian elimination.
/// `matrix[j]` is column j. Returns None when singular.
fn solve_rational(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = rhs.len();
    // Dense row-major augmented copy.
    let mut a = vec![vec![Rational::zero(); n + 1]; n];
    for (j, col) in matrix.iter().enumerate() {
        for (i, value) in col.iter().enumerate() {
            a[i][j] = value.clone();
        }
    }
    for (i, value) in rhs.iter().enumerate() {
        a[i][n] = value.clone();
    }
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot_row);
        let pivot = a[col][col].clone();
        for k in col..=n {
            a[col][k] = &a[col][k] / &pivot;
        }
        for row in 0..n {
            if row != col && !a[row][col].is_zero() {
                let factor = a[row][col].clone();
                for k in col..=n {
                    let delta = &factor * &a[col][k];
                    a[row][k] -= delta;
                }
            }
        }
    }
    Some((0..n).map(|i| a[i][n].clone()).collect())
}

impl PartialEq for QuotientScalar {
    fn eq(&self, other: &Self) -> bool {
        self.check_same_ideal(other).is_ok() && self.rep == other.rep
    }
}

impl fmt::Debug for QuotientScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientScalar({})", self.rep)
    }
}

impl fmt::Display for QuotientScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl Scalar for QuotientScalar {
    fn vanishes(&self) -> bool {
        self.rep.is_zero()
    }

    fn zero_like(&self) -> Self {
        Self::from_rational(&self.ideal, Rational::zero())
    }

    fn one_like(&self) -> Self {
        Self::from_rational(&self.ideal, Rational::one())
    }

    fn from_rational(&self, q: &Rational) -> Self {
        Self::from_rational(&self.ideal, q.clone())
    }

    fn add(&self, other: &Self) -> Self {
        self.check_same_ideal(other).expect("same quotient algebra");
        // Sum of normal forms is already a normal form.
        Self {
            ideal: Arc::clone(&self.ideal),
            rep: self.rep.add(&other.rep).expect("same variables"),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        self.check_same_ideal(other).expect("same quotient algebra");
        let product = self.rep.mul(&other.rep).expect("same variables");
        Self::new(&self.ideal, product)
    }

    fn neg(&self) -> Self {
        Self { ideal: Arc::clone(&self.ideal), rep: self.rep.neg() }
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        self.inverse()
    }

    fn as_rational(&self) -> Option<Rational> {
        match self.rep.terms() {
            [] => Some(Rational::zero()),
            [t] if t.mono.is_one() => Some(t.coeff.clone()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_rational;
    use crate::multipoly::parse_poly;

    /// Appendix-style relations: 25a²+28a+19 = 0 in one variable.
    fn small_ideal() -> Arc<DefiningIdeal> {
        let vars = VariableTable::new(vec!["a"]);
        let rel = parse_poly("25*a^2 + 28*a + 19", &vars).unwrap();
        DefiningIdeal::new(&[rel]).unwrap()
    }

    #[test]
    fn reduction_is_idempotent_and_canonical() {
        let ideal = small_ideal();
        let vars = ideal.vars().clone();
        let p = parse_poly("a^3 + a", &vars).unwrap();
        let once = ideal.normal_form(&p);
        let twice = ideal.normal_form(&once);
        assert_eq!(once, twice);
        // a² ≡ (−28a − 19)/25.
        let sq = ideal.normal_form(&parse_poly("a^2", &vars).unwrap());
        assert_eq!(sq, parse_poly("-28/25*a - 19/25", &vars).unwrap());
    }

    #[test]
    fn defining_relation_vanishes() {
        let ideal = small_ideal();
        let a = QuotientScalar::variable(&ideal, "a").unwrap();
        let c19 = a.from_rational(&parse_rational("19").unwrap());
        let c25 = a.from_rational(&parse_rational("25").unwrap());
        let c28 = a.from_rational(&parse_rational("28").unwrap());
        let value = c25.mul(&a).mul(&a).add(&c28.mul(&a)).add(&c19);
        assert!(value.vanishes());
    }

    #[test]
    fn inversion_multiplies_back_to_one() {
        let ideal = small_ideal();
        let a = QuotientScalar::variable(&ideal, "a").unwrap();
        let one = a.one_like();
        let u = one.sub(&a); // 1 − a, a unit (1 is not a root of the relation)
        let inv = u.inverse().unwrap();
        assert_eq!(inv.mul(&u), one);
    }

    #[test]
    fn dimension_counts_branches() {
        let ideal = small_ideal();
        assert_eq!(ideal.dimension(), 2);
        let branches = ideal.numeric_branches().unwrap();
        assert_eq!(branches.len(), 2);
        // Roots of 25a²+28a+19: (−14 ± 3i√31)/25.
        for b in &branches {
            assert!((b[0].re - (-14.0 / 25.0)).abs() < 1e-12);
            assert!((b[0].im.abs() - 3.0 * 31f64.sqrt() / 25.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_is_not_invertible() {
        let ideal = small_ideal();
        let zero = QuotientScalar::from_rational(&ideal, Rational::zero());
        assert!(matches!(zero.inverse(), Err(ScalarError::DivisionByZero)));
    }
}

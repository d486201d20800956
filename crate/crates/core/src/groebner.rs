//! Buchberger engine with the standard criteria, plus the finiteness test,
//! standard-monomial degree count, and univariate elimination for
//! zero-dimensional ideals.
//!
//! The engine works internally on integer-coefficient polynomials with
//! content stripping after each reduction, which keeps rational blow-up in
//! check. Pair selection is the normal strategy (minimal lcm degree
//! first), with Gebauer–Möller pruning (product, chain and duplicate-lcm
//! criteria). Output is the reduced basis with content-free integer
//! coefficients and positive leading coefficients, so bases are unique and
//! syntactically comparable.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet, VecDeque};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactalg::Rational;
use crate::multipoly::{
    parse_poly, reduce, Monomial, MonomialOrder, MultiPoly, Term, VariableTable,
};

#[derive(Debug, Error)]
pub enum GroebnerError {
    #[error("budget exceeded after {} S-pairs ({} to zero) in {:?}",
        .stats.pairs_processed, .stats.reductions_to_zero, .stats.wall)]
    BudgetExceeded { stats: BasisStats },
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("no nonzero generators supplied")]
    EmptyInput,
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache format: {0}")]
    CacheFormat(String),
}

/// Wall-clock and work limits for a Buchberger run.
#[derive(Debug, Clone)]
pub struct Budget {
    pub time_limit: Duration,
    pub max_pairs: Option<u64>,
}

impl Budget {
    pub fn seconds(s: u64) -> Self {
        Self { time_limit: Duration::from_secs(s), max_pairs: None }
    }

    pub fn unlimited() -> Self {
        Self { time_limit: Duration::from_secs(u64::MAX / 4), max_pairs: None }
    }
}

#[derive(Debug, Clone, Default)]
pub struct BasisStats {
    pub pairs_processed: u64,
    pub reductions_to_zero: u64,
    pub basis_size: usize,
    pub wall: Duration,
    pub from_cache: bool,
}

/// A reduced Gröbner basis together with its order and run statistics.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub basis: Vec<MultiPoly>,
    pub order: MonomialOrder,
    pub stats: BasisStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub is_zero_dimensional: bool,
    /// Number of standard monomials, present when zero-dimensional.
    pub degree: Option<usize>,
}

// ---------------------------------------------------------------------------
// Integer-coefficient working representation
// ---------------------------------------------------------------------------

/// Terms sorted descending under the engine's active order.
#[derive(Debug, Clone)]
struct IntPoly {
    terms: Vec<(BigInt, Monomial)>,
}

/// Bitmask of variables with nonzero exponent; a cheap divisibility
/// pre-filter (mask subset plus degree bound reject most candidates).
fn support_mask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (i, &e) in m.exps().iter().enumerate() {
        if e > 0 {
            mask |= 1 << (i & 63);
        }
    }
    mask
}

impl IntPoly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(BigInt, Monomial) {
        &self.terms[0]
    }

    /// Divides out the integer content and makes the leading coefficient
    /// positive.
    fn normalize_content(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut content = BigInt::zero();
        for (c, _) in &self.terms {
            content = content.gcd(c);
            if content.is_one() {
                break;
            }
        }
        if self.terms[0].0.is_negative() {
            content = -content;
        }
        if !content.is_one() {
            for (c, _) in &mut self.terms {
                *c /= &content;
            }
        }
    }

    fn from_multipoly(p: &MultiPoly, order: &MonomialOrder) -> Self {
        let normalized = p.integer_normalized(order);
        let mut terms: Vec<(BigInt, Monomial)> = normalized
            .terms()
            .iter()
            .map(|t| (t.coeff.numer().clone(), t.mono.clone()))
            .collect();
        terms.sort_by(|a, b| order.cmp(&b.1, &a.1));
        Self { terms }
    }

    fn to_multipoly(&self, vars: &Arc<VariableTable>) -> MultiPoly {
        MultiPoly::from_terms(
            vars,
            self.terms
                .iter()
                .map(|(c, m)| Term {
                    coeff: Rational::from_integer(c.clone()),
                    mono: m.clone(),
                })
                .collect(),
        )
    }
}

/// a·p − b·(X^shift·g), all term lists descending under `order`.
/// The reducer is pre-shifted once so the merge allocates nothing per
/// comparison.
fn combine(
    a: &BigInt,
    p: &IntPoly,
    b: &BigInt,
    shift: &Monomial,
    g: &IntPoly,
    order: &MonomialOrder,
) -> IntPoly {
    let shifted: Vec<(BigInt, Monomial)> = g
        .terms
        .iter()
        .map(|(c, m)| (-(b * c), m.mul(shift)))
        .collect();
    let scale_a = !a.is_one();
    let mut out = Vec::with_capacity(p.terms.len() + shifted.len());
    let mut ip = 0;
    let mut ig = 0;
    while ip < p.terms.len() && ig < shifted.len() {
        match order.cmp(&p.terms[ip].1, &shifted[ig].1) {
            std::cmp::Ordering::Greater => {
                let c = if scale_a { a * &p.terms[ip].0 } else { p.terms[ip].0.clone() };
                out.push((c, p.terms[ip].1.clone()));
                ip += 1;
            }
            std::cmp::Ordering::Less => {
                let (c, m) = shifted[ig].clone();
                out.push((c, m));
                ig += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if scale_a {
                    a * &p.terms[ip].0 + &shifted[ig].0
                } else {
                    &p.terms[ip].0 + &shifted[ig].0
                };
                if !c.is_zero() {
                    out.push((c, shifted[ig].1.clone()));
                }
                ip += 1;
                ig += 1;
            }
        }
    }
    for t in &p.terms[ip..] {
        let c = if scale_a { a * &t.0 } else { t.0.clone() };
        out.push((c, t.1.clone()));
    }
    out.extend(shifted.into_iter().skip(ig));
    IntPoly { terms: out }
}

/// Leading monomial data for fast divisibility filtering.
struct LeadIndex {
    mask: Vec<u64>,
    degree: Vec<u32>,
}

impl LeadIndex {
    fn for_basis(basis: &[IntPoly]) -> Self {
        Self {
            mask: basis.iter().map(|g| support_mask(&g.lead().1)).collect(),
            degree: basis.iter().map(|g| g.lead().1.degree()).collect(),
        }
    }

    fn push(&mut self, g: &IntPoly) {
        self.mask.push(support_mask(&g.lead().1));
        self.degree.push(g.lead().1.degree());
    }

    fn find_divisor(&self, basis: &[IntPoly], mono: &Monomial, mono_mask: u64) -> Option<usize> {
        let deg = mono.degree();
        (0..basis.len()).find(|&i| {
            self.degree[i] <= deg
                && self.mask[i] & !mono_mask == 0
                && basis[i].lead().1.divides(mono)
        })
    }
}

/// Full normal form of `p` against `basis` (first divisible leading term
/// wins, by basis index). Content is stripped after every cancellation,
/// which keeps the integer coefficients near the size of the final basis.
fn normal_form(p: IntPoly, basis: &[IntPoly], order: &MonomialOrder) -> IntPoly {
    let leads = LeadIndex::for_basis(basis);
    normal_form_indexed(p, basis, &leads, order)
}

fn normal_form_indexed(
    mut p: IntPoly,
    basis: &[IntPoly],
    leads: &LeadIndex,
    order: &MonomialOrder,
) -> IntPoly {
    let mut idx = 0;
    while idx < p.terms.len() {
        let mono_mask = support_mask(&p.terms[idx].1);
        match leads.find_divisor(basis, &p.terms[idx].1, mono_mask) {
            Some(gi) => {
                let g = &basis[gi];
                let (glc, gmono) = g.lead();
                let shift = p.terms[idx].1.try_div(gmono).unwrap();
                let c = p.terms[idx].0.gcd(glc);
                let a = glc / &c;
                let b = &p.terms[idx].0 / &c;
                p = combine(&a, &p, &b, &shift, g, order);
                if !a.is_one() {
                    p.normalize_content();
                }
            }
            None => idx += 1,
        }
    }
    p.normalize_content();
    p
}

fn s_poly(gi: &IntPoly, gj: &IntPoly, order: &MonomialOrder) -> IntPoly {
    let (ci, mi) = gi.lead();
    let (cj, mj) = gj.lead();
    let lcm = mi.lcm(mj);
    let c = ci.gcd(cj);
    let a = cj / &c;
    let b = ci / &c;
    // a·(X^{lcm/mi})·gi − b·(X^{lcm/mj})·gj, via combine on a shifted copy.
    let shifted_gi = IntPoly {
        terms: gi
            .terms
            .iter()
            .map(|(c0, m0)| (c0.clone(), m0.mul(&lcm.try_div(mi).unwrap())))
            .collect(),
    };
    combine(&a, &shifted_gi, &b, &lcm.try_div(mj).unwrap(), gj, order)
}

// ---------------------------------------------------------------------------
// Pair queue with normal selection
// ---------------------------------------------------------------------------

/// Sort key that makes the binary heap pop pairs by (degree, grevlex
/// position) of the lcm: the encoded exponents compare lexicographically
/// exactly like ascending grevlex within one degree.
fn lcm_key(lcm: &Monomial) -> Vec<u16> {
    lcm.exps().iter().rev().map(|e| u16::MAX - e).collect()
}

type PairKey = (u32, Vec<u16>, usize, usize);

struct PairQueue {
    heap: BinaryHeap<Reverse<PairKey>>,
    // lcm per queued pair, so criteria can look them up when new elements
    // arrive.
    lcms: HashMap<(usize, usize), Monomial>,
}

impl PairQueue {
    fn new() -> Self {
        Self { heap: BinaryHeap::new(), lcms: HashMap::new() }
    }

    fn push(&mut self, i: usize, j: usize, lcm: Monomial) {
        self.heap.push(Reverse((lcm.degree(), lcm_key(&lcm), i, j)));
        self.lcms.insert((i, j), lcm);
    }

    fn pop(&mut self) -> Option<(usize, usize)> {
        while let Some(Reverse((_, _, i, j))) = self.heap.pop() {
            if self.lcms.remove(&(i, j)).is_some() {
                return Some((i, j));
            }
        }
        None
    }

    fn discard(&mut self, i: usize, j: usize) {
        self.lcms.remove(&(i, j));
    }

    fn is_empty(&self) -> bool {
        self.lcms.is_empty()
    }
}

/// Gebauer–Möller update: installs pairs (t, i) for the new basis element
/// t and prunes the old pair set.
fn update_pairs(queue: &mut PairQueue, basis: &[IntPoly], t: usize) {
    let lt_t = &basis[t].lead().1;

    // Chain criterion on the existing pairs: (i,j) is redundant once
    // lt(t) divides lcm(i,j) strictly finer than both new lcms.
    let existing: Vec<(usize, usize)> = queue.lcms.keys().copied().collect();
    for (i, j) in existing {
        let lcm_ij = queue.lcms[&(i, j)].clone();
        if lt_t.divides(&lcm_ij) {
            let lcm_it = basis[i].lead().1.lcm(lt_t);
            let lcm_jt = basis[j].lead().1.lcm(lt_t);
            if lcm_it != lcm_ij && lcm_jt != lcm_ij {
                queue.discard(i, j);
            }
        }
    }

    // Candidate new pairs with their lcms.
    let mut candidates: Vec<(usize, Monomial, bool)> = (0..t)
        .map(|i| {
            let lcm = basis[i].lead().1.lcm(lt_t);
            let coprime = basis[i].lead().1.coprime_with(lt_t);
            (i, lcm, coprime)
        })
        .collect();

    // M criterion: drop a candidate whose lcm is strictly divided by
    // another candidate's lcm.
    let mut keep = vec![true; candidates.len()];
    for a in 0..candidates.len() {
        if !keep[a] {
            continue;
        }
        for b in 0..candidates.len() {
            if a == b || !keep[a] {
                continue;
            }
            let (la, lb) = (&candidates[a].1, &candidates[b].1);
            if lb.divides(la) && lb != la {
                keep[a] = false;
            }
        }
    }

    // F criterion: one representative per lcm class; a coprime member
    // kills the whole class (its S-polynomial reduces to zero anyway).
    let mut by_lcm: HashMap<Vec<u16>, Vec<usize>> = HashMap::new();
    for (idx, (_, lcm, _)) in candidates.iter().enumerate() {
        if keep[idx] {
            by_lcm.entry(lcm.exps().to_vec()).or_default().push(idx);
        }
    }
    for class in by_lcm.values() {
        if class.iter().any(|&idx| candidates[idx].2) {
            for &idx in class {
                keep[idx] = false;
            }
        } else {
            for &idx in &class[1..] {
                keep[idx] = false;
            }
        }
    }

    for (idx, (i, lcm, coprime)) in candidates.drain(..).enumerate() {
        if keep[idx] && !coprime {
            queue.push(i, t, lcm);
        }
    }
}

// ---------------------------------------------------------------------------
// Buchberger
// ---------------------------------------------------------------------------

/// Computes the reduced Gröbner basis of the ideal generated by
/// `generators` under `order`.
///
/// Deterministic for fixed inputs; the reduced basis is also independent
/// of generator ordering. Fails with `BudgetExceeded` (carrying partial
/// statistics) when the budget runs out — expected for the full n=6
/// Fekete system at desk scale.
pub fn buchberger(
    generators: &[MultiPoly],
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis, GroebnerError> {
    let start = Instant::now();
    let vars = generators
        .first()
        .map(|g| Arc::clone(g.vars()))
        .ok_or(GroebnerError::EmptyInput)?;

    let mut basis: Vec<IntPoly> = Vec::new();
    let mut queue = PairQueue::new();
    let mut stats = BasisStats::default();

    let mut seed: Vec<IntPoly> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| IntPoly::from_multipoly(g, order))
        .collect();
    if seed.is_empty() {
        return Err(GroebnerError::EmptyInput);
    }
    // Deterministic seeding order improves input-order independence of the
    // intermediate run (the reduced result is unique regardless).
    seed.sort_by(|a, b| order.cmp(&a.lead().1, &b.lead().1));

    let mut pending: VecDeque<IntPoly> = seed.into();
    let mut leads = LeadIndex::for_basis(&basis);
    loop {
        // Install pending polynomials (inputs first, then new reductions).
        while let Some(p) = pending.pop_front() {
            let reduced = normal_form_indexed(p, &basis, &leads, order);
            if reduced.is_zero() {
                continue;
            }
            basis.push(reduced);
            leads.push(basis.last().unwrap());
            update_pairs(&mut queue, &basis, basis.len() - 1);
        }
        if queue.is_empty() {
            break;
        }
        if start.elapsed() > budget.time_limit
            || budget.max_pairs.is_some_and(|m| stats.pairs_processed >= m)
        {
            stats.basis_size = basis.len();
            stats.wall = start.elapsed();
            return Err(GroebnerError::BudgetExceeded { stats });
        }
        let (i, j) = queue.pop().expect("non-empty queue");
        stats.pairs_processed += 1;
        let s = s_poly(&basis[i], &basis[j], order);
        let r = normal_form_indexed(s, &basis, &leads, order);
        if r.is_zero() {
            stats.reductions_to_zero += 1;
        } else {
            pending.push_back(r);
        }
    }

    let reduced = interreduce(basis, order, &vars);
    stats.basis_size = reduced.len();
    stats.wall = start.elapsed();
    Ok(GroebnerBasis { basis: reduced, order: order.clone(), stats })
}

/// Minimalizes and tail-reduces a basis; output sorted by ascending
/// leading term with content-free integer coefficients.
fn interreduce(
    mut basis: Vec<IntPoly>,
    order: &MonomialOrder,
    vars: &Arc<VariableTable>,
) -> Vec<MultiPoly> {
    // Minimal basis: drop elements whose leading term another divides.
    basis.sort_by(|a, b| order.cmp(&a.lead().1, &b.lead().1));
    let mut minimal: Vec<IntPoly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|m| m.lead().1.divides(&g.lead().1)) {
            minimal.push(g);
        }
    }
    // Tail-reduce each against the others.
    let mut out: Vec<IntPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<IntPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let mut r = normal_form(minimal[i].clone(), &others, order);
        r.normalize_content();
        out.push(r);
    }
    out.sort_by(|a, b| order.cmp(&a.lead().1, &b.lead().1));
    out.iter().map(|g| g.to_multipoly(vars)).collect()
}

// ---------------------------------------------------------------------------
// Finiteness, degree, elimination
// ---------------------------------------------------------------------------

/// Finiteness test: the solution set is finite iff every variable has a
/// pure power among the basis leading terms (the order must be graded).
pub fn finiteness_test(gb: &GroebnerBasis) -> bool {
    let Some(first) = gb.basis.first() else { return false };
    let width = first.vars().len();
    let mut covered = vec![false; width];
    let mut constant_basis = false;
    for g in &gb.basis {
        let lt = g.leading_term(&gb.order).expect("nonzero basis element");
        if lt.mono.is_one() {
            constant_basis = true;
        }
        if let Some(v) = lt.mono.pure_power_of() {
            covered[v] = true;
        }
    }
    constant_basis || covered.iter().all(|&c| c)
}

/// Counts standard monomials (not divisible by any leading term); this is
/// the number of complex solutions counted with multiplicity.
pub fn ideal_degree(gb: &GroebnerBasis) -> Result<DegreeReport, GroebnerError> {
    if !finiteness_test(gb) {
        return Err(GroebnerError::NotZeroDimensional);
    }
    Ok(DegreeReport {
        is_zero_dimensional: true,
        degree: Some(standard_monomials(gb).len()),
    })
}

/// Enumerates the standard monomials of a zero-dimensional basis by
/// breadth-first closure from 1 (the staircase is downward closed).
pub fn standard_monomials(gb: &GroebnerBasis) -> Vec<Monomial> {
    let width = gb.basis[0].vars().len();
    let leads: Vec<Monomial> = gb
        .basis
        .iter()
        .map(|g| g.leading_term(&gb.order).unwrap().mono.clone())
        .collect();
    let is_standard =
        |m: &Monomial| -> bool { !leads.iter().any(|lt| lt.divides(m)) };

    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    let mut queue: VecDeque<Monomial> = VecDeque::new();
    let mut out = Vec::new();
    let one = Monomial::one(width);
    if is_standard(&one) {
        seen.insert(one.exps().to_vec());
        queue.push_back(one);
    }
    while let Some(m) = queue.pop_front() {
        out.push(m.clone());
        assert!(out.len() <= 10_000_000, "staircase unexpectedly large");
        for v in 0..width {
            let next = m.mul(&Monomial::variable(width, v, 1));
            if is_standard(&next) && seen.insert(next.exps().to_vec()) {
                queue.push_back(next);
            }
        }
    }
    // Canonical order for downstream linear algebra.
    out.sort_by(|a, b| gb.order.cmp(a, b));
    out
}

/// The monic generator of I ∩ ℚ\[keep\] for a zero-dimensional ideal.
///
/// Computed as the minimal polynomial of the multiplication-by-`keep`
/// operator on the quotient algebra: both equal {p : p(keep) ∈ I}, and the
/// operator route avoids a second elimination-order basis computation.
pub fn eliminate_to_univariate(
    generators: &[MultiPoly],
    keep: usize,
    budget: &Budget,
) -> Result<MultiPoly, GroebnerError> {
    let gb = buchberger(generators, &MonomialOrder::Grevlex, budget)?;
    eliminate_from_basis(&gb, keep)
}

/// Same as [`eliminate_to_univariate`], reusing an existing grevlex basis.
pub fn eliminate_from_basis(
    gb: &GroebnerBasis,
    keep: usize,
) -> Result<MultiPoly, GroebnerError> {
    if !finiteness_test(gb) {
        return Err(GroebnerError::NotZeroDimensional);
    }
    let vars = gb.basis[0].vars();
    let std_monos = standard_monomials(gb);
    let dim = std_monos.len();
    let index: HashMap<Vec<u16>, usize> = std_monos
        .iter()
        .enumerate()
        .map(|(i, m)| (m.exps().to_vec(), i))
        .collect();
    let width = vars.len();

    // Multiplication matrix column for each standard monomial.
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(dim);
    for s in &std_monos {
        let shifted = s.mul(&Monomial::variable(width, keep, 1));
        let as_poly = MultiPoly::from_terms(
            vars,
            vec![Term { coeff: Rational::one(), mono: shifted }],
        );
        let nf = reduce(&as_poly, &gb.basis, &gb.order);
        let mut col = vec![Rational::zero(); dim];
        for t in nf.terms() {
            let at = index
                .get(t.mono.exps())
                .expect("normal form stays in the staircase");
            col[*at] = t.coeff.clone();
        }
        columns.push(col);
    }

    // Krylov sequence from the coordinate vector of 1.
    let one_at = index
        .get(Monomial::one(width).exps())
        .expect("1 is standard for a proper ideal");
    let mut v = vec![Rational::zero(); dim];
    v[*one_at] = Rational::one();

    // Incremental echelon with dependency tracking: rows[i] holds a vector
    // in echelon form, combos[i] its expression over the Krylov vectors.
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut combos: Vec<Vec<Rational>> = Vec::new();
    let mut krylov_len = 0usize;
    loop {
        // Express v over current rows or certify independence.
        let mut residual = v.clone();
        let mut combo = vec![Rational::zero(); krylov_len + 1];
        combo[krylov_len] = Rational::one();
        for (row, rc) in rows.iter().zip(&combos) {
            let pivot = row.iter().position(|c| !c.is_zero()).unwrap();
            if residual[pivot].is_zero() {
                continue;
            }
            let factor = &residual[pivot] / &row[pivot];
            for k in 0..dim {
                let delta = &factor * &row[k];
                residual[k] -= delta;
            }
            for (k, c) in rc.iter().enumerate() {
                let delta = &factor * c;
                combo[k] -= delta;
            }
        }
        if residual.iter().all(Rational::is_zero) {
            // combo expresses 0 = Σ combo[k]·M^k·1 with combo[last] = 1,
            // i.e. the monic minimal polynomial coefficients (negated for
            // the lower-degree part).
            let lead = combo[krylov_len].clone();
            let coeffs: Vec<Rational> = combo
                .iter()
                .map(|c| c / &lead)
                .collect();
            return Ok(MultiPoly::from_univariate(vars, keep, &coeffs));
        }
        let mut padded = combo.clone();
        padded.resize(dim + 1, Rational::zero());
        rows.push(residual);
        combos.push(combo);
        krylov_len += 1;
        let _ = padded;
        // Next Krylov vector: M·v.
        let mut next = vec![Rational::zero(); dim];
        for (j, coord) in v.iter().enumerate() {
            if coord.is_zero() {
                continue;
            }
            for k in 0..dim {
                if !columns[j][k].is_zero() {
                    let delta = coord * &columns[j][k];
                    next[k] += delta;
                }
            }
        }
        v = next;
        assert!(krylov_len <= dim, "minimal polynomial degree exceeds dimension");
    }
}

/// Square-free part p / gcd(p, p′) of a univariate polynomial,
/// content-normalized with positive leading coefficient.
pub fn squarefree_part(p: &MultiPoly) -> MultiPoly {
    let vars = p.vars();
    let Some(var) = p.sole_variable() else {
        // Constants (or zero): already square-free.
        return p.integer_normalized(&MonomialOrder::Grevlex);
    };
    let coeffs = p.univariate_coeffs(var).expect("univariate");
    let deriv: Vec<Rational> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(e, c)| c * Rational::from_integer(BigInt::from(e)))
        .collect();
    let g = dense_gcd(&coeffs, &deriv);
    let (q, r) = dense_divrem(&coeffs, &g);
    debug_assert!(r.iter().all(Rational::is_zero));
    MultiPoly::from_univariate(vars, var, &q).integer_normalized(&MonomialOrder::Grevlex)
}

fn dense_trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(Rational::is_zero) {
        v.pop();
    }
}

/// Monic gcd of dense univariate rational polynomials.
pub(crate) fn dense_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    dense_trim(&mut a);
    dense_trim(&mut b);
    while !b.is_empty() {
        let (_, r) = dense_divrem(&a, &b);
        a = b;
        b = r;
        dense_trim(&mut b);
    }
    if let Some(lead) = a.last().cloned() {
        for c in &mut a {
            *c = &*c / &lead;
        }
    }
    a
}

/// Division with remainder for dense univariate rational polynomials.
pub(crate) fn dense_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    dense_trim(&mut rem);
    let mut div = b.to_vec();
    dense_trim(&mut div);
    assert!(!div.is_empty(), "division by zero polynomial");
    if rem.len() < div.len() {
        return (vec![], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - div.len() + 1];
    let lead = div.last().unwrap().clone();
    while rem.len() >= div.len() {
        let shift = rem.len() - div.len();
        let factor = rem.last().unwrap() / &lead;
        quot[shift] = factor.clone();
        for (i, c) in div.iter().enumerate() {
            let delta = &factor * c;
            rem[shift + i] -= delta;
        }
        dense_trim(&mut rem);
        if rem.len() < div.len() {
            break;
        }
    }
    (quot, rem)
}

// ---------------------------------------------------------------------------
// Basis cache
// ---------------------------------------------------------------------------

/// File cache: one basis per (generator set, order), keyed by a content
/// hash, stored in the canonical polynomial text format.
pub struct BasisCache {
    dir: PathBuf,
}

impl BasisCache {
    pub fn new<P: AsRef<Path>>(dir: P) -> Self {
        Self { dir: dir.as_ref().to_path_buf() }
    }

    pub fn key(generators: &[MultiPoly], order: &MonomialOrder) -> String {
        use sha2::{Digest, Sha256};
        let mut hasher = Sha256::new();
        hasher.update(order.tag().as_bytes());
        if let Some(g) = generators.first() {
            hasher.update(g.vars().names().join(",").as_bytes());
        }
        let mut texts: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
        texts.sort();
        for t in texts {
            hasher.update(t.as_bytes());
            hasher.update(b"\n");
        }
        hex_prefix(&hasher.finalize(), 16)
    }

    fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("gb_{key}.txt"))
    }

    pub fn load(
        &self,
        generators: &[MultiPoly],
        order: &MonomialOrder,
    ) -> Result<Option<GroebnerBasis>, GroebnerError> {
        let Some(first) = generators.first() else {
            return Ok(None);
        };
        let path = self.path_for(&Self::key(generators, order));
        if !path.exists() {
            return Ok(None);
        }
        let text = std::fs::read_to_string(&path)?;
        let vars = Arc::clone(first.vars());
        let mut basis = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let p = parse_poly(line, &vars)
                .map_err(|e| GroebnerError::CacheFormat(e.to_string()))?;
            basis.push(p);
        }
        if basis.is_empty() {
            return Ok(None);
        }
        Ok(Some(GroebnerBasis {
            basis,
            order: order.clone(),
            stats: BasisStats { from_cache: true, ..Default::default() },
        }))
    }

    pub fn store(
        &self,
        generators: &[MultiPoly],
        gb: &GroebnerBasis,
    ) -> Result<PathBuf, GroebnerError> {
        std::fs::create_dir_all(&self.dir)?;
        let path = self.path_for(&Self::key(generators, &gb.order));
        let mut text = String::new();
        text.push_str(&format!("# order: {}\n", gb.order.tag()));
        if let Some(g) = gb.basis.first() {
            text.push_str(&format!("# vars: {}\n", g.vars().names().join(" ")));
        }
        for g in &gb.basis {
            text.push_str(&g.to_string());
            text.push('\n');
        }
        std::fs::write(&path, text)?;
        Ok(path)
    }
}

fn hex_prefix(bytes: &[u8], chars: usize) -> String {
    let mut out = String::new();
    for b in bytes {
        out.push_str(&format!("{b:02x}"));
        if out.len() >= chars {
            break;
        }
    }
    out.truncate(chars);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_rational;
    use crate::multipoly::parse_poly;

    fn vars2() -> Arc<VariableTable> {
        VariableTable::new(vec!["x", "y"])
    }

    fn p(text: &str, vars: &Arc<VariableTable>) -> MultiPoly {
        parse_poly(text, vars).unwrap()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let vars = vars2();
        let gens = [p("x^2", &vars), p("x*y", &vars)];
        let gb = buchberger(&gens, &MonomialOrder::Grevlex, &Budget::seconds(10)).unwrap();
        let texts: Vec<String> = gb.basis.iter().map(|g| g.to_string()).collect();
        assert_eq!(texts, vec!["x*y", "x^2"]);
        assert!(!finiteness_test(&gb));
        assert!(matches!(
            ideal_degree(&gb),
            Err(GroebnerError::NotZeroDimensional)
        ));
    }

    #[test]
    fn univariate_quadratic() {
        let vars = VariableTable::new(vec!["t"]);
        let gens = [p("t^2 - 6", &vars)];
        let gb = buchberger(&gens, &MonomialOrder::Grevlex, &Budget::seconds(10)).unwrap();
        assert_eq!(gb.basis.len(), 1);
        assert_eq!(gb.basis[0].to_string(), "t^2 - 6");
        assert!(finiteness_test(&gb));
        assert_eq!(ideal_degree(&gb).unwrap().degree, Some(2));
    }

    #[test]
    fn degree_of_a_product_staircase() {
        let vars = vars2();
        let gens = [p("x^2 - 1", &vars), p("y^3 - y", &vars)];
        let gb = buchberger(&gens, &MonomialOrder::Grevlex, &Budget::seconds(10)).unwrap();
        assert_eq!(ideal_degree(&gb).unwrap().degree, Some(6));
    }

    #[test]
    fn circle_and_line() {
        let vars = vars2();
        let gens = [p("x^2 + y^2 - 1", &vars), p("x - y", &vars)];
        let gb = buchberger(&gens, &MonomialOrder::Grevlex, &Budget::seconds(10)).unwrap();
        assert!(finiteness_test(&gb));
        assert_eq!(ideal_degree(&gb).unwrap().degree, Some(2));
    }

    #[test]
    fn reduced_basis_is_input_order_independent() {
        let vars = vars2();
        let a = [
            p("x^3 - 2*x*y", &vars),
            p("x^2*y - 2*y^2 + x", &vars),
        ];
        let b = [a[1].clone(), a[0].clone()];
        let o = MonomialOrder::Grevlex;
        let gb_a = buchberger(&a, &o, &Budget::seconds(10)).unwrap();
        let gb_b = buchberger(&b, &o, &Budget::seconds(10)).unwrap();
        let ta: Vec<String> = gb_a.basis.iter().map(|g| g.to_string()).collect();
        let tb: Vec<String> = gb_b.basis.iter().map(|g| g.to_string()).collect();
        assert_eq!(ta, tb);
    }

    #[test]
    fn every_s_polynomial_reduces_to_zero() {
        let vars = vars2();
        let gens = [p("x^2 + y", &vars), p("x*y^2 - x", &vars), p("y^3 - 1", &vars)];
        let o = MonomialOrder::Grevlex;
        let gb = buchberger(&gens, &o, &Budget::seconds(10)).unwrap();
        for i in 0..gb.basis.len() {
            for j in i + 1..gb.basis.len() {
                let gi = IntPoly::from_multipoly(&gb.basis[i], &o);
                let gj = IntPoly::from_multipoly(&gb.basis[j], &o);
                let s = s_poly(&gi, &gj, &o).to_multipoly(&vars);
                assert!(reduce(&s, &gb.basis, &o).is_zero());
            }
        }
    }

    #[test]
    fn elimination_of_a_linear_relation() {
        let vars = vars2();
        let gens = [p("x - 2*y", &vars), p("y^2 - 1", &vars)];
        let keep = vars.index_of("x").unwrap();
        let g = eliminate_to_univariate(&gens, keep, &Budget::seconds(10)).unwrap();
        assert_eq!(g.to_string(), "x^2 - 4");
    }

    #[test]
    fn block_order_elimination_agrees() {
        // The same tiny example through an explicit elimination order:
        // the basis restricted to y-free polynomials generates I ∩ ℚ[x].
        let vars = vars2();
        let gens = [p("x - 2*y", &vars), p("y^2 - 1", &vars)];
        let keep = vars.index_of("x").unwrap();
        let order = MonomialOrder::block_eliminating(2, keep);
        let gb = buchberger(&gens, &order, &Budget::seconds(10)).unwrap();
        let only_x: Vec<&MultiPoly> = gb
            .basis
            .iter()
            .filter(|g| g.is_univariate_in(keep))
            .collect();
        assert_eq!(only_x.len(), 1);
        assert_eq!(
            only_x[0].monic(&order).to_string(),
            "x^2 - 4"
        );
    }

    #[test]
    fn squarefree_examples() {
        let vars = VariableTable::new(vec!["x45"]);
        let sq = p("x45^2 + 2*x45 + 1", &vars); // (x+1)²
        assert_eq!(squarefree_part(&sq).to_string(), "x45 + 1");
        let id = p("x45^2 - x45", &vars); // x(x−1) already square-free
        assert_eq!(squarefree_part(&id).to_string(), "x45^2 - x45");
        // (5x²+1)² → 5x²+1 keeps its content normalization.
        let q = p("5*x45^2 + 1", &vars);
        let q2 = q.mul(&q).unwrap();
        assert_eq!(squarefree_part(&q2), q);
    }

    #[test]
    fn budget_exhaustion_carries_stats() {
        let vars = vars2();
        let gens = [p("x^5 - y^4 + x*y", &vars), p("x^2*y^3 - x - 1", &vars)];
        let budget = Budget { time_limit: Duration::from_secs(60), max_pairs: Some(0) };
        match buchberger(&gens, &MonomialOrder::Grevlex, &budget) {
            Err(GroebnerError::BudgetExceeded { stats }) => {
                assert_eq!(stats.pairs_processed, 0);
                assert!(stats.basis_size >= 2);
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn cache_round_trip(){
        let dir = std::env::temp_dir().join(format!("fekete-gb-cache-{}", std::process::id()));
        let cache = BasisCache::new(&dir);
        let vars = vars2();
        let gens = [p("x^2 - 1", &vars), p("y - x", &vars)];
        let o = MonomialOrder::Grevlex;
        assert!(cache.load(&gens, &o).unwrap().is_none());
        let gb = buchberger(&gens, &o, &Budget::seconds(10)).unwrap();
        cache.store(&gens, &gb).unwrap();
        let loaded = cache.load(&gens, &o).unwrap().expect("cache hit");
        assert!(loaded.stats.from_cache);
        let a: Vec<String> = gb.basis.iter().map(|g| g.to_string()).collect();
        let b: Vec<String> = loaded.basis.iter().map(|g| g.to_string()).collect();
        assert_eq!(a, b);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn dense_gcd_is_monic() {
        let one = parse_rational("1").unwrap();
        let two = parse_rational("2").unwrap();
        // gcd(x²−1, x−1)·… with scaled inputs stays monic.
        let a = vec![-one.clone(), Rational::zero(), one.clone()];
        let b = vec![-two.clone(), two.clone()];
        let g = dense_gcd(&a, &b);
        assert_eq!(g, vec![-one.clone(), one.clone()]);
    }
}

//! The critical-configuration polynomial system in dot-product variables.
//!
//! For n points the system has m = n(n−1) variables (x_ij then z_ij for
//! i < j) and n(3n−1)/2 equations in three families:
//!
//! * center of mass: 1 + Σ_{k≠j} x_jk  for each point j;
//! * auxiliary variables: z_ij(1 − x_ij) − 1  for each pair;
//! * gradient: Σ_{j≠k} (x_ik − x_ij)·z_kj − (n−1)·x_ik  for each ordered
//!   pair (k, i), k ≠ i, with the convention x_ii = 1.
//!
//! Point labels are 0-based (pairs up to x45 for n = 6), matching the
//! catalog's naming.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{Rational, Scalar};
use crate::multipoly::{parse_poly, MultiPoly, Term, VariableTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemError {
    #[error("unsupported point count {0}; supported range is 3..=8")]
    UnsupportedN(usize),
}

/// Generator families, in the order they are emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    CenterMass,
    ZDef,
    Gradient,
}

/// The polynomial system for one point count.
#[derive(Debug, Clone)]
pub struct FeketeSystem {
    pub n: usize,
    pub vars: Arc<VariableTable>,
    pub center_mass: Vec<MultiPoly>,
    pub z_def: Vec<MultiPoly>,
    pub gradient: Vec<MultiPoly>,
}

/// Index of pair (i, j), i < j, in the row-major pair listing.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    assert!(i < j && j < n);
    // Pairs (0,1), (0,2), …, (0,n−1), (1,2), …
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Variable table for the system: x variables first, then z variables.
pub fn fekete_variables(n: usize) -> Arc<VariableTable> {
    let mut names = Vec::with_capacity(n * (n - 1));
    for prefix in ["x", "z"] {
        for i in 0..n {
            for j in i + 1..n {
                names.push(format!("{prefix}{i}{j}"));
            }
        }
    }
    VariableTable::new(names)
}

impl FeketeSystem {
    /// Builds the system; `n` outside 3..=8 is rejected.
    pub fn build(n: usize) -> Result<Self, SystemError> {
        if !(3..=8).contains(&n) {
            return Err(SystemError::UnsupportedN(n));
        }
        let vars = fekete_variables(n);
        let pairs = n * (n - 1) / 2;
        let width = vars.len();
        let x = |i: usize, j: usize| -> usize {
            pair_index(n, i.min(j), i.max(j))
        };
        let z = |i: usize, j: usize| -> usize { pairs + x(i, j) };
        let var_poly = |idx: usize| MultiPoly::variable(&vars, idx);
        let _ = width;

        let mut center_mass = Vec::with_capacity(n);
        for j in 0..n {
            let mut p = MultiPoly::one(&vars);
            for k in 0..n {
                if k != j {
                    p = p.add(&var_poly(x(j, k))).expect("same table");
                }
            }
            center_mass.push(p);
        }

        let mut z_def = Vec::with_capacity(pairs);
        for i in 0..n {
            for j in i + 1..n {
                let zij = var_poly(z(i, j));
                let xij = var_poly(x(i, j));
                let one = MultiPoly::one(&vars);
                let p = zij
                    .mul(&one.sub(&xij).expect("same table"))
                    .expect("same table")
                    .sub(&one)
                    .expect("same table");
                z_def.push(p);
            }
        }

        // Ordered pairs (k, i), k ≠ i; the j = i term uses x_ii = 1.
        let mut gradient = Vec::with_capacity(n * (n - 1));
        for k in 0..n {
            for i in 0..n {
                if i == k {
                    continue;
                }
                let xik = var_poly(x(i, k));
                let mut p = MultiPoly::zero(&vars);
                for j in 0..n {
                    if j == k {
                        continue;
                    }
                    let zkj = var_poly(z(k, j));
                    let diff = if j == i {
                        xik.sub(&MultiPoly::one(&vars)).expect("same table")
                    } else {
                        xik.sub(&var_poly(x(i, j))).expect("same table")
                    };
                    p = p.add(&diff.mul(&zkj).expect("same table")).expect("same table");
                }
                let scale = Rational::from_integer(BigInt::from(n as i64 - 1));
                p = p.sub(&xik.scale(&scale)).expect("same table");
                gradient.push(p);
            }
        }

        Ok(Self { n, vars, center_mass, z_def, gradient })
    }

    /// All generators in family order.
    pub fn generators(&self) -> Vec<MultiPoly> {
        let mut out = Vec::with_capacity(self.equation_count());
        out.extend(self.center_mass.iter().cloned());
        out.extend(self.z_def.iter().cloned());
        out.extend(self.gradient.iter().cloned());
        out
    }

    pub fn families(&self) -> [(Family, &[MultiPoly]); 3] {
        [
            (Family::CenterMass, self.center_mass.as_slice()),
            (Family::ZDef, self.z_def.as_slice()),
            (Family::Gradient, self.gradient.as_slice()),
        ]
    }

    pub fn variable_count(&self) -> usize {
        self.vars.len()
    }

    pub fn equation_count(&self) -> usize {
        self.center_mass.len() + self.z_def.len() + self.gradient.len()
    }

    pub fn pair_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Index of x_ij in the variable table.
    pub fn x_index(&self, i: usize, j: usize) -> usize {
        pair_index(self.n, i.min(j), i.max(j))
    }

    /// Index of z_ij in the variable table.
    pub fn z_index(&self, i: usize, j: usize) -> usize {
        self.pair_count() + self.x_index(i, j)
    }

    /// Serializable dump in the canonical text format.
    pub fn dump(&self) -> SystemDump {
        SystemDump {
            n: self.n,
            variables: self.vars.names().to_vec(),
            families: FamiliesDump {
                center_mass: self.center_mass.iter().map(|p| p.to_string()).collect(),
                z_def: self.z_def.iter().map(|p| p.to_string()).collect(),
                gradient: self.gradient.iter().map(|p| p.to_string()).collect(),
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SystemDump {
    pub n: usize,
    pub variables: Vec<String>,
    pub families: FamiliesDump,
}

#[derive(Debug, Serialize)]
pub struct FamiliesDump {
    pub center_mass: Vec<String>,
    pub z_def: Vec<String>,
    pub gradient: Vec<String>,
}

// ---------------------------------------------------------------------------
// Product energy
// ---------------------------------------------------------------------------

/// The product energy of a configuration with entries x_ij:
/// E = 2^C(n,2) · Π_{i<j}(1 − x_ij), returned together with the
/// normalized form E_norm = Π_{i<j}(1 − x_ij).
///
/// Both are reported because the paper's energy tables are headed E/2^15
/// for every n while the printed numbers equal the plain product, so the
/// normalized form is the comparison-safe one.
pub fn product_energy<S: Scalar>(entries: &[Vec<S>]) -> (S, S) {
    let n = entries.len();
    let context = &entries[0][0];
    let one = context.one_like();
    let mut normalized = context.one_like();
    for i in 0..n {
        for j in i + 1..n {
            normalized = normalized.mul(&one.sub(&entries[i][j]));
        }
    }
    let pairs = n * (n - 1) / 2;
    let scale = context.from_rational(&Rational::from_integer(
        BigInt::one() << pairs,
    ));
    (scale.mul(&normalized), normalized)
}

// ---------------------------------------------------------------------------
// Table of factors of the n=6 elimination generator
// ---------------------------------------------------------------------------

/// The 22 factors of the generator of the six-point elimination ideal in
/// x45, shipped as data (recomputing it needs ~10 h / 190 GB).
pub fn table4_factors() -> Vec<MultiPoly> {
    let vars = VariableTable::new(vec!["x45"]);
    let texts = [
        "x45",
        "x45^2 + 2*x45 + 1",
        "2*x45 - 1",
        "2*x45 + 1",
        "25*x45^2 - 10*x45 + 1",
        "5*x45 + 1",
        "25*x45^2 + 70*x45 + 49",
        "25*x45^4 + 10*x45^2 + 1",
        "5*x45^2 - 22*x45 + 5",
        "5*x45^2 + 2*x45 - 1",
        "5*x45^2 + 14*x45 - 1",
        "25*x45^2 + 28*x45 + 19",
        "125*x45^2 + 50*x45 - 31",
        "100*x45^4 + 95*x45^3 - 21*x45^2 - 22*x45 + 10",
        "250*x45^4 + 110*x45^3 - 21*x45^2 - 19*x45 + 4",
        "400*x45^4 + 488*x45^3 - 111*x45^2 - 196*x45 + 67",
        "3*x45 + 1",
        "5*x45 + 4",
        "10*x45 - 1",
        "25*x45 - 1",
        "25*x45 + 11",
        "25*x45 + 23",
    ];
    texts
        .iter()
        .map(|t| parse_poly(t, &vars).expect("factor table entry"))
        .collect()
}

/// Index (0-based) of the first factor vanishing exactly at `value`.
pub fn factor_membership<S: Scalar>(value: &S, factors: &[MultiPoly]) -> Option<usize> {
    factors
        .iter()
        .position(|f| f.evaluate(std::slice::from_ref(value)).unwrap().vanishes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_rational, parse_tower_scalar};

    #[test]
    fn variable_and_equation_counts_for_all_supported_n() {
        // (n, variables, equations) from the system's combinatorics.
        let expected = [
            (3, 6, 12),
            (4, 12, 22),
            (5, 20, 35),
            (6, 30, 51),
            (7, 42, 70),
            (8, 56, 92),
        ];
        for (n, vars, eqs) in expected {
            let sys = FeketeSystem::build(n).unwrap();
            assert_eq!(sys.variable_count(), vars, "variables for n={n}");
            assert_eq!(sys.equation_count(), eqs, "equations for n={n}");
            assert_eq!(sys.center_mass.len(), n);
            assert_eq!(sys.z_def.len(), n * (n - 1) / 2);
            assert_eq!(sys.gradient.len(), n * (n - 1));
        }
        assert_eq!(
            FeketeSystem::build(2).unwrap_err(),
            SystemError::UnsupportedN(2)
        );
        assert_eq!(
            FeketeSystem::build(9).unwrap_err(),
            SystemError::UnsupportedN(9)
        );
    }

    #[test]
    fn tetrahedron_satisfies_every_generator() {
        // All x = −1/3, z = 1/(1 − x) = 3/4.
        let sys = FeketeSystem::build(4).unwrap();
        let pairs = sys.pair_count();
        let mut values = Vec::new();
        for _ in 0..pairs {
            values.push(parse_rational("-1/3").unwrap());
        }
        for _ in 0..pairs {
            values.push(parse_rational("3/4").unwrap());
        }
        for g in sys.generators() {
            assert!(g.evaluate(&values).unwrap().vanishes(), "residual in {g}");
        }
    }

    #[test]
    fn z_definition_shape() {
        let sys = FeketeSystem::build(3).unwrap();
        assert_eq!(sys.z_def[0].to_string(), "-x01*z01 + z01 - 1");
    }

    #[test]
    fn energies_match_closed_forms() {
        // Tetrahedron: E_norm = (4/3)^6.
        let theta = parse_rational("-1/3").unwrap();
        let one = parse_rational("1").unwrap();
        let entries: Vec<Vec<Rational>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| if i == j { one.clone() } else { theta.clone() })
                    .collect()
            })
            .collect();
        let (e, e_norm) = product_energy(&entries);
        assert_eq!(e_norm, parse_rational("4096/729").unwrap());
        assert_eq!(e, parse_rational("262144/729").unwrap()); // 2^6 · E_norm
    }

    #[test]
    fn factor_membership_hits_the_documented_rows() {
        let factors = table4_factors();
        let minus_third = parse_tower_scalar("-1/3").unwrap();
        assert_eq!(factor_membership(&minus_third, &factors), Some(16)); // row 17
        let half = parse_tower_scalar("1/2").unwrap();
        assert_eq!(factor_membership(&half, &factors), Some(2)); // row 3
        let surd = parse_tower_scalar("(11+4*sqrt(6))/5").unwrap();
        assert_eq!(factor_membership(&surd, &factors), Some(8)); // row 9
        let nobody = parse_tower_scalar("17/3").unwrap();
        assert_eq!(factor_membership(&nobody, &factors), None);
    }
}

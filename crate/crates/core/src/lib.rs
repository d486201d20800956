//! Exact computational algebra for critical configurations of the
//! logarithmic Fekete problem (n points on a sphere maximizing the product
//! of pairwise squared distances), for up to six points in every dimension.
//!
//! The pipeline:
//!
//! * [`exactalg`] — arbitrary-precision rationals, multi-quadratic tower
//!   fields like ℚ(√2,√3,√5) and ℚ(i,√5), zero-dimensional quotient
//!   algebras, and certified interval evaluation.
//! * [`multipoly`] — multivariate polynomials over the exact scalars with
//!   pluggable monomial orders and multivariate division.
//! * [`groebner`] — a Buchberger engine with standard criteria, the
//!   finiteness test, standard-monomial degree counts, and univariate
//!   elimination for zero-dimensional ideals.
//! * [`feketesys`] — the critical-configuration polynomial system in the
//!   dot-product variables, product energies, and the factor table for the
//!   six-point elimination generator.
//! * [`catalog`] — every critical configuration shipped as exact data,
//!   plus constructors for the structured families.
//! * [`critverify`] — exact residual verification, Jacobian-rank
//!   multiplicity detection, permutation orbit census, and count matching.
//! * [`spheregeom`] — Gram-matrix spectra, PSD/rank analysis, and real or
//!   complex coordinate recovery.
//! * [`hessclass`] — the projected Hessian of the Lagrangian and the
//!   GM / spurious-minimum / saddle classification.

pub mod exactalg;
pub mod multipoly;
pub mod groebner;
pub mod feketesys;

pub use exactalg::{Rational, TowerDescriptor, TowerScalar, QuotientScalar, Scalar};
pub use multipoly::{MonomialOrder, MultiPoly, VariableTable};

//! Exact-arithmetic verification of the classification of nilpotent binary
//! and mono Leibniz algebras in small dimension.
//!
//! The crate is organised as a tower:
//!
//! * [`scalar`] — exact scalars: rationals, Gaussian rationals ℚ(i),
//!   univariate rational functions ℚ(i)(t), sparse multivariate polynomials,
//!   a small expression language for radical-bearing coefficients, and an
//!   arbitrary-precision binary float for the numeric fallback path.
//! * [`linalg`] — dense exact linear algebra over any tower field: RREF,
//!   rank, kernels, canonical subspaces, intersections and quotients.
//! * [`algebra`] — structure-constant algebras: products, power ideals,
//!   annihilators, derivations, basis change, symbolic automorphism checks.
//! * [`identity`] — multilinear and homogeneous polynomial identities,
//!   full linearization, and identity checking over an algebra.
//! * [`cohomology`] — flavored cocycle spaces Z², coboundaries B²,
//!   quotients H², cocycle annihilators and pullbacks.
//! * [`extension`] — central extensions and reconstruction of catalog
//!   entries from printed orbit representatives.
//! * [`degeneration`] — degeneration witnesses: exact limits of
//!   transported structure constants, the numeric fallback, necessary
//!   conditions, and closed-set (R-set) membership.
//! * [`catalog`] — the line-oriented data files, schema validation, the
//!   verification runner and the report emitter.

pub mod algebra;
pub mod catalog;
pub mod cohomology;
pub mod degeneration;
pub mod extension;
pub mod identity;
pub mod linalg;
pub mod scalar;

pub use catalog::{load_catalog, Catalog};
pub use scalar::{Gauss, NumExpr, Rat, RatFun};

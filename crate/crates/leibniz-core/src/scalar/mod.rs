//! Exact scalar tower and the numeric evaluator.
//!
//! The ground field for all catalog verification is ℚ(i): every structure
//! constant in the tables lies in ℚ(i) once parameters are instantiated.
//! Radicals are never stored in a scalar; they live in [`NumExpr`] trees
//! and are resolved either exactly (perfect squares, possibly after a
//! documented reparameterization) or on the arbitrary-precision numeric
//! path.

mod bigfloat;
mod gauss;
mod multipoly;
mod numexpr;
mod poly;
mod ratfun;

pub use bigfloat::{BigC, BigF};
pub use gauss::Gauss;
pub use multipoly::MultiPoly;
pub use numexpr::{num_eval, BigCEnv, EvalDomain, Expr, GaussEnv, MultiPolyEnv, NumExpr, RatFunEnv};
pub use poly::Poly;
pub use ratfun::{rf_limit_at_zero, RatFun};

use thiserror::Error;

/// Arbitrary-precision rational number.
pub type Rat = num_rational::BigRational;

/// Errors raised by scalar construction and evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    /// A rational function has a pole at t = 0.
    #[error("pole at t = 0 in {0}")]
    Pole(String),
    /// Division by zero during evaluation.
    #[error("division by zero while evaluating {0}")]
    Domain(String),
    /// A square root did not resolve to an element of the target domain.
    #[error("unresolved radical: sqrt({0}) is not a perfect square here")]
    Radical(String),
    /// A variable had no binding in the evaluation context.
    #[error("unbound variable {0}")]
    Unbound(String),
    /// Expression text failed to parse.
    #[error("parse error in {src:?} at byte {at}: {msg}")]
    Parse { src: String, at: usize, msg: String },
    /// Operation outside the domain's supported fragment.
    #[error("unsupported operation: {0}")]
    Unsupported(String),
}

/// Field operations shared by every level of the exact tower.
///
/// Implementations must be exact: `add`/`mul` never lose information and
/// `inv` returns `None` exactly on zero.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    /// Embed a Gaussian rational constant.
    fn from_gauss(g: &Gauss) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
}

pub(crate) fn rat_zero() -> Rat {
    use num_traits::Zero;
    Rat::zero()
}

pub(crate) fn rat_one() -> Rat {
    use num_traits::One;
    Rat::one()
}

pub(crate) fn rat_from_i64(v: i64) -> Rat {
    Rat::from_integer(v.into())
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub(crate) fn rat_sqrt_exact(r: &Rat) -> Option<Rat> {
    use num_traits::Signed;
    if r.is_negative() {
        return None;
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_perfect_squares() {
        let r = Rat::new(9.into(), 4.into());
        assert_eq!(rat_sqrt_exact(&r), Some(Rat::new(3.into(), 2.into())));
        assert_eq!(rat_sqrt_exact(&rat_from_i64(2)), None);
        assert_eq!(rat_sqrt_exact(&rat_from_i64(-4)), None);
        assert_eq!(rat_sqrt_exact(&rat_zero()), Some(rat_zero()));
    }
}

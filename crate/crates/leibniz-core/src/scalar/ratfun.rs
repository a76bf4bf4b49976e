//! Rational functions in t over ℚ(i), kept in reduced form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Gauss, Poly, ScalarError};

/// num/den with gcd(num, den) = 1 and den monic (den = 1 when num = 0).
#[derive(Clone, PartialEq, Eq)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFun {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead_inv = den.leading().inv().unwrap();
        RatFun {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        }
    }

    pub fn zero() -> Self {
        RatFun::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFun {
            num,
            den: Poly::one(),
        }
    }

    pub fn from_gauss(c: Gauss) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    /// The variable t.
    pub fn var() -> Self {
        RatFun::from_poly(Poly::var())
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Gauss> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Option<RatFun> {
        if self.is_zero() {
            None
        } else {
            Some(RatFun::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn pow_i64(&self, e: i64) -> Option<RatFun> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFun::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    /// Evaluate at a point where the (reduced) denominator does not vanish.
    pub fn eval(&self, x: &Gauss) -> Result<Gauss, ScalarError> {
        let d = self.den.eval(x);
        match d.inv() {
            Some(di) => Ok(&self.num.eval(x) * &di),
            None => Err(ScalarError::Pole(self.to_string())),
        }
    }

    /// Limit at t → 0; in reduced form this exists iff den(0) ≠ 0.
    pub fn limit_at_zero(&self) -> Result<Gauss, ScalarError> {
        self.eval(&Gauss::zero())
    }

    /// Exact square root when both numerator and denominator are perfect
    /// squares; the root is normalized positive near t = 0 (see
    /// [`Poly::sqrt_exact`]).
    pub fn sqrt_exact(&self) -> Option<RatFun> {
        let rn = self.num.sqrt_exact()?;
        let rd = self.den.sqrt_exact()?;
        Some(RatFun::new(rn, rd))
    }

    /// Substitute t := x.
    pub fn subst(&self, x: &RatFun) -> Result<RatFun, ScalarError> {
        let n = self.num.eval_ratfun(x);
        let d = self.den.eval_ratfun(x);
        if d.is_zero() {
            return Err(ScalarError::Domain(format!("{self} after substitution")));
        }
        Ok(&n * &d.inv().unwrap())
    }
}

/// Limit of a reduced rational function at t → 0 (error on a pole).
pub fn rf_limit_at_zero(f: &RatFun) -> Result<Gauss, ScalarError> {
    f.limit_at_zero()
}

impl Add<&RatFun> for &RatFun {
    type Output = RatFun;
    fn add(self, other: &RatFun) -> RatFun {
        RatFun::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }
}

impl Sub<&RatFun> for &RatFun {
    type Output = RatFun;
    fn sub(self, other: &RatFun) -> RatFun {
        self + &(-other)
    }
}

impl Mul<&RatFun> for &RatFun {
    type Output = RatFun;
    fn mul(self, other: &RatFun) -> RatFun {
        RatFun::new(&self.num * &other.num, &self.den * &other.den)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Field for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn one() -> Self {
        RatFun::one()
    }
    fn from_gauss(g: &Gauss) -> Self {
        RatFun::from_gauss(g.clone())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        RatFun::inv(self)
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| Gauss::from_i64(c)).collect())
    }

    #[test]
    fn reduction_is_automatic() {
        // (t² - 1)/(2t - 2) reduces to (t + 1)/2
        let f = RatFun::new(p(&[-1, 0, 1]), p(&[-2, 2]));
        assert_eq!(f.numerator(), &p(&[1, 1]).scale(&Gauss::new(
            crate::scalar::rat_from_i64(1) / crate::scalar::rat_from_i64(2),
            crate::scalar::rat_zero(),
        )));
        assert_eq!(f.denominator(), &Poly::one());
    }

    #[test]
    fn limits_and_poles() {
        let t = RatFun::var();
        let one = RatFun::one();
        // (t + 1)/(t - 1) → -1
        let f = &(&t + &one) * &(&t - &one).inv().unwrap();
        assert_eq!(f.limit_at_zero().unwrap(), Gauss::from_i64(-1));
        // 1/t has a pole
        assert!(matches!(
            rf_limit_at_zero(&t.inv().unwrap()),
            Err(ScalarError::Pole(_))
        ));
        // t²/t reduces, so the limit exists and is 0
        let g = RatFun::new(p(&[0, 0, 1]), p(&[0, 1]));
        assert_eq!(rf_limit_at_zero(&g).unwrap(), Gauss::zero());
    }

    #[test]
    fn sqrt_and_subst() {
        // sqrt((1 - t)²) = 1 - t
        let sq = RatFun::from_poly(p(&[1, -2, 1]));
        assert_eq!(sq.sqrt_exact().unwrap(), RatFun::from_poly(p(&[1, -1])));
        // substitute t := 2t - t² into 1 - t, giving (1 - t)²... then sqrt
        let r = RatFun::from_poly(p(&[0, 2, -1]));
        let f = RatFun::from_poly(p(&[1, -1]));
        let composed = f.subst(&r).unwrap();
        assert_eq!(composed, RatFun::from_poly(p(&[1, -2, 1])));
        assert_eq!(composed.sqrt_exact().unwrap(), RatFun::from_poly(p(&[1, -1])));
        // field inverse round-trip
        let h = RatFun::new(p(&[3, 1]), p(&[1, 0, 2]));
        assert_eq!(&h * &h.inv().unwrap(), RatFun::one());
    }
}

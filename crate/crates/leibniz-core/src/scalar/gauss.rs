//! Gaussian rationals ℚ(i): the exact ground field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::{rat_from_i64, rat_one, rat_sqrt_exact, rat_zero, Field, Rat, ScalarError};

/// An element `re + im·i` of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gauss {
    pub re: Rat,
    pub im: Rat,
}

impl Gauss {
    pub fn new(re: Rat, im: Rat) -> Self {
        Gauss { re, im }
    }

    pub fn zero() -> Self {
        Gauss::new(rat_zero(), rat_zero())
    }

    pub fn one() -> Self {
        Gauss::new(rat_one(), rat_zero())
    }

    /// The imaginary unit i.
    pub fn i() -> Self {
        Gauss::new(rat_zero(), rat_one())
    }

    pub fn from_i64(v: i64) -> Self {
        Gauss::new(rat_from_i64(v), rat_zero())
    }

    pub fn from_rat(r: Rat) -> Self {
        Gauss::new(r, rat_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// True when the element lies in ℚ.
    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gauss::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus re² + im² (a nonnegative rational).
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(Gauss::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow_i64(&self, e: i64) -> Option<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Gauss::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Some(acc)
    }

    /// Principal square root, when it exists inside ℚ(i).
    ///
    /// For real inputs: nonnegative perfect squares give their nonnegative
    /// root and negative perfect squares give `i·√(-x)`.  For genuinely
    /// complex inputs the principal root `γ + δi` (γ > 0, sign δ = sign im)
    /// is returned when both components are rational.
    pub fn sqrt_exact(&self) -> Option<Gauss> {
        if self.im.is_zero() {
            if self.re.is_negative() {
                let s = rat_sqrt_exact(&(-self.re.clone()))?;
                return Some(Gauss::new(rat_zero(), s));
            }
            return rat_sqrt_exact(&self.re).map(Gauss::from_rat);
        }
        // |z| must be rational, then γ² = (|z| + re)/2 must be a square.
        let r = rat_sqrt_exact(&self.norm_sq())?;
        let two = rat_from_i64(2);
        let gamma_sq = (&r + &self.re) / &two;
        let gamma = rat_sqrt_exact(&gamma_sq)?;
        if gamma.is_zero() {
            return None; // im ≠ 0 forces γ ≠ 0
        }
        let delta = &self.im / &(&gamma * &two);
        Some(Gauss::new(gamma, delta))
    }

    /// Parse the scalar literal format: `3/4`, `-1/2+2/3i`, `i`, `-2i`.
    pub fn parse(s: &str) -> Result<Gauss, ScalarError> {
        let src = s.trim();
        let err = |at: usize, msg: &str| ScalarError::Parse {
            src: src.to_string(),
            at,
            msg: msg.to_string(),
        };
        if src.is_empty() {
            return Err(err(0, "empty literal"));
        }
        let bytes = src.as_bytes();
        let mut pos = 0usize;
        let mut out = Gauss::zero();
        let mut nterms = 0;
        while pos < bytes.len() {
            let start = pos;
            let mut sign = rat_one();
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            } else if nterms > 0 {
                return Err(err(pos, "expected + or - between terms"));
            }
            let dig_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let mag = if pos > dig_start {
                let numer: num_bigint::BigInt = src[dig_start..pos]
                    .parse()
                    .map_err(|_| err(dig_start, "bad integer"))?;
                let denom = if pos < bytes.len() && bytes[pos] == b'/' {
                    pos += 1;
                    let den_start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if pos == den_start {
                        return Err(err(pos, "missing denominator"));
                    }
                    let d: num_bigint::BigInt = src[den_start..pos]
                        .parse()
                        .map_err(|_| err(den_start, "bad denominator"))?;
                    if d.is_zero() {
                        return Err(err(den_start, "zero denominator"));
                    }
                    d
                } else {
                    1.into()
                };
                Some(Rat::new(numer, denom))
            } else {
                None
            };
            let imag = if pos < bytes.len() && bytes[pos] == b'i' {
                pos += 1;
                true
            } else {
                false
            };
            if mag.is_none() && !imag {
                return Err(err(start, "expected a rational or i"));
            }
            let mag = sign * mag.unwrap_or_else(rat_one);
            if imag {
                out.im += mag;
            } else {
                out.re += mag;
            }
            nterms += 1;
        }
        Ok(out)
    }
}

fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

impl fmt::Display for Gauss {
    /// Canonical literal form, inverse to [`Gauss::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        let one = rat_one();
        let im_str = if self.im == one {
            "i".to_string()
        } else if self.im == -one.clone() {
            "-i".to_string()
        } else {
            format!("{}i", fmt_rat(&self.im))
        };
        if self.re.is_zero() {
            write!(f, "{im_str}")
        } else if self.im.is_positive() {
            write!(f, "{}+{}", fmt_rat(&self.re), im_str)
        } else {
            write!(f, "{}{}", fmt_rat(&self.re), im_str)
        }
    }
}

impl fmt::Debug for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! gauss_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait<&Gauss> for &Gauss {
            type Output = Gauss;
            fn $method(self, other: &Gauss) -> Gauss {
                let ($a, $b) = (self, other);
                $body
            }
        }
        impl $trait<Gauss> for Gauss {
            type Output = Gauss;
            fn $method(self, other: Gauss) -> Gauss {
                $trait::$method(&self, &other)
            }
        }
    };
}

gauss_binop!(Add, add, |a, b| Gauss::new(&a.re + &b.re, &a.im + &b.im));
gauss_binop!(Sub, sub, |a, b| Gauss::new(&a.re - &b.re, &a.im - &b.im));
gauss_binop!(Mul, mul, |a, b| Gauss::new(
    &a.re * &b.re - &a.im * &b.im,
    &a.re * &b.im + &a.im * &b.re
));
gauss_binop!(Div, div, |a, b| {
    let inv = b.inv().expect("division by zero in Gauss");
    a * &inv
});

impl Neg for &Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        -&self
    }
}

impl Field for Gauss {
    fn zero() -> Self {
        Gauss::zero()
    }
    fn one() -> Self {
        Gauss::one()
    }
    fn from_gauss(g: &Gauss) -> Self {
        g.clone()
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
        Gauss::inv(self)
    }
    fn is_zero(&self) -> bool {
        Gauss::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> Gauss {
        Gauss::new(rat_from_i64(re), rat_from_i64(im))
    }

    #[test]
    fn arithmetic() {
        // (1+i)(1-i) = 2
        assert_eq!(&g(1, 1) * &g(1, -1), g(2, 0));
        assert_eq!(&g(0, 1) * &g(0, 1), g(-1, 0));
        let z = g(3, -2);
        assert_eq!(&z * &z.inv().unwrap(), Gauss::one());
    }

    #[test]
    fn sqrt_cases() {
        assert_eq!(g(4, 0).sqrt_exact(), Some(g(2, 0)));
        assert_eq!(g(-9, 0).sqrt_exact(), Some(g(0, 3)));
        // (1+i)² = 2i
        assert_eq!(g(0, 2).sqrt_exact(), Some(g(1, 1)));
        // (2-i)² = 3-4i
        assert_eq!(g(3, -4).sqrt_exact(), Some(g(2, -1)));
        assert_eq!(g(2, 0).sqrt_exact(), None);
        assert_eq!(g(1, 1).sqrt_exact(), None);
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["3/4", "-1/2+2/3i", "i", "-i", "0", "7", "-5/9", "1+i", "2i", "-1/2-i"] {
            let v = Gauss::parse(s).unwrap();
            let printed = v.to_string();
            assert_eq!(Gauss::parse(&printed).unwrap(), v, "via {s} -> {printed}");
        }
        assert_eq!(Gauss::parse("-1/2+2/3i").unwrap().to_string(), "-1/2+2/3i");
        assert_eq!(Gauss::parse("0i").unwrap(), Gauss::zero());
        assert!(Gauss::parse("2//3").is_err());
        assert!(Gauss::parse("").is_err());
        assert!(Gauss::parse("1 + x").is_err());
    }
}

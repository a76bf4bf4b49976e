//! Arbitrary-precision binary floating-point reals and complex numbers.
//!
//! Supports the numeric degeneration check, which samples a curve at tiny
//! parameter values and tracks residuals far below f64 range.  Values are
//! mant · 2^exp with the mantissa kept at exactly `prec` significant bits
//! (rounding half away from zero); binary operations use the larger operand
//! precision.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::Rat;

#[derive(Clone)]
pub struct BigF {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl BigF {
    fn normalized(mut mant: BigInt, mut exp: i64, prec: u32) -> BigF {
        assert!(prec >= 8, "precision too small");
        if mant.is_zero() {
            return BigF { mant, exp: 0, prec };
        }
        let target = prec as u64;
        let bits = mant.bits();
        if bits > target {
            let shift = (bits - target) as usize;
            let sign = mant.sign();
            let mag = mant.magnitude().clone();
            let mut q: BigUint = &mag >> shift;
            let rem = &mag - (&q << shift);
            let half = BigUint::from(1u8) << (shift - 1);
            if rem >= half {
                q += 1u8;
            }
            if q.bits() > target {
                // carry to 2^prec: even, so the shift is exact
                q >>= 1;
                exp += 1;
            }
            mant = BigInt::from_biguint(sign, q);
            exp += shift as i64;
        } else if bits < target {
            let shift = (target - bits) as usize;
            mant <<= shift;
            exp -= shift as i64;
        }
        BigF { mant, exp, prec }
    }

    pub fn zero(prec: u32) -> BigF {
        BigF {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn from_i64(v: i64, prec: u32) -> BigF {
        BigF::normalized(BigInt::from(v), 0, prec)
    }

    pub fn from_rat(r: &Rat, prec: u32) -> BigF {
        if r.is_zero() {
            return BigF::zero(prec);
        }
        let num = r.numer().clone();
        let den = r.denom().clone();
        let nb = num.bits() as i64;
        let db = den.bits() as i64;
        let s = (prec as i64 + 2 + db - nb).max(0);
        let negative = num.is_negative();
        let scaled = num << (s as usize);
        let (mut q, rem) = scaled.div_rem(&den);
        let rem2: BigInt = rem.abs() * 2;
        if rem2 >= den.abs() {
            // BigRational keeps the denominator positive
            if negative {
                q -= 1;
            } else {
                q += 1;
            }
        }
        BigF::normalized(q, -s, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn neg(&self) -> BigF {
        BigF {
            mant: -&self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> BigF {
        BigF {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// Exact division by two.
    pub fn half(&self) -> BigF {
        if self.is_zero() {
            return self.clone();
        }
        BigF {
            mant: self.mant.clone(),
            exp: self.exp - 1,
            prec: self.prec,
        }
    }

    pub fn add(&self, other: &BigF) -> BigF {
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return BigF::normalized(other.mant.clone(), other.exp, prec);
        }
        if other.is_zero() {
            return BigF::normalized(self.mant.clone(), self.exp, prec);
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << ((self.exp - e) as usize);
        let b = &other.mant << ((other.exp - e) as usize);
        BigF::normalized(a + b, e, prec)
    }

    pub fn sub(&self, other: &BigF) -> BigF {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BigF) -> BigF {
        BigF::normalized(
            &self.mant * &other.mant,
            self.exp + other.exp,
            self.prec.max(other.prec),
        )
    }

    pub fn div(&self, other: &BigF) -> BigF {
        assert!(!other.is_zero(), "big-float division by zero");
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return BigF::zero(prec);
        }
        let nb = self.mant.bits() as i64;
        let db = other.mant.bits() as i64;
        let s = (prec as i64 + 2 + db - nb).max(0);
        let scaled = &self.mant << (s as usize);
        let (mut q, rem) = scaled.div_rem(&other.mant);
        let rem2: BigInt = rem.abs() * 2;
        if rem2 >= other.mant.abs() {
            // round half away from zero, in the direction of the true quotient
            if self.mant.sign() == other.mant.sign() {
                q += 1;
            } else {
                q -= 1;
            }
        }
        BigF::normalized(q, self.exp - other.exp - s, prec)
    }

    /// Square root of a nonnegative value.
    pub fn sqrt(&self) -> BigF {
        assert!(!self.is_negative(), "big-float sqrt of a negative value");
        if self.is_zero() {
            return self.clone();
        }
        let want = 2 * (self.prec as u64 + 2);
        let bits = self.mant.bits();
        let mut k = want.saturating_sub(bits) as i64;
        if (self.exp - k) % 2 != 0 {
            k += 1;
        }
        let shifted = &self.mant << (k as usize);
        let root = shifted.sqrt();
        BigF::normalized(root, (self.exp - k) / 2, self.prec)
    }

    /// Exact value comparison (independent of precision).
    pub fn cmp_value(&self, other: &BigF) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => {
                return if other.is_negative() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (false, true) => {
                return if self.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            _ => {}
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << ((self.exp - e) as usize);
        let b = &other.mant << ((other.exp - e) as usize);
        a.cmp(&b)
    }

    /// Nearest f64 (0 or ±inf outside range); for display only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (top, e) = if bits > 53 {
            let shift = (bits - 53) as usize;
            (&self.mant >> shift, self.exp + (bits - 53) as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let m = top.to_f64().unwrap_or(f64::NAN);
        if e > 1023 {
            return if m < 0.0 {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            };
        }
        if e < -1100 {
            return 0.0;
        }
        m * (2.0f64).powi(e as i32)
    }
}

impl PartialEq for BigF {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for BigF {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl fmt::Debug for BigF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl fmt::Display for BigF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

/// Complex number with [`BigF`] components.
#[derive(Clone, PartialEq)]
pub struct BigC {
    pub re: BigF,
    pub im: BigF,
}

impl BigC {
    pub fn new(re: BigF, im: BigF) -> BigC {
        BigC { re, im }
    }

    pub fn zero(prec: u32) -> BigC {
        BigC {
            re: BigF::zero(prec),
            im: BigF::zero(prec),
        }
    }

    pub fn i(prec: u32) -> BigC {
        BigC {
            re: BigF::zero(prec),
            im: BigF::from_i64(1, prec),
        }
    }

    pub fn from_rat(r: &Rat, prec: u32) -> BigC {
        BigC {
            re: BigF::from_rat(r, prec),
            im: BigF::zero(prec),
        }
    }

    pub fn from_gauss(g: &super::Gauss, prec: u32) -> BigC {
        BigC {
            re: BigF::from_rat(&g.re, prec),
            im: BigF::from_rat(&g.im, prec),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn neg(&self) -> BigC {
        BigC {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn add(&self, other: &BigC) -> BigC {
        BigC {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn sub(&self, other: &BigC) -> BigC {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BigC) -> BigC {
        BigC {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn div(&self, other: &BigC) -> BigC {
        let d = other.re.mul(&other.re).add(&other.im.mul(&other.im));
        let re = self.re.mul(&other.re).add(&self.im.mul(&other.im));
        let im = self.im.mul(&other.re).sub(&self.re.mul(&other.im));
        BigC {
            re: re.div(&d),
            im: im.div(&d),
        }
    }

    /// Modulus √(re² + im²).
    pub fn abs(&self) -> BigF {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).sqrt()
    }

    /// Principal square root (nonnegative real part; for negative reals, the
    /// root with positive imaginary part).
    pub fn sqrt(&self) -> BigC {
        let prec = self.re.prec().max(self.im.prec());
        if self.im.is_zero() {
            if self.re.is_negative() {
                return BigC {
                    re: BigF::zero(prec),
                    im: self.re.neg().sqrt(),
                };
            }
            return BigC {
                re: self.re.sqrt(),
                im: BigF::zero(prec),
            };
        }
        let r = self.abs();
        if !self.re.is_negative() {
            let g = r.add(&self.re).half().sqrt();
            let d = self.im.div(&g.add(&g));
            BigC { re: g, im: d }
        } else {
            let dabs = r.sub(&self.re).half().sqrt();
            let g = self.im.abs().div(&dabs.add(&dabs));
            let d = if self.im.is_negative() {
                dabs.neg()
            } else {
                dabs
            };
            BigC { re: g, im: d }
        }
    }
}

impl fmt::Debug for BigC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}{:+e}i", self.re.to_f64(), self.im.to_f64())
    }
}

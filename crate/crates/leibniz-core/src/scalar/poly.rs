//! Dense univariate polynomials over ℚ(i), written in the variable t.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Gauss, RatFun};

/// Polynomial with coefficient of tᵏ at index k; no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Gauss>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Gauss::one())
    }

    pub fn constant(c: Gauss) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The monomial t.
    pub fn var() -> Self {
        Poly {
            coeffs: vec![Gauss::zero(), Gauss::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Gauss>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Gauss {
        self.coeffs.get(k).cloned().unwrap_or_else(Gauss::zero)
    }

    pub fn leading(&self) -> Gauss {
        self.coeffs.last().cloned().unwrap_or_else(Gauss::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_constant(&self) -> Option<Gauss> {
        if self.is_constant() {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Gauss) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Monic multiple (unchanged if zero).
    pub fn monic(&self) -> Poly {
        match self.leading().inv() {
            Some(inv) => self.scale(&inv),
            None => Poly::zero(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &Gauss) -> Gauss {
        let mut acc = Gauss::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Evaluate with a rational-function argument (used by reparameterization).
    pub fn eval_ratfun(&self, x: &RatFun) -> RatFun {
        let mut acc = RatFun::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &RatFun::from_gauss(c.clone());
        }
        acc
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead_inv = d.leading().inv().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![Gauss::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let q = &rem.leading() * &lead_inv;
            let shift = rd - dd;
            quot[shift] = q.clone();
            // rem -= q * t^shift * d
            let mut sub = vec![Gauss::zero(); shift];
            sub.extend(d.coeffs.iter().map(|c| c * &q));
            rem = &rem - &Poly::from_coeffs(sub);
        }
        (Poly::from_coeffs(quot), rem)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Order of vanishing at t = 0.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Exact square root when the polynomial is a perfect square.
    ///
    /// The root's sign is normalized so that its lowest-degree nonzero
    /// coefficient has positive real part (or positive imaginary part when
    /// purely imaginary); in particular a root with nonzero constant term
    /// is chosen positive at t = 0 whenever that value is real.
    pub fn sqrt_exact(&self) -> Option<Poly> {
        use num_traits::{Signed, Zero};
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let deg = self.degree().unwrap();
        if deg % 2 != 0 {
            return None;
        }
        let half = deg / 2;
        let lead_root = self.leading().sqrt_exact()?;
        let mut root = vec![Gauss::zero(); half + 1];
        root[half] = lead_root;
        // Determine coefficients downward: compare coefficients of t^(half+k).
        for k in (0..half).rev() {
            // coefficient of t^(half+k) in root² is Σ_{i+j=half+k} r_i r_j;
            // the only term containing r_k is 2·r_half·r_k.
            let mut acc = Gauss::zero();
            for i in (k + 1)..=half {
                let j = half + k - i;
                if j > half || j <= k {
                    continue;
                }
                acc = &acc + &(&root[i] * &root[j]);
            }
            let target = self.coeff(half + k);
            let denom = &Gauss::from_i64(2) * &root[half];
            root[k] = &(&target - &acc) / &denom;
        }
        let cand = Poly::from_coeffs(root);
        if &(&cand * &cand) != self {
            return None;
        }
        let low = cand.coeff(cand.valuation().unwrap());
        let flip = if !low.re.is_zero() {
            low.re.is_negative()
        } else {
            low.im.is_negative()
        };
        Some(if flip { -&cand } else { cand })
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(&self.coeff(k) + &other.coeff(k));
        }
        Poly::from_coeffs(out)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        self + &(-other)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Gauss::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    /// Compact descending form, e.g. `t^2+2*t+1` or `(1+i)*t-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::{Signed, Zero};
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = self.coeff(k);
            if c.is_zero() {
                continue;
            }
            let complex = !c.re.is_zero() && !c.im.is_zero();
            let negative = !complex
                && ((c.im.is_zero() && c.re.is_negative())
                    || (c.re.is_zero() && c.im.is_negative()));
            let mag = if negative { -&c } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let coeff_str = if complex {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            if k == 0 {
                write!(f, "{coeff_str}")?;
            } else {
                if coeff_str != "1" {
                    write!(f, "{coeff_str}*")?;
                }
                if k == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_from_i64;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| Gauss::from_i64(c)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // t² - 1
        let b = p(&[-1, 1]); // t - 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[1, 1])), p(&[1, 1])); // gcd(t²-1, t+1) = t+1
        assert_eq!(p(&[0, 2]).gcd(&p(&[0, 0, 4])), p(&[0, 1]));
    }

    #[test]
    fn sqrt_perfect_squares() {
        // (1 - t)² = 1 - 2t + t²
        let sq = p(&[1, -2, 1]);
        assert_eq!(sq.sqrt_exact(), Some(p(&[1, -1])));
        // (-(1 - t))² picks the root positive at 0 as well
        assert_eq!(p(&[1, -2, 1]).sqrt_exact().unwrap().coeff(0), Gauss::one());
        // 4t² -> 2t
        assert_eq!(p(&[0, 0, 4]).sqrt_exact(), Some(p(&[0, 2])));
        assert_eq!(p(&[1, 1]).sqrt_exact(), None);
        assert_eq!(p(&[2, 0, 0]).sqrt_exact(), None);
        // -t² = (i t)², imaginary-part-positive normalization
        let r = p(&[0, 0, -1]).sqrt_exact().unwrap();
        assert_eq!(r.coeff(1), Gauss::i());
    }

    #[test]
    fn display_readable() {
        assert_eq!(p(&[1, -2, 1]).to_string(), "t^2-2*t+1");
        assert_eq!(p(&[0]).to_string(), "0");
        assert_eq!(p(&[-5]).to_string(), "-5");
        assert_eq!(p(&[0, 1]).to_string(), "t");
        let c = Poly::from_coeffs(vec![Gauss::zero(), Gauss::new(rat_from_i64(1), rat_from_i64(1))]);
        assert_eq!(c.to_string(), "(1+i)*t");
    }
}

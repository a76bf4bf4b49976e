//! Sparse multivariate polynomials over ℚ(i).
//!
//! Used wherever symbolic parameters or generic coordinates appear: generic
//! identity checking, automorphism families, and parameter derivatives of
//! structure constants.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Gauss, ScalarError};

/// A monomial: sorted (variable, exponent) pairs, every exponent positive.
pub type Monomial = Vec<(String, u32)>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Gauss>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Gauss::one())
    }

    pub fn constant(c: Gauss) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly { terms }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(name.to_string(), 1)], Gauss::one());
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Gauss> {
        match self.terms.len() {
            0 => Some(Gauss::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_empty() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Gauss)> {
        self.terms.iter()
    }

    fn insert_term(&mut self, m: Monomial, c: Gauss) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = &*existing + &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Gauss) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `var`.
    pub fn derivative(&self, var: &str) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            if let Some(pos) = m.iter().position(|(v, _)| v == var) {
                let e = m[pos].1;
                let mut reduced = m.clone();
                if e == 1 {
                    reduced.remove(pos);
                } else {
                    reduced[pos].1 = e - 1;
                }
                out.insert_term(reduced, c * &Gauss::from_i64(e as i64));
            }
        }
        out
    }

    /// Substitute `var` := `value`.
    pub fn subst(&self, var: &str, value: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            match m.iter().position(|(v, _)| v == var) {
                None => out.insert_term(m.clone(), c.clone()),
                Some(pos) => {
                    let e = m[pos].1;
                    let mut rest = m.clone();
                    rest.remove(pos);
                    let mut term = MultiPoly {
                        terms: BTreeMap::from([(rest, c.clone())]),
                    };
                    term = &term * &value.pow(e);
                    out = &out + &term;
                }
            }
        }
        out
    }

    /// Evaluate with every variable bound (error names the first unbound one).
    pub fn eval(&self, bindings: &BTreeMap<String, Gauss>) -> Result<Gauss, ScalarError> {
        let mut acc = Gauss::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m {
                let x = bindings
                    .get(v)
                    .ok_or_else(|| ScalarError::Unbound(v.clone()))?;
                term = &term * &x.pow_i64(*e as i64).unwrap();
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Variables appearing with nonzero coefficient, sorted.
    pub fn vars(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for m in self.terms.keys() {
            for (v, _) in m {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
        }
        out.sort();
        out
    }

    /// Replace r^e by r^(e mod 2) · relation^(e div 2) for each (r, relation)
    /// pair, where relation = r².  Repeats until no exponent exceeds 1.
    pub fn reduce_radicals(&self, table: &[(String, MultiPoly)]) -> MultiPoly {
        let mut cur = self.clone();
        loop {
            let mut changed = false;
            let mut next = MultiPoly::zero();
            'term: for (m, c) in &cur.terms {
                for (rvar, relation) in table {
                    if let Some(pos) = m.iter().position(|(v, _)| v == rvar) {
                        let e = m[pos].1;
                        if e >= 2 {
                            let mut rest = m.clone();
                            if e % 2 == 0 {
                                rest.remove(pos);
                            } else {
                                rest[pos].1 = 1;
                            }
                            let base = MultiPoly {
                                terms: BTreeMap::from([(rest, c.clone())]),
                            };
                            next = &next + &(&base * &relation.pow(e / 2));
                            changed = true;
                            continue 'term;
                        }
                    }
                }
                next.insert_term(m.clone(), c.clone());
            }
            cur = next;
            if !changed {
                return cur;
            }
        }
    }
}

fn mul_monomials(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = a.clone();
    for (v, e) in b {
        match out.iter_mut().find(|(w, _)| w == v) {
            Some(entry) => entry.1 += e,
            None => out.push((v.clone(), *e)),
        }
    }
    out.sort();
    out
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, other: &MultiPoly) -> MultiPoly {
        self + &(-other)
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(mul_monomials(ma, mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// [`Field`](super::Field) here means "exact ring with partial inverses":
/// only invertible constants have an `inv`.  That is enough to reuse the
/// structure-constant machinery with symbolic entries; elimination-style
/// operations must not be run over this scalar.
impl super::Field for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn from_gauss(g: &Gauss) -> Self {
        MultiPoly::constant(g.clone())
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
        self.as_constant()
            .and_then(|c| c.inv())
            .map(MultiPoly::constant)
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::{Signed, Zero};
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let complex = !c.re.is_zero() && !c.im.is_zero();
            let negative = !complex
                && ((c.im.is_zero() && c.re.is_negative())
                    || (c.re.is_zero() && c.im.is_negative()));
            let mag = if negative { -c } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if negative { "-" } else { "+" })?;
            }
            let coeff_str = if complex {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            if m.is_empty() {
                write!(f, "{coeff_str}")?;
            } else {
                if coeff_str != "1" {
                    write!(f, "{coeff_str}*")?;
                }
                let mono = m
                    .iter()
                    .map(|(v, e)| {
                        if *e == 1 {
                            v.clone()
                        } else {
                            format!("{v}^{e}")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*");
                write!(f, "{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MultiPoly {
        MultiPoly::var("x")
    }
    fn y() -> MultiPoly {
        MultiPoly::var("y")
    }

    #[test]
    fn arithmetic_and_subst() {
        // (x + y)² = x² + 2xy + y²
        let s = &x() + &y();
        let sq = &s * &s;
        let expect = &(&x().pow(2) + &(&(&x() * &y()).scale(&Gauss::from_i64(2)))) + &y().pow(2);
        assert_eq!(sq, expect);
        // substitute y := -x collapses it to 0
        assert!(sq.subst("y", &(-&x())).is_zero());
        assert_eq!(sq.derivative("x"), (&s).scale(&Gauss::from_i64(2)));
    }

    #[test]
    fn eval_and_unbound() {
        let p = &(&x() * &y()) - &MultiPoly::constant(Gauss::from_i64(6));
        let mut env = BTreeMap::new();
        env.insert("x".to_string(), Gauss::from_i64(2));
        env.insert("y".to_string(), Gauss::from_i64(3));
        assert_eq!(p.eval(&env).unwrap(), Gauss::zero());
        env.remove("y");
        assert!(matches!(p.eval(&env), Err(ScalarError::Unbound(v)) if v == "y"));
    }

    #[test]
    fn radical_reduction() {
        // with r² = 1 - 4a:  (1 + r)(1 - r) = 1 - r² = 4a
        let r = MultiPoly::var("sqrt#1");
        let a = MultiPoly::var("a");
        let relation = &MultiPoly::one() - &a.scale(&Gauss::from_i64(4));
        let table = vec![("sqrt#1".to_string(), relation)];
        let prod = &(&MultiPoly::one() + &r) * &(&MultiPoly::one() - &r);
        let reduced = prod.reduce_radicals(&table);
        assert_eq!(reduced, a.scale(&Gauss::from_i64(4)));
        // odd powers keep a single factor of r
        let r3 = r.pow(3).reduce_radicals(&table);
        assert_eq!(r3, &r * &table[0].1);
    }

    #[test]
    fn display_is_stable() {
        let p = &(&x().pow(2) - &(&x() * &y())) + &MultiPoly::constant(Gauss::from_i64(-3));
        assert_eq!(p.to_string(), "-3-x*y+x^2");
    }
}

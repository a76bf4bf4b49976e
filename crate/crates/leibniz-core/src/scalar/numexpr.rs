//! Symbolic coefficient expressions and their evaluation domains.
//!
//! Catalog files carry coefficients, parameter indices, and basis entries as
//! compact expression text such as `-1/2*(1+sqrt(1-4*a))` or `t/(1-t)`.  A
//! [`NumExpr`] keeps both the verbatim source (so printing round-trips
//! byte-for-byte) and a parsed tree that can be evaluated over any
//! [`EvalDomain`]: exact complex numbers, rational functions in t, sparse
//! multivariate polynomials with adjoined radicals, or arbitrary-precision
//! floating complex numbers.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::{BigC, Gauss, MultiPoly, Rat, RatFun, ScalarError};

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Sqrt(Box<Expr>),
}

/// An expression together with its verbatim source text.
#[derive(Clone, Eq)]
pub struct NumExpr {
    src: String,
    ast: Expr,
}

impl PartialEq for NumExpr {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src
    }
}

impl fmt::Display for NumExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.src)
    }
}

impl fmt::Debug for NumExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumExpr({})", self.src)
    }
}

impl NumExpr {
    pub fn parse(src: &str) -> Result<Self, ScalarError> {
        let tokens = tokenize(src)?;
        let mut parser = Parser {
            src,
            tokens,
            pos: 0,
        };
        let ast = parser.expr()?;
        if parser.pos < parser.tokens.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(NumExpr {
            src: src.to_string(),
            ast,
        })
    }

    pub fn src(&self) -> &str {
        &self.src
    }

    pub fn ast(&self) -> &Expr {
        &self.ast
    }

    /// The identifiers that occur in the expression, sorted and deduplicated.
    pub fn idents(&self) -> Vec<String> {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Int(_) => {}
                Expr::Ident(name) => {
                    if name != "i" && !out.contains(name) {
                        out.push(name.clone());
                    }
                }
                Expr::Neg(a) | Expr::Sqrt(a) | Expr::Pow(a, _) => walk(a, out),
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.ast, &mut out);
        out.sort();
        out
    }

    pub fn eval<D: EvalDomain>(&self, env: &mut D) -> Result<D::Value, ScalarError> {
        eval_expr(&self.ast, env)
    }
}

fn eval_expr<D: EvalDomain>(e: &Expr, env: &mut D) -> Result<D::Value, ScalarError> {
    match e {
        Expr::Int(v) => Ok(env.from_rat(&Rat::from_integer((*v).into()))),
        Expr::Ident(name) => {
            if name == "i" {
                Ok(env.i_unit())
            } else {
                env.var(name)
            }
        }
        Expr::Neg(a) => {
            let va = eval_expr(a, env)?;
            Ok(env.neg(&va))
        }
        Expr::Add(a, b) => {
            let va = eval_expr(a, env)?;
            let vb = eval_expr(b, env)?;
            Ok(env.add(&va, &vb))
        }
        Expr::Sub(a, b) => {
            let va = eval_expr(a, env)?;
            let vb = eval_expr(b, env)?;
            let nb = env.neg(&vb);
            Ok(env.add(&va, &nb))
        }
        Expr::Mul(a, b) => {
            let va = eval_expr(a, env)?;
            let vb = eval_expr(b, env)?;
            Ok(env.mul(&va, &vb))
        }
        Expr::Div(a, b) => {
            let va = eval_expr(a, env)?;
            let vb = eval_expr(b, env)?;
            env.div(&va, &vb)
        }
        Expr::Pow(a, e) => {
            let va = eval_expr(a, env)?;
            let mut acc = env.from_rat(&Rat::one());
            for _ in 0..e.unsigned_abs() {
                acc = env.mul(&acc, &va);
            }
            if *e < 0 {
                let one = env.from_rat(&Rat::one());
                env.div(&one, &acc)
            } else {
                Ok(acc)
            }
        }
        Expr::Sqrt(a) => {
            let va = eval_expr(a, env)?;
            env.sqrt(&va)
        }
    }
}

// ---------------------------------------------------------------------------
// Tokenizer and recursive-descent parser
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(Token, usize)>, ScalarError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        match b {
            b' ' | b'\t' => pos += 1,
            b'+' => {
                out.push((Token::Plus, pos));
                pos += 1;
            }
            b'-' => {
                out.push((Token::Minus, pos));
                pos += 1;
            }
            b'*' => {
                out.push((Token::Star, pos));
                pos += 1;
            }
            b'/' => {
                out.push((Token::Slash, pos));
                pos += 1;
            }
            b'^' => {
                out.push((Token::Caret, pos));
                pos += 1;
            }
            b'(' => {
                out.push((Token::LParen, pos));
                pos += 1;
            }
            b')' => {
                out.push((Token::RParen, pos));
                pos += 1;
            }
            b'0'..=b'9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let text = &src[start..pos];
                let v: i64 = text.parse().map_err(|_| ScalarError::Parse {
                    src: src.to_string(),
                    at: start,
                    msg: format!("integer literal {text} out of range"),
                })?;
                out.push((Token::Int(v), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = pos;
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
                {
                    pos += 1;
                }
                out.push((Token::Ident(src[start..pos].to_string()), start));
            }
            _ => {
                return Err(ScalarError::Parse {
                    src: src.to_string(),
                    at: pos,
                    msg: format!("unexpected character {:?}", src[pos..].chars().next().unwrap()),
                });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> ScalarError {
        let at = self
            .tokens
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(self.src.len());
        ScalarError::Parse {
            src: self.src.to_string(),
            at,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), ScalarError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    fn expr(&mut self) -> Result<Expr, ScalarError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ScalarError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ScalarError> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            let inner = self.factor()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        let base = self.primary()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            let negative = if self.peek() == Some(&Token::Minus) {
                self.pos += 1;
                true
            } else {
                false
            };
            match self.bump() {
                Some(Token::Int(v)) => {
                    let e = if negative { -v } else { v };
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => {
                    self.pos = self.pos.saturating_sub(1);
                    return Err(self.error("expected integer exponent after ^"));
                }
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ScalarError> {
        match self.bump() {
            Some(Token::Int(v)) => Ok(Expr::Int(v)),
            Some(Token::Ident(name)) => {
                if name == "sqrt" {
                    self.expect(Token::LParen, "expected ( after sqrt")?;
                    let inner = self.expr()?;
                    self.expect(Token::RParen, "expected ) closing sqrt")?;
                    Ok(Expr::Sqrt(Box::new(inner)))
                } else {
                    Ok(Expr::Ident(name))
                }
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "expected closing )")?;
                Ok(inner)
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.error("expected a number, identifier, or ("))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Evaluation domains
// ---------------------------------------------------------------------------

/// A domain over which expression trees can be evaluated.
///
/// Methods take `&mut self` so that stateful domains (the multivariate one
/// grows a radical table on demand) fit the same interface.
pub trait EvalDomain {
    type Value: Clone;
    fn from_rat(&mut self, r: &Rat) -> Self::Value;
    fn i_unit(&mut self) -> Self::Value;
    fn var(&mut self, name: &str) -> Result<Self::Value, ScalarError>;
    fn add(&mut self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&mut self, a: &Self::Value) -> Self::Value;
    fn mul(&mut self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn div(&mut self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, ScalarError>;
    fn sqrt(&mut self, a: &Self::Value) -> Result<Self::Value, ScalarError>;
}

/// Exact evaluation in ℚ(i): every identifier must be bound and every square
/// root must resolve exactly.
#[derive(Clone, Debug, Default)]
pub struct GaussEnv {
    bindings: BTreeMap<String, Gauss>,
}

impl GaussEnv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, name: &str, value: Gauss) -> &mut Self {
        self.bindings.insert(name.to_string(), value);
        self
    }
}

impl EvalDomain for GaussEnv {
    type Value = Gauss;

    fn from_rat(&mut self, r: &Rat) -> Gauss {
        Gauss::from_rat(r.clone())
    }
    fn i_unit(&mut self) -> Gauss {
        Gauss::i()
    }
    fn var(&mut self, name: &str) -> Result<Gauss, ScalarError> {
        self.bindings
            .get(name)
            .cloned()
            .ok_or_else(|| ScalarError::Unbound(name.to_string()))
    }
    fn add(&mut self, a: &Gauss, b: &Gauss) -> Gauss {
        a + b
    }
    fn neg(&mut self, a: &Gauss) -> Gauss {
        -a
    }
    fn mul(&mut self, a: &Gauss, b: &Gauss) -> Gauss {
        a * b
    }
    fn div(&mut self, a: &Gauss, b: &Gauss) -> Result<Gauss, ScalarError> {
        match b.inv() {
            Some(bi) => Ok(a * &bi),
            None => Err(ScalarError::Domain(a.to_string())),
        }
    }
    fn sqrt(&mut self, a: &Gauss) -> Result<Gauss, ScalarError> {
        a.sqrt_exact()
            .ok_or_else(|| ScalarError::Radical(a.to_string()))
    }
}

/// Evaluation in ℚ(i)(t).  Bind `t` explicitly (to the variable itself or to
/// a reparameterization) before evaluating.
#[derive(Clone, Debug, Default)]
pub struct RatFunEnv {
    bindings: BTreeMap<String, RatFun>,
}

impl RatFunEnv {
    /// Environment with t bound to itself.
    pub fn new() -> Self {
        let mut env = RatFunEnv {
            bindings: BTreeMap::new(),
        };
        env.bindings.insert("t".to_string(), RatFun::var());
        env
    }

    pub fn bind(&mut self, name: &str, value: RatFun) -> &mut Self {
        self.bindings.insert(name.to_string(), value);
        self
    }

    pub fn bind_gauss(&mut self, name: &str, value: Gauss) -> &mut Self {
        self.bind(name, RatFun::from_gauss(value))
    }
}

impl EvalDomain for RatFunEnv {
    type Value = RatFun;

    fn from_rat(&mut self, r: &Rat) -> RatFun {
        RatFun::from_gauss(Gauss::from_rat(r.clone()))
    }
    fn i_unit(&mut self) -> RatFun {
        RatFun::from_gauss(Gauss::i())
    }
    fn var(&mut self, name: &str) -> Result<RatFun, ScalarError> {
        self.bindings
            .get(name)
            .cloned()
            .ok_or_else(|| ScalarError::Unbound(name.to_string()))
    }
    fn add(&mut self, a: &RatFun, b: &RatFun) -> RatFun {
        a + b
    }
    fn neg(&mut self, a: &RatFun) -> RatFun {
        -a
    }
    fn mul(&mut self, a: &RatFun, b: &RatFun) -> RatFun {
        a * b
    }
    fn div(&mut self, a: &RatFun, b: &RatFun) -> Result<RatFun, ScalarError> {
        match b.inv() {
            Some(bi) => Ok(a * &bi),
            None => Err(ScalarError::Domain(a.to_string())),
        }
    }
    fn sqrt(&mut self, a: &RatFun) -> Result<RatFun, ScalarError> {
        if let Some(c) = a.as_constant() {
            if let Some(r) = c.sqrt_exact() {
                return Ok(RatFun::from_gauss(r));
            }
            return Err(ScalarError::Radical(a.to_string()));
        }
        a.sqrt_exact()
            .ok_or_else(|| ScalarError::Radical(a.to_string()))
    }
}

/// Symbolic evaluation into sparse multivariate polynomials.
///
/// Unbound identifiers become polynomial variables.  Square roots that do not
/// resolve exactly adjoin a fresh radical symbol r with the relation
/// r² = radicand; products are reduced against that relation, so an
/// expression vanishes iff its reduced form is the zero polynomial.
#[derive(Clone, Debug, Default)]
pub struct MultiPolyEnv {
    bindings: BTreeMap<String, MultiPoly>,
    radicals: Vec<(String, MultiPoly)>,
}

impl MultiPolyEnv {
    /// Fully symbolic environment: identifiers evaluate to themselves.
    pub fn symbolic() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, name: &str, value: MultiPoly) -> &mut Self {
        self.bindings.insert(name.to_string(), value);
        self
    }

    pub fn bind_gauss(&mut self, name: &str, value: Gauss) -> &mut Self {
        self.bind(name, MultiPoly::constant(value))
    }

    /// The radical relations accumulated so far, as (symbol, symbol²) pairs.
    pub fn radical_table(&self) -> &[(String, MultiPoly)] {
        &self.radicals
    }

    /// Reduce a polynomial against the accumulated radical relations.
    pub fn reduce(&self, p: &MultiPoly) -> MultiPoly {
        p.reduce_radicals(&self.radicals)
    }
}

impl EvalDomain for MultiPolyEnv {
    type Value = MultiPoly;

    fn from_rat(&mut self, r: &Rat) -> MultiPoly {
        MultiPoly::constant(Gauss::from_rat(r.clone()))
    }
    fn i_unit(&mut self) -> MultiPoly {
        MultiPoly::constant(Gauss::i())
    }
    fn var(&mut self, name: &str) -> Result<MultiPoly, ScalarError> {
        Ok(self
            .bindings
            .get(name)
            .cloned()
            .unwrap_or_else(|| MultiPoly::var(name)))
    }
    fn add(&mut self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a + b
    }
    fn neg(&mut self, a: &MultiPoly) -> MultiPoly {
        -a
    }
    fn mul(&mut self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        self.reduce(&(a * b))
    }
    fn div(&mut self, a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, ScalarError> {
        match b.as_constant() {
            Some(c) => match c.inv() {
                Some(ci) => Ok(a.scale(&ci)),
                None => Err(ScalarError::Domain(a.to_string())),
            },
            None => Err(ScalarError::Unsupported(format!(
                "division by the non-constant polynomial {b}"
            ))),
        }
    }
    fn sqrt(&mut self, a: &MultiPoly) -> Result<MultiPoly, ScalarError> {
        if let Some(c) = a.as_constant() {
            if let Some(r) = c.sqrt_exact() {
                return Ok(MultiPoly::constant(r));
            }
        }
        for (sym, relation) in &self.radicals {
            if relation == a {
                return Ok(MultiPoly::var(sym));
            }
        }
        let sym = format!("sqrt#{}", self.radicals.len() + 1);
        self.radicals.push((sym.clone(), a.clone()));
        Ok(MultiPoly::var(&sym))
    }
}

/// Arbitrary-precision floating evaluation in ℂ.
#[derive(Clone, Debug)]
pub struct BigCEnv {
    bindings: BTreeMap<String, BigC>,
    prec: u32,
}

impl BigCEnv {
    pub fn new(prec: u32) -> Self {
        BigCEnv {
            bindings: BTreeMap::new(),
            prec,
        }
    }

    pub fn bind(&mut self, name: &str, value: BigC) -> &mut Self {
        self.bindings.insert(name.to_string(), value);
        self
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }
}

impl EvalDomain for BigCEnv {
    type Value = BigC;

    fn from_rat(&mut self, r: &Rat) -> BigC {
        BigC::from_rat(r, self.prec)
    }
    fn i_unit(&mut self) -> BigC {
        BigC::i(self.prec)
    }
    fn var(&mut self, name: &str) -> Result<BigC, ScalarError> {
        self.bindings
            .get(name)
            .cloned()
            .ok_or_else(|| ScalarError::Unbound(name.to_string()))
    }
    fn add(&mut self, a: &BigC, b: &BigC) -> BigC {
        a.add(b)
    }
    fn neg(&mut self, a: &BigC) -> BigC {
        a.neg()
    }
    fn mul(&mut self, a: &BigC, b: &BigC) -> BigC {
        a.mul(b)
    }
    fn div(&mut self, a: &BigC, b: &BigC) -> Result<BigC, ScalarError> {
        if b.is_zero() {
            return Err(ScalarError::Domain(format!("{a:?}")));
        }
        Ok(a.div(b))
    }
    fn sqrt(&mut self, a: &BigC) -> Result<BigC, ScalarError> {
        Ok(a.sqrt())
    }
}

/// Evaluate an expression numerically at the given precision (bits).
pub fn num_eval(
    expr: &NumExpr,
    bindings: &[(&str, BigC)],
    prec: u32,
) -> Result<BigC, ScalarError> {
    let mut env = BigCEnv::new(prec);
    for (name, value) in bindings {
        env.bind(name, value.clone());
    }
    expr.eval(&mut env)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss_of(src: &str, binds: &[(&str, i64)]) -> Result<Gauss, ScalarError> {
        let e = NumExpr::parse(src)?;
        let mut env = GaussEnv::new();
        for (n, v) in binds {
            env.bind(n, Gauss::from_i64(*v));
        }
        e.eval(&mut env)
    }

    #[test]
    fn parse_round_trip_is_verbatim() {
        for src in [
            "-1/2*(1+sqrt(1-4*a))",
            "(4*a*(1+t^2)-1)/(4*a+t^2-1)",
            "t/(1-t)",
            "2*u-u^2",
            "u^3",
            "-t^2",
            "a/t",
        ] {
            let e = NumExpr::parse(src).unwrap();
            assert_eq!(e.to_string(), src);
        }
    }

    #[test]
    fn precedence_and_unary_minus() {
        // -t^2 parses as -(t^2)
        assert_eq!(gauss_of("-t^2", &[("t", 3)]).unwrap(), Gauss::from_i64(-9));
        assert_eq!(
            gauss_of("1-4*a", &[("a", 2)]).unwrap(),
            Gauss::from_i64(-7)
        );
        assert_eq!(gauss_of("2^3", &[]).unwrap(), Gauss::from_i64(8));
        // division is left-associative with multiplication
        assert_eq!(gauss_of("8/2*2", &[]).unwrap(), Gauss::from_i64(8));
        assert_eq!(
            gauss_of("t^-1", &[("t", 4)]).unwrap(),
            Gauss::from_rat(crate::scalar::rat_from_i64(1) / crate::scalar::rat_from_i64(4))
        );
    }

    #[test]
    fn sqrt_resolution_per_domain() {
        // exact over ℚ(i)
        assert_eq!(
            gauss_of("sqrt(1-4*a)", &[("a", -2)]).unwrap(),
            Gauss::from_i64(3)
        );
        // 1 - 4·1 = -3 is not a perfect square in ℚ(i)
        assert!(matches!(
            gauss_of("sqrt(1-4*a)", &[("a", 1)]),
            Err(ScalarError::Radical(_))
        ));
        assert!(matches!(
            gauss_of("sqrt(2)", &[]),
            Err(ScalarError::Radical(_))
        ));
        assert_eq!(gauss_of("sqrt(-4)", &[]).unwrap(), &Gauss::from_i64(2) * &Gauss::i());
        // rational functions: sqrt((1-t)^2) -> 1 - t after reparameterization
        let e = NumExpr::parse("sqrt(1-t)").unwrap();
        let mut env = RatFunEnv::new();
        let u = RatFun::var();
        let two_u = &u + &u;
        env.bind("t", &two_u - &(&u * &u)); // t := 2u - u²
        let got = e.eval(&mut env).unwrap();
        let expect = &RatFun::one() - &RatFun::var();
        assert_eq!(got, expect);
        // symbolic: sqrt(1-4*a) becomes a radical symbol squaring to 1-4a
        let mut menv = MultiPolyEnv::symbolic();
        let r = NumExpr::parse("sqrt(1-4*a)").unwrap().eval(&mut menv).unwrap();
        let sq = menv.mul(&r, &r);
        let a4 = MultiPoly::var("a").scale(&Gauss::from_i64(4));
        assert_eq!(sq, &MultiPoly::one() - &a4);
        assert_eq!(menv.radical_table().len(), 1);
        // the same radicand reuses the symbol
        let r2 = NumExpr::parse("sqrt(1-4*a)").unwrap().eval(&mut menv).unwrap();
        assert_eq!(r, r2);
        assert_eq!(menv.radical_table().len(), 1);
    }

    #[test]
    fn unbound_and_parse_errors() {
        assert!(matches!(
            gauss_of("a+b", &[("a", 1)]),
            Err(ScalarError::Unbound(v)) if v == "b"
        ));
        assert!(NumExpr::parse("1+*2").is_err());
        assert!(NumExpr::parse("(1+2").is_err());
        assert!(NumExpr::parse("sqrt 4").is_err());
        assert!(NumExpr::parse("").is_err());
        assert!(NumExpr::parse("t^a").is_err());
    }

    #[test]
    fn imaginary_unit_is_reserved() {
        assert_eq!(gauss_of("i*i", &[]).unwrap(), Gauss::from_i64(-1));
        let e = NumExpr::parse("2*i").unwrap();
        assert!(e.idents().is_empty());
    }
}

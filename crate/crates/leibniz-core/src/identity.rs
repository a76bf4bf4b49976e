//! Polynomial identities: bracketed terms, the built-in identity systems,
//! full linearization, and checking over concrete or generic elements.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::algebra::Algebra;
use crate::scalar::{Field, Gauss, MultiPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("unknown built-in identity {0:?}")]
    UnknownName(String),
    #[error("identity is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("parse error in identity text at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
}

/// A bracketed monomial: leaves are variable indices (0-based internally,
/// printed 1-based as x1, x2, …).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Term {
    Var(usize),
    Prod(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(v: usize) -> Term {
        Term::Var(v)
    }

    pub fn prod(l: Term, r: Term) -> Term {
        Term::Prod(Box::new(l), Box::new(r))
    }

    fn max_var(&self) -> usize {
        match self {
            Term::Var(v) => *v,
            Term::Prod(l, r) => l.max_var().max(r.max_var()),
        }
    }

    fn count_vars(&self, counts: &mut [usize]) {
        match self {
            Term::Var(v) => counts[*v] += 1,
            Term::Prod(l, r) => {
                l.count_vars(counts);
                r.count_vars(counts);
            }
        }
    }

    /// Relabel leaves left to right: occurrence p of variable v becomes
    /// `slots[v][p]`.
    fn relabel(&self, slots: &[Vec<usize>], seen: &mut [usize]) -> Term {
        match self {
            Term::Var(v) => {
                let p = seen[*v];
                seen[*v] += 1;
                Term::Var(slots[*v][p])
            }
            Term::Prod(l, r) => {
                let nl = l.relabel(slots, seen);
                let nr = r.relabel(slots, seen);
                Term::prod(nl, nr)
            }
        }
    }

    fn fmt_into(&self, out: &mut String) {
        match self {
            Term::Var(v) => {
                out.push('x');
                out.push_str(&(v + 1).to_string());
            }
            Term::Prod(l, r) => {
                out.push('(');
                l.fmt_into(out);
                out.push(' ');
                r.fmt_into(out);
                out.push(')');
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.fmt_into(&mut s);
        f.write_str(&s)
    }
}

/// A formal linear combination of bracketed terms, identified with the
/// identity "combination = 0".  Stored in canonical form: terms sorted,
/// like terms merged, zero coefficients dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct IdentitySpec {
    arity: usize,
    summands: Vec<(Gauss, Term)>,
}

impl IdentitySpec {
    pub fn new(arity: usize, summands: Vec<(Gauss, Term)>) -> IdentitySpec {
        let mut merged: BTreeMap<Term, Gauss> = BTreeMap::new();
        let mut arity = arity;
        for (c, t) in summands {
            arity = arity.max(t.max_var() + 1);
            let slot = merged.entry(t).or_insert_with(Gauss::zero);
            *slot = &*slot + &c;
        }
        let summands = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| (c, t))
            .collect();
        IdentitySpec { arity, summands }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn summands(&self) -> &[(Gauss, Term)] {
        &self.summands
    }

    /// True when every summand uses each of the `arity` variables exactly once.
    pub fn is_multilinear(&self) -> bool {
        self.summands.iter().all(|(_, t)| {
            let mut counts = vec![0usize; self.arity];
            t.count_vars(&mut counts);
            counts.iter().all(|&c| c == 1)
        })
    }

    /// Per-variable multiplicities if uniform across summands.
    fn homogeneous_profile(&self) -> Option<Vec<usize>> {
        let mut profile: Option<Vec<usize>> = None;
        for (_, t) in &self.summands {
            let mut counts = vec![0usize; self.arity];
            t.count_vars(&mut counts);
            match &profile {
                None => profile = Some(counts),
                Some(p) if *p == counts => {}
                Some(_) => return None,
            }
        }
        profile
    }
}

impl fmt::Display for IdentitySpec {
    /// `1*((x1 x2) x3) - 1*((x1 x3) x2) - 1*(x1 (x2 x3)) = 0`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::{Signed, Zero};
        if self.summands.is_empty() {
            return write!(f, "0 = 0");
        }
        for (pos, (c, t)) in self.summands.iter().enumerate() {
            let complex = !c.re.is_zero() && !c.im.is_zero();
            let negative = !complex
                && ((c.im.is_zero() && c.re.is_negative())
                    || (c.re.is_zero() && c.im.is_negative()));
            let mag = if negative { -c } else { c.clone() };
            if pos == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if complex {
                write!(f, "({mag})*{t}")?;
            } else {
                write!(f, "{mag}*{t}")?;
            }
        }
        write!(f, " = 0")
    }
}

impl fmt::Debug for IdentitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdentitySpec[{}]({})", self.arity, self)
    }
}

// ---------------------------------------------------------------------------
// Built-in identity systems
// ---------------------------------------------------------------------------

/// ℒ(x, y, z) = x(yz) − (xy)z + (xz)y as summands over arbitrary terms.
fn l_op(x: &Term, y: &Term, z: &Term) -> Vec<(Gauss, Term)> {
    vec![
        (
            Gauss::one(),
            Term::prod(x.clone(), Term::prod(y.clone(), z.clone())),
        ),
        (
            Gauss::from_i64(-1),
            Term::prod(Term::prod(x.clone(), y.clone()), z.clone()),
        ),
        (
            Gauss::one(),
            Term::prod(Term::prod(x.clone(), z.clone()), y.clone()),
        ),
    ]
}

/// All permutations of 0..k in lexicographic order.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, rest: &[usize], out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for (i, &v) in rest.iter().enumerate() {
            prefix.push(v);
            let mut next: Vec<usize> = rest.to_vec();
            next.remove(i);
            go(prefix, &next, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &(0..k).collect::<Vec<_>>(), &mut out);
    out
}

/// The nine built-in identity systems.
pub fn builtin(name: &str) -> Result<IdentitySpec, IdentityError> {
    let v = |i: usize| Term::Var(i);
    let spec = match name {
        "leibniz" => IdentitySpec::new(3, l_op(&v(0), &v(1), &v(2))),
        "binaryLeibniz_1" => {
            let mut s = l_op(&v(0), &v(1), &v(2));
            s.extend(l_op(&v(0), &v(2), &v(1)));
            IdentitySpec::new(3, s)
        }
        "binaryLeibniz_2" => {
            let mut s = l_op(&v(0), &v(1), &v(2));
            s.extend(l_op(&v(2), &v(1), &v(0)));
            IdentitySpec::new(3, s)
        }
        "binaryLeibniz_3" => {
            let xy = Term::prod(v(0), v(1));
            let xt = Term::prod(v(0), v(3));
            let zy = Term::prod(v(2), v(1));
            let zt = Term::prod(v(2), v(3));
            let mut s = l_op(&xy, &v(2), &v(3));
            s.extend(l_op(&xt, &v(2), &v(1)));
            s.extend(l_op(&zy, &v(0), &v(3)));
            s.extend(l_op(&zt, &v(0), &v(1)));
            IdentitySpec::new(4, s)
        }
        "monoLeibniz_lin1" => {
            let mut s = Vec::new();
            for p in permutations(3) {
                s.extend(l_op(&v(p[0]), &v(p[1]), &v(p[2])));
            }
            IdentitySpec::new(3, s)
        }
        "monoLeibniz_lin2" => {
            let mut s = Vec::new();
            for p in permutations(4) {
                let uv = Term::prod(v(p[2]), v(p[3]));
                s.extend(l_op(&v(p[0]), &v(p[1]), &uv));
            }
            IdentitySpec::new(4, s)
        }
        "anticommutative" => IdentitySpec::new(
            2,
            vec![
                (Gauss::one(), Term::prod(v(0), v(1))),
                (Gauss::one(), Term::prod(v(1), v(0))),
            ],
        ),
        "cube_left" => {
            let mut s = Vec::new();
            for p in permutations(3) {
                s.push((
                    Gauss::one(),
                    Term::prod(Term::prod(v(p[0]), v(p[1])), v(p[2])),
                ));
            }
            IdentitySpec::new(3, s)
        }
        "cube_right" => {
            let mut s = Vec::new();
            for p in permutations(3) {
                s.push((
                    Gauss::one(),
                    Term::prod(v(p[0]), Term::prod(v(p[1]), v(p[2]))),
                ));
            }
            IdentitySpec::new(3, s)
        }
        other => return Err(IdentityError::UnknownName(other.to_string())),
    };
    Ok(spec)
}

/// Canonical order of the built-in names as used by catalog verification.
pub const BUILTIN_ORDER: [&str; 8] = [
    "leibniz",
    "binaryLeibniz_1",
    "binaryLeibniz_2",
    "binaryLeibniz_3",
    "monoLeibniz_lin1",
    "monoLeibniz_lin2",
    "cube_left",
    "cube_right",
];

/// ℒ(a, a, a) = 0 on one variable (cubic source identity).
pub fn mono_source_cubic() -> IdentitySpec {
    let a = Term::Var(0);
    IdentitySpec::new(1, l_op(&a, &a, &a))
}

/// ℒ(a, a, aa) = 0 on one variable (quartic source identity).
pub fn mono_source_quartic() -> IdentitySpec {
    let a = Term::Var(0);
    let aa = Term::prod(a.clone(), a.clone());
    IdentitySpec::new(1, l_op(&a, &a, &aa))
}

// ---------------------------------------------------------------------------
// Linearization
// ---------------------------------------------------------------------------

/// Full multilinearization of a homogeneous identity: each variable of
/// multiplicity m is replaced by m fresh variables, summed over all
/// assignments of occurrences to fresh slots.
pub fn linearize(spec: &IdentitySpec) -> Result<IdentitySpec, IdentityError> {
    let profile = spec.homogeneous_profile().ok_or_else(|| {
        IdentityError::NotHomogeneous("summands have different variable multiplicities".into())
    })?;
    if spec.is_multilinear() {
        return Ok(spec.clone());
    }
    // fresh-slot blocks per original variable, in variable order
    let mut base = 0usize;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &m in &profile {
        blocks.push((base..base + m).collect());
        base += m;
    }
    let new_arity = base;
    let mut out = Vec::new();
    for (c, t) in spec.summands() {
        // all combinations of per-variable occurrence permutations
        let per_var: Vec<Vec<Vec<usize>>> = profile.iter().map(|&m| permutations(m)).collect();
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        for perms in &per_var {
            let mut next = Vec::with_capacity(stack.len() * perms.len());
            for partial in &stack {
                for (pi, _) in perms.iter().enumerate() {
                    let mut np = partial.clone();
                    np.push(pi);
                    next.push(np);
                }
            }
            stack = next;
        }
        for choice in stack {
            let slots: Vec<Vec<usize>> = choice
                .iter()
                .enumerate()
                .map(|(var, &pi)| {
                    per_var[var][pi]
                        .iter()
                        .map(|&p| blocks[var][p])
                        .collect()
                })
                .collect();
            let mut seen = vec![0usize; spec.arity()];
            out.push((c.clone(), t.relabel(&slots, &mut seen)));
        }
    }
    Ok(IdentitySpec::new(new_arity, out))
}

// ---------------------------------------------------------------------------
// Checking
// ---------------------------------------------------------------------------

/// Outcome of a multilinear basis scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    /// Lexicographically first failing basis tuple (1-based indices) and the
    /// residual vector at that tuple.
    Fail { at: Vec<usize>, value: Vec<Gauss> },
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CheckOutcome::Pass)
    }
}

fn eval_term<F: Field>(alg: &Algebra<F>, t: &Term, inputs: &[Vec<F>]) -> Vec<F> {
    match t {
        Term::Var(v) => inputs[*v].clone(),
        Term::Prod(l, r) => {
            let lv = eval_term(alg, l, inputs);
            let rv = eval_term(alg, r, inputs);
            alg.product(&lv, &rv)
        }
    }
}

/// Evaluate the identity on the given input vectors.
pub fn eval_identity<F: Field>(
    alg: &Algebra<F>,
    spec: &IdentitySpec,
    inputs: &[Vec<F>],
) -> Vec<F> {
    assert!(inputs.len() >= spec.arity(), "not enough input vectors");
    let n = alg.dim();
    let mut acc = vec![F::zero(); n];
    let mut cache: HashMap<&Term, Vec<F>> = HashMap::new();
    for (c, t) in spec.summands() {
        let val = cache
            .entry(t)
            .or_insert_with(|| eval_term(alg, t, inputs))
            .clone();
        let cf = F::from_gauss(c);
        for k in 0..n {
            acc[k] = acc[k].add(&cf.mul(&val[k]));
        }
    }
    acc
}

/// Scan all basis tuples; report the lexicographically first failure.
pub fn check_multilinear(alg: &Algebra<Gauss>, spec: &IdentitySpec) -> CheckOutcome {
    assert!(spec.is_multilinear(), "spec must be multilinear");
    let n = alg.dim();
    let m = spec.arity();
    let basis: Vec<Vec<Gauss>> = (0..n)
        .map(|i| {
            let mut v = vec![Gauss::zero(); n];
            v[i] = Gauss::one();
            v
        })
        .collect();
    let mut idx = vec![0usize; m];
    loop {
        let inputs: Vec<Vec<Gauss>> = idx.iter().map(|&i| basis[i].clone()).collect();
        let residual = eval_identity(alg, spec, &inputs);
        if residual.iter().any(|v| !v.is_zero()) {
            return CheckOutcome::Fail {
                at: idx.iter().map(|&i| i + 1).collect(),
                value: residual,
            };
        }
        // lexicographic increment
        let mut pos = m;
        loop {
            if pos == 0 {
                return CheckOutcome::Pass;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Outcome of a generic-element check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenericOutcome {
    Pass,
    /// First nonzero residual coordinate (1-based) and its polynomial.
    Fail { component: usize, residual: MultiPoly },
}

impl GenericOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, GenericOutcome::Pass)
    }
}

/// Substitute an independent generic element for every variable and demand
/// that all residual coordinates vanish identically.  `radicals` carries the
/// relations r² = radicand for any radical symbols appearing in the
/// structure constants; residuals are reduced against them before testing.
pub fn check_generic(
    alg: &Algebra<MultiPoly>,
    spec: &IdentitySpec,
    radicals: &[(String, MultiPoly)],
) -> GenericOutcome {
    let n = alg.dim();
    let inputs: Vec<Vec<MultiPoly>> = (0..spec.arity())
        .map(|v| {
            (0..n)
                .map(|i| MultiPoly::var(&format!("w{}_{}", v + 1, i + 1)))
                .collect()
        })
        .collect();
    let residual = eval_identity(alg, spec, &inputs);
    for (k, r) in residual.iter().enumerate() {
        let reduced = r.reduce_radicals(radicals);
        if !reduced.is_zero() {
            return GenericOutcome::Fail {
                component: k + 1,
                residual: reduced,
            };
        }
    }
    GenericOutcome::Pass
}

/// Generic check for an algebra with plain ℚ(i) structure constants.
pub fn check_generic_gauss(alg: &Algebra<Gauss>, spec: &IdentitySpec) -> GenericOutcome {
    let sym = alg.map(|c| MultiPoly::constant(c.clone()));
    check_generic(&sym, spec, &[])
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

/// Parse `"1*((x1 x2) x3) - 1*(x1 (x2 x3)) = 0"` style text.
pub fn parse_identity(src: &str) -> Result<IdentitySpec, IdentityError> {
    let body = src
        .trim_end()
        .strip_suffix("= 0")
        .ok_or_else(|| IdentityError::Parse {
            at: src.len(),
            msg: "identity text must end with \"= 0\"".into(),
        })?
        .trim_end();
    let bytes = body.as_bytes();
    let mut pos = 0usize;
    let mut summands = Vec::new();
    let mut first = true;
    while pos < bytes.len() {
        while pos < bytes.len() && bytes[pos] == b' ' {
            pos += 1;
        }
        if pos >= bytes.len() {
            break;
        }
        let mut sign = Gauss::one();
        if !first {
            match bytes[pos] {
                b'+' => pos += 1,
                b'-' => {
                    sign = Gauss::from_i64(-1);
                    pos += 1;
                }
                _ => {
                    return Err(IdentityError::Parse {
                        at: pos,
                        msg: "expected + or - between summands".into(),
                    })
                }
            }
            while pos < bytes.len() && bytes[pos] == b' ' {
                pos += 1;
            }
        } else if bytes[pos] == b'-' {
            sign = Gauss::from_i64(-1);
            pos += 1;
        }
        first = false;
        // coefficient text up to the '*'
        let coeff_start = pos;
        let (coeff, after) = if bytes[pos] == b'(' {
            let close = body[pos..].find(')').ok_or(IdentityError::Parse {
                at: pos,
                msg: "unclosed coefficient parenthesis".into(),
            })? + pos;
            (&body[pos + 1..close], close + 1)
        } else {
            let star = body[pos..].find('*').ok_or(IdentityError::Parse {
                at: pos,
                msg: "expected coefficient followed by *".into(),
            })? + pos;
            (&body[pos..star], star)
        };
        let c = Gauss::parse(coeff).map_err(|_| IdentityError::Parse {
            at: coeff_start,
            msg: format!("bad coefficient {coeff:?}"),
        })?;
        pos = after;
        if pos >= bytes.len() || bytes[pos] != b'*' {
            return Err(IdentityError::Parse {
                at: pos,
                msg: "expected * after coefficient".into(),
            });
        }
        pos += 1;
        let (term, next) = parse_term(body, pos)?;
        pos = next;
        summands.push((&sign * &c, term));
    }
    if summands.is_empty() {
        return Err(IdentityError::Parse {
            at: 0,
            msg: "empty identity".into(),
        });
    }
    Ok(IdentitySpec::new(0, summands))
}

fn parse_term(src: &str, mut pos: usize) -> Result<(Term, usize), IdentityError> {
    let bytes = src.as_bytes();
    while pos < bytes.len() && bytes[pos] == b' ' {
        pos += 1;
    }
    if pos >= bytes.len() {
        return Err(IdentityError::Parse {
            at: pos,
            msg: "expected a term".into(),
        });
    }
    if bytes[pos] == b'(' {
        let (left, mid) = parse_term(src, pos + 1)?;
        let mut mid = mid;
        while mid < bytes.len() && bytes[mid] == b' ' {
            mid += 1;
        }
        let (right, end) = parse_term(src, mid)?;
        let mut end = end;
        while end < bytes.len() && bytes[end] == b' ' {
            end += 1;
        }
        if end >= bytes.len() || bytes[end] != b')' {
            return Err(IdentityError::Parse {
                at: end,
                msg: "expected ) closing a product".into(),
            });
        }
        Ok((Term::prod(left, right), end + 1))
    } else if bytes[pos] == b'x' {
        let start = pos + 1;
        let mut end = start;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == start {
            return Err(IdentityError::Parse {
                at: pos,
                msg: "expected a variable index after x".into(),
            });
        }
        let v: usize = src[start..end].parse().map_err(|_| IdentityError::Parse {
            at: start,
            msg: "variable index out of range".into(),
        })?;
        if v == 0 {
            return Err(IdentityError::Parse {
                at: start,
                msg: "variable indices start at 1".into(),
            });
        }
        Ok((Term::Var(v - 1), end))
    } else {
        Err(IdentityError::Parse {
            at: pos,
            msg: "expected ( or a variable".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn filiform() -> Algebra<Gauss> {
        let mut a = Algebra::zero_table(3);
        a.set_c(0, 0, 1, Gauss::one());
        a.set_c(0, 1, 2, Gauss::one());
        a
    }

    #[test]
    fn builtin_shapes() {
        assert_eq!(builtin("leibniz").unwrap().arity(), 3);
        assert_eq!(builtin("leibniz").unwrap().summands().len(), 3);
        assert_eq!(builtin("binaryLeibniz_3").unwrap().arity(), 4);
        assert_eq!(builtin("anticommutative").unwrap().summands().len(), 2);
        assert!(matches!(
            builtin("nope"),
            Err(IdentityError::UnknownName(_))
        ));
        // canonical: construction is deterministic and merged
        assert_eq!(builtin("leibniz").unwrap(), builtin("leibniz").unwrap());
    }

    #[test]
    fn linearize_cube_gives_s3_sum() {
        // x²x := (x1 x1) x1
        let cube = IdentitySpec::new(
            1,
            vec![(
                Gauss::one(),
                Term::prod(Term::prod(Term::Var(0), Term::Var(0)), Term::Var(0)),
            )],
        );
        let lin = linearize(&cube).unwrap();
        assert_eq!(lin, builtin("cube_left").unwrap());
        // already multilinear: unchanged
        let spec = builtin("leibniz").unwrap();
        assert_eq!(linearize(&spec).unwrap(), spec);
    }

    #[test]
    fn linearize_mono_sources() {
        assert_eq!(
            linearize(&mono_source_cubic()).unwrap(),
            builtin("monoLeibniz_lin1").unwrap()
        );
        assert_eq!(
            linearize(&mono_source_quartic()).unwrap(),
            builtin("monoLeibniz_lin2").unwrap()
        );
    }

    #[test]
    fn inhomogeneous_rejected() {
        let spec = IdentitySpec::new(
            1,
            vec![
                (Gauss::one(), Term::Var(0)),
                (Gauss::one(), Term::prod(Term::Var(0), Term::Var(0))),
            ],
        );
        assert!(matches!(
            linearize(&spec),
            Err(IdentityError::NotHomogeneous(_))
        ));
    }

    #[test]
    fn multilinear_check_finds_first_witness() {
        // the filiform algebra is associative-like enough to satisfy leibniz?
        // e1(e1e1) - (e1e1)e1 + (e1e1)e1 = e1e2 = e3 ≠ 0 at (1,1,1)
        let a = filiform();
        match check_multilinear(&a, &builtin("leibniz").unwrap()) {
            CheckOutcome::Fail { at, value } => {
                assert_eq!(at, vec![1, 1, 1]);
                assert_eq!(value, vec![Gauss::zero(), Gauss::zero(), Gauss::one()]);
            }
            CheckOutcome::Pass => panic!("expected failure"),
        }
        // an abelian algebra passes everything multilinear
        let z: Algebra<Gauss> = Algebra::zero_table(2);
        for name in BUILTIN_ORDER {
            assert!(check_multilinear(&z, &builtin(name).unwrap()).passed());
        }
    }

    #[test]
    fn generic_agrees_with_multilinear() {
        let a = filiform();
        for name in BUILTIN_ORDER {
            let spec = builtin(name).unwrap();
            let ml = check_multilinear(&a, &spec).passed();
            let gen = check_generic_gauss(&a, &spec).passed();
            assert_eq!(ml, gen, "disagreement on {name}");
        }
    }

    #[test]
    fn generic_with_radical_relation() {
        // e1e1 = r e2 with r² = 2: anticommutativity fails generically,
        // and the residual exposes the radical coefficient.
        let r = MultiPoly::var("sqrt#1");
        let mut a: Algebra<MultiPoly> = Algebra::zero_table(2);
        a.set_c(0, 0, 1, r.clone());
        let radicals = vec![(
            "sqrt#1".to_string(),
            MultiPoly::constant(Gauss::from_i64(2)),
        )];
        match check_generic(&a, &builtin("anticommutative").unwrap(), &radicals) {
            GenericOutcome::Fail { component, .. } => assert_eq!(component, 2),
            GenericOutcome::Pass => panic!("expected failure"),
        }
        // x(xx) with c(1,1)=r e2, c(1,2)=r e1: (xx)x-ish products square r away
        let mut b: Algebra<MultiPoly> = Algebra::zero_table(2);
        b.set_c(0, 0, 1, r.clone());
        b.set_c(0, 1, 0, r.clone());
        // b is not nilpotent but fine for an arithmetic check: x=(w e1):
        // (xx)x = w³ r² e1·..; just confirm the reduction path runs
        let spec = mono_source_cubic();
        let _ = check_generic(&b, &spec, &radicals);
    }

    #[test]
    fn text_round_trip() {
        let printed = builtin("leibniz").unwrap().to_string();
        let parsed = parse_identity(&printed).unwrap();
        assert_eq!(parsed, builtin("leibniz").unwrap());
        assert_eq!(parsed.to_string(), printed);
        // the documented example parses to the (sign-flipped) leibniz system
        let doc = "1*((x1 x2) x3) - 1*((x1 x3) x2) - 1*(x1 (x2 x3)) = 0";
        let spec = parse_identity(doc).unwrap();
        assert_eq!(spec.arity(), 3);
        assert_eq!(spec.summands().len(), 3);
        assert_eq!(parse_identity(&spec.to_string()).unwrap(), spec);
        for name in BUILTIN_ORDER {
            let s = builtin(name).unwrap();
            assert_eq!(parse_identity(&s.to_string()).unwrap(), s);
        }
        assert!(parse_identity("1*(x1 x2)").is_err());
        assert!(parse_identity("1*(x0 x2) = 0").is_err());
    }
}

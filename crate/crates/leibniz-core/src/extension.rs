//! Central extensions A_θ and reconstruction of catalog entries from their
//! printed orbit representatives.
//!
//! An extension by cocycles θ₁…θₛ lives on A ⊕ ⟨e_{n+1},…,e_{n+s}⟩ with
//! product [x+x', y+y'] = xy + Σᵢ θᵢ(x,y)·e_{n+i}; the new coordinates
//! annihilate everything.  Orbit representatives are linear combinations of a
//! per-base ∇-dictionary (`N3 + N4 - 1/2*(1+sqrt(1-4*a))*N5`), each ∇ₖ
//! naming a Δ-combination cocycle class.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::cohomology::{
    cocycle_annihilator, is_cocycle, CohomologyError, DeltaCombo, Flavor, flatten_cocycle,
};
use crate::linalg::{LinalgError, Matrix, Subspace};
use crate::scalar::{Field, Gauss, GaussEnv, NumExpr, ScalarError};

#[derive(Debug, Error)]
pub enum ExtensionError {
    /// The cocycle at this position (0-based) violates the flavor's
    /// constraints on the base algebra.
    #[error("cocycle {index} fails the {flavor} constraints")]
    NotCocycle { index: usize, flavor: Flavor },
    #[error("nabla expression: {0}")]
    Parse(String),
    /// The expression references an index missing from the dictionary.
    #[error("nabla index {index} is not in the dictionary (size {size})")]
    UnknownNabla { index: usize, size: usize },
    /// The reconstructed extension differs from the stated entry.
    #[error("{0}")]
    Mismatch(MismatchReport),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Coefficient-by-coefficient differences between a reconstructed extension
/// and the stated catalog entry (1-based indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MismatchReport {
    pub entries: Vec<(usize, usize, usize, Gauss, Gauss)>,
}

impl fmt::Display for MismatchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} structure-constant mismatch(es):", self.entries.len())?;
        for (i, j, k, got, want) in &self.entries {
            write!(f, " c({i},{j},{k}) got {got} want {want};")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Extension builder
// ---------------------------------------------------------------------------

/// Build the central extension of `alg` by the cocycles `thetas`, checking
/// each against the flavor's constraints first.
pub fn central_extension<F: Field>(
    alg: &Algebra<F>,
    flavor: Flavor,
    thetas: &[Matrix<F>],
) -> Result<Algebra<F>, ExtensionError> {
    for (index, theta) in thetas.iter().enumerate() {
        if !is_cocycle(alg, flavor, theta) {
            return Err(ExtensionError::NotCocycle { index, flavor });
        }
    }
    let n = alg.dim();
    let s = thetas.len();
    let m = n + s;
    let mut out = Algebra::zero_table(m);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = alg.c(i, j, k).clone();
                if !v.is_zero() {
                    out.set_c(i, j, k, v);
                }
            }
            for (t, theta) in thetas.iter().enumerate() {
                let v = theta.get(i, j).clone();
                if !v.is_zero() {
                    out.set_c(i, j, n + t, v);
                }
            }
        }
    }
    Ok(out)
}

/// The split criterion: the extension has an annihilator component exactly
/// when the classes [θ₁],…,[θₛ] are linearly dependent in H².  Non-split
/// additionally requires the joint annihilator condition
/// ⋂ Ann(θᵢ) ∩ Ann(A) = 0.
pub fn is_nonsplit<F: Field>(
    alg: &Algebra<F>,
    thetas: &[Matrix<F>],
) -> Result<bool, ExtensionError> {
    let n = alg.dim();
    let nn = n * n;
    // Coboundary span.
    let b2_vectors: Vec<Vec<F>> = (0..n)
        .map(|k| {
            let mut v = vec![F::zero(); nn];
            for p in 0..n {
                for q in 0..n {
                    v[p * n + q] = alg.c(p, q, k).clone();
                }
            }
            v
        })
        .collect();
    let b2 = Subspace::from_vectors(nn, b2_vectors)?;
    let mut all = b2.basis().to_vec();
    for theta in thetas {
        all.push(flatten_cocycle(theta));
    }
    let joint = Subspace::from_vectors(nn, all)?;
    if joint.dim() != b2.dim() + thetas.len() {
        return Ok(false);
    }
    let mut ann = alg.annihilator()?;
    for theta in thetas {
        ann = ann.intersect(&cocycle_annihilator(alg, theta)?)?;
    }
    Ok(ann.dim() == 0)
}

// ---------------------------------------------------------------------------
// ∇-dictionaries and representative expressions
// ---------------------------------------------------------------------------

/// Per-base dictionary mapping ∇-indices (1-based) to Δ-combinations.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NablaDict {
    combos: Vec<DeltaCombo>,
}

impl NablaDict {
    pub fn new(combos: Vec<DeltaCombo>) -> NablaDict {
        NablaDict { combos }
    }

    pub fn len(&self) -> usize {
        self.combos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.combos.is_empty()
    }

    pub fn get(&self, index: usize) -> Result<&DeltaCombo, ExtensionError> {
        if index == 0 || index > self.combos.len() {
            return Err(ExtensionError::UnknownNabla {
                index,
                size: self.combos.len(),
            });
        }
        Ok(&self.combos[index - 1])
    }

    pub fn combos(&self) -> &[DeltaCombo] {
        &self.combos
    }
}

#[derive(Clone, Debug)]
struct NablaTerm {
    negate: bool,
    coeff: Option<NumExpr>,
    index: usize,
}

/// A parsed orbit-representative expression such as
/// `N2 + N8 + N9 + a*N10 + N11`.
#[derive(Clone, Debug)]
pub struct NablaExpr {
    src: String,
    terms: Vec<NablaTerm>,
}

impl PartialEq for NablaExpr {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src
    }
}

impl NablaExpr {
    pub fn parse(src: &str) -> Result<NablaExpr, ExtensionError> {
        let bad = |msg: String| ExtensionError::Parse(format!("{src:?}: {msg}"));
        // Split into top-level signed summands.
        let bytes = src.as_bytes();
        let mut summands: Vec<(bool, String)> = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        let mut neg = false;
        let mut seen_any = false;
        for (pos, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => {
                    depth += 1;
                    cur.push('(');
                }
                b')' => {
                    depth -= 1;
                    if depth < 0 {
                        return Err(bad(format!("unbalanced ')' at byte {pos}")));
                    }
                    cur.push(')');
                }
                b'+' | b'-' if depth == 0 && !cur.trim().is_empty() => {
                    summands.push((neg, cur.trim().to_string()));
                    cur = String::new();
                    neg = b == b'-';
                }
                b'-' if depth == 0 && cur.trim().is_empty() && !seen_any => {
                    neg = true;
                }
                _ => cur.push(b as char),
            }
            if !(b as char).is_whitespace() {
                seen_any = true;
            }
        }
        if depth != 0 {
            return Err(bad("unbalanced '('".to_string()));
        }
        if !cur.trim().is_empty() {
            summands.push((neg, cur.trim().to_string()));
        }
        if summands.is_empty() {
            return Err(bad("empty expression".to_string()));
        }
        let mut terms = Vec::new();
        for (negate, body) in summands {
            // Each summand ends in the ∇-reference `N<digits>`.
            let npos = body
                .rfind('N')
                .ok_or_else(|| bad(format!("summand {body:?} has no N-reference")))?;
            let digits = body[npos + 1..].trim();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad(format!("summand {body:?}: expected digits after 'N'")));
            }
            let index: usize = digits
                .parse()
                .map_err(|_| bad(format!("summand {body:?}: index out of range")))?;
            if index == 0 {
                return Err(bad(format!("summand {body:?}: indices are 1-based")));
            }
            let prefix = body[..npos].trim();
            let coeff = if prefix.is_empty() {
                None
            } else {
                let stripped = prefix
                    .strip_suffix('*')
                    .ok_or_else(|| bad(format!("summand {body:?}: expected '*' before 'N'")))?
                    .trim();
                Some(NumExpr::parse(stripped)?)
            };
            terms.push(NablaTerm {
                negate,
                coeff,
                index,
            });
        }
        Ok(NablaExpr {
            src: src.to_string(),
            terms,
        })
    }

    pub fn src(&self) -> &str {
        &self.src
    }

    /// ∇-indices referenced by the expression, in order of appearance.
    pub fn indices(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.index).collect()
    }

    /// Free parameters of the coefficient expressions.
    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for t in &self.terms {
            if let Some(c) = &t.coeff {
                out.extend(c.idents());
            }
        }
        out
    }

    /// Evaluate against a dictionary with parameters bound to exact scalars.
    pub fn eval(
        &self,
        dict: &NablaDict,
        bindings: &[(String, Gauss)],
    ) -> Result<DeltaCombo, ExtensionError> {
        let mut env = GaussEnv::new();
        for (name, value) in bindings {
            env.bind(name, value.clone());
        }
        let mut out = DeltaCombo::new();
        for term in &self.terms {
            let mut c = match &term.coeff {
                Some(expr) => expr.eval(&mut env)?,
                None => Gauss::one(),
            };
            if term.negate {
                c = -&c;
            }
            out = out.add(&dict.get(term.index)?.scale(&c));
        }
        Ok(out)
    }
}

impl fmt::Display for NablaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.src)
    }
}

// ---------------------------------------------------------------------------
// Reconstruction
// ---------------------------------------------------------------------------

/// Exact coefficient-by-coefficient comparison of two structure tensors.
pub fn compare_tables(got: &Algebra<Gauss>, want: &Algebra<Gauss>) -> MismatchReport {
    let mut entries = Vec::new();
    if got.dim() != want.dim() {
        return MismatchReport {
            entries: vec![(0, 0, 0, Gauss::from_i64(got.dim() as i64), Gauss::from_i64(want.dim() as i64))],
        };
    }
    let n = got.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if got.c(i, j, k) != want.c(i, j, k) {
                    entries.push((
                        i + 1,
                        j + 1,
                        k + 1,
                        got.c(i, j, k).clone(),
                        want.c(i, j, k).clone(),
                    ));
                }
            }
        }
    }
    MismatchReport { entries }
}

/// Evaluate the representative over the dictionary, extend the base by the
/// resulting cocycle, and demand exact equality with `target`.  Returns the
/// extension on success; mismatch is an error carrying the full report.
pub fn reconstruct_catalog_entry(
    base: &Algebra<Gauss>,
    dict: &NablaDict,
    rep: &NablaExpr,
    bindings: &[(String, Gauss)],
    flavor: Flavor,
    target: &Algebra<Gauss>,
) -> Result<Algebra<Gauss>, ExtensionError> {
    let theta = rep.eval(dict, bindings)?.to_matrix(base.dim())?;
    let ext = central_extension(base, flavor, &[theta])?;
    let report = compare_tables(&ext, target);
    if !report.entries.is_empty() {
        return Err(ExtensionError::Mismatch(report));
    }
    Ok(ext)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n3_4dim() -> Algebra<Gauss> {
        let mut a = Algebra::zero_table(4);
        a.set_c(0, 1, 2, Gauss::one());
        a.set_c(1, 0, 2, Gauss::from_i64(-1));
        a
    }

    fn n_01() -> Algebra<Gauss> {
        let mut a = Algebra::zero_table(3);
        a.set_c(0, 0, 1, Gauss::one());
        a
    }

    fn b_01() -> Algebra<Gauss> {
        let mut a = Algebra::zero_table(5);
        a.set_c(0, 1, 2, Gauss::one());
        a.set_c(1, 0, 2, Gauss::from_i64(-1));
        a.set_c(2, 3, 4, Gauss::one());
        a.set_c(3, 2, 4, Gauss::from_i64(-1));
        a
    }

    #[test]
    fn extension_examples() {
        let base = n3_4dim();
        let theta = DeltaCombo::parse("D34-D43").unwrap().to_matrix(4).unwrap();
        let ext = central_extension(&base, Flavor::BinaryLeibniz, &[theta]).unwrap();
        assert!(compare_tables(&ext, &b_01()).entries.is_empty());

        let base = n_01();
        let theta = DeltaCombo::parse("D23").unwrap().to_matrix(3).unwrap();
        let ext = central_extension(&base, Flavor::MonoLeibniz, &[theta]).unwrap();
        let mut m_01 = Algebra::zero_table(4);
        m_01.set_c(0, 0, 1, Gauss::one());
        m_01.set_c(1, 2, 3, Gauss::one());
        assert!(compare_tables(&ext, &m_01).entries.is_empty());

        // Zero cocycle: split extension, the new vector annihilates and the
        // quotient recovers the base.
        let zero = Matrix::zeros(3, 3);
        let split = central_extension(&n_01(), Flavor::Leibniz, &[zero]).unwrap();
        assert_eq!(split.dim(), 4);
        let ann = split.annihilator().unwrap();
        assert!(ann.contains(&split.basis_vec(3)).unwrap());
    }

    #[test]
    fn non_cocycles_are_rejected() {
        let base = n3_4dim();
        let d13 = DeltaCombo::parse("D13").unwrap().to_matrix(4).unwrap();
        assert!(matches!(
            central_extension(&base, Flavor::BinaryLeibniz, &[d13]),
            Err(ExtensionError::NotCocycle {
                index: 0,
                flavor: Flavor::BinaryLeibniz
            })
        ));
        // Δ34 − Δ43 is a binary but not a Leibniz cocycle on this base.
        let theta = DeltaCombo::parse("D34-D43").unwrap().to_matrix(4).unwrap();
        assert!(matches!(
            central_extension(&base, Flavor::Leibniz, &[theta]),
            Err(ExtensionError::NotCocycle { index: 0, .. })
        ));
    }

    #[test]
    fn quotient_recovers_base() {
        let base = n3_4dim();
        let theta = DeltaCombo::parse("D34-D43").unwrap().to_matrix(4).unwrap();
        let ext = central_extension(&base, Flavor::BinaryLeibniz, &[theta]).unwrap();
        let ideal = Subspace::from_vectors(5, vec![ext.basis_vec(4)]).unwrap();
        let back = ext.quotient(&ideal).unwrap();
        assert!(compare_tables(&back, &base).entries.is_empty());
    }

    #[test]
    fn nonsplit_criterion() {
        let base = n3_4dim();
        let theta = DeltaCombo::parse("D34-D43").unwrap().to_matrix(4).unwrap();
        assert!(is_nonsplit(&base, &[theta]).unwrap());

        // A coboundary class is dependent, hence split.
        let mut cb = Matrix::zeros(4, 4);
        cb.set(0, 1, Gauss::one());
        cb.set(1, 0, Gauss::from_i64(-1));
        assert!(!is_nonsplit(&base, &[cb]).unwrap());
        assert!(!is_nonsplit(&base, &[Matrix::zeros(4, 4)]).unwrap());
    }

    #[test]
    fn nabla_expressions_parse_and_evaluate() {
        // Dictionary fragment of the 3-dimensional base with parameter a.
        let dict = NablaDict::new(
            ["D12", "D21", "D22", "D31+D32", "D32"]
                .iter()
                .map(|s| DeltaCombo::parse(s).unwrap())
                .collect(),
        );
        let rep = NablaExpr::parse("N4 - 1/2*(1+sqrt(1-4*a))*N5").unwrap();
        assert_eq!(rep.indices(), vec![4, 5]);
        assert_eq!(rep.params().into_iter().collect::<Vec<_>>(), vec!["a"]);
        // At a = -2 the radical is 3, so the N5 coefficient is -2.
        let binding = [("a".to_string(), Gauss::from_i64(-2))];
        let combo = rep.eval(&dict, &binding).unwrap();
        assert_eq!(combo.to_string(), "D31 - D32");

        let rep = NablaExpr::parse("N1+N4+i*N5").unwrap();
        let combo = rep.eval(&dict, &[]).unwrap();
        assert_eq!(combo.to_string(), "D12 + D31 + (1+i)*D32");

        assert!(NablaExpr::parse("").is_err());
        assert!(NablaExpr::parse("N0").is_err());
        assert!(NablaExpr::parse("a N4").is_err());
        assert!(matches!(
            NablaExpr::parse("N9").unwrap().eval(&dict, &[]),
            Err(ExtensionError::UnknownNabla { index: 9, size: 5 })
        ));
    }

    #[test]
    fn reconstruction_matches_and_reports() {
        let base = n3_4dim();
        let dict = NablaDict::new(
            [
                "D11", "D12", "D13-D31", "D14", "D22", "D23-D32", "D24", "D41", "D42", "D44",
                "D34-D43",
            ]
            .iter()
            .map(|s| DeltaCombo::parse(s).unwrap())
            .collect(),
        );
        let rep = NablaExpr::parse("N11").unwrap();
        let ext = reconstruct_catalog_entry(
            &base,
            &dict,
            &rep,
            &[],
            Flavor::BinaryLeibniz,
            &b_01(),
        )
        .unwrap();
        assert_eq!(ext.dim(), 5);

        // Wrong target: every differing coefficient is reported.
        let mut wrong = b_01();
        wrong.set_c(3, 2, 4, Gauss::one());
        match reconstruct_catalog_entry(&base, &dict, &rep, &[], Flavor::BinaryLeibniz, &wrong) {
            Err(ExtensionError::Mismatch(report)) => {
                assert_eq!(
                    report.entries,
                    vec![(4, 3, 5, Gauss::from_i64(-1), Gauss::one())]
                );
            }
            other => panic!("expected mismatch, got {other:?}"),
        }
    }
}

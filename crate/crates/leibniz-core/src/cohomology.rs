//! Second cohomology of a finite-dimensional algebra relative to an
//! identity flavor.
//!
//! A cocycle is a bilinear form θ, stored as the n×n matrix with
//! `θ[p][q] = θ(e_{p+1}, e_{q+1})` and flattened row-major when treated as a
//! vector.  For a multilinear identity Σ cₛ·Tₛ = 0 each summand Tₛ is a
//! product (Lₛ Rₛ); on a central extension with product xy + θ(x,y) the new
//! coordinate of Tₛ evaluates to θ(Lₛ, Rₛ) with both factors evaluated in the
//! base algebra (the new coordinates annihilate everything).  The cocycle
//! space of a flavor is therefore the common kernel of the rows
//!
//! `row[(p,q)] = Σₛ cₛ · (Lₛ)ₚ (Rₛ)_q`
//!
//! collected over every basis tuple of every defining identity of the
//! flavor, with no symmetry reduction.  Coboundaries are spanned by
//! `δf_k(x, y) = (xy)_k`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::Algebra;
use crate::identity::{builtin, IdentitySpec, Term};
use crate::linalg::{LinalgError, Matrix, Subspace};
use crate::scalar::{Field, Gauss, ScalarError};

#[derive(Debug, Error)]
pub enum CohomologyError {
    /// The supplied matrix is not an invertible homomorphism of the algebra.
    #[error("matrix is not an automorphism of the algebra")]
    NotAutomorphism,
    /// The cocycle is a coboundary, so its cohomology class is zero.
    #[error("cocycle class is zero in H^2")]
    ZeroClass,
    #[error("delta combination: {0}")]
    BadDelta(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

// ---------------------------------------------------------------------------
// Flavors
// ---------------------------------------------------------------------------

/// Which system of identities the cocycles must linearize.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Leibniz,
    BinaryLeibniz,
    MonoLeibniz,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Leibniz, Flavor::BinaryLeibniz, Flavor::MonoLeibniz];

    /// Short code used in catalog files and CLI flags.
    pub fn code(&self) -> &'static str {
        match self {
            Flavor::Leibniz => "l",
            Flavor::BinaryLeibniz => "bl",
            Flavor::MonoLeibniz => "ml",
        }
    }

    pub fn parse(s: &str) -> Option<Flavor> {
        match s.trim().to_ascii_lowercase().as_str() {
            "l" | "leibniz" => Some(Flavor::Leibniz),
            "bl" | "binary" | "binaryleibniz" => Some(Flavor::BinaryLeibniz),
            "ml" | "mono" | "monoleibniz" => Some(Flavor::MonoLeibniz),
            _ => None,
        }
    }

    /// Names of the defining identities whose linearizations cut out Z².
    pub fn identity_names(&self) -> &'static [&'static str] {
        match self {
            Flavor::Leibniz => &["leibniz"],
            Flavor::BinaryLeibniz => &["binaryLeibniz_1", "binaryLeibniz_2", "binaryLeibniz_3"],
            Flavor::MonoLeibniz => &["monoLeibniz_lin1", "monoLeibniz_lin2"],
        }
    }

    fn specs(&self) -> Vec<IdentitySpec> {
        self.identity_names()
            .iter()
            .map(|n| builtin(n).expect("built-in identity"))
            .collect()
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

// ---------------------------------------------------------------------------
// Constraint assembly
// ---------------------------------------------------------------------------

fn eval_term_on_basis<F: Field>(alg: &Algebra<F>, t: &Term, tuple: &[usize]) -> Vec<F> {
    match t {
        Term::Var(v) => alg.basis_vec(tuple[*v]),
        Term::Prod(l, r) => {
            let lv = eval_term_on_basis(alg, l, tuple);
            let rv = eval_term_on_basis(alg, r, tuple);
            alg.product(&lv, &rv)
        }
    }
}

/// The linear constraint on the n² entries of θ contributed by one identity
/// at one basis tuple.
fn theta_row<F: Field>(alg: &Algebra<F>, spec: &IdentitySpec, tuple: &[usize]) -> Vec<F> {
    let n = alg.dim();
    let mut row = vec![F::zero(); n * n];
    for (coeff, term) in spec.summands() {
        let (l, r) = match term {
            Term::Prod(l, r) => (l.as_ref(), r.as_ref()),
            // A degree-one summand has no product, hence no θ contribution.
            Term::Var(_) => continue,
        };
        let lv = eval_term_on_basis(alg, l, tuple);
        let rv = eval_term_on_basis(alg, r, tuple);
        let cf = F::from_gauss(coeff);
        for p in 0..n {
            if lv[p].is_zero() {
                continue;
            }
            let cl = cf.mul(&lv[p]);
            for q in 0..n {
                if rv[q].is_zero() {
                    continue;
                }
                row[p * n + q] = row[p * n + q].add(&cl.mul(&rv[q]));
            }
        }
    }
    row
}

fn for_each_tuple(n: usize, arity: usize, mut f: impl FnMut(&[usize])) {
    let mut tuple = vec![0usize; arity];
    loop {
        f(&tuple);
        let mut pos = arity;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

fn flavor_rows<F: Field>(alg: &Algebra<F>, flavor: Flavor) -> Vec<Vec<F>> {
    let n = alg.dim();
    let mut rows = Vec::new();
    for spec in flavor.specs() {
        for_each_tuple(n, spec.arity(), |tuple| {
            let row = theta_row(alg, &spec, tuple);
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(row);
            }
        });
    }
    rows
}

fn kernel_subspace<F: Field>(
    ambient: usize,
    rows: Vec<Vec<F>>,
) -> Result<Subspace<F>, CohomologyError> {
    if rows.is_empty() {
        return Ok(Subspace::full(ambient));
    }
    let m = Matrix::from_rows(rows)?;
    Ok(Subspace::from_vectors(ambient, m.kernel_basis())?)
}

/// Flattened coboundaries δf_k, `(δf_k)[p][q] = c_{pq}^k`, for k = 1..n.
fn coboundary_vectors<F: Field>(alg: &Algebra<F>) -> Vec<Vec<F>> {
    let n = alg.dim();
    (0..n)
        .map(|k| {
            let mut v = vec![F::zero(); n * n];
            for p in 0..n {
                for q in 0..n {
                    v[p * n + q] = alg.c(p, q, k).clone();
                }
            }
            v
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Cocycle spaces
// ---------------------------------------------------------------------------

/// Z², B², canonical quotient representatives and the Leibniz-compatible
/// subspace for one algebra and one flavor.  All subspaces live in the
/// flattened n²-dimensional space of bilinear forms.
#[derive(Clone, Debug)]
pub struct CocycleSpace<F: Field> {
    flavor: Flavor,
    z2: Subspace<F>,
    b2: Subspace<F>,
    h2reps: Vec<Vec<F>>,
    leibniz_sub: Subspace<F>,
}

impl<F: Field> CocycleSpace<F> {
    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn z2(&self) -> &Subspace<F> {
        &self.z2
    }

    pub fn b2(&self) -> &Subspace<F> {
        &self.b2
    }

    /// Canonical coset representatives completing B² to Z².
    pub fn h2_reps(&self) -> &[Vec<F>] {
        &self.h2reps
    }

    pub fn h2_dim(&self) -> usize {
        self.z2.dim() - self.b2.dim()
    }

    /// Z²_L ∩ Z²_flavor (equals Z² itself for the Leibniz flavor).
    pub fn leibniz_sub(&self) -> &Subspace<F> {
        &self.leibniz_sub
    }
}

/// Compute the cocycle space of `alg` for `flavor`.
pub fn cocycle_space<F: Field>(
    alg: &Algebra<F>,
    flavor: Flavor,
) -> Result<CocycleSpace<F>, CohomologyError> {
    let nn = alg.dim() * alg.dim();
    let z2 = kernel_subspace(nn, flavor_rows(alg, flavor))?;
    let b2 = Subspace::from_vectors(nn, coboundary_vectors(alg))?;
    let h2reps = z2.quotient_reps(&b2)?;
    let leibniz_sub = if flavor == Flavor::Leibniz {
        z2.clone()
    } else {
        let z2_l = kernel_subspace(nn, flavor_rows(alg, Flavor::Leibniz))?;
        z2.intersect(&z2_l)?
    };
    Ok(CocycleSpace {
        flavor,
        z2,
        b2,
        h2reps,
        leibniz_sub,
    })
}

/// Direct membership test θ ∈ Z²_flavor without assembling the kernel.
pub fn is_cocycle<F: Field>(alg: &Algebra<F>, flavor: Flavor, theta: &Matrix<F>) -> bool {
    let n = alg.dim();
    if theta.nrows() != n || theta.ncols() != n {
        return false;
    }
    let mut ok = true;
    for spec in flavor.specs() {
        if !ok {
            break;
        }
        for_each_tuple(n, spec.arity(), |tuple| {
            if !ok {
                return;
            }
            let row = theta_row(alg, &spec, tuple);
            let mut acc = F::zero();
            for p in 0..n {
                for q in 0..n {
                    let r = &row[p * n + q];
                    if !r.is_zero() {
                        acc = acc.add(&r.mul(theta.get(p, q)));
                    }
                }
            }
            if !acc.is_zero() {
                ok = false;
            }
        });
    }
    ok
}

/// True iff θ satisfies the Leibniz cocycle condition
/// θ(xy, z) = θ(xz, y) + θ(x, yz).
pub fn is_leibniz_compatible<F: Field>(alg: &Algebra<F>, theta: &Matrix<F>) -> bool {
    is_cocycle(alg, Flavor::Leibniz, theta)
}

// ---------------------------------------------------------------------------
// Annihilator, pullback, T₁
// ---------------------------------------------------------------------------

/// Ann(θ) = {x : θ(x, A) = θ(A, x) = 0}.
pub fn cocycle_annihilator<F: Field>(
    alg: &Algebra<F>,
    theta: &Matrix<F>,
) -> Result<Subspace<F>, CohomologyError> {
    let n = alg.dim();
    if theta.nrows() != n || theta.ncols() != n {
        return Err(LinalgError::DimensionMismatch(format!(
            "cocycle is {}x{}, algebra dimension is {}",
            theta.nrows(),
            theta.ncols(),
            n
        ))
        .into());
    }
    // θ(e_i, x) = (θ x)_i and θ(x, e_j) = (θᵀ x)_j, so Ann(θ) is the common
    // kernel of θ and θᵀ.
    let mut rows: Vec<Vec<F>> = (0..n).map(|i| theta.row(i).to_vec()).collect();
    let tt = theta.transpose();
    rows.extend((0..n).map(|i| tt.row(i).to_vec()));
    kernel_subspace(n, rows)
}

/// True iff `phi` is an invertible endomorphism with
/// φ(e_i)·φ(e_j) = φ(e_i e_j); columns are the images of basis vectors.
pub fn is_automorphism<F: Field>(
    alg: &Algebra<F>,
    phi: &Matrix<F>,
) -> Result<bool, CohomologyError> {
    let n = alg.dim();
    if phi.nrows() != n || phi.ncols() != n {
        return Err(LinalgError::DimensionMismatch(format!(
            "automorphism candidate is {}x{}, algebra dimension is {}",
            phi.nrows(),
            phi.ncols(),
            n
        ))
        .into());
    }
    if phi.inverse().is_none() {
        return Ok(false);
    }
    let cols: Vec<Vec<F>> = (0..n).map(|j| phi.col(j)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = alg.product(&cols[i], &cols[j]);
            let cvec: Vec<F> = (0..n).map(|k| alg.c(i, j, k).clone()).collect();
            let rhs = phi.mul_vec(&cvec)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pullback (φθ)(x, y) = θ(φx, φy), i.e. φᵀ θ φ.
pub fn cocycle_pullback<F: Field>(
    alg: &Algebra<F>,
    phi: &Matrix<F>,
    theta: &Matrix<F>,
) -> Result<Matrix<F>, CohomologyError> {
    if !is_automorphism(alg, phi)? {
        return Err(CohomologyError::NotAutomorphism);
    }
    Ok(phi.transpose().mul(&theta.mul(phi)?)?)
}

/// Flatten an n×n cocycle matrix row-major.
pub fn flatten_cocycle<F: Field>(theta: &Matrix<F>) -> Vec<F> {
    let mut out = Vec::with_capacity(theta.nrows() * theta.ncols());
    for i in 0..theta.nrows() {
        out.extend_from_slice(theta.row(i));
    }
    out
}

/// Rebuild an n×n cocycle matrix from its flattened vector.
pub fn unflatten_cocycle<F: Field>(n: usize, v: &[F]) -> Matrix<F> {
    Matrix::from_fn(n, n, |i, j| v[i * n + j].clone())
}

/// T₁ membership: the one-dimensional span ⟨θ⟩ has trivial joint annihilator
/// with the algebra, Ann(θ) ∩ Ann(A) = 0.  Errors with `ZeroClass` when θ is
/// a coboundary (its class is not a point of the Grassmannian of H²).
pub fn in_t1<F: Field>(alg: &Algebra<F>, theta: &Matrix<F>) -> Result<bool, CohomologyError> {
    let nn = alg.dim() * alg.dim();
    let b2 = Subspace::from_vectors(nn, coboundary_vectors(alg))?;
    if b2.contains(&flatten_cocycle(theta))? {
        return Err(CohomologyError::ZeroClass);
    }
    let ann_theta = cocycle_annihilator(alg, theta)?;
    let ann_alg = alg.annihilator().map_err(|_| {
        CohomologyError::Linalg(LinalgError::DimensionMismatch(
            "annihilator computation failed".to_string(),
        ))
    })?;
    Ok(ann_theta.intersect(&ann_alg)?.dim() == 0)
}

// ---------------------------------------------------------------------------
// Δ-combinations
// ---------------------------------------------------------------------------

/// A linear combination of the basis forms Δ_ij (Δ_ij(e_l, e_m) = δ_il δ_jm),
/// kept with 1-based indices.  Prints as `D34 - D43`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaCombo {
    terms: BTreeMap<(usize, usize), Gauss>,
}

impl DeltaCombo {
    pub fn new() -> DeltaCombo {
        DeltaCombo {
            terms: BTreeMap::new(),
        }
    }

    pub fn delta(i: usize, j: usize) -> DeltaCombo {
        let mut d = DeltaCombo::new();
        d.add_term(i, j, Gauss::one());
        d
    }

    pub fn add_term(&mut self, i: usize, j: usize, coeff: Gauss) {
        assert!(i >= 1 && j >= 1, "delta indices are 1-based");
        let entry = self.terms.entry((i, j)).or_insert_with(Gauss::zero);
        *entry = &*entry + &coeff;
        if self.terms[&(i, j)].is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Gauss)> {
        self.terms.iter()
    }

    /// Largest basis index mentioned (0 for the zero combination).
    pub fn max_index(&self) -> usize {
        self.terms
            .keys()
            .map(|&(i, j)| i.max(j))
            .max()
            .unwrap_or(0)
    }

    /// Scale every coefficient.
    pub fn scale(&self, c: &Gauss) -> DeltaCombo {
        let mut out = DeltaCombo::new();
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, c * v);
        }
        out
    }

    pub fn add(&self, other: &DeltaCombo) -> DeltaCombo {
        let mut out = self.clone();
        for (&(i, j), v) in &other.terms {
            out.add_term(i, j, v.clone());
        }
        out
    }

    /// The n×n cocycle matrix of this combination.
    pub fn to_matrix(&self, n: usize) -> Result<Matrix<Gauss>, CohomologyError> {
        if self.max_index() > n {
            return Err(CohomologyError::BadDelta(format!(
                "index {} exceeds dimension {}",
                self.max_index(),
                n
            )));
        }
        let mut m = Matrix::zeros(n, n);
        for (&(i, j), v) in &self.terms {
            m.set(i - 1, j - 1, v.clone());
        }
        Ok(m)
    }

    /// Flattened row-major vector of length n².
    pub fn to_vec(&self, n: usize) -> Result<Vec<Gauss>, CohomologyError> {
        Ok(flatten_cocycle(&self.to_matrix(n)?))
    }

    pub fn from_matrix(m: &Matrix<Gauss>) -> DeltaCombo {
        let mut d = DeltaCombo::new();
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                if !m.get(i, j).is_zero() {
                    d.add_term(i + 1, j + 1, m.get(i, j).clone());
                }
            }
        }
        d
    }

    /// Parse `D34 - D43`, `D31+D32`, `2*D11 - 1/2*D22`, `i*D12`.
    pub fn parse(src: &str) -> Result<DeltaCombo, CohomologyError> {
        let bytes = src.as_bytes();
        let bad = |at: usize, msg: &str| {
            CohomologyError::BadDelta(format!("{src:?} at byte {at}: {msg}"))
        };
        let mut pos = 0usize;
        let mut out = DeltaCombo::new();
        let mut nterms = 0usize;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && (bytes[*pos] == b' ' || bytes[*pos] == b'\t') {
                *pos += 1;
            }
        };
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(bad(pos, "empty combination"));
        }
        while pos < bytes.len() {
            let mut sign = Gauss::one();
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -&sign;
                }
                pos += 1;
                skip_ws(&mut pos);
            } else if nterms > 0 {
                return Err(bad(pos, "expected + or - between terms"));
            }
            // Optional coefficient up to a top-level '*'.
            let mut coeff = sign;
            if pos < bytes.len() && bytes[pos] != b'D' {
                let start = pos;
                let mut depth = 0i32;
                while pos < bytes.len() {
                    match bytes[pos] {
                        b'(' => depth += 1,
                        b')' => depth -= 1,
                        b'*' if depth == 0 => break,
                        _ => {}
                    }
                    pos += 1;
                }
                if pos == bytes.len() {
                    return Err(bad(start, "coefficient without '*D..' term"));
                }
                let mut lit = src[start..pos].trim();
                if lit.starts_with('(') && lit.ends_with(')') {
                    lit = lit[1..lit.len() - 1].trim();
                }
                coeff = &coeff * &Gauss::parse(lit)?;
                pos += 1; // consume '*'
                skip_ws(&mut pos);
            }
            if pos >= bytes.len() || bytes[pos] != b'D' {
                return Err(bad(pos, "expected 'D' term"));
            }
            pos += 1;
            if pos + 2 > bytes.len()
                || !bytes[pos].is_ascii_digit()
                || !bytes[pos + 1].is_ascii_digit()
            {
                return Err(bad(pos, "expected two index digits after 'D'"));
            }
            let i = (bytes[pos] - b'0') as usize;
            let j = (bytes[pos + 1] - b'0') as usize;
            pos += 2;
            if i == 0 || j == 0 {
                return Err(bad(pos - 2, "indices are 1-based"));
            }
            out.add_term(i, j, coeff);
            nterms += 1;
            skip_ws(&mut pos);
        }
        Ok(out)
    }
}

impl Default for DeltaCombo {
    fn default() -> Self {
        DeltaCombo::new()
    }
}

impl fmt::Display for DeltaCombo {
    /// `D34 - D43`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::{One, Signed, Zero};
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (&(i, j), c)) in self.terms.iter().enumerate() {
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
            let unit = mag.im.is_zero() && mag.re.is_one();
            if unit {
                write!(f, "D{i}{j}")?;
            } else if complex {
                write!(f, "({mag})*D{i}{j}")?;
            } else {
                write!(f, "{mag}*D{i}{j}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n_01() -> Algebra<Gauss> {
        // e1 e1 = e2 in dimension 3.
        let mut a = Algebra::zero_table(3);
        a.set_c(0, 0, 1, Gauss::one());
        a
    }

    fn n3_4dim() -> Algebra<Gauss> {
        // e1 e2 = e3, e2 e1 = -e3 in dimension 4.
        let mut a = Algebra::zero_table(4);
        a.set_c(0, 1, 2, Gauss::one());
        a.set_c(1, 0, 2, Gauss::from_i64(-1));
        a
    }

    fn dims(alg: &Algebra<Gauss>, flavor: Flavor) -> (usize, usize, usize) {
        let cs = cocycle_space(alg, flavor).unwrap();
        (cs.z2().dim(), cs.b2().dim(), cs.h2_dim())
    }

    #[test]
    fn abelian_has_no_constraints() {
        let a: Algebra<Gauss> = Algebra::zero_table(3);
        for flavor in Flavor::ALL {
            let cs = cocycle_space(&a, flavor).unwrap();
            assert_eq!(cs.z2().dim(), 9);
            assert_eq!(cs.b2().dim(), 0);
            assert_eq!(cs.h2_dim(), 9);
        }
    }

    #[test]
    fn base_algebra_dimensions() {
        let a = n_01();
        assert_eq!(dims(&a, Flavor::Leibniz), (5, 1, 4));
        assert_eq!(dims(&a, Flavor::BinaryLeibniz), (5, 1, 4));
        assert_eq!(dims(&a, Flavor::MonoLeibniz), (6, 1, 5));

        let b = n3_4dim();
        assert_eq!(dims(&b, Flavor::Leibniz), (11, 1, 10));
        assert_eq!(dims(&b, Flavor::BinaryLeibniz), (12, 1, 11));
        assert_eq!(dims(&b, Flavor::MonoLeibniz), (16, 1, 15));
    }

    #[test]
    fn leibniz_space_sits_inside_both_flavors() {
        for alg in [n_01(), n3_4dim()] {
            let nn = alg.dim() * alg.dim();
            let l = cocycle_space(&alg, Flavor::Leibniz).unwrap();
            for flavor in [Flavor::BinaryLeibniz, Flavor::MonoLeibniz] {
                let cs = cocycle_space(&alg, flavor).unwrap();
                assert!(cs.z2().contains_subspace(l.z2()).unwrap());
                assert_eq!(cs.leibniz_sub().dim(), l.z2().dim());
            }
            // Coboundaries are cocycles for every flavor.
            for flavor in Flavor::ALL {
                let cs = cocycle_space(&alg, flavor).unwrap();
                assert!(cs.z2().contains_subspace(cs.b2()).unwrap());
                let _ = nn;
            }
        }
    }

    #[test]
    fn annihilator_examples() {
        let b = n3_4dim();
        let theta = DeltaCombo::parse("D34 - D43").unwrap().to_matrix(4).unwrap();
        let ann = cocycle_annihilator(&b, &theta).unwrap();
        assert_eq!(ann.dim(), 2);
        assert!(ann.contains(&b.basis_vec(0)).unwrap());
        assert!(ann.contains(&b.basis_vec(1)).unwrap());

        let zero = Matrix::zeros(4, 4);
        assert_eq!(cocycle_annihilator(&b, &zero).unwrap().dim(), 4);

        let a = n_01();
        let d23 = DeltaCombo::parse("D23").unwrap().to_matrix(3).unwrap();
        let ann = cocycle_annihilator(&a, &d23).unwrap();
        assert_eq!(ann.dim(), 1);
        assert!(ann.contains(&a.basis_vec(0)).unwrap());
    }

    #[test]
    fn leibniz_compatibility_and_t1() {
        let b = n3_4dim();
        let theta = DeltaCombo::parse("D34-D43").unwrap().to_matrix(4).unwrap();
        assert!(is_cocycle(&b, Flavor::BinaryLeibniz, &theta));
        assert!(!is_leibniz_compatible(&b, &theta));
        assert!(in_t1(&b, &theta).unwrap());

        let a = n_01();
        let d13 = DeltaCombo::parse("D13").unwrap().to_matrix(3).unwrap();
        assert!(is_leibniz_compatible(&a, &d13));
        // Ann(Δ13) = ⟨e2⟩ meets Ann(N_01) = ⟨e2, e3⟩ nontrivially.
        assert!(!in_t1(&a, &d13).unwrap());

        // A coboundary has zero class.
        let cb = unflatten_cocycle(3, &coboundary_vectors(&a)[1]);
        assert!(matches!(in_t1(&a, &cb), Err(CohomologyError::ZeroClass)));
    }

    #[test]
    fn pullback_checks_automorphisms() {
        let b = n3_4dim();
        let theta = DeltaCombo::parse("D34-D43").unwrap().to_matrix(4).unwrap();
        let id = Matrix::identity(4);
        assert_eq!(cocycle_pullback(&b, &id, &theta).unwrap(), theta);

        // Scaling e1 by 2 forces e3 to scale by 2 as well; doubling only e1
        // is not a homomorphism.
        let mut bad = Matrix::identity(4);
        bad.set(0, 0, Gauss::from_i64(2));
        assert!(matches!(
            cocycle_pullback(&b, &bad, &theta),
            Err(CohomologyError::NotAutomorphism)
        ));

        // A genuine automorphism: e1 -> 2e1, e3 -> 2e3.
        let mut phi = Matrix::identity(4);
        phi.set(0, 0, Gauss::from_i64(2));
        phi.set(2, 2, Gauss::from_i64(2));
        assert!(is_automorphism(&b, &phi).unwrap());
        let pulled = cocycle_pullback(&b, &phi, &theta).unwrap();
        // θ(φe3, φe4) = θ(2e3, e4) = 2.
        assert_eq!(pulled.get(2, 3), &Gauss::from_i64(2));

        // Pullback of a coboundary along an automorphism stays a coboundary.
        let nn = 16;
        let b2 = Subspace::from_vectors(nn, coboundary_vectors(&b)).unwrap();
        let cb = unflatten_cocycle(4, &coboundary_vectors(&b)[2]);
        let moved = cocycle_pullback(&b, &phi, &cb).unwrap();
        assert!(b2.contains(&flatten_cocycle(&moved)).unwrap());
    }

    #[test]
    fn delta_round_trip_and_display() {
        let d = DeltaCombo::parse("D34 - D43").unwrap();
        assert_eq!(d.to_string(), "D34 - D43");
        assert_eq!(DeltaCombo::parse("D34-D43").unwrap(), d);

        let e = DeltaCombo::parse("D31+D32").unwrap();
        assert_eq!(e.to_string(), "D31 + D32");

        let f = DeltaCombo::parse("2*D11 - 1/2*D22 + i*D12").unwrap();
        assert_eq!(f.to_string(), "2*D11 + i*D12 - 1/2*D22");
        let m = f.to_matrix(2).unwrap();
        assert_eq!(DeltaCombo::from_matrix(&m), f);

        assert!(DeltaCombo::parse("D34 -").is_err());
        assert!(DeltaCombo::parse("Q11").is_err());
        assert!(DeltaCombo::parse("D0").is_err());
        assert!(DeltaCombo::parse("D30").is_err());
        assert!(DeltaCombo::parse("D12").unwrap().to_matrix(1).is_err());
    }

    #[test]
    fn quotient_reps_complete_b2_to_z2() {
        let a = n_01();
        let cs = cocycle_space(&a, Flavor::BinaryLeibniz).unwrap();
        assert_eq!(cs.h2_reps().len(), cs.h2_dim());
        let mut all: Vec<Vec<Gauss>> = cs.b2().basis().to_vec();
        all.extend(cs.h2_reps().iter().cloned());
        let span = Subspace::from_vectors(9, all).unwrap();
        assert_eq!(&span, cs.z2());

        // The stated BL span for this base: D13, D21, D31, D33 mod B².
        let mut stated: Vec<Vec<Gauss>> = cs.b2().basis().to_vec();
        for tok in ["D13", "D21", "D31", "D33"] {
            stated.push(DeltaCombo::parse(tok).unwrap().to_vec(3).unwrap());
        }
        let stated_span = Subspace::from_vectors(9, stated).unwrap();
        assert_eq!(&stated_span, cs.z2());
    }
}

//! Exact linear algebra over any scalar implementing [`Field`].
//!
//! Everything reduces to row echelon form with exact arithmetic; subspaces
//! are kept in canonical reduced form so that equality, membership, and
//! quotients are decidable by direct comparison.

use thiserror::Error;

use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("the given space is not a subspace")]
    NotSubspace,
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for r in &rows {
            if r.len() != ncols {
                return Err(LinalgError::DimensionMismatch(format!(
                    "row of length {} in a matrix with {} columns",
                    r.len(),
                    ncols
                )));
            }
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix<F> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = F::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(&v[k]));
                }
                acc
            })
            .collect())
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot must invert");
            for j in 0..m.cols {
                m.set(r, j, m.get(r, j).mul(&inv));
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let factor = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j).sub(&factor.mul(m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the right kernel: one vector per free column, with
    /// a 1 in that column's slot, listed in column order.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (m, pivots) = self.rref();
        let mut out = Vec::new();
        for j in 0..self.cols {
            if pivots.contains(&j) {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[j] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m.get(r, j).neg();
            }
            out.push(v);
        }
        out
    }

    /// One solution of `self · x = b`, if consistent.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} equations, {} right-hand entries",
                self.rows,
                b.len()
            )));
        }
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (m, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = m.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j == n + i {
                F::one()
            } else {
                F::zero()
            }
        });
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| m.get(i, n + j).clone()))
    }

    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return F::zero();
            };
            if p != c {
                det = det.neg();
                for j in 0..n {
                    let a = m.get(c, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(c, j, b);
                    m.set(p, j, a);
                }
            }
            let pivot = m.get(c, c).clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().expect("nonzero pivot must invert");
            for i in (c + 1)..n {
                if !m.get(i, c).is_zero() {
                    let factor = m.get(i, c).mul(&inv);
                    for j in c..n {
                        let v = m.get(i, j).sub(&factor.mul(m.get(c, j)));
                        m.set(i, j, v);
                    }
                }
            }
        }
        det
    }
}

impl<F: Field> std::fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// A linear subspace of F^ambient, stored as a canonical reduced basis.
///
/// The basis rows are in reduced row echelon form, so two subspaces are equal
/// iff their stored bases are equal componentwise.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_vectors(ambient, (0..ambient).map(|i| {
            let mut v = vec![F::zero(); ambient];
            v[i] = F::one();
            v
        }))
        .unwrap()
    }

    pub fn from_vectors(
        ambient: usize,
        vecs: impl IntoIterator<Item = Vec<F>>,
    ) -> Result<Self, LinalgError> {
        let rows: Vec<Vec<F>> = vecs.into_iter().collect();
        for v in &rows {
            if v.len() != ambient {
                return Err(LinalgError::DimensionMismatch(format!(
                    "vector of length {} in ambient dimension {}",
                    v.len(),
                    ambient
                )));
            }
        }
        if rows.is_empty() {
            return Ok(Subspace::zero(ambient));
        }
        let m = Matrix::from_rows(rows)?;
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace { ambient, basis })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    /// Reduce `v` against the basis; returns the residue.
    fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        for b in &self.basis {
            let lead = b.iter().position(|x| !x.is_zero()).unwrap();
            if !v[lead].is_zero() {
                let factor = v[lead].clone();
                for j in 0..self.ambient {
                    v[j] = v[j].sub(&factor.mul(&b[j]));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> Result<bool, LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient
            )));
        }
        Ok(self.reduce(v).iter().all(F::is_zero))
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> Result<bool, LinalgError> {
        for b in &other.basis {
            if !self.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>, LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch(format!(
                "sum of subspaces of F^{} and F^{}",
                self.ambient, other.ambient
            )));
        }
        Subspace::from_vectors(
            self.ambient,
            self.basis.iter().chain(other.basis.iter()).cloned(),
        )
    }

    /// Intersection via the Zassenhaus construction.
    pub fn intersect(&self, other: &Subspace<F>) -> Result<Subspace<F>, LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch(format!(
                "intersection of subspaces of F^{} and F^{}",
                self.ambient, other.ambient
            )));
        }
        let n = self.ambient;
        let mut rows = Vec::new();
        for u in &self.basis {
            let mut row = u.clone();
            row.extend(u.iter().cloned());
            rows.push(row);
        }
        for w in &other.basis {
            let mut row = w.clone();
            row.extend(std::iter::repeat(F::zero()).take(n));
            rows.push(row);
        }
        if rows.is_empty() {
            return Ok(Subspace::zero(n));
        }
        let (m, pivots) = Matrix::from_rows(rows)?.rref();
        let mut inter = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            if pc >= n {
                inter.push(m.row(r)[n..].to_vec());
            }
        }
        Subspace::from_vectors(n, inter)
    }

    /// Representatives completing `sub` to a basis of `self`; errors unless
    /// `sub` is contained in `self`.
    pub fn quotient_reps(&self, sub: &Subspace<F>) -> Result<Vec<Vec<F>>, LinalgError> {
        if !self.contains_subspace(sub)? {
            return Err(LinalgError::NotSubspace);
        }
        let mut span = sub.clone();
        let mut reps = Vec::new();
        for b in &self.basis {
            if !span.contains(b)? {
                reps.push(b.clone());
                span = span.sum(&Subspace::from_vectors(self.ambient, [b.clone()])?)?;
            }
        }
        Ok(reps)
    }
}

impl<F: Field> std::fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subspace(dim {} of F^{}) {:?}",
            self.dim(),
            self.ambient,
            self.basis
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gauss;

    fn g(v: i64) -> Gauss {
        Gauss::from_i64(v)
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Gauss> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| g(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rank_nullity() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let kern = m.kernel_basis();
        assert_eq!(kern.len(), 1);
        for v in &kern {
            assert!(m.mul_vec(v).unwrap().iter().all(Gauss::is_zero));
        }
    }

    #[test]
    fn inverse_and_det() {
        let m = mat(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.det(), g(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).inverse(), None);
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).det(), g(-1));
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = mat(&[&[1, 1], &[1, -1]]);
        let x = m.solve(&[g(3), g(1)]).unwrap().unwrap();
        assert_eq!(x, vec![g(2), g(1)]);
        let s = mat(&[&[1, 1], &[2, 2]]);
        assert_eq!(s.solve(&[g(1), g(3)]).unwrap(), None);
        assert!(s.solve(&[g(1), g(2)]).unwrap().is_some());
    }

    #[test]
    fn subspace_operations() {
        let u = Subspace::from_vectors(3, [vec![g(1), g(0), g(0)], vec![g(0), g(1), g(0)]])
            .unwrap();
        let w = Subspace::from_vectors(3, [vec![g(0), g(1), g(1)], vec![g(0), g(0), g(1)]])
            .unwrap();
        let inter = u.intersect(&w).unwrap();
        assert_eq!(inter.dim(), 1);
        assert!(inter.contains(&[g(0), g(1), g(0)]).unwrap());
        let s = u.sum(&w).unwrap();
        assert_eq!(s.dim(), 3);
        // dim(U) + dim(W) = dim(U+W) + dim(U∩W)
        assert_eq!(u.dim() + w.dim(), s.dim() + inter.dim());
        let reps = s.quotient_reps(&u).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(matches!(
            u.quotient_reps(&Subspace::full(3)),
            Err(LinalgError::NotSubspace)
        ));
    }

    #[test]
    fn canonical_equality() {
        let a = Subspace::from_vectors(2, [vec![g(2), g(4)]]).unwrap();
        let b = Subspace::from_vectors(2, [vec![g(1), g(2)], vec![g(3), g(6)]]).unwrap();
        assert_eq!(a, b);
    }
}

//! Dense complex matrices in row-major storage.
//!
//! This is the substrate for everything else in the crate: states, Kraus
//! operators, and the global operators living on tensor products. The index
//! convention for tensor products is fixed by [`kron`]: the left factor
//! varies slowest, `(a⊗b)[i·rows_b+k, j·cols_b+l] = a[i,j]·b[k,l]`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense complex matrix, entries stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexMatrix<T> {
    /// Builds a matrix from row-major entries.
    ///
    /// Fails with [`Error::ShapeMismatch`] if the entry count is not
    /// `rows * cols`, and with [`Error::NonFinite`] if any entry is NaN or
    /// infinite.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let m = Self { rows, cols, data };
        if !m.all_finite() {
            return Err(Error::NonFinite);
        }
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::new(T::zero(), T::zero()); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    /// Builds from nested rows; all rows must share a length.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::new(nrows, ncols, rows.concat())
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Complex<T>,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Diagonal matrix with real entries.
    pub fn from_real_diag(diag: &[T]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex::new(diag[i], T::zero())
            } else {
                Complex::new(T::zero(), T::zero())
            }
        })
    }

    /// Outer product `u v†` of two vectors.
    pub fn outer(u: &[Complex<T>], v: &[Complex<T>]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn all_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Matrix product. Panics if inner dimensions disagree; dimension checks
    /// on user-facing paths happen before arithmetic is reached.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul: {}x{} times {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(
            self.cols,
            v.len(),
            "mul_vec: {} cols vs {}",
            self.cols,
            v.len()
        );
        (0..self.rows)
            .map(|i| {
                let mut acc = Complex::new(T::zero(), T::zero());
                for j in 0..self.cols {
                    acc = acc + self[(i, j)] * v[j];
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "add: shape mismatch"
        );
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| *a + *b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "sub: shape mismatch"
        );
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| *a - *b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| *z * c).collect(),
        }
    }

    pub fn scale_re(&self, r: T) -> Self {
        self.scale(Complex::new(r, T::zero()))
    }

    pub fn trace(&self) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..self.rows.min(self.cols) {
            acc = acc + self[(i, i)];
        }
        acc
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc.max(z.norm_sqr().sqrt()))
    }

    /// Largest entrywise deviation `max |a_ij - b_ij|`.
    pub fn max_abs_diff(&self, rhs: &Self) -> T {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "max_abs_diff: shape mismatch"
        );
        self.data
            .iter()
            .zip(&rhs.data)
            .fold(T::zero(), |acc, (a, b)| {
                acc.max((*a - *b).norm_sqr().sqrt())
            })
    }

    /// Asymmetry `max |m_ij - conj(m_ji)|`; zero iff Hermitian.
    pub fn hermiticity_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm_sqr().sqrt();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Hermitian part `(m + m†)/2`.
    pub fn hermitian_part(&self) -> Self {
        let half = T::from(0.5).unwrap();
        self.add(&self.adjoint()).scale_re(half)
    }
}

impl<T: Scalar> std::ops::Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> std::ops::IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Orthonormalizes the columns of `m` in place by modified Gram-Schmidt with
/// one reorthogonalization pass. Returns false if a column turns out linearly
/// dependent on its predecessors (norm collapses), leaving `m` partially
/// modified.
pub(crate) fn orthonormalize_columns<T: Scalar>(m: &mut ComplexMatrix<T>) -> bool {
    let rows = m.rows();
    let cols = m.cols();
    if cols > rows {
        return false;
    }
    for j in 0..cols {
        // Two projection passes keep the loss of orthogonality at machine
        // scale even for nearly dependent random columns.
        for _ in 0..2 {
            for k in 0..j {
                let mut dot = Complex::new(T::zero(), T::zero());
                for i in 0..rows {
                    dot = dot + m[(i, k)].conj() * m[(i, j)];
                }
                for i in 0..rows {
                    let mik = m[(i, k)];
                    m[(i, j)] = m[(i, j)] - mik * dot;
                }
            }
        }
        let mut norm_sq = T::zero();
        for i in 0..rows {
            norm_sq = norm_sq + m[(i, j)].norm_sqr();
        }
        let norm = norm_sq.sqrt();
        if norm <= T::epsilon().sqrt() {
            return false;
        }
        let inv = T::one() / norm;
        for i in 0..rows {
            m[(i, j)] = m[(i, j)].scale(inv);
        }
    }
    true
}

/// Kronecker product with the left factor varying slowest:
/// `(a⊗b)[i·rows_b+k, j·cols_b+l] = a[i,j]·b[k,l]`.
///
/// This fixes the flat index convention for every tensor product in the
/// crate: the first factor owns the most significant digit.
pub fn kron<T: Scalar>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let mut out = ComplexMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a[(i, j)];
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out[(i * b.rows() + k, j * b.cols() + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

//! Dense matrices over the crate's ring types.

use super::scalar::{Ring, Scalar};
use std::fmt;

/// A dense row-major matrix over a ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
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

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix::new(self.rows, self.cols, self.data.iter().map(f).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::new(
            self.rows,
            self.cols,
            self.data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::new(
            self.rows,
            self.cols,
            self.data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    pub fn neg(&self) -> Matrix<T> {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, s: &T) -> Matrix<T> {
        self.map(|x| x.mul(s))
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out: Matrix<T> = Matrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut t = T::zero();
        for i in 0..self.rows {
            t = t.add(&self[(i, i)]);
        }
        t
    }

    /// Kronecker product: `(A kron B)[(i*p+k, j*q+l)] = A[i,j] * B[k,l]`.
    pub fn kron(&self, rhs: &Matrix<T>) -> Matrix<T> {
        let (p, q) = (rhs.rows, rhs.cols);
        let mut out = Matrix::zero(self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        out[(i * p + k, j * q + l)] = a.mul(&rhs[(k, l)]);
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal direct sum of the given matrices.
    pub fn direct_sum(parts: &[Matrix<T>]) -> Matrix<T> {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zero(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out[(r0 + i, c0 + j)] = m[(i, j)].clone();
                }
            }
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    /// Copy of the rectangular block at `(r0, c0)` of shape `rows x cols`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix<T> {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let mut out = Matrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        out
    }

    /// Stack vertically (same column count).
    pub fn vstack(parts: &[Matrix<T>]) -> Matrix<T> {
        assert!(!parts.is_empty());
        let cols = parts[0].cols;
        assert!(parts.iter().all(|m| m.cols == cols));
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            data.extend(m.data.iter().cloned());
        }
        Matrix::new(rows, cols, data)
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix<Scalar> {
    /// Determinant by fraction-free-ish Gaussian elimination over the scalar
    /// field (both tracks).
    pub fn det(&self) -> Scalar {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot else {
                return Scalar::zero();
            };
            if p != col {
                for j in 0..n {
                    let a = m[(p, j)].clone();
                    let b = m[(col, j)].clone();
                    m[(p, j)] = b;
                    m[(col, j)] = a;
                }
                det = det.neg();
            }
            let pv = m[(col, col)].clone();
            det = det.mul(&pv);
            let pinv = pv.inv();
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].mul(&pinv);
                for j in col..n {
                    let s = f.mul(&m[(col, j)]);
                    m[(r, j)] = m[(r, j)].sub(&s);
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan; panics if singular.
    pub fn inverse(&self) -> Matrix<Scalar> {
        self.try_inverse().expect("matrix is singular")
    }

    pub fn try_inverse(&self) -> Option<Matrix<Scalar>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut inv: Matrix<Scalar> = Matrix::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !m[(r, col)].is_zero())?;
            if p != col {
                for j in 0..n {
                    let a = m[(p, j)].clone();
                    m[(p, j)] = m[(col, j)].clone();
                    m[(col, j)] = a;
                    let b = inv[(p, j)].clone();
                    inv[(p, j)] = inv[(col, j)].clone();
                    inv[(col, j)] = b;
                }
            }
            let pinv = m[(col, col)].inv();
            for j in 0..n {
                m[(col, j)] = m[(col, j)].mul(&pinv);
                inv[(col, j)] = inv[(col, j)].mul(&pinv);
            }
            for r in 0..n {
                if r == col || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for j in 0..n {
                    let s = f.mul(&m[(col, j)]);
                    m[(r, j)] = m[(r, j)].sub(&s);
                    let s2 = f.mul(&inv[(col, j)]);
                    inv[(r, j)] = inv[(r, j)].sub(&s2);
                }
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && !self.det().is_zero()
    }

    /// Basis of the right nullspace `{v : Mv = 0}`, computed by exact
    /// Gaussian elimination with a deterministic pivot order. Requires all
    /// entries exact.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        assert!(
            self.data.iter().all(|s| s.is_exact()),
            "nullspace requires exact entries"
        );
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.clone();
        let mut pivot_col_of_row = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let p = (r..rows).find(|&i| !m[(i, c)].is_zero());
            let Some(p) = p else { continue };
            if p != r {
                for j in 0..cols {
                    let a = m[(p, j)].clone();
                    m[(p, j)] = m[(r, j)].clone();
                    m[(r, j)] = a;
                }
            }
            let pinv = m[(r, c)].inv();
            for j in 0..cols {
                m[(r, j)] = m[(r, j)].mul(&pinv);
            }
            for i in 0..rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in 0..cols {
                    let s = f.mul(&m[(r, j)]);
                    m[(i, j)] = m[(i, j)].sub(&s);
                }
            }
            pivot_col_of_row.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let pivot_cols: std::collections::BTreeSet<usize> =
            pivot_col_of_row.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![Scalar::zero(); cols];
            v[free] = Scalar::one();
            for (row, &pc) in pivot_col_of_row.iter().enumerate() {
                v[pc] = m[(row, free)].neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Entrywise comparison with tolerance (exact entries compare exactly).
    pub fn approx_eq(&self, rhs: &Matrix<Scalar>, tol: &str) -> bool {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return false;
        }
        self.data
            .iter()
            .zip(rhs.data.iter())
            .all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Entrywise embedding into the approximate track.
    pub fn embed(&self, bits: usize) -> Matrix<Scalar> {
        self.map(|s| Scalar::App(s.embed(bits)))
    }
}

impl<T: Ring> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Shorthand for building a scalar matrix from integer entries.
pub fn mat_i64(rows: usize, cols: usize, entries: &[i64]) -> Matrix<Scalar> {
    Matrix::new(
        rows,
        cols,
        entries.iter().map(|&n| Scalar::from_int(n)).collect(),
    )
}

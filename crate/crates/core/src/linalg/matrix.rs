use std::fmt;
use std::ops::{Index, IndexMut};

use crate::linalg::{IndexSubset, LinalgError};
use crate::Scalar;

/// Dense row-major matrix.
///
/// Zero-row matrices are allowed (they show up as the parity-check matrix of
/// the full space and as the empty regression basis of a single-point coset);
/// the column count is always at least one.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, LinalgError> {
        if cols == 0 {
            return Err(LinalgError::Shape("matrix must have at least one column".into()));
        }
        if data.len() != rows * cols {
            return Err(LinalgError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Shape("ragged rows".into()));
        }
        Matrix::new(rows.len(), cols, rows.concat())
    }

    /// Convenience for literals in tests and constructors.
    pub fn from_f64_rows(rows: &[&[f64]]) -> Result<Self, LinalgError> {
        let rows: Vec<Vec<T>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| T::lit(x)).collect())
            .collect();
        Matrix::from_rows(&rows)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(cols > 0, "matrix must have at least one column");
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    /// A matrix with `cols` columns and no rows.
    pub fn empty(cols: usize) -> Self {
        Matrix::zeros(0, cols)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Panics on a zero-row matrix, whose transpose would have no columns.
    pub fn transpose(&self) -> Self {
        assert!(self.rows > 0, "transpose of a matrix with no rows");
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out[(i, j)] + a * other[(l, j)];
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    /// `self * otherᵀ`.
    pub fn matmul_transpose(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.cols, "column counts differ");
        let cols = other.rows.max(1);
        let mut out = Matrix::zeros(self.rows, cols);
        if other.rows == 0 {
            return out;
        }
        for i in 0..self.rows {
            for j in 0..other.rows {
                out[(i, j)] = dot(self.row(i), other.row(j));
            }
        }
        out
    }

    /// Row vector times matrix: `u M`.
    pub fn left_mul(&self, u: &[T]) -> Vec<T> {
        assert_eq!(u.len(), self.rows);
        let mut out = vec![T::zero(); self.cols];
        for (i, &ui) in u.iter().enumerate() {
            if ui == T::zero() {
                continue;
            }
            for (o, &m) in out.iter_mut().zip(self.row(i)) {
                *o += ui * m;
            }
        }
        out
    }

    /// Matrix times column vector: `M x`.
    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix<T> {
        assert!(!cols.is_empty(), "cannot select zero columns");
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            let row = self.row(i);
            data.extend(cols.iter().map(|&j| row[j]));
        }
        Matrix { rows: self.rows, cols: cols.len(), data }
    }

    /// `(M)_I`: the columns indexed by the subset.
    pub fn columns_of(&self, subset: &IndexSubset) -> Matrix<T> {
        self.select_columns(subset.members())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix<T> {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Matrix { rows: rows.len(), cols: self.cols, data }
    }

    pub fn scale(&self, s: T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    /// Multiplies column `j` by `s` in place.
    pub fn scale_column(&mut self, j: usize, s: T) {
        for i in 0..self.rows {
            let v = self[(i, j)] * s;
            self[(i, j)] = v;
        }
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, x| m.max(x.abs()))
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix<T>) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }
}

#[inline]
pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |s, (&x, &y)| s + x * y)
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

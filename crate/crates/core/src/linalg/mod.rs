//! Dense real linear algebra: elimination with partial pivoting, rank,
//! inversion, null spaces and information-set enumeration.
//!
//! Every routine takes a relative tolerance: a pivot is accepted iff its
//! magnitude exceeds `tol` times the largest magnitude in the input.

mod matrix;
mod subset;

pub use matrix::Matrix;
pub(crate) use matrix::dot;
pub use subset::{binomial, enumerate_subsets, IndexSubset, Subsets};

use thiserror::Error;

use crate::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("bad index subset: {0}")]
    Subset(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix has rank {rank} < {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
}

/// Reduced row echelon form restricted to the first `pivot_cols` columns.
struct Echelon<T> {
    reduced: Matrix<T>,
    pivots: Vec<usize>,
}

fn echelon<T: Scalar>(m: &Matrix<T>, pivot_cols: usize, tol: T) -> Echelon<T> {
    echelon_at_scale(m, pivot_cols, tol, m.max_abs())
}

fn echelon_at_scale<T: Scalar>(m: &Matrix<T>, pivot_cols: usize, tol: T, scale: T) -> Echelon<T> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let threshold = tol * scale;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let (best, mag) = (r..rows)
            .map(|i| (i, a[(i, c)].abs()))
            .fold((r, -T::one()), |acc, x| if x.1 > acc.1 { x } else { acc });
        if mag <= threshold || mag == T::zero() {
            // Clear the column below so later magnitude scans are not fooled.
            for i in r..rows {
                a[(i, c)] = T::zero();
            }
            continue;
        }
        if best != r {
            for j in 0..cols {
                let tmp = a[(r, j)];
                a[(r, j)] = a[(best, j)];
                a[(best, j)] = tmp;
            }
        }
        let p = a[(r, c)];
        for j in 0..cols {
            let v = a[(r, j)] / p;
            a[(r, j)] = v;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[(i, c)];
            if f == T::zero() {
                continue;
            }
            for j in 0..cols {
                let v = a[(i, j)] - f * a[(r, j)];
                a[(i, j)] = v;
            }
            a[(i, c)] = T::zero();
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { reduced: a, pivots }
}

/// Numerical rank by row reduction with partial pivoting.
pub fn rank<T: Scalar>(m: &Matrix<T>, tol: T) -> usize {
    if m.rows() == 0 {
        return 0;
    }
    echelon(m, m.cols(), tol).pivots.len()
}

/// Rank with pivots below `tol · scale` treated as zero. Use this for
/// column subsets so a tiny column is judged against the whole matrix.
pub fn rank_at_scale<T: Scalar>(m: &Matrix<T>, tol: T, scale: T) -> usize {
    if m.rows() == 0 {
        return 0;
    }
    echelon_at_scale(m, m.cols(), tol, scale).pivots.len()
}

/// Gauss–Jordan inverse with partial pivoting.
pub fn invert<T: Scalar>(m: &Matrix<T>, tol: T) -> Result<Matrix<T>, LinalgError> {
    invert_at_scale(m, tol, m.max_abs())
}

/// [`invert`] with pivots below `tol · scale` reported as singular.
pub fn invert_at_scale<T: Scalar>(m: &Matrix<T>, tol: T, scale: T) -> Result<Matrix<T>, LinalgError> {
    let n = m.rows();
    if n != m.cols() {
        return Err(LinalgError::Shape(format!("cannot invert a {}x{} matrix", n, m.cols())));
    }
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)];
        }
        aug[(i, n + i)] = T::one();
    }
    // Scale the threshold by the input only, not the identity block.
    let threshold = tol * scale;
    let mut a = aug;
    for c in 0..n {
        let (best, mag) = (c..n)
            .map(|i| (i, a[(i, c)].abs()))
            .fold((c, -T::one()), |acc, x| if x.1 > acc.1 { x } else { acc });
        if mag <= threshold || mag == T::zero() {
            return Err(LinalgError::Singular);
        }
        if best != c {
            for j in 0..2 * n {
                let tmp = a[(c, j)];
                a[(c, j)] = a[(best, j)];
                a[(best, j)] = tmp;
            }
        }
        let p = a[(c, c)];
        for j in 0..2 * n {
            let v = a[(c, j)] / p;
            a[(c, j)] = v;
        }
        for i in 0..n {
            if i == c {
                continue;
            }
            let f = a[(i, c)];
            if f == T::zero() {
                continue;
            }
            for j in 0..2 * n {
                let v = a[(i, j)] - f * a[(c, j)];
                a[(i, j)] = v;
            }
        }
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    Ok(a.select_columns(&cols))
}

/// Orthonormal basis of `{x : M x = 0}` as the rows of the result, for any rank.
///
/// Returns an empty (zero-row) matrix when the kernel is trivial.
pub fn kernel<T: Scalar>(m: &Matrix<T>, tol: T) -> Matrix<T> {
    let n = m.cols();
    if m.rows() == 0 {
        return Matrix::identity(n);
    }
    let e = echelon(m, n, tol);
    let free: Vec<usize> = (0..n).filter(|c| !e.pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![T::zero(); n];
        v[f] = T::one();
        for (t, &p) in e.pivots.iter().enumerate() {
            v[p] = -e.reduced[(t, f)];
        }
        basis.push(v);
    }
    let basis = orthonormalize(basis);
    if basis.is_empty() {
        Matrix::empty(n)
    } else {
        Matrix::from_rows(&basis).expect("kernel rows are well formed")
    }
}

/// Full-row-rank null-space basis: `K` is `(n - r) x n` with `M Kᵀ = 0`.
pub fn null_space_basis<T: Scalar>(m: &Matrix<T>, tol: T) -> Result<Matrix<T>, LinalgError> {
    let r = rank(m, tol);
    if r < m.rows() {
        return Err(LinalgError::RankDeficient { rank: r, rows: m.rows() });
    }
    Ok(kernel(m, tol))
}

/// A basis for the row space of `m`, taken from its reduced echelon form.
pub fn row_basis<T: Scalar>(m: &Matrix<T>, tol: T) -> Matrix<T> {
    if m.rows() == 0 {
        return m.clone();
    }
    let e = echelon(m, m.cols(), tol);
    let idx: Vec<usize> = (0..e.pivots.len()).collect();
    e.reduced.select_rows(&idx)
}

/// Some solution `x` of `A x = b`, or `None` when the system is inconsistent.
pub fn solve_consistent<T: Scalar>(a: &Matrix<T>, b: &[T], tol: T) -> Option<Vec<T>> {
    assert_eq!(a.rows(), b.len());
    let (p, q) = (a.rows(), a.cols());
    let mut aug = Matrix::zeros(p, q + 1);
    for i in 0..p {
        for j in 0..q {
            aug[(i, j)] = a[(i, j)];
        }
        aug[(i, q)] = b[i];
    }
    let e = echelon(&aug, q, tol);
    let scale = aug.max_abs().max(T::one());
    for i in e.pivots.len()..p {
        if e.reduced[(i, q)].abs() > tol * scale {
            return None;
        }
    }
    let mut x = vec![T::zero(); q];
    for (t, &c) in e.pivots.iter().enumerate() {
        x[c] = e.reduced[(t, q)];
    }
    Some(x)
}

/// Modified Gram–Schmidt, applied twice; rows that collapse are dropped.
pub fn orthonormalize<T: Scalar>(rows: Vec<Vec<T>>) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = Vec::with_capacity(rows.len());
    for mut v in rows {
        let original = norm2(&v);
        for _ in 0..2 {
            for q in &out {
                let proj = dot(&v, q);
                for (x, &y) in v.iter_mut().zip(q) {
                    *x -= proj * y;
                }
            }
        }
        let nv = norm2(&v);
        if nv > T::lit(1e-10).min(T::epsilon().sqrt()) * original.max(T::one()) {
            for x in &mut v {
                *x /= nv;
            }
            out.push(v);
        }
    }
    out
}

pub(crate) fn norm2<T: Scalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |s, &x| s + x * x).sqrt()
}

pub(crate) fn norm1<T: Scalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |s, &x| s + x.abs())
}

pub(crate) fn norm_inf<T: Scalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |s, &x| s.max(x.abs()))
}

/// Υ: every `k`-subset `I` (lexicographic) with `(G)_I` nonsingular.
pub fn upsilon<T: Scalar>(g: &Matrix<T>, tol: T) -> Vec<IndexSubset> {
    let (k, n) = (g.rows(), g.cols());
    if k == 0 {
        return vec![IndexSubset::empty(n)];
    }
    let scale = g.max_abs();
    enumerate_subsets(n, k)
        .filter(|s| rank_at_scale(&g.columns_of(s), tol, scale) == k)
        .collect()
}

/// Information sets paired with the inverses `(G)_I^{-1}`.
pub fn upsilon_with_inverses<T: Scalar>(g: &Matrix<T>, tol: T) -> Vec<(IndexSubset, Matrix<T>)> {
    let (k, scale) = (g.rows(), g.max_abs());
    enumerate_subsets(g.cols(), k)
        .filter_map(|s| invert_at_scale(&g.columns_of(&s), tol, scale).ok().map(|inv| (s, inv)))
        .collect()
}

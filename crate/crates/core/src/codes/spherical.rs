use crate::codes::CodeError;
use crate::linalg::{kernel, norm2, Matrix};
use crate::Scalar;

/// Every column has unit Euclidean norm, to within `tol`.
pub fn is_spherical<T: Scalar>(m: &Matrix<T>, tol: T) -> bool {
    if m.rows() == 0 {
        return false;
    }
    (0..m.cols()).all(|j| (norm2(&m.column(j)) - T::one()).abs() <= tol)
}

/// Spherical, and `M Mᵀ = (n/r) I` to within `tol` relative to `n/r`.
pub fn is_ortho_spherical<T: Scalar>(m: &Matrix<T>, tol: T) -> bool {
    if !is_spherical(m, tol) {
        return false;
    }
    let (r, n) = (m.rows(), m.cols());
    let bound = T::from_usize_exact(n) / T::from_usize_exact(r);
    let target = Matrix::identity(r).scale(bound);
    m.matmul_transpose(m).max_abs_diff(&target) <= tol * bound
}

/// An ortho-spherical generator for the dual of the code with parity-check
/// matrix `h`.
///
/// The rows of `√(r/n)·H` are orthonormal; completing them to an orthonormal
/// basis of `Rⁿ` and scaling the `k = n - r` new rows by `√(n/k)` gives `G`.
pub fn ospc_dual_generator<T: Scalar>(h: &Matrix<T>, tol: T) -> Result<Matrix<T>, CodeError> {
    if !is_ortho_spherical(h, tol) {
        return Err(CodeError::NotOrthoSpherical);
    }
    let (r, n) = (h.rows(), h.cols());
    if r >= n {
        return Err(CodeError::Trivial);
    }
    let q = kernel(h, tol);
    debug_assert_eq!(q.rows(), n - r);
    let s = (T::from_usize_exact(n) / T::from_usize_exact(n - r)).sqrt();
    Ok(q.scale(s))
}

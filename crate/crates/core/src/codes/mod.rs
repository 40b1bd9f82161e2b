//! Linear codes over the reals and the structured families used throughout
//! the crate.
//!
//! A [`RealCode`] always carries both a generator matrix `G` (`k x n`) and a
//! parity-check matrix `H` (`r x n`, `r = n - k`); whichever one is not
//! supplied is computed as an orthonormal null-space basis of the other.

mod binary;
mod families;
mod file;
mod random;
mod spherical;

pub use binary::{binary_induced_parity_check, make_binary_induced, BinaryMatrix};
pub use families::{make_axis_replicated, make_dodecahedral, make_icosahedral, make_negacyclic};
pub use file::CodeFile;
pub use random::{random_code, EntryDistribution};
pub use spherical::{is_ortho_spherical, is_spherical, ospc_dual_generator};

use thiserror::Error;

use crate::linalg::{self, binomial, kernel, rank, row_basis, IndexSubset, LinalgError, Matrix};
use crate::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CodeError {
    #[error("length {n} is too small (need at least {min})")]
    BadLength { n: usize, min: usize },
    #[error("binary code rejected: {0}")]
    BadBinaryCode(String),
    #[error("code has dimension 0")]
    Trivial,
    #[error("invalid code: {0}")]
    Invalid(String),
    #[error("matrix is not ortho-spherical")]
    NotOrthoSpherical,
    #[error("malformed code file: {0}")]
    File(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A nontrivial linear `[n, k]` code over the reals.
#[derive(Clone, Debug, PartialEq)]
pub struct RealCode<T> {
    name: String,
    generator: Matrix<T>,
    parity_check: Matrix<T>,
}

impl<T: Scalar> RealCode<T> {
    /// Code spanned by the rows of `g`, which must be linearly independent.
    pub fn from_generator(name: impl Into<String>, g: Matrix<T>, tol: T) -> Result<Self, CodeError> {
        check_full_row_rank(&g, tol, "generator")?;
        if g.rows() == 0 {
            return Err(CodeError::Trivial);
        }
        let h = kernel(&g, tol);
        Ok(RealCode { name: name.into(), generator: g, parity_check: h })
    }

    /// Code annihilated by the rows of `h`, which must be linearly independent.
    pub fn from_parity_check(name: impl Into<String>, h: Matrix<T>, tol: T) -> Result<Self, CodeError> {
        check_full_row_rank(&h, tol, "parity-check")?;
        let g = kernel(&h, tol);
        if g.rows() == 0 {
            return Err(CodeError::Trivial);
        }
        Ok(RealCode { name: name.into(), generator: g, parity_check: h })
    }

    /// Code given by both matrices; checks ranks, dimensions and `G Hᵀ = 0`.
    pub fn from_matrices(name: impl Into<String>, g: Matrix<T>, h: Matrix<T>, tol: T) -> Result<Self, CodeError> {
        if g.cols() != h.cols() {
            return Err(CodeError::Invalid(format!(
                "generator has {} columns, parity check has {}",
                g.cols(),
                h.cols()
            )));
        }
        check_full_row_rank(&g, tol, "generator")?;
        check_full_row_rank(&h, tol, "parity-check")?;
        if g.rows() == 0 {
            return Err(CodeError::Trivial);
        }
        if g.rows() + h.rows() != g.cols() {
            return Err(CodeError::Invalid(format!(
                "k = {} and r = {} do not add up to n = {}",
                g.rows(),
                h.rows(),
                g.cols()
            )));
        }
        if h.rows() > 0 {
            let scale = g.max_abs() * h.max_abs() * T::from_usize_exact(g.cols());
            let err = g.matmul_transpose(&h).max_abs();
            if err > tol * scale.max(T::one()) {
                return Err(CodeError::Invalid(format!("G Hᵀ has an entry of size {err}")));
            }
        }
        Ok(RealCode { name: name.into(), generator: g, parity_check: h })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Length.
    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    /// Dimension.
    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    /// Redundancy `n - k`.
    pub fn r(&self) -> usize {
        self.parity_check.rows()
    }

    pub fn generator(&self) -> &Matrix<T> {
        &self.generator
    }

    /// Zero rows when `k = n`.
    pub fn parity_check(&self) -> &Matrix<T> {
        &self.parity_check
    }

    /// The dual code: generator and parity-check matrices swap roles.
    pub fn dual(&self) -> Result<Self, CodeError> {
        if self.r() == 0 {
            return Err(CodeError::Trivial);
        }
        Ok(RealCode {
            name: format!("dual({})", self.name),
            generator: self.parity_check.clone(),
            parity_check: self.generator.clone(),
        })
    }

    /// The code restricted to the coordinates in `keep`.
    pub fn puncture(&self, keep: &IndexSubset, tol: T) -> Result<Self, CodeError> {
        if keep.ambient() != self.n() {
            return Err(CodeError::Invalid(format!("subset of [{}) used on a length-{} code", keep.ambient(), self.n())));
        }
        if keep.is_empty() {
            return Err(CodeError::BadLength { n: 0, min: 1 });
        }
        let g = self.generator.columns_of(keep);
        let g = if rank(&g, tol) < g.rows() { row_basis(&g, tol) } else { g };
        if g.rows() == 0 {
            return Err(CodeError::Trivial);
        }
        let name = format!("{}|{:?}", self.name, keep);
        RealCode::from_generator(name, g, tol)
    }

    /// The codeword `u G`.
    pub fn encode(&self, u: &[T]) -> Vec<T> {
        self.generator.left_mul(u)
    }

    /// Largest entry of `H cᵀ`, relative to `max(1, ‖c‖∞)`.
    pub fn syndrome_residual(&self, c: &[T]) -> T {
        if self.r() == 0 {
            return T::zero();
        }
        let s = self.parity_check.mul_vec(c);
        linalg::norm_inf(&s) / linalg::norm_inf(c).max(T::one())
    }

    /// Every `k`-subset of coordinates is an information set.
    pub fn is_mds(&self, tol: T) -> bool {
        linalg::upsilon(&self.generator, tol).len() as u64 == binomial(self.n(), self.k())
    }

    /// Same code after sending coordinate `j` to position `perm[j]` and
    /// negating it when `negate[j]` is set.
    pub fn signed_permutation(&self, perm: &[usize], negate: &[bool]) -> Result<Self, CodeError> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n || negate.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(CodeError::Invalid("not a permutation of the coordinates".into()));
        }
        let apply = |m: &Matrix<T>| {
            let mut out = Matrix::zeros(m.rows(), n);
            for i in 0..m.rows() {
                for j in 0..n {
                    let v = m[(i, j)];
                    out[(i, perm[j])] = if negate[j] { -v } else { v };
                }
            }
            out
        };
        Ok(RealCode {
            name: format!("{}~", self.name),
            generator: apply(&self.generator),
            parity_check: apply(&self.parity_check),
        })
    }

    /// Same code with a different generator matrix (e.g. `A G` for invertible `A`).
    pub fn with_generator(&self, g: Matrix<T>, tol: T) -> Result<Self, CodeError> {
        RealCode::from_matrices(self.name.clone(), g, self.parity_check.clone(), tol)
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(T) -> U + Copy) -> RealCode<U> {
        RealCode {
            name: self.name.clone(),
            generator: self.generator.map(f),
            parity_check: if self.parity_check.rows() == 0 {
                Matrix::empty(self.n())
            } else {
                self.parity_check.map(f)
            },
        }
    }
}

fn check_full_row_rank<T: Scalar>(m: &Matrix<T>, tol: T, what: &str) -> Result<(), CodeError> {
    let r = rank(m, tol);
    if r < m.rows() {
        return Err(CodeError::Invalid(format!("{what} matrix has rank {r} < {} rows", m.rows())));
    }
    Ok(())
}

/// Rank tolerance used by the family constructors.
pub(crate) fn default_tol<T: Scalar>() -> T {
    T::lit(T::RANK_TOL)
}

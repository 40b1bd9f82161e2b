//! m-heights of vectors and codes.
//!
//! Four routes compute `h_m(C)` for `m` below the minimum distance:
//!
//! * [`height_lp_primal`]: one LP per `(S, i)`, maximizing `c_i` over codewords
//!   bounded by 1 outside `S`.
//! * [`height_lp_dual`]: the dual program, solved as least-absolute-deviations
//!   regression over a coset of the punctured dual code.
//! * [`height_comb_primal`] / [`height_comb_primal_pc`]: a maximum over
//!   codewords that are `±1` on some information set.
//! * [`height_comb_dual`] / [`height_comb_dual_pc`]: a max–min over
//!   information sets avoiding `S`.
//!
//! [`full_profile`] assembles the whole profile `(h_m)_{m<n}`.

mod comb;
mod distance;
mod lp;
mod mds;
mod profile;
mod vector;

pub use comb::{
    dual_term_count, height_comb_dual, height_comb_dual_pc, height_comb_primal, height_comb_primal_pc, primal_candidate_count, CombDualResult,
    CombPrimalResult,
};
pub use distance::{dual_distance, min_distance, min_distance_via_generator};
pub use lp::{dual_program, height_lp_dual, height_lp_primal, primal_program, LpHeight, LpOptions};
pub use mds::{mds_extremal_codeword, r_height, RHeight};
pub use profile::{full_profile, height_at, HeightAt, HeightProfile, Method};
pub use vector::{p_m_set, sorted_view, vector_m_height, vector_m_height_tol, SortedView};

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::codes::{CodeError, RealCode};
use crate::linalg::IndexSubset;
use crate::lp::LpError;
use crate::{Scalar, Tolerance};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeightError {
    #[error("vector is zero")]
    ZeroVector,
    #[error("m = {m} is out of range for length {n}")]
    BadIndex { m: usize, n: usize },
    #[error("m = {m} is not below the minimum distance {d}")]
    DistanceExceeded { m: usize, d: usize },
    #[error("code is not MDS")]
    NotMds,
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// A nonnegative real or `+∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedReal<T> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> ExtendedReal<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    pub fn finite(&self) -> Option<T> {
        match *self {
            ExtendedReal::Finite(x) => Some(x),
            ExtendedReal::Infinite => None,
        }
    }

    /// `f64::INFINITY` for `Infinite`.
    pub fn to_f64(&self) -> f64 {
        match *self {
            ExtendedReal::Finite(x) => x.to_f64_lossy(),
            ExtendedReal::Infinite => f64::INFINITY,
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x.is_infinite() {
            ExtendedReal::Infinite
        } else {
            ExtendedReal::Finite(T::lit(x))
        }
    }

    /// Both infinite, or both finite with relative difference at most `rel`.
    pub fn approx_eq(&self, other: &Self, rel: T) -> bool {
        match (*self, *other) {
            (ExtendedReal::Infinite, ExtendedReal::Infinite) => true,
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => {
                (a - b).abs() <= rel * a.abs().max(b.abs()).max(T::one())
            }
            _ => false,
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl<T: Scalar> PartialOrd for ExtendedReal<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (ExtendedReal::Infinite, ExtendedReal::Infinite) => Some(Ordering::Equal),
            (ExtendedReal::Infinite, _) => Some(Ordering::Greater),
            (_, ExtendedReal::Infinite) => Some(Ordering::Less),
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => a.partial_cmp(b),
        }
    }
}

impl<T: Scalar> fmt::Display for ExtendedReal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(x) => write!(f, "{x}"),
            ExtendedReal::Infinite => f.write_str("inf"),
        }
    }
}

/// A codeword attaining a height, with the `(S, i)` that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalCertificate<T> {
    pub m: usize,
    /// The `m` coordinates allowed to exceed 1 in magnitude.
    pub subset: IndexSubset,
    /// A coordinate of `subset` holding the largest magnitude.
    pub index: usize,
    /// `u` with `codeword = u G` for the code's stored generator `G`.
    pub coefficients: Vec<T>,
    pub codeword: Vec<T>,
    /// `h_m(codeword)`.
    pub height: ExtendedReal<T>,
}

impl<T: Scalar> ExtremalCertificate<T> {
    pub(crate) fn from_coefficients(
        code: &RealCode<T>,
        m: usize,
        subset: IndexSubset,
        index: usize,
        coefficients: Vec<T>,
        tol: &Tolerance<T>,
    ) -> Self {
        let codeword = code.encode(&coefficients);
        let height = vector_m_height_tol(&codeword, m, tol).unwrap_or(ExtendedReal::Infinite);
        ExtremalCertificate { m, subset, index, coefficients, codeword, height }
    }

    /// Codeword lies in the code and its m-height is `expected` to within `rel`.
    pub fn verify(&self, code: &RealCode<T>, expected: &ExtendedReal<T>, rel: T) -> bool {
        let in_code = code.syndrome_residual(&self.codeword) <= rel.sqrt();
        let recomputed = code.encode(&self.coefficients);
        let consistent = recomputed
            .iter()
            .zip(&self.codeword)
            .all(|(a, b)| (*a - *b).abs() <= rel * a.abs().max(T::one()));
        in_code && consistent && self.height.approx_eq(expected, rel)
    }
}

/// Replaces `best` only when `candidate` is larger by more than `rel`, so the
/// earliest maximizer survives floating-point noise.
pub(crate) fn improves<T: Scalar>(candidate: &ExtendedReal<T>, best: &ExtendedReal<T>, rel: T) -> bool {
    match (*candidate, *best) {
        (ExtendedReal::Infinite, ExtendedReal::Infinite) => false,
        (ExtendedReal::Infinite, _) => true,
        (_, ExtendedReal::Infinite) => false,
        (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => a > b + rel * b.abs().max(T::one()),
    }
}

pub(crate) fn check_m<T: Scalar>(code: &RealCode<T>, m: usize) -> Result<(), HeightError> {
    if m == 0 || m >= code.n() {
        return Err(HeightError::BadIndex { m, n: code.n() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extended_real_order() {
        let a = ExtendedReal::Finite(2.0);
        let b = ExtendedReal::Finite(3.0);
        assert!(a < b && b < ExtendedReal::Infinite);
        assert_eq!(a.max(ExtendedReal::Infinite), ExtendedReal::Infinite);
        assert_eq!(format!("{}", ExtendedReal::<f64>::Infinite), "inf");
        assert!(a.approx_eq(&ExtendedReal::Finite(2.0 + 1e-12), 1e-9));
        assert!(!a.approx_eq(&ExtendedReal::Infinite, 1e-9));
        assert_eq!(ExtendedReal::<f64>::from_f64(f64::INFINITY), ExtendedReal::Infinite);
    }

    #[test]
    fn improvement_is_strict() {
        let one = ExtendedReal::Finite(1.0);
        assert!(!improves(&ExtendedReal::Finite(1.0 + 1e-12), &one, 1e-9));
        assert!(improves(&ExtendedReal::Finite(1.1), &one, 1e-9));
        assert!(improves(&ExtendedReal::Infinite, &one, 1e-9));
        assert!(!improves(&ExtendedReal::Infinite, &ExtendedReal::Infinite, 1e-9));
    }
}

//! Dense linear programming.
//!
//! [`solve_lp`] is a two-phase tableau simplex with Bland's least-index rule.
//! [`solve_lp_by_vertices`] enumerates basic points exhaustively and exists
//! to check the simplex in tests. [`lad_minimize`] and [`weighted_median_lad`]
//! solve least-absolute-deviations regression, the latter in closed form for a
//! single regressor.

mod lad;
mod simplex;
mod vertices;

pub use lad::{lad_minimize, weighted_median_lad, LadSolution};
pub use simplex::solve_lp;
pub use vertices::solve_lp_by_vertices;

use thiserror::Error;

use crate::linalg::{IndexSubset, Matrix};
use crate::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("malformed program: {0}")]
    Shape(String),
    #[error("program too large for vertex enumeration ({vars} variables, {constraints} constraints)")]
    TooLarge { vars: usize, constraints: usize },
    #[error("simplex exceeded {0} pivots")]
    IterationLimit(usize),
    #[error("regression direction is the zero vector")]
    ZeroDirection,
}

/// `maximize c·x` subject to `A x ≤ b`, with `x` free.
///
/// Lower-bound and equality constraints are written as negated or paired rows.
#[derive(Clone, Debug, PartialEq)]
pub struct LpProblem<T> {
    pub objective: Vec<T>,
    pub constraints: Matrix<T>,
    pub rhs: Vec<T>,
}

impl<T: Scalar> LpProblem<T> {
    pub fn new(objective: Vec<T>, constraints: Matrix<T>, rhs: Vec<T>) -> Result<Self, LpError> {
        if constraints.cols() != objective.len() {
            return Err(LpError::Shape(format!(
                "{} objective coefficients for {} columns",
                objective.len(),
                constraints.cols()
            )));
        }
        if constraints.rows() != rhs.len() {
            return Err(LpError::Shape(format!(
                "{} right-hand sides for {} rows",
                rhs.len(),
                constraints.rows()
            )));
        }
        if objective.iter().chain(&rhs).any(|x| !x.is_finite()) {
            return Err(LpError::Shape("non-finite coefficient".into()));
        }
        Ok(LpProblem { objective, constraints, rhs })
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    #[inline]
    pub fn num_constraints(&self) -> usize {
        self.rhs.len()
    }

    pub fn objective_at(&self, x: &[T]) -> T {
        crate::linalg::dot(&self.objective, x)
    }

    /// Largest violation `max_i (A x - b)_i`, clamped at zero.
    pub fn max_violation(&self, x: &[T]) -> T {
        self.constraints
            .mul_vec(x)
            .iter()
            .zip(&self.rhs)
            .fold(T::zero(), |m, (&ax, &b)| m.max(ax - b))
    }

    /// Rows tight at `x` to within `tol` (scaled by `max(1, |b_i|)`).
    pub fn active_set(&self, x: &[T], tol: T) -> IndexSubset {
        let ax = self.constraints.mul_vec(x);
        let members = ax
            .iter()
            .zip(&self.rhs)
            .enumerate()
            .filter(|(_, (&l, &b))| (l - b).abs() <= tol * b.abs().max(T::one()))
            .map(|(i, _)| i)
            .collect();
        IndexSubset::new(self.num_constraints(), members).expect("indices increase")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    /// Present iff `status == Optimal`.
    pub optimum: Option<T>,
    /// Present iff `status == Optimal`.
    pub point: Option<Vec<T>>,
    /// Constraints tight at `point`; empty unless optimal.
    pub active_set: IndexSubset,
}

impl<T: Scalar> LpSolution<T> {
    pub(crate) fn optimal(p: &LpProblem<T>, x: Vec<T>, tol: T) -> Self {
        LpSolution {
            status: LpStatus::Optimal,
            optimum: Some(p.objective_at(&x)),
            active_set: p.active_set(&x, tol),
            point: Some(x),
        }
    }

    pub(crate) fn without_point(p: &LpProblem<T>, status: LpStatus) -> Self {
        LpSolution {
            status,
            optimum: None,
            point: None,
            active_set: IndexSubset::empty(p.num_constraints()),
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

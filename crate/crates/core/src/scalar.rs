use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssignOps, ToPrimitive};

/// Real scalar the whole crate is generic over.
///
/// Implemented for `f32` and `f64`. Each precision carries its own default
/// tolerances, since the `f64` defaults are below `f32` machine epsilon.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssignOps
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Relative pivot threshold used for rank and inversion.
    const RANK_TOL: f64;
    /// Absolute residual tolerance for LP feasibility and optimality.
    const LP_TOL: f64;
    /// Relative tolerance for "equal magnitude" tests.
    const MAGNITUDE_TOL: f64;
    /// Absolute floor below which magnitudes compare equal.
    const MAGNITUDE_FLOOR: f64;

    /// Lossy conversion from `f64`; constants in this crate are always representable.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn from_usize_exact(x: usize) -> Self {
        Self::from_usize(x).expect("usize representable in scalar type")
    }
}

impl Scalar for f64 {
    const RANK_TOL: f64 = 1e-9;
    const LP_TOL: f64 = 1e-9;
    const MAGNITUDE_TOL: f64 = 1e-9;
    const MAGNITUDE_FLOOR: f64 = 1e-12;
}

impl Scalar for f32 {
    const RANK_TOL: f64 = 1e-4;
    const LP_TOL: f64 = 1e-4;
    const MAGNITUDE_TOL: f64 = 1e-4;
    const MAGNITUDE_FLOOR: f64 = 1e-6;
}

/// Numerical tolerances threaded through every algorithm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance<T> {
    /// Pivot acceptance threshold, relative to the largest entry of the matrix.
    pub rank: T,
    /// Absolute feasibility / optimality threshold inside the simplex.
    pub lp: T,
    /// Relative threshold for magnitude ties (`P_m` sets and ±1 filters).
    pub magnitude: T,
    /// Absolute floor for magnitude ties.
    pub magnitude_floor: T,
}

impl<T: Scalar> Default for Tolerance<T> {
    fn default() -> Self {
        Tolerance {
            rank: T::lit(T::RANK_TOL),
            lp: T::lit(T::LP_TOL),
            magnitude: T::lit(T::MAGNITUDE_TOL),
            magnitude_floor: T::lit(T::MAGNITUDE_FLOOR),
        }
    }
}

impl<T: Scalar> Tolerance<T> {
    /// Uses `tol` for rank, LP and magnitude tests; the magnitude floor is `tol / 1000`.
    pub fn uniform(tol: T) -> Self {
        Tolerance {
            rank: tol,
            lp: tol,
            magnitude: tol,
            magnitude_floor: tol * T::lit(1e-3),
        }
    }

    /// `|a| == |b|` up to the magnitude tolerance.
    #[inline]
    pub fn same_magnitude(&self, a: T, b: T) -> bool {
        let (a, b) = (a.abs(), b.abs());
        (a - b).abs() <= self.magnitude * a.max(b) + self.magnitude_floor
    }
}

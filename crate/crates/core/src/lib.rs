//! Height profiles of linear codes over the real field.
//!
//! The m-height of a real vector is the ratio between its largest entry
//! magnitude and its (m+1)-st largest; the m-height of a code is the largest
//! m-height of any nonzero codeword. This crate computes the full height
//! profile of small codes by four independent routes (primal LP, dual LP via
//! least absolute deviations, and two finite combinatorial enumerations), and
//! builds the structured code families whose profiles are known in closed
//! form.
//!
//! Everything numeric is generic over [`Scalar`] (`f64` and `f32`); the
//! `*64` aliases at the crate root are what most callers want.

pub mod linalg;
pub mod lp;
pub mod codes;
pub mod heights;
pub mod analysis;
mod scalar;

pub use scalar::{Scalar, Tolerance};

pub type Matrix64 = linalg::Matrix<f64>;
pub type Matrix32 = linalg::Matrix<f32>;

pub type RealCode64 = codes::RealCode<f64>;
pub type RealCode32 = codes::RealCode<f32>;
pub type HeightProfile64 = heights::HeightProfile<f64>;
pub type HeightProfile32 = heights::HeightProfile<f32>;
pub type Tolerance64 = Tolerance<f64>;

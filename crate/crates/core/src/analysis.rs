//! Geometric checks on extremal codewords, closed forms for the negacyclic
//! family and its dual, and the error-tolerance calculator for analog
//! vector–matrix multiplication.

use std::f64::consts::PI;

use thiserror::Error;

use crate::codes::is_spherical;
use crate::codes::RealCode;
use crate::heights::{dual_distance, full_profile, ExtendedReal, ExtremalCertificate, HeightError, Method};
use crate::linalg::{dot, rank, IndexSubset, Matrix};
use crate::{Scalar, Tolerance};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("invalid arguments: {0}")]
    BadArgs(String),
    #[error("generator columns are not unit vectors")]
    NotSpherical,
    #[error("no {needed} linearly independent points share a dot product with u")]
    NoWitness { needed: usize },
    #[error("2τ+σ = {needed} is not below the minimum distance {d}")]
    UncorrectableRegime { needed: usize, d: usize },
    #[error(transparent)]
    Height(#[from] HeightError),
}

/// `{g_j} ∪ {−g_j}`: point `j < n` is `g_j`, point `n + j` is `−g_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointMultiset<T> {
    pub points: Vec<Vec<T>>,
}

impl<T: Scalar> PointMultiset<T> {
    pub fn from_generator(g: &Matrix<T>, tol: T) -> Result<Self, AnalysisError> {
        if !is_spherical(g, tol) {
            return Err(AnalysisError::NotSpherical);
        }
        let cols: Vec<Vec<T>> = (0..g.cols()).map(|j| g.column(j)).collect();
        let negated = cols.iter().map(|c| c.iter().map(|&x| -x).collect());
        Ok(PointMultiset { points: cols.iter().cloned().chain(negated).collect() })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Indices into the point multiset of `code.generator()` that have equal dot
/// products with the certificate's `u` and are linearly independent, at
/// least `d⊥ − 1` of them. Dot products are compared to within `eq_tol`
/// relative to `max(1, |u·g|)`.
pub fn equidistance_witness<T: Scalar>(
    code: &RealCode<T>,
    cert: &ExtremalCertificate<T>,
    eq_tol: T,
    tol: &Tolerance<T>,
) -> Result<IndexSubset, AnalysisError> {
    let points = PointMultiset::from_generator(code.generator(), tol.lp.sqrt())?;
    let needed = dual_distance(code, tol.rank).map_or(1, |d| d.saturating_sub(1).max(1));
    let u = &cert.coefficients;
    let mut dots: Vec<(T, usize)> = points.points.iter().enumerate().map(|(j, p)| (dot(u, p), j)).collect();
    dots.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite").then(a.1.cmp(&b.1)));

    let mut best: Vec<usize> = Vec::new();
    let mut start = 0;
    while start < dots.len() {
        let anchor = dots[start].0;
        let mut end = start + 1;
        while end < dots.len() && (dots[end].0 - anchor).abs() <= eq_tol * anchor.abs().max(T::one()) {
            end += 1;
        }
        let mut group: Vec<usize> = dots[start..end].iter().map(|&(_, j)| j).collect();
        group.sort_unstable();
        let independent = independent_prefix(&points, &group, tol.rank);
        if independent.len() > best.len() {
            best = independent;
        }
        start = end;
    }
    if best.len() < needed {
        return Err(AnalysisError::NoWitness { needed });
    }
    Ok(IndexSubset::from_unsorted(points.len(), best).expect("distinct points"))
}

/// Greedy maximal independent subset, in index order.
fn independent_prefix<T: Scalar>(points: &PointMultiset<T>, group: &[usize], tol: T) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for &j in group {
        let mut rows: Vec<Vec<T>> = chosen.iter().map(|&t| points.points[t].clone()).collect();
        rows.push(points.points[j].clone());
        let m = Matrix::from_rows(&rows).expect("equal lengths");
        if rank(&m, tol) == rows.len() {
            chosen.push(j);
        }
    }
    chosen
}

fn check_n(n: usize) -> Result<f64, AnalysisError> {
    if n <= 2 {
        return Err(AnalysisError::BadArgs(format!("n = {n} must exceed 2")));
    }
    Ok(n as f64)
}

/// `h_1` and `h_2` of the negacyclic `[n, n−2]` code, with `α = π/n`:
/// `h_1 = 1/sin(α/2) − 1` for odd `n`, `cot(α/2) − 1` for even `n`;
/// `h_2 = 1/(2 sin²(α/2)) − 1`.
pub fn closed_form_negacyclic(n: usize, m: usize) -> Result<f64, AnalysisError> {
    let half = PI / check_n(n)? / 2.0;
    match m {
        1 if n % 2 == 1 => Ok(1.0 / half.sin() - 1.0),
        1 => Ok(1.0 / half.tan() - 1.0),
        2 => Ok(1.0 / (2.0 * half.sin().powi(2)) - 1.0),
        _ => Err(AnalysisError::BadArgs(format!("m = {m} is not 1 or 2"))),
    }
}

/// `h_m` of the `[n, 2]` dual of the negacyclic code, with `β = π/(2n)`:
/// `1/cos((m+1)β)` for odd `m`, `cos β / cos((m+1)β)` for even `m`.
pub fn closed_form_negacyclic_dual(n: usize, m: usize) -> Result<f64, AnalysisError> {
    let beta = PI / (2.0 * check_n(n)?);
    if m == 0 || m > n - 2 {
        return Err(AnalysisError::BadArgs(format!("m = {m} outside 1..={}", n - 2)));
    }
    let denom = ((m + 1) as f64 * beta).cos();
    Ok(if m % 2 == 1 { 1.0 / denom } else { beta.cos() / denom })
}

/// `τ` locatable errors, `σ` further detectable errors, each of magnitude at
/// most `δ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ToleranceQuery<T> {
    pub tau: usize,
    pub sigma: usize,
    pub delta: T,
}

/// Smallest admissible `Δ = 2δ(h_{2τ+σ}(C) + 1)`.
pub fn vmm_min_ratio<T: Scalar>(code: &RealCode<T>, q: &ToleranceQuery<T>, tol: &Tolerance<T>) -> Result<T, AnalysisError> {
    if !(q.delta > T::zero()) {
        return Err(AnalysisError::BadArgs("δ must be positive".into()));
    }
    let needed = 2 * q.tau + q.sigma;
    let h = if needed == 0 {
        ExtendedReal::Finite(T::one())
    } else if needed >= code.n() {
        ExtendedReal::Infinite
    } else {
        full_profile(code, Method::Auto, tol)?.heights[needed]
    };
    match h {
        ExtendedReal::Finite(h) => Ok(T::lit(2.0) * q.delta * (h + T::one())),
        ExtendedReal::Infinite => {
            let d = crate::heights::min_distance_via_generator(code, tol.rank);
            Err(AnalysisError::UncorrectableRegime { needed, d })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{make_icosahedral, make_negacyclic};
    use crate::heights::{height_comb_primal, height_lp_primal, LpOptions};

    #[test]
    fn closed_forms() {
        let s2 = 2f64.sqrt();
        assert!((closed_form_negacyclic(3, 1).unwrap() - 1.0).abs() < 1e-12);
        assert!((closed_form_negacyclic(4, 2).unwrap() - (1.0 + s2)).abs() < 1e-12);
        assert!((closed_form_negacyclic(4, 1).unwrap() - s2).abs() < 1e-12);
        assert!((closed_form_negacyclic(5, 2).unwrap() - (2.0 + 5f64.sqrt())).abs() < 1e-12);
        assert!((closed_form_negacyclic_dual(4, 1).unwrap() - s2).abs() < 1e-12);
        assert!((closed_form_negacyclic_dual(4, 2).unwrap() - (1.0 + s2)).abs() < 1e-12);
        assert!((closed_form_negacyclic_dual(6, 1).unwrap() - 2.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!(closed_form_negacyclic(2, 1).is_err());
        assert!(closed_form_negacyclic(5, 3).is_err());
        assert!(closed_form_negacyclic_dual(5, 4).is_err());
    }

    #[test]
    fn vmm_calculator() {
        let c = make_icosahedral::<f64>();
        let tol = Tolerance::default();
        let q = ToleranceQuery { tau: 1, sigma: 0, delta: 1.0 };
        assert!((vmm_min_ratio(&c, &q, &tol).unwrap() - 2.0 * (5f64.sqrt() + 1.0)).abs() < 1e-8);
        let q = ToleranceQuery { tau: 0, sigma: 0, delta: 0.5 };
        assert_eq!(vmm_min_ratio(&c, &q, &tol).unwrap(), 2.0);
        let q = ToleranceQuery { tau: 2, sigma: 0, delta: 1.0 };
        assert_eq!(vmm_min_ratio(&c, &q, &tol), Err(AnalysisError::UncorrectableRegime { needed: 4, d: 4 }));
    }

    #[test]
    fn witnesses() {
        let tol = Tolerance::default();
        let ico_dual = make_icosahedral::<f64>().dual().unwrap();
        let cert = height_lp_primal(&ico_dual, 3, &tol, LpOptions::default()).unwrap().certificate.unwrap();
        let w = equidistance_witness(&ico_dual, &cert, 1e-7, &tol).unwrap();
        assert!(w.len() >= 3);
        for n in 3..=8 {
            let c = make_negacyclic::<f64>(n).unwrap().dual().unwrap();
            for m in 1..=n - 2 {
                let cert = height_comb_primal(&c, m, &tol).unwrap().certificate;
                assert!(equidistance_witness(&c, &cert, 1e-7, &tol).is_ok(), "n={n} m={m}");
            }
        }
    }
}

use rayon::prelude::*;

use crate::codes::RealCode;
use crate::heights::{improves, ExtendedReal, HeightError};
use crate::linalg::{enumerate_subsets, invert, kernel, norm1, IndexSubset};
use crate::{Scalar, Tolerance};

#[derive(Clone, Debug, PartialEq)]
pub struct RHeight<T> {
    /// `h_r(C)`; equal to both routes within tolerance.
    pub value: ExtendedReal<T>,
    /// `max_S max_{i∈S} ‖(G)_S̄^{-1} g_i‖₁` over `r`-subsets `S`.
    pub via_inverse: T,
    /// `max ‖c‖₁ − 1` over minimum-weight dual codewords normalized to have
    /// an entry equal to 1.
    pub via_dual_codewords: T,
    /// First maximizing `(S, i)` of the inverse route.
    pub argmax: (IndexSubset, usize),
}

/// `h_r(C)` of an MDS code, computed two ways.
pub fn r_height<T: Scalar>(code: &RealCode<T>, tol: &Tolerance<T>) -> Result<RHeight<T>, HeightError> {
    let (n, k, r) = (code.n(), code.k(), code.r());
    if r == 0 || k == 0 || !code.is_mds(tol.rank) {
        return Err(HeightError::NotMds);
    }
    let g = code.generator();
    let per_subset: Vec<(IndexSubset, Vec<T>)> = enumerate_subsets(n, r)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|s| {
            let inv = invert(&g.columns_of(&s.complement()), tol.rank).expect("MDS");
            let sums = s.iter().map(|i| norm1(&inv.mul_vec(&g.column(i)))).collect();
            (s, sums)
        })
        .collect();
    let mut best: Option<(T, IndexSubset, usize)> = None;
    for (s, sums) in per_subset {
        for (i, v) in s.iter().zip(sums) {
            let better = match &best {
                None => true,
                Some((b, ..)) => improves(&ExtendedReal::Finite(v), &ExtendedReal::Finite(*b), tol.magnitude),
            };
            if better {
                best = Some((v, s.clone(), i));
            }
        }
    }
    let (via_inverse, s, i) = best.expect("r ≥ 1");

    let via_dual_codewords = enumerate_subsets(n, k + 1)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|x| {
            let y = kernel(&g.columns_of(&x), tol.rank);
            debug_assert_eq!(y.rows(), 1);
            let y = y.row(0);
            let smallest = y.iter().fold(T::infinity(), |acc, v| acc.min(v.abs()));
            norm1(y) / smallest - T::one()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(T::zero(), T::max);

    Ok(RHeight { value: ExtendedReal::Finite(via_inverse), via_inverse, via_dual_codewords, argmax: (s, i) })
}

/// `c = sgn((G)_I^{-1} g_i)ᵀ (G)_I^{-1} G`, an `m`-extremal codeword of an MDS
/// code when `(S, i, I)` solves the comb dual max–min.
pub fn mds_extremal_codeword<T: Scalar>(
    code: &RealCode<T>,
    m: usize,
    s: &IndexSubset,
    i: usize,
    info: &IndexSubset,
    tol: &Tolerance<T>,
) -> Result<crate::heights::ExtremalCertificate<T>, HeightError> {
    if !code.is_mds(tol.rank) {
        return Err(HeightError::NotMds);
    }
    let inv = invert(&code.generator().columns_of(info), tol.rank).map_err(|_| HeightError::NotMds)?;
    let column = inv.mul_vec(&code.generator().column(i));
    let signs: Vec<T> = column
        .iter()
        .map(|&v| if v > T::zero() { T::one() } else if v < T::zero() { -T::one() } else { T::zero() })
        .collect();
    let coefficients = inv.left_mul(&signs);
    Ok(crate::heights::ExtremalCertificate::from_coefficients(code, m, s.clone(), i, coefficients, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{make_axis_replicated, make_dodecahedral, make_icosahedral, make_negacyclic};
    use crate::heights::height_comb_dual;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    #[test]
    fn table_values() {
        let s5 = 5f64.sqrt();
        let ico = r_height(&make_icosahedral::<f64>(), &tol()).unwrap();
        assert!((ico.via_inverse - (2.0 + s5)).abs() < 1e-9);
        assert!((ico.via_dual_codewords - (2.0 + s5)).abs() < 1e-9);
        let dod = r_height(&make_dodecahedral::<f64>(), &tol()).unwrap();
        assert!((dod.via_inverse - (9.0 + 4.0 * s5)).abs() < 1e-8);
        assert!((dod.via_dual_codewords - (9.0 + 4.0 * s5)).abs() < 1e-8);
        let neg = r_height(&make_negacyclic::<f64>(6).unwrap(), &tol()).unwrap();
        let want = 1.0 / (2.0 * (std::f64::consts::PI / 12.0).sin().powi(2)) - 1.0;
        assert!((neg.via_dual_codewords - want).abs() < 1e-9 && (neg.via_inverse - want).abs() < 1e-9);
    }

    #[test]
    fn non_mds_refused() {
        let c = make_axis_replicated::<f64>(6).unwrap();
        assert_eq!(r_height(&c, &tol()), Err(HeightError::NotMds));
    }

    #[test]
    fn negacyclic_extremal_shapes() {
        let c = make_negacyclic::<f64>(7).unwrap();
        let d = height_comb_dual(&c, 2, &tol()).unwrap();
        let cert = mds_extremal_codeword(&c, 2, &d.subset, d.index, d.info_set.as_ref().unwrap(), &tol()).unwrap();
        assert!(cert.height.approx_eq(&d.value, 1e-9));
        let h = d.value.finite().unwrap();
        let mut mags: Vec<f64> = cert.codeword.iter().map(|x| x.abs()).collect();
        mags.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert!((mags[0] - h).abs() < 1e-9 && (mags[1] - h).abs() < 1e-9);
        assert!(mags[2..].iter().all(|x| (x - 1.0).abs() < 1e-9));

        let c = make_negacyclic::<f64>(6).unwrap();
        let d = height_comb_dual(&c, 1, &tol()).unwrap();
        let cert = mds_extremal_codeword(&c, 1, &d.subset, d.index, d.info_set.as_ref().unwrap(), &tol()).unwrap();
        let mut mags: Vec<f64> = cert.codeword.iter().map(|x| x.abs()).collect();
        mags.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert!((mags[0] - d.value.finite().unwrap()).abs() < 1e-9);
        assert!(mags[5].abs() < 1e-9 && mags[1..5].iter().all(|x| (x - 1.0).abs() < 1e-9));
    }
}

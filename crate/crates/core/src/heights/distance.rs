use crate::codes::RealCode;
use crate::linalg::{enumerate_subsets, rank_at_scale, Matrix};
use crate::Scalar;

/// Smallest `w` such that some `w` columns of `m` are linearly dependent,
/// or `None` if all columns are independent.
fn smallest_dependent_columns<T: Scalar>(m: &Matrix<T>, tol: T) -> Option<usize> {
    let n = m.cols();
    if m.rows() == 0 {
        return Some(1);
    }
    // Every column set larger than the row count is dependent.
    let scale = m.max_abs();
    for w in 1..=(m.rows() + 1).min(n) {
        if enumerate_subsets(n, w).any(|s| rank_at_scale(&m.columns_of(&s), tol, scale) < w) {
            return Some(w);
        }
    }
    None
}

/// Minimum Hamming weight of a nonzero codeword: the smallest number of
/// linearly dependent parity-check columns.
pub fn min_distance<T: Scalar>(code: &RealCode<T>, tol: T) -> usize {
    smallest_dependent_columns(code.parity_check(), tol).unwrap_or(code.n())
}

/// Minimum distance as the smallest `m` for which some `m`-subset `S` leaves
/// `(G)_S̄` rank deficient, i.e. some codeword is supported inside `S`.
pub fn min_distance_via_generator<T: Scalar>(code: &RealCode<T>, tol: T) -> usize {
    let (n, k) = (code.n(), code.k());
    let g = code.generator();
    let scale = g.max_abs();
    for m in 1..n {
        if n - m < k {
            return m;
        }
        if enumerate_subsets(n, m).any(|s| rank_at_scale(&g.columns_of(&s.complement()), tol, scale) < k) {
            return m;
        }
    }
    n
}

/// Minimum distance of the dual code; `None` when the dual is `{0}` (`k = n`).
pub fn dual_distance<T: Scalar>(code: &RealCode<T>, tol: T) -> Option<usize> {
    if code.r() == 0 {
        return None;
    }
    Some(smallest_dependent_columns(code.generator(), tol).unwrap_or(code.n()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{make_dodecahedral, make_icosahedral, make_negacyclic};

    #[test]
    fn mds_distances() {
        let ico = make_icosahedral::<f64>();
        assert_eq!(min_distance(&ico, 1e-9), 4);
        assert_eq!(min_distance_via_generator(&ico, 1e-9), 4);
        assert_eq!(dual_distance(&ico, 1e-9), Some(4));
        let dod = make_dodecahedral::<f64>();
        assert_eq!(min_distance(&dod, 1e-9), 4);
        assert_eq!(dual_distance(&dod, 1e-9), Some(8));
        for n in 3..=9 {
            let c = make_negacyclic::<f64>(n).unwrap();
            assert_eq!(min_distance(&c, 1e-9), 3);
            assert_eq!(min_distance_via_generator(&c, 1e-9), 3);
            assert_eq!(dual_distance(&c, 1e-9), Some(n - 1));
        }
    }

    #[test]
    fn repetition_and_zero_column() {
        let rep = RealCode::from_generator("rep", Matrix::from_f64_rows(&[&[1.0; 4]]).unwrap(), 1e-9).unwrap();
        assert_eq!(min_distance(&rep, 1e-9), 4);
        assert_eq!(min_distance_via_generator(&rep, 1e-9), 4);
        let g = Matrix::from_f64_rows(&[&[1.0, 0.0, 1.0]]).unwrap();
        let c = RealCode::from_generator("z", g, 1e-9).unwrap();
        assert_eq!(min_distance(&c, 1e-9), 2);
        assert_eq!(dual_distance(&c, 1e-9), Some(1));
        let full = RealCode::from_generator("id", Matrix::<f64>::identity(3), 1e-9).unwrap();
        assert_eq!(min_distance(&full, 1e-9), 1);
        assert_eq!(dual_distance(&full, 1e-9), None);
    }

    #[test]
    fn roundoff_column_counts_as_zero() {
        let h = Matrix::from_f64_rows(&[&[-0.5, 1.4e-16, 0.5, 1.0]]).unwrap();
        let c = RealCode::from_parity_check("h", h, 1e-9).unwrap();
        assert_eq!(min_distance(&c, 1e-9), 1);
        assert_eq!(min_distance_via_generator(&c, 1e-9), 1);
    }
}

use crate::heights::{ExtendedReal, HeightError};
use crate::linalg::IndexSubset;
use crate::{Scalar, Tolerance};

/// Coordinates ordered by descending magnitude; ties keep index order.
#[derive(Clone, Debug, PartialEq)]
pub struct SortedView<T> {
    pub permutation: Vec<usize>,
    pub magnitudes: Vec<T>,
}

pub fn sorted_view<T: Scalar>(x: &[T]) -> SortedView<T> {
    let mut permutation: Vec<usize> = (0..x.len()).collect();
    permutation.sort_by(|&a, &b| x[b].abs().partial_cmp(&x[a].abs()).expect("finite entries").then(a.cmp(&b)));
    let magnitudes = permutation.iter().map(|&j| x[j].abs()).collect();
    SortedView { permutation, magnitudes }
}

fn check<T: Scalar>(x: &[T], m: usize) -> Result<SortedView<T>, HeightError> {
    if m >= x.len() {
        return Err(HeightError::BadIndex { m, n: x.len() });
    }
    let view = sorted_view(x);
    if view.magnitudes[0] == T::zero() {
        return Err(HeightError::ZeroVector);
    }
    Ok(view)
}

/// `|x_π(0) / x_π(m)|`, infinite when `x_π(m) = 0` exactly.
pub fn vector_m_height<T: Scalar>(x: &[T], m: usize) -> Result<ExtendedReal<T>, HeightError> {
    let v = check(x, m)?;
    let small = v.magnitudes[m];
    Ok(if small == T::zero() { ExtendedReal::Infinite } else { ExtendedReal::Finite(v.magnitudes[0] / small) })
}

/// As [`vector_m_height`], but magnitudes below `magnitude_floor · ‖x‖∞`
/// count as zero.
pub fn vector_m_height_tol<T: Scalar>(x: &[T], m: usize, tol: &Tolerance<T>) -> Result<ExtendedReal<T>, HeightError> {
    let v = check(x, m)?;
    let (big, small) = (v.magnitudes[0], v.magnitudes[m]);
    Ok(if small <= tol.magnitude_floor * big { ExtendedReal::Infinite } else { ExtendedReal::Finite(big / small) })
}

/// `P_m(x)`: every index whose magnitude ties `|x_π(m)|`.
pub fn p_m_set<T: Scalar>(x: &[T], m: usize, tol: &Tolerance<T>) -> Result<IndexSubset, HeightError> {
    let v = check(x, m)?;
    let pivot = v.magnitudes[m];
    let members = (0..x.len()).filter(|&j| tol.same_magnitude(x[j], pivot)).collect();
    Ok(IndexSubset::new(x.len(), members).expect("increasing"))
}

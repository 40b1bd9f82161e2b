use crate::linalg::{norm1, Matrix};
use crate::lp::{solve_lp, LpError, LpProblem, LpStatus};
use crate::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct LadSolution<T> {
    /// Regression coefficients, one per row of the basis matrix.
    pub coefficients: Vec<T>,
    /// `‖a − v B‖₁` at the returned coefficients.
    pub value: T,
}

/// Minimizes `‖a − v B‖₁` over `v` by linear programming.
///
/// The program carries `v` together with auxiliary bounds `ê ≥ |a − vB|`:
/// maximize `−1·ê` subject to `−vB − ê ≤ −a` and `vB − ê ≤ a`.
/// A basis with no rows leaves nothing to fit and returns `‖a‖₁`.
pub fn lad_minimize<T: Scalar>(a: &[T], b: &Matrix<T>, tol: T) -> Result<LadSolution<T>, LpError> {
    let (p, q) = (b.rows(), b.cols());
    if a.len() != q {
        return Err(LpError::Shape(format!("target has {} entries, basis has {q} columns", a.len())));
    }
    if p == 0 {
        return Ok(LadSolution { coefficients: Vec::new(), value: norm1(a) });
    }
    let nv = p + q;
    let mut rows = Matrix::zeros(2 * q, nv);
    let mut rhs = Vec::with_capacity(2 * q);
    for j in 0..q {
        for t in 0..p {
            rows[(2 * j, t)] = -b[(t, j)];
            rows[(2 * j + 1, t)] = b[(t, j)];
        }
        rows[(2 * j, p + j)] = -T::one();
        rows[(2 * j + 1, p + j)] = -T::one();
        rhs.push(-a[j]);
        rhs.push(a[j]);
    }
    let mut objective = vec![T::zero(); nv];
    for c in objective.iter_mut().skip(p) {
        *c = -T::one();
    }
    let program = LpProblem::new(objective, rows, rhs)?;
    let sol = solve_lp(&program, tol)?;
    match (sol.status, sol.point) {
        (LpStatus::Optimal, Some(x)) => {
            let v = x[..p].to_vec();
            let value = residual_norm(a, b, &v);
            Ok(LadSolution { coefficients: v, value })
        }
        // Always feasible and bounded below; anything else is a solver fault.
        (status, _) => Err(LpError::Shape(format!("LAD program reported {status:?}"))),
    }
}

fn residual_norm<T: Scalar>(a: &[T], b: &Matrix<T>, v: &[T]) -> T {
    let fit = b.left_mul(v);
    a.iter().zip(&fit).fold(T::zero(), |s, (&x, &y)| s + (x - y).abs())
}

/// Closed-form single-regressor LAD: `min_v ‖a − v·b‖₁`.
///
/// The minimizer is the weighted median of the ratios `a_j / b_j` over the
/// support of `b`, weighted by `|b_j|`: after sorting ratios ascending, the
/// first breakpoint whose cumulative weight reaches half of `‖b‖₁`. When the
/// cumulative weight hits exactly one half, the whole segment up to the next
/// breakpoint is optimal and the smaller breakpoint is returned.
pub fn weighted_median_lad<T: Scalar>(a: &[T], b: &[T]) -> Result<(T, T), LpError> {
    if a.len() != b.len() {
        return Err(LpError::Shape("a and b differ in length".into()));
    }
    let mut pts: Vec<(T, T, usize)> = a
        .iter()
        .zip(b)
        .enumerate()
        .filter(|(_, (_, &bj))| bj != T::zero())
        .map(|(j, (&aj, &bj))| (aj / bj, bj.abs(), j))
        .collect();
    if pts.is_empty() {
        return Err(LpError::ZeroDirection);
    }
    pts.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite ratios").then(x.2.cmp(&y.2)));
    let half = pts.iter().map(|p| p.1).sum::<T>() / T::lit(2.0);
    let mut cum = T::zero();
    let mut v = pts[pts.len() - 1].0;
    for &(ratio, weight, _) in &pts {
        cum += weight;
        if cum >= half {
            v = ratio;
            break;
        }
    }
    let value = a.iter().zip(b).fold(T::zero(), |s, (&x, &y)| s + (x - v * y).abs());
    Ok((v, value))
}

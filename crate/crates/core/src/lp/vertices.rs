use crate::linalg::{self, enumerate_subsets, invert, kernel, orthonormalize, rank, row_basis, Matrix};
use crate::lp::{LpError, LpProblem, LpSolution, LpStatus};
use crate::Scalar;

const MAX_VARS: usize = 8;
const MAX_CONSTRAINTS: usize = 40;

/// Exhaustive LP oracle: evaluates every basic point and every extreme ray.
///
/// When `A` lacks full column rank the problem is first restricted to the row
/// space of `A`; an objective with a component along the lineality space is
/// unbounded whenever the program is feasible.
pub fn solve_lp_by_vertices<T: Scalar>(p: &LpProblem<T>, tol: T) -> Result<LpSolution<T>, LpError> {
    let (nv, nc) = (p.num_vars(), p.num_constraints());
    if nv > MAX_VARS || nc > MAX_CONSTRAINTS {
        return Err(LpError::TooLarge { vars: nv, constraints: nc });
    }
    let a = &p.constraints;
    let r = if nc == 0 { 0 } else { rank(a, tol) };

    // Orthonormal basis W (r x nv) of the row space; x = Wᵀ y.
    let w: Vec<Vec<T>> = if r == 0 { Vec::new() } else { orthonormalize(row_basis(a, tol).to_rows()) };
    let project = |v: &[T]| -> Vec<T> { w.iter().map(|wi| linalg::dot(wi, v)).collect() };
    let lift = |y: &[T]| -> Vec<T> {
        let mut x = vec![T::zero(); nv];
        for (wi, &yi) in w.iter().zip(y) {
            for (xj, &wij) in x.iter_mut().zip(wi) {
                *xj += yi * wij;
            }
        }
        x
    };
    let c_row = project(&p.objective);
    let c_perp = {
        let back = lift(&c_row);
        p.objective.iter().zip(&back).fold(T::zero(), |m, (&c, &b)| m.max((c - b).abs()))
    };
    let feasible_slack = |x: &[T]| -> bool {
        let ax = a.mul_vec(x);
        ax.iter().zip(&p.rhs).all(|(&l, &b)| l - b <= tol * b.abs().max(T::one()))
    };

    if r == 0 {
        let zero = vec![T::zero(); nv];
        if !feasible_slack(&zero) {
            return Ok(LpSolution::without_point(p, LpStatus::Infeasible));
        }
        if c_perp > tol {
            return Ok(LpSolution::without_point(p, LpStatus::Unbounded));
        }
        return Ok(LpSolution::optimal(p, zero, tol));
    }

    // Reduced constraint matrix A Wᵀ (nc x r), full column rank.
    let mut reduced = Matrix::zeros(nc, r);
    for i in 0..nc {
        for (t, wt) in w.iter().enumerate() {
            reduced[(i, t)] = linalg::dot(a.row(i), wt);
        }
    }

    let mut best: Option<(T, Vec<T>)> = None;
    for rows in enumerate_subsets(nc, r) {
        let sub = reduced.select_rows(rows.members());
        let Ok(inv) = invert(&sub, tol) else { continue };
        let rhs: Vec<T> = rows.iter().map(|i| p.rhs[i]).collect();
        let y = inv.mul_vec(&rhs);
        let x = lift(&y);
        if !feasible_slack(&x) {
            continue;
        }
        let val = p.objective_at(&x);
        let better = match &best {
            None => true,
            Some((bv, _)) => val > *bv + tol * bv.abs().max(T::one()),
        };
        if better {
            best = Some((val, x));
        }
    }
    let Some((_, x)) = best else {
        return Ok(LpSolution::without_point(p, LpStatus::Infeasible));
    };
    if c_perp > tol {
        return Ok(LpSolution::without_point(p, LpStatus::Unbounded));
    }

    // Recession cone {d : A Wᵀ d ≤ 0} is pointed; its extreme rays are cut out
    // by r - 1 independent tight rows.
    let scale = reduced.max_abs().max(T::one());
    for rows in enumerate_subsets(nc, r - 1) {
        let dirs = if r == 1 {
            Matrix::identity(1)
        } else {
            let sub = reduced.select_rows(rows.members());
            if rank(&sub, tol) != r - 1 {
                continue;
            }
            kernel(&sub, tol)
        };
        for t in 0..dirs.rows() {
            for sign in [T::one(), -T::one()] {
                let d: Vec<T> = dirs.row(t).iter().map(|&v| v * sign).collect();
                let ad = reduced.mul_vec(&d);
                if ad.iter().all(|&v| v <= tol * scale) && linalg::dot(&c_row, &d) > tol {
                    return Ok(LpSolution::without_point(p, LpStatus::Unbounded));
                }
            }
        }
    }
    Ok(LpSolution::optimal(p, x, tol))
}

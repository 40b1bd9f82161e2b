use crate::lp::{LpError, LpProblem, LpSolution, LpStatus};
use crate::Scalar;

/// Dense tableau: `rows` equality constraints over `cols` nonnegative columns,
/// right-hand side stored in the last column.
struct Tableau<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
    basis: Vec<usize>,
    pivots: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl<T: Scalar> Tableau<T> {
    #[inline]
    fn at(&self, i: usize, j: usize) -> T {
        self.a[i * (self.cols + 1) + j]
    }

    #[inline]
    fn rhs(&self, i: usize) -> T {
        self.at(i, self.cols)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.cols + 1;
        let p = self.at(r, c);
        for j in 0..w {
            self.a[r * w + j] /= p;
        }
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.a[i * w + c];
            if f == T::zero() {
                continue;
            }
            for j in 0..w {
                let v = self.a[r * w + j];
                self.a[i * w + j] -= f * v;
            }
            self.a[i * w + c] = T::zero();
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Maximizes `cost` over the columns `< allowed`, starting from the
    /// current (feasible) basis. Bland's rule: least-index entering column,
    /// least-index basic variable among tied ratios.
    fn run(&mut self, cost: &[T], allowed: usize, eps: T, limit: usize) -> Result<Outcome, LpError> {
        loop {
            if self.pivots > limit {
                return Err(LpError::IterationLimit(limit));
            }
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let z = (0..self.rows).fold(T::zero(), |s, i| s + cost[self.basis[i]] * self.at(i, j));
                cost[j] - z > eps
            });
            let Some(c) = entering else {
                return Ok(Outcome::Optimal);
            };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.rows {
                let aic = self.at(i, c);
                if aic <= eps {
                    continue;
                }
                let ratio = self.rhs(i) / aic;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        let slack = eps * (T::one() + br.abs());
                        if ratio < br - slack
                            || ((ratio - br).abs() <= slack && self.basis[i] < self.basis[bi])
                        {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            match leave {
                None => return Ok(Outcome::Unbounded),
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    fn drop_row(&mut self, r: usize) {
        let w = self.cols + 1;
        self.a.drain(r * w..(r + 1) * w);
        self.basis.remove(r);
        self.rows -= 1;
    }
}

/// Two-phase simplex on the augmented form.
///
/// Free variables are split as `x = x⁺ − x⁻`; every row gets a slack, and rows
/// with negative right-hand side get an artificial variable for phase one.
/// Deterministic: the same problem always yields the same basis and point.
pub fn solve_lp<T: Scalar>(p: &LpProblem<T>, tol: T) -> Result<LpSolution<T>, LpError> {
    let nv = p.num_vars();
    let nc = p.num_constraints();
    if nc == 0 {
        return Ok(if p.objective.iter().all(|c| c.abs() <= tol) {
            LpSolution::optimal(p, vec![T::zero(); nv], tol)
        } else {
            LpSolution::without_point(p, LpStatus::Unbounded)
        });
    }
    let negative: Vec<usize> = (0..nc).filter(|&i| p.rhs[i] < T::zero()).collect();
    let na = negative.len();
    let slack0 = 2 * nv;
    let art0 = slack0 + nc;
    let cols = art0 + na;
    let w = cols + 1;
    let mut a = vec![T::zero(); nc * w];
    let mut basis = vec![0; nc];
    let mut art = 0;
    for i in 0..nc {
        let sign = if p.rhs[i] < T::zero() { -T::one() } else { T::one() };
        for j in 0..nv {
            let v = p.constraints[(i, j)] * sign;
            a[i * w + j] = v;
            a[i * w + nv + j] = -v;
        }
        a[i * w + slack0 + i] = sign;
        a[i * w + cols] = p.rhs[i] * sign;
        if sign < T::zero() {
            a[i * w + art0 + art] = T::one();
            basis[i] = art0 + art;
            art += 1;
        } else {
            basis[i] = slack0 + i;
        }
    }
    let mut t = Tableau { rows: nc, cols, a, basis, pivots: 0 };
    let limit = 50 * (nc + cols) + 1000;
    let eps = tol;

    if na > 0 {
        let mut phase1 = vec![T::zero(); cols];
        for c in phase1.iter_mut().skip(art0) {
            *c = -T::one();
        }
        t.run(&phase1, cols, eps, limit)?;
        let infeasibility: T = (0..t.rows)
            .filter(|&i| t.basis[i] >= art0)
            .map(|i| t.rhs(i))
            .sum();
        let scale = p.rhs.iter().fold(T::one(), |m, b| m.max(b.abs()));
        if infeasibility > tol * scale {
            return Ok(LpSolution::without_point(p, LpStatus::Infeasible));
        }
        // Drive zero-level artificials out of the basis, dropping redundant rows.
        let mut i = 0;
        while i < t.rows {
            if t.basis[i] < art0 {
                i += 1;
                continue;
            }
            match (0..art0).find(|&j| t.at(i, j).abs() > eps && !t.basis.contains(&j)) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => t.drop_row(i),
            }
        }
    }

    let mut cost = vec![T::zero(); cols];
    for j in 0..nv {
        cost[j] = p.objective[j];
        cost[nv + j] = -p.objective[j];
    }
    match t.run(&cost, art0, eps, limit)? {
        Outcome::Unbounded => Ok(LpSolution::without_point(p, LpStatus::Unbounded)),
        Outcome::Optimal => {
            let mut x = vec![T::zero(); nv];
            for i in 0..t.rows {
                let b = t.basis[i];
                if b < nv {
                    x[b] += t.rhs(i);
                } else if b < 2 * nv {
                    x[b - nv] -= t.rhs(i);
                }
            }
            Ok(LpSolution::optimal(p, x, tol))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn lp(c: &[f64], a: &[&[f64]], b: &[f64]) -> LpProblem<f64> {
        LpProblem::new(c.to_vec(), Matrix::from_f64_rows(a).unwrap(), b.to_vec()).unwrap()
    }

    #[test]
    fn one_dimensional_box() {
        let s = solve_lp(&lp(&[1.0], &[&[1.0], &[-1.0]], &[1.0, 1.0]), 1e-9).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.optimum.unwrap() - 1.0).abs() < 1e-12);
        assert!((s.point.as_ref().unwrap()[0] - 1.0).abs() < 1e-12);
        assert_eq!(s.active_set.members(), &[0]);
    }

    #[test]
    fn unit_square_corner() {
        let p = lp(
            &[1.0, 1.0],
            &[&[1.0, 0.0], &[0.0, 1.0], &[-1.0, 0.0], &[0.0, -1.0]],
            &[1.0, 1.0, 0.0, 0.0],
        );
        let s = solve_lp(&p, 1e-9).unwrap();
        assert!((s.optimum.unwrap() - 2.0).abs() < 1e-12);
        let x = s.point.unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unbounded_and_infeasible() {
        let s = solve_lp(&lp(&[1.0], &[&[-1.0]], &[1.0]), 1e-9).unwrap();
        assert_eq!(s.status, LpStatus::Unbounded);
        let s = solve_lp(&lp(&[1.0], &[&[1.0], &[-1.0]], &[-1.0, -1.0]), 1e-9).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
        assert!(s.optimum.is_none() && s.point.is_none());
    }

    #[test]
    fn negative_rhs_needs_phase_one() {
        // x ≥ 2, x ≤ 5, maximize -x → x = 2.
        let s = solve_lp(&lp(&[-1.0], &[&[-1.0], &[1.0]], &[-2.0, 5.0]), 1e-9).unwrap();
        assert!((s.optimum.unwrap() + 2.0).abs() < 1e-12);
    }

    #[test]
    fn equality_via_paired_rows() {
        // x + y = 1, x,y ≥ 0, maximize 2x + y.
        let p = lp(
            &[2.0, 1.0],
            &[&[1.0, 1.0], &[-1.0, -1.0], &[-1.0, 0.0], &[0.0, -1.0]],
            &[1.0, -1.0, 0.0, 0.0],
        );
        let s = solve_lp(&p, 1e-9).unwrap();
        assert!((s.optimum.unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_point() {
        // Degenerate: many optimal vertices on the face x + y = 1.
        let p = lp(&[1.0, 1.0], &[&[1.0, 1.0], &[-1.0, 0.0], &[0.0, -1.0]], &[1.0, 0.0, 0.0]);
        let a = solve_lp(&p, 1e-9).unwrap();
        let b = solve_lp(&p, 1e-9).unwrap();
        assert_eq!(a, b);
    }
}

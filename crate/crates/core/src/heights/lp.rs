use rayon::prelude::*;

use crate::codes::RealCode;
use crate::heights::{check_m, improves, ExtendedReal, ExtremalCertificate, HeightError};
use crate::linalg::{enumerate_subsets, invert_at_scale, kernel, norm1, solve_consistent, IndexSubset, Matrix};
use crate::lp::{lad_minimize, solve_lp, weighted_median_lad, LpProblem, LpStatus};
use crate::{Scalar, Tolerance};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LpOptions {
    /// Rewrite `G` as `(G)_I^{-1} G` for an information set `I ⊆ S̄` before
    /// each primal program. Same optimum, better conditioned constraints.
    pub precondition: bool,
    /// Solve one-dimensional LAD problems by weighted median instead of LP.
    pub median_fast_path: bool,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions { precondition: false, median_fast_path: true }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpHeight<T> {
    pub value: ExtendedReal<T>,
    /// Lexicographically first maximizing `(S, i)`.
    pub argmax: Option<(IndexSubset, usize)>,
    /// Present for the primal route when the value is finite.
    pub certificate: Option<ExtremalCertificate<T>>,
    pub programs: usize,
}

/// `maximize u·g_i` subject to `-1 ≤ u (G)_S̄ ≤ 1`.
pub fn primal_program<T: Scalar>(g: &Matrix<T>, s: &IndexSubset, i: usize) -> LpProblem<T> {
    let k = g.rows();
    let rest = s.complement();
    let mut a = Matrix::zeros(2 * rest.len(), k);
    for (t, j) in rest.iter().enumerate() {
        for row in 0..k {
            a[(2 * t, row)] = g[(row, j)];
            a[(2 * t + 1, row)] = -g[(row, j)];
        }
    }
    LpProblem::new(g.column(i), a, vec![T::one(); 2 * rest.len()]).expect("well-formed program")
}

/// The dual of [`primal_program`] over `(y, z) ≥ 0`:
/// `minimize 1·(y + z)` subject to `(G)_S̄ (y − z) = g_i`, written as a
/// maximization of `−1·(y + z)`.
pub fn dual_program<T: Scalar>(g: &Matrix<T>, s: &IndexSubset, i: usize) -> LpProblem<T> {
    let k = g.rows();
    let rest = s.complement();
    let q = rest.len();
    let nv = 2 * q;
    let mut a = Matrix::zeros(2 * k + nv, nv);
    let mut b = Vec::with_capacity(2 * k + nv);
    for row in 0..k {
        for (t, j) in rest.iter().enumerate() {
            let v = g[(row, j)];
            a[(2 * row, t)] = v;
            a[(2 * row, q + t)] = -v;
            a[(2 * row + 1, t)] = -v;
            a[(2 * row + 1, q + t)] = v;
        }
        b.push(g[(row, i)]);
        b.push(-g[(row, i)]);
    }
    for t in 0..nv {
        a[(2 * k + t, t)] = -T::one();
        b.push(T::zero());
    }
    LpProblem::new(vec![-T::one(); nv], a, b).expect("well-formed program")
}

struct Candidate<T> {
    value: ExtendedReal<T>,
    index: usize,
    coefficients: Option<Vec<T>>,
}

fn primal_for_subset<T: Scalar>(
    code: &RealCode<T>,
    s: &IndexSubset,
    tol: &Tolerance<T>,
    opts: LpOptions,
) -> Result<Vec<Candidate<T>>, HeightError> {
    let g = code.generator();
    let k = code.k();
    // (G)_I^{-1} for the first information set inside S̄, if asked for.
    let transform = if opts.precondition {
        let rest = s.complement();
        enumerate_subsets(rest.len(), k).find_map(|local| {
            let cols: Vec<usize> = local.iter().map(|t| rest.members()[t]).collect();
            invert_at_scale(&g.select_columns(&cols), tol.rank, g.max_abs()).ok()
        })
    } else {
        None
    };
    let work = match &transform {
        Some(inv) => inv.matmul(g),
        None => g.clone(),
    };
    let mut out = Vec::with_capacity(s.len());
    for i in s.iter() {
        let sol = solve_lp(&primal_program(&work, s, i), tol.lp)?;
        out.push(match sol.status {
            LpStatus::Optimal => {
                let x = sol.point.expect("optimal has a point");
                let u = match &transform {
                    Some(inv) => inv.left_mul(&x),
                    None => x,
                };
                Candidate { value: ExtendedReal::Finite(sol.optimum.expect("optimal")), index: i, coefficients: Some(u) }
            }
            LpStatus::Unbounded => Candidate { value: ExtendedReal::Infinite, index: i, coefficients: None },
            LpStatus::Infeasible => unreachable!("u = 0 is always feasible"),
        });
    }
    Ok(out)
}

fn reduce<T: Scalar>(
    per_subset: Vec<(IndexSubset, Vec<Candidate<T>>)>,
    tol: &Tolerance<T>,
) -> (ExtendedReal<T>, Option<(IndexSubset, usize, Option<Vec<T>>)>) {
    let mut best = ExtendedReal::Finite(T::zero());
    let mut arg = None;
    for (s, cands) in per_subset {
        for c in cands {
            if arg.is_none() || improves(&c.value, &best, tol.magnitude) {
                best = c.value;
                arg = Some((s.clone(), c.index, c.coefficients));
            }
        }
    }
    (best, arg)
}

/// `h_m(C)` by one primal LP per `m`-subset `S` and `i ∈ S`. Any unbounded
/// program means `m ≥ d` and yields `Infinite`.
pub fn height_lp_primal<T: Scalar>(
    code: &RealCode<T>,
    m: usize,
    tol: &Tolerance<T>,
    opts: LpOptions,
) -> Result<LpHeight<T>, HeightError> {
    check_m(code, m)?;
    let subsets: Vec<IndexSubset> = enumerate_subsets(code.n(), m).collect();
    let programs = subsets.len() * m;
    let per_subset = subsets
        .into_par_iter()
        .map(|s| primal_for_subset(code, &s, tol, opts).map(|c| (s, c)))
        .collect::<Result<Vec<_>, _>>()?;
    let (value, arg) = reduce(per_subset, tol);
    let (argmax, certificate) = match arg {
        Some((s, i, Some(u))) if value.is_finite() => {
            let cert = ExtremalCertificate::from_coefficients(code, m, s.clone(), i, u, tol);
            (Some((s, i)), Some(cert))
        }
        Some((s, i, _)) => (Some((s, i)), None),
        None => (None, None),
    };
    Ok(LpHeight { value, argmax, certificate, programs })
}

/// `min ‖e‖₁` over `{e : (G)_S̄ e = g_i}`, infinite when the system is
/// inconsistent.
pub(crate) fn inner_minimum<T: Scalar>(
    g: &Matrix<T>,
    s: &IndexSubset,
    i: usize,
    tol: &Tolerance<T>,
    opts: LpOptions,
) -> Result<ExtendedReal<T>, HeightError> {
    let gs = g.columns_of(&s.complement());
    let Some(a) = solve_consistent(&gs, &g.column(i), tol.rank) else {
        return Ok(ExtendedReal::Infinite);
    };
    let b = kernel(&gs, tol.rank);
    let value = match b.rows() {
        0 => norm1(&a),
        1 if opts.median_fast_path => weighted_median_lad(&a, b.row(0))?.1,
        _ => lad_minimize(&a, &b, tol.lp)?.value,
    };
    Ok(ExtendedReal::Finite(value))
}

/// `h_m(C)` through the dual program: the largest, over `(S, i)`, of the
/// smallest L1 norm in the coset `{e : (G)_S̄ e = g_i}`.
pub fn height_lp_dual<T: Scalar>(
    code: &RealCode<T>,
    m: usize,
    tol: &Tolerance<T>,
    opts: LpOptions,
) -> Result<LpHeight<T>, HeightError> {
    check_m(code, m)?;
    let g = code.generator();
    let subsets: Vec<IndexSubset> = enumerate_subsets(code.n(), m).collect();
    let programs = subsets.len() * m;
    let per_subset = subsets
        .into_par_iter()
        .map(|s| {
            let cands = s
                .iter()
                .map(|i| inner_minimum(g, &s, i, tol, opts).map(|value| Candidate { value, index: i, coefficients: None }))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((s, cands))
        })
        .collect::<Result<Vec<_>, HeightError>>()?;
    let (value, arg) = reduce(per_subset, tol);
    Ok(LpHeight { value, argmax: arg.map(|(s, i, _)| (s, i)), certificate: None, programs })
}

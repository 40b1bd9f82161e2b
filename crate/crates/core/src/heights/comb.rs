use std::collections::HashMap;

use rayon::prelude::*;

use crate::codes::RealCode;
use crate::heights::distance::min_distance_via_generator;
use crate::heights::lp::primal_program;
use crate::heights::mds::mds_extremal_codeword;
use crate::heights::{check_m, improves, vector_m_height_tol, ExtendedReal, ExtremalCertificate, HeightError};
use crate::linalg::{binomial, enumerate_subsets, invert, invert_at_scale, norm_inf, rank_at_scale, IndexSubset, Matrix};
use crate::lp::{solve_lp, LpStatus};
use crate::{Scalar, Tolerance};

/// Every `ρ`-subset `I` of the columns of a `ρ x n` matrix `M` with `(M)_I`
/// invertible, paired with the systematic form `(M)_I^{-1} M`.
pub(crate) struct InfoSets<T> {
    pub sets: Vec<(IndexSubset, Matrix<T>)>,
    by_mask: HashMap<u64, usize>,
    /// All `ρ`-subsets examined, invertible or not.
    pub examined: u64,
}

fn mask(s: &IndexSubset) -> u64 {
    s.iter().fold(0u64, |m, j| m | 1 << j)
}

impl<T: Scalar> InfoSets<T> {
    pub fn new(m: &Matrix<T>, tol: T) -> Self {
        let (rho, n) = (m.rows(), m.cols());
        assert!(n <= 64, "information-set index supports n ≤ 64");
        let all: Vec<IndexSubset> = enumerate_subsets(n, rho).collect();
        let examined = all.len() as u64;
        let scale = m.max_abs();
        let sets: Vec<(IndexSubset, Matrix<T>)> = all
            .into_par_iter()
            .filter_map(|s| invert_at_scale(&m.columns_of(&s), tol, scale).ok().map(|inv| (s, inv)))
            .collect::<Vec<_>>()
            .into_iter()
            .map(|(s, inv)| {
                let sys = inv.matmul(m);
                (s, sys)
            })
            .collect();
        let by_mask = sets.iter().enumerate().map(|(t, (s, _))| (mask(s), t)).collect();
        InfoSets { sets, by_mask, examined }
    }

    pub fn lookup(&self, s: &IndexSubset) -> Option<usize> {
        self.by_mask.get(&mask(s)).copied()
    }

    pub fn is_complete(&self) -> bool {
        self.sets.len() as u64 == self.examined
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CombPrimalResult<T> {
    /// Maximum of `h_m(c)` over all candidates.
    pub value: ExtendedReal<T>,
    /// Maximum of `‖c‖∞` over candidates passing the `±1`-filter.
    pub filtered_value: ExtendedReal<T>,
    /// First maximizer in (information set, sign vector) order.
    pub certificate: ExtremalCertificate<T>,
    /// Some optimal candidate `c` has `rank((G)_{P_m(c)}) = k`.
    pub full_rank_tie_set: bool,
    /// Information-set candidates times sign vectors: `C(n, ρ) · 2^{k-1}`.
    pub candidates: u64,
    /// Candidates actually evaluated: `|Υ| · 2^{k-1}`.
    pub evaluated: u64,
}

fn sign_vector<T: Scalar>(k: usize, bits: u64) -> Vec<T> {
    (0..k).map(|t| if t > 0 && bits >> (t - 1) & 1 == 1 { -T::one() } else { T::one() }).collect()
}

/// `|v_j| > 1` count and `|v_j| < 1` count, with ties at 1 absorbed by the
/// magnitude tolerance.
fn filter_counts<T: Scalar>(v: impl Iterator<Item = T>, tol: &Tolerance<T>) -> (usize, usize) {
    let one = T::one();
    v.fold((0, 0), |(big, small), x| {
        if tol.same_magnitude(x, one) {
            (big, small)
        } else if x.abs() > one {
            (big + 1, small)
        } else {
            (big, small + 1)
        }
    })
}

struct Best<T> {
    value: ExtendedReal<T>,
    filtered: ExtendedReal<T>,
    first: Option<(usize, u64, Vec<T>)>,
    ties: Vec<Vec<T>>,
}

const MAX_TIES: usize = 32;

impl<T: Scalar> Best<T> {
    fn new() -> Self {
        Best { value: ExtendedReal::Finite(T::zero()), filtered: ExtendedReal::Finite(T::zero()), first: None, ties: Vec::new() }
    }

    fn offer(&mut self, h: ExtendedReal<T>, set: usize, bits: u64, c: &[T], tol: &Tolerance<T>) {
        if self.first.is_none() || improves(&h, &self.value, tol.magnitude) {
            self.value = h;
            self.first = Some((set, bits, c.to_vec()));
            self.ties.clear();
            self.ties.push(c.to_vec());
        } else if h.approx_eq(&self.value, tol.magnitude.sqrt()) && self.ties.len() < MAX_TIES {
            self.ties.push(c.to_vec());
        }
    }

    fn merge(mut self, other: Best<T>, tol: &Tolerance<T>) -> Self {
        if other.first.is_none() {
            return self;
        }
        if self.first.is_none() || improves(&other.value, &self.value, tol.magnitude) {
            let filtered = self.filtered.max(other.filtered);
            let mut out = other;
            out.filtered = filtered;
            return out;
        }
        if other.value.approx_eq(&self.value, tol.magnitude.sqrt()) {
            let room = MAX_TIES.saturating_sub(self.ties.len());
            self.ties.extend(other.ties.into_iter().take(room));
        }
        self.filtered = self.filtered.max(other.filtered);
        self
    }
}

fn require_below_distance<T: Scalar>(code: &RealCode<T>, m: usize, tol: &Tolerance<T>) -> Result<(), HeightError> {
    check_m(code, m)?;
    let d = min_distance_via_generator(code, tol.rank);
    if m >= d {
        return Err(HeightError::DistanceExceeded { m, d });
    }
    Ok(())
}

fn tie_set_has_full_rank<T: Scalar>(code: &RealCode<T>, m: usize, ties: &[Vec<T>], tol: &Tolerance<T>) -> bool {
    ties.iter().any(|c| {
        let Ok(p) = crate::heights::p_m_set(c, m, tol) else { return false };
        !p.is_empty() && rank_at_scale(&code.generator().columns_of(&p), tol.rank, code.generator().max_abs()) == code.k()
    })
}

/// `h_m(C) = max_{I ∈ Υ(C)} max_{u ∈ {±1}^k, u_0 = 1} h_m(u (G)_I^{-1} G)`.
///
/// Valid only for `m` below the minimum distance; larger `m` is refused.
pub fn height_comb_primal<T: Scalar>(
    code: &RealCode<T>,
    m: usize,
    tol: &Tolerance<T>,
) -> Result<CombPrimalResult<T>, HeightError> {
    require_below_distance(code, m, tol)?;
    let sets = InfoSets::new(code.generator(), tol.rank);
    Ok(comb_primal_with(code, m, tol, &sets))
}

pub(crate) fn comb_primal_with<T: Scalar>(
    code: &RealCode<T>,
    m: usize,
    tol: &Tolerance<T>,
    sets: &InfoSets<T>,
) -> CombPrimalResult<T> {
    let (n, k) = (code.n(), code.k());
    let signs = 1u64 << (k - 1);
    let best = sets
        .sets
        .par_iter()
        .enumerate()
        .map(|(t, (info, sys))| {
            let mut best = Best::new();
            for bits in 0..signs {
                let u = sign_vector::<T>(k, bits);
                let c = sys.left_mul(&u);
                let h = vector_m_height_tol(&c, m, tol).unwrap_or(ExtendedReal::Infinite);
                let outside = c.iter().enumerate().filter(|(j, _)| !info.contains(*j)).map(|(_, &x)| x);
                let (big, small) = filter_counts(outside, tol);
                if big <= m && small < n - m {
                    best.filtered = best.filtered.max(ExtendedReal::Finite(norm_inf(&c)));
                }
                best.offer(h, t, bits, &c, tol);
            }
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Best::new(), |acc, b| acc.merge(b, tol));
    let (t, bits, c) = best.first.clone().expect("Υ is nonempty for a full-rank generator");
    let (info, _) = &sets.sets[t];
    let inv = invert(&code.generator().columns_of(info), tol.rank).expect("information set");
    let coefficients = inv.left_mul(&sign_vector::<T>(k, bits));
    let certificate = certificate_from_codeword(code, m, coefficients, c, tol);
    CombPrimalResult {
        full_rank_tie_set: tie_set_has_full_rank(code, m, &best.ties, tol),
        value: best.value,
        filtered_value: best.filtered,
        certificate,
        candidates: sets.examined * signs,
        evaluated: sets.sets.len() as u64 * signs,
    }
}

fn certificate_from_codeword<T: Scalar>(
    code: &RealCode<T>,
    m: usize,
    coefficients: Vec<T>,
    c: Vec<T>,
    tol: &Tolerance<T>,
) -> ExtremalCertificate<T> {
    let view = crate::heights::sorted_view(&c);
    let subset = IndexSubset::from_unsorted(code.n(), view.permutation[..m].to_vec()).expect("distinct");
    let mut cert = ExtremalCertificate::from_coefficients(code, m, subset, view.permutation[0], coefficients, tol);
    // Keep the enumerated codeword exactly as evaluated.
    cert.codeword = c;
    cert
}

/// The parity-check form: `max ‖(H)_J^{-1} (H)_J̄ uᵀ‖∞` over `J ∈ Υ(C⊥)` and
/// sign vectors `u` passing the `±1`-filter. Cheaper than
/// [`height_comb_primal`] when `k > r`.
pub fn height_comb_primal_pc<T: Scalar>(
    code: &RealCode<T>,
    m: usize,
    tol: &Tolerance<T>,
) -> Result<CombPrimalResult<T>, HeightError> {
    require_below_distance(code, m, tol)?;
    let sets = InfoSets::new(code.parity_check(), tol.rank);
    Ok(comb_primal_pc_with(code, m, tol, &sets))
}

pub(crate) fn comb_primal_pc_with<T: Scalar>(
    code: &RealCode<T>,
    m: usize,
    tol: &Tolerance<T>,
    sets: &InfoSets<T>,
) -> CombPrimalResult<T> {
    let (n, k) = (code.n(), code.k());
    let signs = 1u64 << (k - 1);
    let best = sets
        .sets
        .par_iter()
        .enumerate()
        .map(|(t, (j_set, sys))| {
            let rest = j_set.complement();
            let reduced = sys.columns_of(&rest);
            let mut best = Best::new();
            let mut c = vec![T::zero(); n];
            for bits in 0..signs {
                let u = sign_vector::<T>(k, bits);
                let v = reduced.mul_vec(&u);
                for (pos, j) in rest.iter().enumerate() {
                    c[j] = u[pos];
                }
                for (pos, j) in j_set.iter().enumerate() {
                    c[j] = -v[pos];
                }
                let (big, small) = filter_counts(v.iter().copied(), tol);
                if big <= m && small < n - m {
                    let value = ExtendedReal::Finite(norm_inf(&v).max(T::one()));
                    best.filtered = best.filtered.max(value);
                }
                let h = vector_m_height_tol(&c, m, tol).unwrap_or(ExtendedReal::Infinite);
                best.offer(h, t, bits, &c, tol);
            }
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Best::new(), |acc, b| acc.merge(b, tol));
    let (t, _, c) = best.first.clone().expect("Υ(C⊥) is nonempty for a full-rank parity check");
    let info = sets.sets[t].0.complement();
    let inv = invert(&code.generator().columns_of(&info), tol.rank).expect("complement of Υ(C⊥) is in Υ(C)");
    let c_info: Vec<T> = info.iter().map(|j| c[j]).collect();
    let coefficients = inv.left_mul(&c_info);
    let certificate = certificate_from_codeword(code, m, coefficients, c, tol);
    CombPrimalResult {
        full_rank_tie_set: tie_set_has_full_rank(code, m, &best.ties, tol),
        value: best.value,
        filtered_value: best.filtered,
        certificate,
        candidates: sets.examined * signs,
        evaluated: sets.sets.len() as u64 * signs,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CombDualResult<T> {
    pub value: ExtendedReal<T>,
    /// First maximizing `(S, i)` and its first minimizing information set
    /// `I ⊆ S̄` (absent when the inner set is empty).
    pub subset: IndexSubset,
    pub index: usize,
    pub info_set: Option<IndexSubset>,
    /// Triples `(S, i, I)` with `I` any `k`-subset of `S̄`:
    /// `C(n, m) · m · C(n − m, k)`.
    pub terms: u64,
    /// Triples whose `I` is an information set.
    pub evaluated: u64,
    pub certificate: Option<ExtremalCertificate<T>>,
}

/// Inner minimum for one `(S, i)` from a table of column L1 norms.
/// Returns `(min, argmin, examined, evaluated)`.
type Inner<T> = (ExtendedReal<T>, Option<usize>, u64, u64);

fn dual_inner<T: Scalar>(
    candidates: impl Iterator<Item = IndexSubset>,
    sets: &InfoSets<T>,
    norm: impl Fn(usize) -> T,
) -> Inner<T> {
    let (mut best, mut arg, mut examined, mut evaluated) = (ExtendedReal::Infinite, None, 0, 0);
    for cand in candidates {
        examined += 1;
        if let Some(t) = sets.lookup(&cand) {
            evaluated += 1;
            let v = ExtendedReal::Finite(norm(t));
            if v < best {
                best = v;
                arg = Some(t);
            }
        }
    }
    (best, arg, examined, evaluated)
}

fn lift(rest: &IndexSubset, local: &IndexSubset) -> IndexSubset {
    IndexSubset::new(rest.ambient(), local.iter().map(|t| rest.members()[t]).collect()).expect("increasing")
}

/// `h_m(C) = max_S max_{i ∈ S} min_{I ∈ Υ(C), I ⊆ S̄} ‖(G)_I^{-1} g_i‖₁`.
///
/// When no information set avoids `S` the inner minimum is infinite, so the
/// result is `Infinite` exactly when `m ≥ d`.
pub fn height_comb_dual<T: Scalar>(code: &RealCode<T>, m: usize, tol: &Tolerance<T>) -> Result<CombDualResult<T>, HeightError> {
    check_m(code, m)?;
    let sets = InfoSets::new(code.generator(), tol.rank);
    Ok(comb_dual_with(code, m, tol, &sets))
}

pub(crate) fn comb_dual_with<T: Scalar>(
    code: &RealCode<T>,
    m: usize,
    tol: &Tolerance<T>,
    sets: &InfoSets<T>,
) -> CombDualResult<T> {
    let (n, k) = (code.n(), code.k());
    // ‖(G)_I^{-1} g_j‖₁ for every information set and coordinate.
    let norms: Vec<Vec<T>> = sets
        .sets
        .iter()
        .map(|(_, sys)| (0..n).map(|j| sys.column(j).iter().fold(T::zero(), |s, x| s + x.abs())).collect())
        .collect();
    let per_subset: Vec<(IndexSubset, Vec<(usize, Inner<T>)>)> = enumerate_subsets(n, m)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|s| {
            let rest = s.complement();
            let inner = s
                .iter()
                .map(|i| {
                    let cands = enumerate_subsets(rest.len(), k).map(|l| lift(&rest, &l));
                    (i, dual_inner(cands, sets, |t| norms[t][i]))
                })
                .collect();
            (s, inner)
        })
        .collect();
    finish_dual(code, m, tol, per_subset, |t| sets.sets[t].0.clone(), sets.is_complete())
}

/// The parity-check form: `min` over `J ∈ Υ(C⊥)` with `J ⊇ S` of
/// `‖[(H)_J^{-1}]_i (H)_J̄‖₁`.
pub fn height_comb_dual_pc<T: Scalar>(code: &RealCode<T>, m: usize, tol: &Tolerance<T>) -> Result<CombDualResult<T>, HeightError> {
    check_m(code, m)?;
    if m > code.r() {
        // No r-subset contains S; the inner minimum is over an empty set.
        return Ok(CombDualResult {
            value: ExtendedReal::Infinite,
            subset: IndexSubset::new(code.n(), (0..m).collect()).expect("prefix"),
            index: 0,
            info_set: None,
            terms: 0,
            evaluated: 0,
            certificate: None,
        });
    }
    let sets = InfoSets::new(code.parity_check(), tol.rank);
    Ok(comb_dual_pc_with(code, m, tol, &sets))
}

pub(crate) fn comb_dual_pc_with<T: Scalar>(
    code: &RealCode<T>,
    m: usize,
    tol: &Tolerance<T>,
    sets: &InfoSets<T>,
) -> CombDualResult<T> {
    let (n, r) = (code.n(), code.r());
    let per_subset: Vec<(IndexSubset, Vec<(usize, Inner<T>)>)> = enumerate_subsets(n, m)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|s| {
            let rest = s.complement();
            let inner = s
                .iter()
                .map(|i| {
                    let cands = enumerate_subsets(rest.len(), r - m).map(|l| {
                        let extra = lift(&rest, &l);
                        let mut members: Vec<usize> = s.members().iter().chain(extra.members()).copied().collect();
                        members.sort_unstable();
                        IndexSubset::new(n, members).expect("disjoint union")
                    });
                    (
                        i,
                        dual_inner(cands, sets, |t| {
                            let (j_set, sys) = &sets.sets[t];
                            let row = j_set.position(i).expect("i ∈ S ⊆ J");
                            sys.row(row)
                                .iter()
                                .enumerate()
                                .filter(|(j, _)| !j_set.contains(*j))
                                .fold(T::zero(), |acc, (_, x)| acc + x.abs())
                        }),
                    )
                })
                .collect();
            (s, inner)
        })
        .collect();
    finish_dual(code, m, tol, per_subset, |t| sets.sets[t].0.complement(), sets.is_complete())
}

fn finish_dual<T: Scalar>(
    code: &RealCode<T>,
    m: usize,
    tol: &Tolerance<T>,
    per_subset: Vec<(IndexSubset, Vec<(usize, Inner<T>)>)>,
    info_of: impl Fn(usize) -> IndexSubset,
    mds: bool,
) -> CombDualResult<T> {
    let mut best: Option<(ExtendedReal<T>, IndexSubset, usize, Option<usize>)> = None;
    let (mut terms, mut evaluated) = (0, 0);
    for (s, inner) in per_subset {
        for (i, (value, arg, ex, ev)) in inner {
            terms += ex;
            evaluated += ev;
            let replace = match &best {
                None => true,
                Some((b, ..)) => improves(&value, b, tol.magnitude),
            };
            if replace {
                best = Some((value, s.clone(), i, arg));
            }
        }
    }
    let (value, subset, index, arg) = best.expect("at least one m-subset");
    let info_set = arg.map(info_of);
    let certificate = match (&info_set, value.is_finite()) {
        (Some(info), true) if mds => mds_extremal_codeword(code, m, &subset, index, info, tol).ok(),
        (_, true) => lp_certificate(code, m, &subset, index, tol),
        _ => None,
    };
    CombDualResult { value, subset, index, info_set, terms, evaluated, certificate }
}

/// Certificate from the primal program at a known maximizing `(S, i)`.
pub(crate) fn lp_certificate<T: Scalar>(
    code: &RealCode<T>,
    m: usize,
    s: &IndexSubset,
    i: usize,
    tol: &Tolerance<T>,
) -> Option<ExtremalCertificate<T>> {
    let sol = solve_lp(&primal_program(code.generator(), s, i), tol.lp).ok()?;
    match (sol.status, sol.point) {
        (LpStatus::Optimal, Some(u)) => Some(ExtremalCertificate::from_coefficients(code, m, s.clone(), i, u, tol)),
        _ => None,
    }
}

/// `C(n, k) · 2^{k-1}`.
pub fn primal_candidate_count(n: usize, k: usize) -> u64 {
    binomial(n, k) * (1u64 << (k - 1))
}

/// `m · C(n, r) · C(r, m)`.
pub fn dual_term_count(n: usize, k: usize, m: usize) -> u64 {
    let r = n - k;
    m as u64 * binomial(n, r) * binomial(r, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{make_dodecahedral, make_icosahedral, make_negacyclic};

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    fn close(h: ExtendedReal<f64>, want: f64) -> bool {
        h.approx_eq(&ExtendedReal::Finite(want), 1e-9)
    }

    #[test]
    fn negacyclic_three() {
        let c = make_negacyclic::<f64>(3).unwrap();
        let p = height_comb_primal(&c, 1, &tol()).unwrap();
        assert!(close(p.value, 1.0) && close(p.filtered_value, 1.0));
        assert_eq!(p.candidates, 3);
        assert!(close(height_comb_dual(&c, 1, &tol()).unwrap().value, 1.0));
    }

    #[test]
    fn icosahedral_rows() {
        let c = make_icosahedral::<f64>();
        let s5 = 5f64.sqrt();
        for (m, want) in [(1, s5), (2, s5), (3, 2.0 + s5)] {
            let p = height_comb_primal(&c, m, &tol()).unwrap();
            assert!(close(p.value, want) && close(p.filtered_value, want), "m={m} {:?}", p.value);
            assert!(p.certificate.verify(&c, &ExtendedReal::Finite(want), 1e-8));
            assert!(p.full_rank_tie_set);
            assert!(close(height_comb_primal_pc(&c, m, &tol()).unwrap().filtered_value, want));
            let d = height_comb_dual(&c, m, &tol()).unwrap();
            assert!(close(d.value, want));
            assert_eq!(d.terms, dual_term_count(6, 3, m));
            assert!(d.certificate.unwrap().verify(&c, &ExtendedReal::Finite(want), 1e-8));
            assert!(close(height_comb_dual_pc(&c, m, &tol()).unwrap().value, want));
        }
        assert!(matches!(height_comb_primal(&c, 4, &tol()), Err(HeightError::DistanceExceeded { m: 4, d: 4 })));
        assert_eq!(height_comb_dual(&c, 4, &tol()).unwrap().value, ExtendedReal::Infinite);
        assert_eq!(height_comb_dual_pc(&c, 4, &tol()).unwrap().value, ExtendedReal::Infinite);
    }

    #[test]
    fn dodecahedral_two() {
        let c = make_dodecahedral::<f64>();
        let p = height_comb_primal(&c, 2, &tol()).unwrap();
        assert!(close(p.value, 4.0 + 5f64.sqrt()));
        assert_eq!(p.candidates, primal_candidate_count(10, 7));
        let q = height_comb_primal_pc(&c, 1, &tol()).unwrap();
        assert!(close(q.filtered_value, 2.0 + 5f64.sqrt()) && close(q.value, 2.0 + 5f64.sqrt()));
        assert_eq!(q.candidates, primal_candidate_count(10, 7));
    }

    #[test]
    fn negacyclic_closed_forms() {
        let c = make_negacyclic::<f64>(4).unwrap();
        assert!(close(height_comb_dual(&c, 1, &tol()).unwrap().value, 2f64.sqrt()));
        let c = make_negacyclic::<f64>(5).unwrap();
        assert!(close(height_comb_dual(&c, 2, &tol()).unwrap().value, 2.0 + 5f64.sqrt()));
        let c = make_negacyclic::<f64>(6).unwrap();
        let cot = 1.0 / (std::f64::consts::PI / 12.0).tan();
        assert!(close(height_comb_primal_pc(&c, 1, &tol()).unwrap().filtered_value, cot - 1.0));
    }
}

#![allow(dead_code)]

use mheight::codes::{
    is_ortho_spherical, make_axis_replicated, make_binary_induced, make_dodecahedral, make_icosahedral, make_negacyclic,
    ospc_dual_generator, random_code, BinaryMatrix, EntryDistribution,
};
use mheight::heights::{
    dual_distance, dual_term_count, full_profile, height_comb_dual, height_comb_dual_pc, height_comb_primal,
    height_comb_primal_pc, height_lp_dual, height_lp_primal, min_distance, min_distance_via_generator,
    primal_candidate_count, sorted_view, ExtendedReal, ExtremalCertificate, LpOptions, Method,
};
use mheight::linalg::{binomial, Matrix};
use mheight::lp::{lad_minimize, solve_lp, solve_lp_by_vertices, weighted_median_lad, LpProblem, LpStatus};
use mheight::{RealCode64, Tolerance64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Sorted positions `m .. m + d⊥ − 1` share the magnitude at position `m`.
pub fn structural_holds(c: &ExtremalCertificate<f64>, dual_d: usize) -> bool {
    let v = sorted_view(&c.codeword);
    let n = v.magnitudes.len();
    let pivot = v.magnitudes[c.m];
    (c.m..(c.m + dual_d - 1).min(n)).all(|t| (v.magnitudes[t] - pivot).abs() <= 1e-6 * pivot.max(1.0))
}

/// Largest relative gap to the primal LP over every other method and every
/// `m < d`, after checking counts, certificates and certificate structure.
pub fn four_way(code: &RealCode64, rel: f64) -> Result<f64, String> {
    let t = Tolerance64::default();
    let name = code.name();
    let d = min_distance(code, t.rank);
    let dual_d = dual_distance(code, t.rank).unwrap_or(code.n() + 1);
    ensure!(d == min_distance_via_generator(code, t.rank), "{name}: distance oracles differ");
    let mut worst: f64 = 0.0;
    let gap = |a: ExtendedReal<f64>, b: ExtendedReal<f64>| match (a, b) {
        (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => (a - b).abs() / a.abs().max(b.abs()).max(1.0),
        (ExtendedReal::Infinite, ExtendedReal::Infinite) => 0.0,
        _ => f64::INFINITY,
    };
    let opts = LpOptions::default();
    for m in 1..d.min(code.n()) {
        let lp = height_lp_primal(code, m, &t, opts).map_err(|e| e.to_string())?;
        let lpd = height_lp_dual(code, m, &t, opts).map_err(|e| e.to_string())?;
        let comb = height_comb_primal(code, m, &t).map_err(|e| e.to_string())?;
        let dual = height_comb_dual(code, m, &t).map_err(|e| e.to_string())?;
        ensure!(lp.value.is_finite(), "{name} m={m}: infinite below d");
        let mut others = vec![("lp-dual", lpd.value), ("comb", comb.value), ("comb-filtered", comb.filtered_value), ("comb-dual", dual.value)];
        if code.r() > 0 {
            let pc = height_comb_primal_pc(code, m, &t).map_err(|e| e.to_string())?;
            let dpc = height_comb_dual_pc(code, m, &t).map_err(|e| e.to_string())?;
            ensure!(pc.candidates == primal_candidate_count(code.n(), code.k()), "{name} m={m}: comb-pc count");
            ensure!(dpc.terms == dual_term_count(code.n(), code.k(), m), "{name} m={m}: comb-dual-pc count");
            others.extend([("comb-pc", pc.value), ("comb-pc-filtered", pc.filtered_value), ("comb-dual-pc", dpc.value)]);
        }
        for (method, v) in others {
            let g = gap(lp.value, v);
            ensure!(g <= rel, "{name} m={m}: lp={} {method}={}", lp.value, v);
            worst = worst.max(g);
        }
        ensure!(lp.programs as u64 == m as u64 * binomial(code.n(), m), "{name} m={m}: LP count");
        ensure!(comb.candidates == primal_candidate_count(code.n(), code.k()), "{name} m={m}: comb count");
        ensure!(dual.terms == dual_term_count(code.n(), code.k(), m), "{name} m={m}: comb-dual count");
        ensure!(comb.full_rank_tie_set, "{name} m={m}: no optimal candidate with rank-k tie set");

        let cert = lp.certificate.ok_or(format!("{name} m={m}: no certificate"))?;
        ensure!(cert.verify(code, &lp.value, 1e-7), "{name} m={m}: LP certificate");
        ensure!(dual_d < 2 || structural_holds(&cert, dual_d), "{name} m={m}: P_m containment {:?}", cert.codeword);
        ensure!(comb.certificate.verify(code, &lp.value, 1e-7), "{name} m={m}: comb certificate");
        if let Some(c) = dual.certificate {
            ensure!(c.verify(code, &lp.value, 1e-7), "{name} m={m}: comb-dual certificate");
        }
    }
    if d < code.n() {
        ensure!(height_lp_primal(code, d, &t, opts).map_err(|e| e.to_string())?.value.is_infinite(), "{name}: h_d finite (lp)");
        ensure!(height_lp_dual(code, d, &t, opts).map_err(|e| e.to_string())?.value.is_infinite(), "{name}: h_d finite (lp-dual)");
        ensure!(height_comb_dual(code, d, &t).map_err(|e| e.to_string())?.value.is_infinite(), "{name}: h_d finite (comb-dual)");
    }
    Ok(worst)
}

/// Profiles start at 1, never decrease, reach ∞ exactly at `d`, and agree
/// across the LP, combinatorial and automatic routes.
pub fn monotone_and_distance(code: &RealCode64) -> Result<(), String> {
    let t = Tolerance64::default();
    let name = code.name();
    let p = full_profile(code, Method::Lp, &t).map_err(|e| e.to_string())?;
    ensure!(p.heights[0] == ExtendedReal::Finite(1.0), "{name}: h_0 ≠ 1");
    for (m, w) in p.heights.windows(2).enumerate() {
        ensure!(w[1] >= w[0] || w[1].approx_eq(&w[0], 1e-9), "{name}: h_{} < h_{m}", m + 1);
    }
    let d = min_distance(code, t.rank);
    ensure!(p.min_distance == d, "{name}: profile distance {} vs {d}", p.min_distance);
    let first_inf = p.heights.iter().position(|h| h.is_infinite()).unwrap_or(code.n());
    ensure!(first_inf == d, "{name}: first infinite height at {first_inf}, d = {d}");
    for method in [Method::Comb, Method::CombDual, Method::Auto] {
        let q = full_profile(code, method, &t).map_err(|e| e.to_string())?;
        ensure!(q.min_distance == d, "{name} {method}: distance {}", q.min_distance);
        for (m, (a, b)) in p.heights.iter().zip(&q.heights).enumerate() {
            ensure!(a.approx_eq(b, 1e-6), "{name} {method} m={m}: {a} vs {b}");
        }
    }
    Ok(())
}

/// Constructed and random MDS codes whose r-extremal certificates have
/// full weight with every position from `r` on tied. Returns the number checked.
pub fn mds_full_weight() -> Result<usize, String> {
    let t = Tolerance64::default();
    let mut codes = vec![make_icosahedral::<f64>(), make_dodecahedral(), make_dodecahedral().dual().unwrap()];
    for n in 3..=9 {
        codes.push(make_negacyclic(n).unwrap());
        codes.push(make_negacyclic(n).unwrap().dual().unwrap());
    }
    for seed in 0..20 {
        codes.push(random_code(6, 1 + (seed as usize) % 5, seed, EntryDistribution::Gaussian).unwrap());
    }
    let mut checked = 0;
    for code in codes.iter().filter(|c| c.is_mds(t.rank)) {
        let r = code.r();
        let lp = height_lp_primal(code, r, &t, LpOptions::default()).map_err(|e| e.to_string())?;
        let dual = height_comb_dual(code, r, &t).map_err(|e| e.to_string())?;
        for cert in [lp.certificate, dual.certificate] {
            let cert = cert.ok_or(format!("{}: missing certificate", code.name()))?;
            let v = sorted_view(&cert.codeword);
            let pivot = v.magnitudes[r];
            ensure!(pivot > 1e-9, "{}: weight below n", code.name());
            ensure!(
                v.magnitudes[r..].iter().all(|x| (x - pivot).abs() <= 1e-7 * pivot.max(1.0)),
                "{}: P_r misses a tail position {:?}",
                code.name(),
                v.magnitudes
            );
            checked += 1;
        }
    }
    Ok(checked)
}

/// Weighted median against the general LAD program on random scalar problems.
pub fn median_vs_lad(count: usize, seed: u64) -> Result<f64, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let q = rng.gen_range(1..=9);
        let a: Vec<f64> = (0..q).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let mut b: Vec<f64> = (0..q).map(|_| if rng.gen_bool(0.15) { 0.0 } else { rng.gen_range(-3.0..3.0) }).collect();
        if b.iter().all(|&x| x == 0.0) {
            b[0] = 1.0;
        }
        let (_, fast) = weighted_median_lad(&a, &b).map_err(|e| e.to_string())?;
        let slow = lad_minimize(&a, &Matrix::from_rows(&[b.clone()]).unwrap(), 1e-11).map_err(|e| e.to_string())?.value;
        let gap = (fast - slow).abs() / slow.abs().max(1.0);
        ensure!(gap <= 1e-9, "a={a:?} b={b:?}: {fast} vs {slow}");
        worst = worst.max(gap);
    }
    Ok(worst)
}

/// Simplex against vertex enumeration; returns how many LPs ended optimal,
/// unbounded and infeasible.
pub fn simplex_vs_vertices(count: usize, seed: u64) -> Result<[usize; 3], String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = [0usize; 3];
    for _ in 0..count {
        let nv = rng.gen_range(1..=4);
        let nc = rng.gen_range(1..=10);
        let mut a = Matrix::zeros(nc, nv);
        for i in 0..nc {
            for j in 0..nv {
                a[(i, j)] = if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(-4i32..=4) as f64 };
            }
        }
        let b: Vec<f64> = (0..nc).map(|_| rng.gen_range(-3i32..=6) as f64).collect();
        let c: Vec<f64> = (0..nv).map(|_| rng.gen_range(-3i32..=3) as f64).collect();
        let p = LpProblem::new(c, a, b).map_err(|e| e.to_string())?;
        let s = solve_lp(&p, 1e-9).map_err(|e| e.to_string())?;
        let v = solve_lp_by_vertices(&p, 1e-9).map_err(|e| e.to_string())?;
        ensure!(s.status == v.status, "{p:?}: {:?} vs {:?}", s.status, v.status);
        seen[match s.status {
            LpStatus::Optimal => 0,
            LpStatus::Unbounded => 1,
            LpStatus::Infeasible => 2,
        }] += 1;
        if s.status == LpStatus::Optimal {
            let (x, y) = (s.optimum.unwrap(), v.optimum.unwrap());
            ensure!((x - y).abs() <= 1e-7 * x.abs().max(1.0), "{p:?}: {x} vs {y}");
            ensure!(p.max_violation(s.point.as_ref().unwrap()) <= 1e-7, "{p:?}: simplex point infeasible");
        }
    }
    ensure!(seen.iter().all(|&k| k > 0), "not every status exercised: {seen:?}");
    Ok(seen)
}

/// Dual generators of every constructed ortho-spherical parity check are
/// themselves ortho-spherical and orthogonal to it. Returns the number checked.
pub fn ospc_duality() -> Result<usize, String> {
    let t = 1e-9;
    let mut hs: Vec<(String, Matrix<f64>)> = vec![
        ("ico".into(), make_icosahedral::<f64>().parity_check().clone()),
        ("dod".into(), make_dodecahedral::<f64>().parity_check().clone()),
    ];
    for n in 3..=12 {
        hs.push((format!("neg({n})"), make_negacyclic::<f64>(n).unwrap().parity_check().clone()));
    }
    for n in 3..=10 {
        hs.push((format!("axis({n})"), make_axis_replicated::<f64>(n).unwrap().parity_check().clone()));
    }
    for rows in [&["1100", "0110"][..], &["11110000", "11001100", "10101010"], &["1101000", "0110100", "0011010", "0001101"]] {
        if let Ok(code) = BinaryMatrix::from_strings(rows).and_then(|b| make_binary_induced::<f64>(&b)) {
            hs.push((code.name().to_string(), code.parity_check().clone()));
        }
    }
    let mut checked = 0;
    for (name, h) in hs.into_iter().filter(|(_, h)| is_ortho_spherical(h, t)) {
        let g = ospc_dual_generator(&h, t).map_err(|e| format!("{name}: {e}"))?;
        ensure!(is_ortho_spherical(&g, 1e-8), "{name}: dual generator not ortho-spherical");
        ensure!(g.matmul_transpose(&h).max_abs() <= 1e-9, "{name}: G Hᵀ ≠ 0");
        ensure!(g.rows() + h.rows() == h.cols(), "{name}: dimensions do not add up");
        checked += 1;
    }
    ensure!(checked >= 12, "only {checked} ortho-spherical matrices");
    Ok(checked)
}

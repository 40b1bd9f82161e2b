mod common;

use mheight::codes::{make_axis_replicated, make_dodecahedral, make_icosahedral, make_negacyclic, random_code, EntryDistribution};
use mheight::heights::{full_profile, vector_m_height, Method};
use mheight::{RealCode64, Tolerance64};
use proptest::prelude::*;
use proptest::test_runner::Config;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tol() -> Tolerance64 {
    Tolerance64::default()
}

fn config(cases: u32) -> Config {
    Config { cases, failure_persistence: None, ..Config::default() }
}

fn four_way(code: &RealCode64, rel: f64) -> Result<(), TestCaseError> {
    common::four_way(code, rel).map(|_| ()).map_err(TestCaseError::fail)
}

fn code_params() -> impl Strategy<Value = (usize, usize, u64)> {
    (3usize..=8).prop_flat_map(|n| (Just(n), 1..n, any::<u64>()))
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn gaussian_codes_four_way((n, k, seed) in code_params()) {
        let code = random_code::<f64>(n, k, seed, EntryDistribution::Gaussian).unwrap();
        four_way(&code, 1e-6)?;
    }

    #[test]
    fn ternary_codes_four_way((n, k, seed) in code_params()) {
        let code = random_code::<f64>(n, k, seed, EntryDistribution::Ternary).unwrap();
        four_way(&code, 1e-6)?;
    }
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn profiles_monotone_and_distance((n, k, seed) in code_params(), ternary in any::<bool>()) {
        let dist = if ternary { EntryDistribution::Ternary } else { EntryDistribution::Gaussian };
        let code = random_code::<f64>(n, k, seed, dist).unwrap();
        common::monotone_and_distance(&code).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn signed_permutation_invariance((n, k, seed) in code_params(), shuffle in any::<u64>()) {
        let code = random_code::<f64>(n, k, seed, EntryDistribution::Gaussian).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(shuffle);
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let negate: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let moved = code.signed_permutation(&perm, &negate).unwrap();
        let a = full_profile(&code, Method::Lp, &tol()).unwrap();
        let b = full_profile(&moved, Method::Lp, &tol()).unwrap();
        for (x, y) in a.heights.iter().zip(&b.heights) {
            prop_assert!(x.approx_eq(y, 1e-7));
        }
    }

    #[test]
    fn vector_height_scale_invariance(x in prop::collection::vec(-10.0f64..10.0, 2..9), lambda in prop_oneof![-1e3f64..-1e-3, 1e-3f64..1e3]) {
        prop_assume!(x.iter().any(|v| v.abs() > 1e-6));
        let y: Vec<f64> = x.iter().map(|v| v * lambda).collect();
        for m in 0..x.len() {
            let a = vector_m_height(&x, m).unwrap();
            let b = vector_m_height(&y, m).unwrap();
            prop_assert!(a.approx_eq(&b, 1e-12) || (a.is_infinite() == b.is_infinite() && a.is_infinite()));
        }
    }
}

#[test]
fn constructed_codes_four_way() {
    let mut codes = vec![make_icosahedral::<f64>(), make_icosahedral().dual().unwrap(), make_dodecahedral()];
    for n in 3..=8 {
        codes.push(make_negacyclic(n).unwrap());
        codes.push(make_negacyclic(n).unwrap().dual().unwrap());
    }
    for n in 3..=8 {
        codes.push(make_axis_replicated(n).unwrap());
    }
    for code in &codes {
        four_way(code, 1e-6).unwrap_or_else(|e| panic!("{}: {e}", code.name()));
    }
}

#[test]
fn mds_r_extremal_full_weight() {
    assert!(common::mds_full_weight().unwrap() > 0);
}

#[test]
fn weighted_median_matches_lad_program() {
    common::median_vs_lad(1000, 0x1ad).unwrap();
}

#[test]
fn simplex_matches_vertex_enumeration() {
    common::simplex_vs_vertices(500, 0x5eed).unwrap();
}

#[test]
fn ospc_duality_on_constructed_matrices() {
    common::ospc_duality().unwrap();
}

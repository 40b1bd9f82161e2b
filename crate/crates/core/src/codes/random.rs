use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::codes::{default_tol, CodeError, RealCode};
use crate::linalg::{rank, Matrix};
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryDistribution {
    /// Independent standard normal entries; almost surely MDS.
    Gaussian,
    /// Entries uniform on `{-1, 0, 1}`; often not MDS, with small distance.
    Ternary,
}

/// A random `[n, k]` code from a seeded generator matrix.
///
/// Draws are repeated until the generator has full rank, so the same seed
/// always yields the same code.
pub fn random_code<T: Scalar>(n: usize, k: usize, seed: u64, dist: EntryDistribution) -> Result<RealCode<T>, CodeError> {
    if k == 0 {
        return Err(CodeError::Trivial);
    }
    if k > n {
        return Err(CodeError::Invalid(format!("k = {k} exceeds n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = default_tol::<T>();
    for _ in 0..1000 {
        let mut g = Matrix::zeros(k, n);
        for i in 0..k {
            for j in 0..n {
                let x: f64 = match dist {
                    EntryDistribution::Gaussian => rng.sample(StandardNormal),
                    EntryDistribution::Ternary => rng.gen_range(-1i32..=1) as f64,
                };
                g[(i, j)] = T::lit(x);
            }
        }
        if rank(&g, tol) == k {
            let label = match dist {
                EntryDistribution::Gaussian => "gauss",
                EntryDistribution::Ternary => "ternary",
            };
            return RealCode::from_generator(format!("random-{label}({n},{k};{seed})"), g, tol);
        }
    }
    Err(CodeError::Invalid("no full-rank draw in 1000 attempts".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_codes_repeat() {
        let a = random_code::<f64>(6, 3, 7, EntryDistribution::Gaussian).unwrap();
        let b = random_code::<f64>(6, 3, 7, EntryDistribution::Gaussian).unwrap();
        assert_eq!(a, b);
        let c = random_code::<f64>(6, 3, 8, EntryDistribution::Gaussian).unwrap();
        assert_ne!(a.generator(), c.generator());
    }

    #[test]
    fn ternary_entries() {
        let c = random_code::<f64>(5, 2, 1, EntryDistribution::Ternary).unwrap();
        assert!(c.generator().as_slice().iter().all(|x| [-1.0, 0.0, 1.0].contains(x)));
        assert!(random_code::<f64>(3, 4, 0, EntryDistribution::Ternary).is_err());
    }
}

use std::fmt;
use std::str::FromStr;

use crate::codes::RealCode;
use crate::heights::comb::{comb_dual_pc_with, comb_dual_with, comb_primal_pc_with, comb_primal_with, lp_certificate, InfoSets};
use crate::heights::distance::min_distance_via_generator;
use crate::heights::lp::{height_lp_dual, height_lp_primal, LpOptions};
use crate::heights::{check_m, ExtendedReal, ExtremalCertificate, HeightError};
use crate::{Scalar, Tolerance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Lp,
    LpDual,
    Comb,
    CombPc,
    CombDual,
    Auto,
}

impl Method {
    pub const ALL: [Method; 6] = [Method::Lp, Method::LpDual, Method::Comb, Method::CombPc, Method::CombDual, Method::Auto];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Lp => "lp",
            Method::LpDual => "lp-dual",
            Method::Comb => "comb",
            Method::CombPc => "comb-pc",
            Method::CombDual => "comb-dual",
            Method::Auto => "auto",
        }
    }

    /// The concrete method `Auto` uses at `m`.
    pub fn resolve(&self, n: usize, k: usize, m: usize) -> Method {
        if *self != Method::Auto {
            return *self;
        }
        let r = n - k;
        if r <= k && m <= r {
            Method::CombDual
        } else if k > r {
            Method::CombPc
        } else {
            Method::Lp
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL.into_iter().find(|m| m.as_str() == s).ok_or_else(|| format!("unknown method `{s}`"))
    }
}

/// `(h_m(C))_{m ∈ [0, n)}` with the method used at each `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightProfile<T> {
    pub heights: Vec<ExtendedReal<T>>,
    pub certificates: Vec<Option<ExtremalCertificate<T>>>,
    pub method: Method,
    /// Concrete method per `m`; `None` for `h_0` and for entries filled in
    /// after the first infinite height.
    pub methods: Vec<Option<Method>>,
    /// `min{m : h_m = ∞}`, or `n` if every listed height is finite.
    pub min_distance: usize,
}

impl<T: Scalar> HeightProfile<T> {
    pub fn n(&self) -> usize {
        self.heights.len()
    }
}

#[derive(Default)]
struct Cache<T> {
    generator: Option<InfoSets<T>>,
    parity: Option<InfoSets<T>>,
}

/// One entry of a profile: `h_m`, a certificate when one was produced, and
/// the concrete method that ran.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightAt<T> {
    pub value: ExtendedReal<T>,
    pub certificate: Option<ExtremalCertificate<T>>,
    pub method: Method,
}

/// `h_m(C)` by `method`, for `1 ≤ m < n`. Combinatorial primal methods hand
/// `m ≥ d` to the primal LP.
pub fn height_at<T: Scalar>(code: &RealCode<T>, m: usize, method: Method, tol: &Tolerance<T>) -> Result<HeightAt<T>, HeightError> {
    check_m(code, m)?;
    let d = min_distance_via_generator(code, tol.rank);
    height_cached(code, m, method, d, tol, &mut Cache::default())
}

fn height_cached<T: Scalar>(
    code: &RealCode<T>,
    m: usize,
    method: Method,
    d: usize,
    tol: &Tolerance<T>,
    cache: &mut Cache<T>,
) -> Result<HeightAt<T>, HeightError> {
    let (n, k) = (code.n(), code.k());
    let opts = LpOptions::default();
    let chosen = method.resolve(n, k, m);
    if matches!(chosen, Method::Comb | Method::CombPc) && m >= d {
        let h = height_lp_primal(code, m, tol, opts)?;
        return Ok(HeightAt { value: h.value, certificate: h.certificate, method: Method::Lp });
    }
    let (value, certificate) = match chosen {
        Method::Lp => {
            let h = height_lp_primal(code, m, tol, opts)?;
            (h.value, h.certificate)
        }
        Method::LpDual => {
            let h = height_lp_dual(code, m, tol, opts)?;
            let cert = match (&h.argmax, h.value.is_finite()) {
                (Some((s, i)), true) => lp_certificate(code, m, s, *i, tol),
                _ => None,
            };
            (h.value, cert)
        }
        Method::Comb => {
            let sets = cache.generator.get_or_insert_with(|| InfoSets::new(code.generator(), tol.rank));
            let h = comb_primal_with(code, m, tol, sets);
            (h.value, Some(h.certificate))
        }
        Method::CombPc => {
            let sets = cache.parity.get_or_insert_with(|| InfoSets::new(code.parity_check(), tol.rank));
            let h = comb_primal_pc_with(code, m, tol, sets);
            (h.value, Some(h.certificate))
        }
        Method::CombDual => {
            // The parity-check form is cheaper when r < k; both give the
            // same max–min.
            let h = if code.r() < k && m <= code.r() {
                let sets = cache.parity.get_or_insert_with(|| InfoSets::new(code.parity_check(), tol.rank));
                comb_dual_pc_with(code, m, tol, sets)
            } else {
                let sets = cache.generator.get_or_insert_with(|| InfoSets::new(code.generator(), tol.rank));
                comb_dual_with(code, m, tol, sets)
            };
            (h.value, h.certificate)
        }
        Method::Auto => unreachable!("resolved above"),
    };
    Ok(HeightAt { value, certificate, method: chosen })
}

/// Every `h_m` of `code`. Combinatorial methods run for `m` below the minimum
/// distance only; the first infinite height is confirmed by the primal LP and
/// the tail is filled with `Infinite`.
pub fn full_profile<T: Scalar>(code: &RealCode<T>, method: Method, tol: &Tolerance<T>) -> Result<HeightProfile<T>, HeightError> {
    let n = code.n();
    let d = min_distance_via_generator(code, tol.rank);
    let mut heights = vec![ExtendedReal::Finite(T::one())];
    let mut certificates = vec![None];
    let mut methods = vec![None];
    let mut cache = Cache::default();
    for m in 1..n {
        let h = height_cached(code, m, method, d, tol, &mut cache)?;
        heights.push(h.value);
        certificates.push(h.certificate);
        methods.push(Some(h.method));
        if h.value.is_infinite() {
            break;
        }
    }
    while heights.len() < n {
        heights.push(ExtendedReal::Infinite);
        certificates.push(None);
        methods.push(None);
    }
    let min_distance = heights.iter().position(|h| h.is_infinite()).unwrap_or(n);
    Ok(HeightProfile { heights, certificates, method, methods, min_distance })
}

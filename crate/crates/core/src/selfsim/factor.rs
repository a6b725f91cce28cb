use num_traits::{One, Signed};
use serde::Serialize;

use crate::capcore::{CapParams, CapSequence, Window};
use crate::exactnum::{MinimalPolynomial, QuadraticReal, ZTheta};
use crate::{Error, Result};

/// Bound on `|a| + |b|` in the factor search.
pub const FACTOR_SEARCH_CAP: i64 = 1_000;

/// Outcome of the configuration test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfSimCheck {
    pub selfsimilar: bool,
    pub reason: String,
}

/// `Σ_{ε,η}(Ω)` is self-similar exactly when `η = ε′` and `0 ∈ closure(Ω)`.
pub fn check_selfsimilar_config(params: &CapParams, window: &Window) -> SelfSimCheck {
    let no = |reason: String| SelfSimCheck {
        selfsimilar: false,
        reason,
    };
    if params.eps.is_rational() {
        return no(format!("eps = {} is not quadratic", params.eps));
    }
    if params.eta != params.eps.conjugate() {
        return no(format!(
            "eta = {} is not the conjugate {} of eps",
            params.eta,
            params.eps.conjugate()
        ));
    }
    if !window.closure_contains_zero() {
        return no(format!("0 is not in the closure of {window}"));
    }
    SelfSimCheck {
        selfsimilar: true,
        reason: "eta is the conjugate of eps and 0 lies in the closed window".into(),
    }
}

/// A factor `γ > 1` with `γ·Σ ⊆ Σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimilarityFactor {
    pub gamma: QuadraticReal,
    pub conjugate: QuadraticReal,
    /// `(a, b)` with `γ = a + M·b·η`, or its square when `squared` is set.
    pub certificate: Option<(i64, i64)>,
    pub squared: bool,
}

impl SimilarityFactor {
    /// A candidate factor without a certificate, for checking by `verify_inclusion`.
    pub fn new(gamma: QuadraticReal) -> Self {
        let conjugate = gamma.conjugate();
        Self {
            gamma,
            conjugate,
            certificate: None,
            squared: false,
        }
    }

    /// `γγ′`.
    pub fn norm(&self) -> QuadraticReal {
        &self.gamma * &self.conjugate
    }

    /// `γ′·Ω ⊆ Ω`, checked on the endpoints.
    pub fn contracts(&self, window: &Window) -> bool {
        if !self.conjugate.is_positive() {
            return false;
        }
        let lo = &self.conjugate * &window.c;
        let hi = &self.conjugate * &window.end();
        lo >= window.c && hi <= window.end()
    }
}

fn search(params: &CapParams, window: &Window, units_only: bool) -> Result<SimilarityFactor> {
    let check = check_selfsimilar_config(params, window);
    if !check.selfsimilar {
        return Err(Error::Precondition(check.reason));
    }
    let eta = &params.eta;
    let mp = MinimalPolynomial::of(eta)?;
    let m = QuadraticReal::from_bigint(mp.a.clone());
    let one = QuadraticReal::one();
    for s in 1..=FACTOR_SEARCH_CAP {
        for a in -s..=s {
            let r = s - a.abs();
            if r == 0 {
                continue;
            }
            for b in [r, -r] {
                let gamma = QuadraticReal::from_int(a) + QuadraticReal::from_int(b) * &m * eta;
                let conj = gamma.conjugate();
                if !(conj.is_positive() && conj < one) {
                    continue;
                }
                let norm = &gamma * &conj;
                if units_only && !norm.as_rational().is_some_and(|q| q.abs().is_one()) {
                    continue;
                }
                let squared = gamma < -&one;
                let (gamma, conjugate) = if squared {
                    (&gamma * &gamma, &conj * &conj)
                } else {
                    (gamma, conj)
                };
                return Ok(SimilarityFactor {
                    gamma,
                    conjugate,
                    certificate: Some((a, b)),
                    squared,
                });
            }
        }
    }
    Err(Error::CapExceeded {
        what: "similarity factor search",
        cap: FACTOR_SEARCH_CAP as usize,
    })
}

/// First `γ = a + M·b·η` (or `γ²` when `γ < −1`) with `γ′ ∈ (0,1)`, in order of increasing `|a| + |b|`.
pub fn find_factor(params: &CapParams, window: &Window) -> Result<SimilarityFactor> {
    search(params, window, false)
}

/// As [`find_factor`], restricted to units `γγ′ = ±1`.
pub fn find_unit_factor(params: &CapParams, window: &Window) -> Result<SimilarityFactor> {
    search(params, window, true)
}

/// Result of checking `γx ∈ Σ` on generated points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionReport {
    pub checked: usize,
    pub passed: bool,
    /// A point `x` of the set with `γx` outside it.
    pub witness: Option<QuadraticReal>,
}

/// Checks `γx ∈ Σ_{ε,η}(Ω)` for `n_points` consecutive points around the seed.
pub fn verify_inclusion(
    factor: &SimilarityFactor,
    params: &CapParams,
    window: &Window,
    n_points: usize,
) -> Result<InclusionReport> {
    let ring = ZTheta::new(params.eta.clone())?;
    let seq = CapSequence::new(params, window)?;
    let left = n_points / 2;
    let right = n_points.saturating_sub(left + 1);
    let pts = seq.points(left, right);
    for p in &pts {
        let y = &factor.gamma * &p.value;
        let inside = ring.coordinates(&y).is_some_and(|c| {
            let star =
                QuadraticReal::from_bigint(c.p) + QuadraticReal::from_bigint(c.q) * &params.eps;
            window.contains(&star)
        });
        if !inside {
            return Ok(InclusionReport {
                checked: pts.len(),
                passed: false,
                witness: Some(p.value.clone()),
            });
        }
    }
    Ok(InclusionReport {
        checked: pts.len(),
        passed: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib(c: i64) -> (CapParams, Window) {
        let tau = QuadraticReal::tau();
        let p = CapParams::new(-(QuadraticReal::one() / &tau), tau).unwrap();
        (
            p,
            Window::new(QuadraticReal::from_int(c), QuadraticReal::one()).unwrap(),
        )
    }

    fn octagonal() -> (CapParams, Window) {
        let e = QuadraticReal::from_parts(0, 1, -1, 2, 2).unwrap();
        let len = QuadraticReal::from_int(-2) - QuadraticReal::from_int(4) * &e;
        (
            CapParams::new(e.clone(), e.conjugate()).unwrap(),
            Window::new(QuadraticReal::zero(), len).unwrap(),
        )
    }

    #[test]
    fn configuration_checks() {
        let (p, w) = fib(0);
        assert!(check_selfsimilar_config(&p, &w).selfsimilar);
        let (_, w1) = fib(1);
        assert!(!check_selfsimilar_config(&p, &w1).selfsimilar);
        let p2 = CapParams::new(p.eps.clone(), QuadraticReal::sqrt(2).unwrap()).unwrap();
        assert!(!check_selfsimilar_config(&p2, &w).selfsimilar);
        assert!(find_factor(&p2, &w).is_err());
    }

    #[test]
    fn fibonacci_factor() {
        let (p, w) = fib(0);
        let f = find_factor(&p, &w).unwrap();
        let tau = QuadraticReal::tau();
        assert_eq!(f.gamma, &tau * &tau);
        assert!(f.squared);
        assert!(f.contracts(&w));
        assert!(verify_inclusion(&f, &p, &w, 1000).unwrap().passed);
        let wrong = verify_inclusion(&SimilarityFactor::new(tau), &p, &w, 1000).unwrap();
        assert!(!wrong.passed && wrong.witness.is_some());
        assert!(
            verify_inclusion(&SimilarityFactor::new(QuadraticReal::one()), &p, &w, 1000)
                .unwrap()
                .passed
        );
    }

    #[test]
    fn octagonal_factors() {
        let (p, w) = octagonal();
        let first = find_factor(&p, &w).unwrap();
        assert_eq!(first, find_unit_factor(&p, &w).unwrap());
        assert_eq!(
            first.gamma,
            QuadraticReal::from_parts(3, 1, 2, 1, 2).unwrap()
        );
        assert_eq!(
            first.conjugate,
            QuadraticReal::from_parts(3, 1, -2, 1, 2).unwrap()
        );
        assert_eq!(first.certificate, Some((-1, -1)));
        assert!(first.squared);
        let other =
            SimilarityFactor::new(QuadraticReal::from_int(2) + QuadraticReal::sqrt(2).unwrap());
        for f in [first, other] {
            assert!(f.norm().is_integer());
            assert!(f.contracts(&w));
            assert!(f.conjugate.abs() < QuadraticReal::one() && f.gamma > QuadraticReal::one());
            assert!(verify_inclusion(&f, &p, &w, 1000).unwrap().passed);
        }
    }
}

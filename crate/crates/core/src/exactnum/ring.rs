use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use super::{MinimalPolynomial, QuadraticReal};
use crate::{Error, Result};

/// Lattice coordinates `(p, q)` of `p + q·θ` in some `Z[θ]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElem {
    pub p: BigInt,
    pub q: BigInt,
}

impl RingElem {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        Self {
            p: p.into(),
            q: q.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    /// Value `p + q·θ`.
    pub fn eval(&self, theta: &QuadraticReal) -> QuadraticReal {
        let p = QuadraticReal::from_bigint(self.p.clone());
        let q = QuadraticReal::from_bigint(self.q.clone());
        p + &q * theta
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, o: &RingElem) -> RingElem {
        RingElem {
            p: &self.p + &o.p,
            q: &self.q + &o.q,
        }
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, o: &RingElem) -> RingElem {
        RingElem {
            p: &self.p - &o.p,
            q: &self.q - &o.q,
        }
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            p: -&self.p,
            q: -&self.q,
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// The additive group `Z[θ] = Z + Z·θ` for a quadratic irrational `θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZTheta {
    theta: QuadraticReal,
    poly: MinimalPolynomial,
}

/// Upper bound on continued-fraction steps while searching for a period.
const CF_CAP: usize = 1_000_000;

impl ZTheta {
    pub fn new(theta: QuadraticReal) -> Result<Self> {
        let poly = MinimalPolynomial::of(&theta)?;
        Ok(Self { theta, poly })
    }

    pub fn theta(&self) -> &QuadraticReal {
        &self.theta
    }

    pub fn minimal_polynomial(&self) -> &MinimalPolynomial {
        &self.poly
    }

    pub fn value(&self, e: &RingElem) -> QuadraticReal {
        e.eval(&self.theta)
    }

    /// Coordinates of `x` if it lies in `Z[θ]`.
    pub fn coordinates(&self, x: &QuadraticReal) -> Option<RingElem> {
        if !x.compatible(&self.theta) {
            return None;
        }
        let q = x.b() / self.theta.b();
        if !q.is_integer() {
            return None;
        }
        let p = x.a() - &q * self.theta.a();
        if !p.is_integer() {
            return None;
        }
        Some(RingElem {
            p: p.to_integer(),
            q: q.to_integer(),
        })
    }

    pub fn contains(&self, x: &QuadraticReal) -> bool {
        self.coordinates(x).is_some()
    }

    /// True when `γ·Z[θ] = Z[θ]`, checked on the basis `{1, θ}` for `γ` and `γ⁻¹`.
    pub fn is_multiplier_unit(&self, gamma: &QuadraticReal) -> bool {
        let Ok(inv) = gamma.inverse() else {
            return false;
        };
        let ok = [gamma, &inv]
            .iter()
            .all(|g| self.contains(g) && self.contains(&(*g * &self.theta)));
        ok
    }

    /// Unit `γ ∈ (0,1)` with `γ′ > 1` generating the positive units of the multiplier ring.
    ///
    /// The continued fraction of `θ` is eventually periodic; the product of the
    /// complete quotients over one period is the fundamental unit of the ring of
    /// multipliers of `Z[θ]`. Norm −1 units are squared.
    pub fn fundamental_unit(&self) -> Result<QuadraticReal> {
        let mut seen: HashMap<QuadraticReal, usize> = HashMap::new();
        let mut quotients = Vec::new();
        let mut alpha = self.theta.clone();
        let start;
        loop {
            if let Some(&i) = seen.get(&alpha) {
                start = i;
                break;
            }
            if quotients.len() > CF_CAP {
                return Err(Error::CapExceeded {
                    what: "continued fraction period search",
                    cap: CF_CAP,
                });
            }
            seen.insert(alpha.clone(), quotients.len());
            quotients.push(alpha.clone());
            let frac = alpha.fract();
            alpha = frac.inverse()?;
        }
        let mut u = QuadraticReal::one();
        for a in &quotients[start..] {
            u = &u * a;
        }
        if u.norm() == -num_rational::BigRational::one() {
            u = &u * &u;
        }
        let gamma = u.conjugate();
        debug_assert!(gamma.is_positive() && gamma < QuadraticReal::one());
        if !self.is_multiplier_unit(&gamma) {
            return Err(Error::Inconsistent(format!(
                "{gamma} is not a unit of Z[{}]",
                self.theta
            )));
        }
        Ok(gamma)
    }
}

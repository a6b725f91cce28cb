use crate::exactnum::approx::{precision_bits, ApproxReal};
use crate::{Error, Result};

use super::{Coords, Letter};

const LADDER_CAP: usize = 10_000;

/// Coded word of `Σ_{ε,η}(Ω)` for parameters in a higher-degree field.
///
/// All quantities share one algebraic generator; every comparison is an
/// adaptive-precision sign evaluation that fails rather than guesses.
#[derive(Clone, Debug)]
pub struct ApproxCapSequence {
    eps: ApproxReal,
    c: ApproxReal,
    len: ApproxReal,
    d1: Coords,
    d2: Coords,
    bits: u32,
}

impl ApproxCapSequence {
    /// Requires `ε ∈ (−1,0)`, `η > 0` and `c ≤ 0 < c + len`.
    pub fn new(eps: ApproxReal, eta: ApproxReal, c: ApproxReal, len: ApproxReal) -> Result<Self> {
        let bits = precision_bits();
        let one = ApproxReal::from_int(1, eps.root().clone());
        let sgn = |x: &ApproxReal| x.sign(bits);
        if sgn(&eps)? >= 0 || sgn(&eps.checked_add(&one)?)? <= 0 || sgn(&eta)? <= 0 {
            return Err(Error::Precondition(
                "approximate generation needs eps in (-1,0) and eta > 0".into(),
            ));
        }
        if sgn(&len)? <= 0 {
            return Err(Error::InvalidParameter(
                "window length must be positive".into(),
            ));
        }
        if sgn(&c)? > 0 || sgn(&c.checked_add(&len)?)? <= 0 {
            return Err(Error::Precondition(
                "approximate generation needs 0 in the window".into(),
            ));
        }
        let mut s = Self {
            eps,
            c,
            len,
            d1: Coords::new(1, 1),
            d2: Coords::new(0, 1),
            bits,
        };
        let value = |x: Coords, eta: &ApproxReal| -> Result<ApproxReal> {
            let p = ApproxReal::from_int(x.p, eta.root().clone());
            let q = ApproxReal::from_int(x.q, eta.root().clone());
            p.checked_add(&q.checked_mul(eta)?)
        };
        for _ in 0..LADDER_CAP {
            let s1 = s.star(s.d1)?;
            let s2 = s.star(s.d2)?;
            if sgn(&s.len.checked_sub(&s1.checked_sub(&s2)?)?)? > 0 {
                if sgn(&value(s.d1, &eta)?.checked_sub(&value(s.d2, &eta)?)?)? > 0 {
                    s.d1 = s.d1.checked_sub(s.d2)?;
                } else {
                    s.d2 = s.d2.checked_sub(s.d1)?;
                }
                continue;
            }
            let sum_pos = sgn(&s1.checked_add(&s2)?)? > 0;
            let lower = if sum_pos { s1 } else { s2.neg() };
            if sgn(&s.len.checked_sub(&lower)?)? <= 0 {
                let sum = s.d1.checked_add(s.d2)?;
                if sum_pos {
                    s.d1 = sum;
                } else {
                    s.d2 = sum;
                }
                continue;
            }
            return Ok(s);
        }
        Err(Error::CapExceeded {
            what: "distance ladder",
            cap: LADDER_CAP,
        })
    }

    fn star(&self, x: Coords) -> Result<ApproxReal> {
        let root = self.eps.root().clone();
        let p = ApproxReal::from_int(x.p, root.clone());
        let q = ApproxReal::from_int(x.q, root);
        p.checked_add(&q.checked_mul(&self.eps)?)
    }

    /// Gap coordinates `(Δ₁, Δ₂)` valid for the window length.
    pub fn gaps(&self) -> (Coords, Coords) {
        (self.d1, self.d2)
    }

    /// Letters `u_0 … u_{n−1}` starting at the origin.
    pub fn right_letters(&self, n: usize) -> Result<Vec<Letter>> {
        let delta1 = self
            .c
            .checked_add(&self.len)?
            .checked_sub(&self.star(self.d1)?)?;
        let delta2 = self.c.checked_sub(&self.star(self.d2)?)?;
        let mut x = Coords::ZERO;
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let y = self.star(x)?;
            let l = if y.checked_sub(&delta1)?.sign(self.bits)? < 0 {
                Letter::A
            } else if y.checked_sub(&delta2)?.sign(self.bits)? < 0 {
                Letter::B
            } else {
                Letter::C
            };
            x = x.checked_add(match l {
                Letter::A => self.d1,
                Letter::B => self.d1.checked_add(self.d2)?,
                Letter::C => self.d2,
            })?;
            out.push(l);
        }
        Ok(out)
    }
}

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{distances, CapParams, Coords, DistancePair, Letter, Window};
use crate::exactnum::QuadraticReal;
use crate::{Error, Result};

/// The stepping function of a window: a two- or three-interval exchange on `[c, c+ℓ)`.
#[derive(Clone, Debug, Serialize)]
pub struct SteppingFn {
    pub params: CapParams,
    pub window: Window,
    pub pair: DistancePair,
    /// `δ₁ = c + ℓ − Δ₁⋆`.
    pub delta1: QuadraticReal,
    /// `δ₂ = c − Δ₂⋆`.
    pub delta2: QuadraticReal,
    #[serde(skip)]
    cmp: StarComparator,
}

impl SteppingFn {
    pub fn new(params: &CapParams, window: &Window) -> Result<Self> {
        for x in [&window.c, &window.len] {
            if !x.compatible(&params.eps) {
                return Err(Error::IncompatibleRadicands(x.d(), params.eps.d()));
            }
        }
        let pair = distances(params, &window.len)?;
        let end = window.end();
        let delta1 = &end - &pair.d1_star;
        let delta2 = &window.c - &pair.d2_star;
        let inv1 = &end + &pair.d2_star;
        let inv2 = &window.c + &pair.d1_star;
        let cmp = StarComparator::new(
            &params.eps,
            [&window.c, &end, &delta1, &delta2, &inv1, &inv2],
        );
        Ok(Self {
            params: params.clone(),
            window: window.clone(),
            pair,
            delta1,
            delta2,
            cmp,
        })
    }

    pub fn three_distances(&self) -> bool {
        self.pair.three_distances
    }

    /// Interval `Ω_A`, `Ω_B` or `Ω_C` containing `y`.
    pub fn region(&self, y: &QuadraticReal) -> Letter {
        if y < &self.delta1 {
            Letter::A
        } else if y < &self.delta2 {
            Letter::B
        } else {
            Letter::C
        }
    }

    /// Star translation applied on the interval coded by `letter`.
    pub fn shift(&self, letter: Letter) -> QuadraticReal {
        match letter {
            Letter::A => self.pair.d1_star.clone(),
            Letter::B => &self.pair.d1_star + &self.pair.d2_star,
            Letter::C => self.pair.d2_star.clone(),
        }
    }

    fn check(&self, y: &QuadraticReal) -> Result<()> {
        if self.window.contains(y) {
            Ok(())
        } else {
            Err(Error::OutsideWindow(format!(
                "{y} is not in {}",
                self.window
            )))
        }
    }

    /// Star image of the right neighbour.
    pub fn step(&self, y: &QuadraticReal) -> Result<QuadraticReal> {
        self.check(y)?;
        Ok(y + &self.shift(self.region(y)))
    }

    /// Letter of the gap arriving at `y` from its left neighbour.
    pub fn pred_region(&self, y: &QuadraticReal) -> Letter {
        let end = self.window.end();
        if y < &(&end + &self.pair.d2_star) {
            Letter::C
        } else if y < &(&self.window.c + &self.pair.d1_star) {
            Letter::B
        } else {
            Letter::A
        }
    }

    /// Star image of the left neighbour.
    pub fn step_inv(&self, y: &QuadraticReal) -> Result<QuadraticReal> {
        self.check(y)?;
        Ok(y - &self.shift(self.pred_region(y)))
    }

    /// `f^k(y)` for `k ≥ 0`, or `f^{−k}` for negative `k`.
    pub fn iterate(&self, y: &QuadraticReal, k: i64) -> Result<QuadraticReal> {
        let mut y = y.clone();
        for _ in 0..k.unsigned_abs() {
            y = if k > 0 {
                self.step(&y)?
            } else {
                self.step_inv(&y)?
            };
        }
        Ok(y)
    }

    /// Window membership of a lattice point's star image.
    pub fn contains_coords(&self, x: Coords) -> bool {
        self.cmp.cmp(x, 0) != Ordering::Less && self.cmp.cmp(x, 1) == Ordering::Less
    }

    /// `region` evaluated on `star(x)` without building the star value.
    pub fn region_coords(&self, x: Coords) -> Letter {
        if self.cmp.cmp(x, 2) == Ordering::Less {
            Letter::A
        } else if self.cmp.cmp(x, 3) == Ordering::Less {
            Letter::B
        } else {
            Letter::C
        }
    }

    /// `pred_region` evaluated on `star(x)`.
    pub fn pred_region_coords(&self, x: Coords) -> Letter {
        if self.cmp.cmp(x, 4) == Ordering::Less {
            Letter::C
        } else if self.cmp.cmp(x, 5) == Ordering::Less {
            Letter::B
        } else {
            Letter::A
        }
    }

    /// Lattice walk from a point whose star lies in the window.
    pub fn orbit(&self, start: Coords) -> Result<Orbit<'_>> {
        if !self.contains_coords(start) {
            return Err(Error::IncompatibleSeed(format!(
                "star of {start} is {} and lies outside {}",
                self.params.star(start),
                self.window
            )));
        }
        Ok(Orbit {
            f: self,
            pos: start,
        })
    }
}

/// Walks along consecutive points of the cut-and-project set in lattice coordinates.
#[derive(Clone, Debug)]
pub struct Orbit<'a> {
    f: &'a SteppingFn,
    pos: Coords,
}

impl Orbit<'_> {
    pub fn position(&self) -> Coords {
        self.pos
    }

    /// Moves to the right neighbour and returns the gap letter.
    pub fn forward(&mut self) -> Letter {
        let l = self.f.region_coords(self.pos);
        self.pos = self.pos + self.f.pair.gap(l);
        l
    }

    /// Moves to the left neighbour and returns the gap letter.
    pub fn backward(&mut self) -> Letter {
        let l = self.f.pred_region_coords(self.pos);
        self.pos = self.pos - self.f.pair.gap(l);
        l
    }
}

/// Compares `p + qε` against fixed thresholds in `Q(√d)`.
///
/// Everything is scaled to a common denominator `L`, so the comparison
/// becomes the sign of `X + Y√d` with integers `X`, `Y`. An `i128` path
/// handles the common case; overflow falls back to big integers.
#[derive(Clone, Debug, Default)]
struct StarComparator {
    d: u64,
    l: BigInt,
    e0: BigInt,
    e1: BigInt,
    thresholds: Vec<(BigInt, BigInt)>,
    small: Option<Small>,
}

#[derive(Clone, Debug, Default)]
struct Small {
    d: i128,
    l: i128,
    e0: i128,
    e1: i128,
    thresholds: Vec<(i128, i128)>,
}

impl StarComparator {
    fn new<const N: usize>(eps: &QuadraticReal, thresholds: [&QuadraticReal; N]) -> Self {
        let d = eps.d();
        let mut l = eps.denominator_lcm();
        for t in thresholds {
            l = l.lcm(&t.denominator_lcm());
        }
        let scale = |r: &num_rational::BigRational| (r * &l).to_integer();
        let e0 = scale(eps.a());
        let e1 = scale(eps.b());
        let ts: Vec<(BigInt, BigInt)> = thresholds
            .iter()
            .map(|t| (scale(t.a()), scale(t.b())))
            .collect();
        let small = (|| {
            Some(Small {
                d: i128::from(d),
                l: l.to_i128()?,
                e0: e0.to_i128()?,
                e1: e1.to_i128()?,
                thresholds: ts
                    .iter()
                    .map(|(a, b)| Some((a.to_i128()?, b.to_i128()?)))
                    .collect::<Option<_>>()?,
            })
        })();
        Self {
            d,
            l,
            e0,
            e1,
            thresholds: ts,
            small,
        }
    }

    /// Sign of `star(x) − threshold[i]`.
    fn cmp(&self, x: Coords, i: usize) -> Ordering {
        if let Some(s) = &self.small {
            if let Some(o) = s.cmp(x, i) {
                return o;
            }
        }
        let (k0, k1) = &self.thresholds[i];
        let p = BigInt::from(x.p);
        let q = BigInt::from(x.q);
        let xx = &p * &self.l + &q * &self.e0 - k0;
        let yy = &q * &self.e1 - k1;
        sign_surd(&xx, &yy, &BigInt::from(self.d))
    }
}

impl Small {
    fn cmp(&self, x: Coords, i: usize) -> Option<Ordering> {
        let (k0, k1) = self.thresholds[i];
        let p = i128::from(x.p);
        let q = i128::from(x.q);
        let xx = p
            .checked_mul(self.l)?
            .checked_add(q.checked_mul(self.e0)?)?
            .checked_sub(k0)?;
        let yy = q.checked_mul(self.e1)?.checked_sub(k1)?;
        match (xx.signum(), yy.signum()) {
            (0, s) | (s, 0) => Some(s.cmp(&0)),
            (a, b) if a == b => Some(a.cmp(&0)),
            (a, _) => {
                let lhs = xx.checked_mul(xx)?;
                let rhs = yy.checked_mul(yy)?.checked_mul(self.d)?;
                // sign of X + Y√d equals sign(X) when X² > dY²
                Some(match lhs.cmp(&rhs) {
                    Ordering::Greater => a.cmp(&0),
                    Ordering::Less => 0.cmp(&a),
                    Ordering::Equal => Ordering::Equal,
                })
            }
        }
    }
}

fn sign_surd(x: &BigInt, y: &BigInt, d: &BigInt) -> Ordering {
    let sx = x.signum();
    let sy = y.signum();
    if sx.is_zero() {
        return sy.cmp(&BigInt::zero());
    }
    if sy.is_zero() || sx == sy {
        return sx.cmp(&BigInt::zero());
    }
    let lhs = x * x;
    let rhs = y * y * d;
    let positive = sx.is_one();
    match lhs.cmp(&rhs) {
        Ordering::Greater => {
            if positive {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        }
        Ordering::Less => {
            if positive {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        Ordering::Equal => Ordering::Equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> (CapParams, Window) {
        let eps = QuadraticReal::from_parts(0, 1, -1, 2, 2).unwrap();
        let p = CapParams::new(eps.clone(), -eps.clone()).unwrap();
        let len = QuadraticReal::from_int(-2) - QuadraticReal::from_int(4) * &eps;
        (p, Window::new(QuadraticReal::zero(), len).unwrap())
    }

    #[test]
    fn worked_example_steps() {
        let (p, w) = worked();
        let f = SteppingFn::new(&p, &w).unwrap();
        let zero = QuadraticReal::zero();
        assert_eq!(f.step(&zero).unwrap(), &QuadraticReal::one() + &p.eps);
        assert_eq!(f.step_inv(&zero).unwrap(), -&p.eps);
        assert_eq!(f.step(&f.delta2).unwrap(), w.c);
        assert_eq!(
            f.delta1,
            QuadraticReal::from_int(-3) - QuadraticReal::from_int(5) * &p.eps
        );
        assert_eq!(f.delta2, -&p.eps);
    }

    #[test]
    fn outside_window_is_an_error() {
        let (p, w) = worked();
        let f = SteppingFn::new(&p, &w).unwrap();
        assert!(f.step(&QuadraticReal::one()).is_err());
        assert!(f.step_inv(&QuadraticReal::from_int(-1)).is_err());
    }

    #[test]
    fn fast_regions_agree_with_exact() {
        let (p, w) = worked();
        let f = SteppingFn::new(&p, &w).unwrap();
        let mut o = f.orbit(Coords::ZERO).unwrap();
        for _ in 0..500 {
            let x = o.position();
            let y = p.star(x);
            assert!(w.contains(&y));
            assert_eq!(f.region_coords(x), f.region(&y));
            assert_eq!(f.pred_region_coords(x), f.pred_region(&y));
            o.forward();
        }
    }

    #[test]
    fn big_integer_fallback_matches() {
        let x = BigInt::from(i64::MAX) * BigInt::from(3);
        let y = BigInt::from(-(i64::MAX / 2));
        // X + Y√2 with X = 3M, Y = −M/2 is positive
        assert_eq!(sign_surd(&x, &y, &BigInt::from(2)), Ordering::Greater);
        assert_eq!(sign_surd(&-x, &-y, &BigInt::from(2)), Ordering::Less);
        assert_eq!(
            sign_surd(&BigInt::from(3), &BigInt::from(-1), &BigInt::from(9)),
            Ordering::Equal
        );
    }
}

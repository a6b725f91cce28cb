use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{word_string, CapParams, CapPoint, Coords, Letter, SteppingFn, Window};
use crate::exactnum::{QuadraticReal, Rational};
use crate::{Error, Result};

/// How far the seed scan looks along `q` before giving up.
const SEED_SCAN: i64 = 1_000_000;

/// The cut-and-project set `Σ_{ε,η}(Ω)`, pointed at its seed.
#[derive(Clone, Debug)]
pub struct CapSequence {
    stepping: SteppingFn,
    seed: Coords,
}

impl CapSequence {
    /// Seeds at `0` when `0 ∈ Ω`, otherwise at the first point with physical value `≥ 0`.
    pub fn new(params: &CapParams, window: &Window) -> Result<Self> {
        let stepping = SteppingFn::new(params, window)?;
        let seed = find_seed(&stepping)?;
        Ok(Self { stepping, seed })
    }

    /// Seeds at a supplied lattice point, which must belong to the set.
    pub fn with_seed(params: &CapParams, window: &Window, seed: Coords) -> Result<Self> {
        let stepping = SteppingFn::new(params, window)?;
        stepping.orbit(seed)?;
        Ok(Self { stepping, seed })
    }

    pub fn stepping(&self) -> &SteppingFn {
        &self.stepping
    }

    pub fn params(&self) -> &CapParams {
        &self.stepping.params
    }

    pub fn window(&self) -> &Window {
        &self.stepping.window
    }

    pub fn seed(&self) -> Coords {
        self.seed
    }

    /// Lattice coordinates of the points `x_{−n_left} < … < x_0 < … < x_{n_right}`.
    pub fn coords(&self, n_left: usize, n_right: usize) -> Vec<Coords> {
        let mut left = Vec::with_capacity(n_left);
        let mut o = self.orbit();
        for _ in 0..n_left {
            o.backward();
            left.push(o.position());
        }
        left.reverse();
        let mut o = self.orbit();
        left.push(o.position());
        for _ in 0..n_right {
            o.forward();
            left.push(o.position());
        }
        left
    }

    /// Points `x_{−n_left}, …, x_{n_right}` with their exact values.
    pub fn points(&self, n_left: usize, n_right: usize) -> Vec<CapPoint> {
        self.coords(n_left, n_right)
            .into_iter()
            .map(|c| CapPoint::new(self.params(), c))
            .collect()
    }

    fn orbit(&self) -> super::Orbit<'_> {
        self.stepping
            .orbit(self.seed)
            .expect("seed checked at construction")
    }

    /// Letters `u_0, u_1, …` to the right of the seed.
    pub fn right_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        let mut o = self.orbit();
        std::iter::repeat_with(move || o.forward())
    }

    /// Letters `u_{−1}, u_{−2}, …` to the left of the seed.
    pub fn left_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        let mut o = self.orbit();
        std::iter::repeat_with(move || o.backward())
    }

    /// The coded word `u_{−n_left} … u_{−1} | u_0 … u_{n_right−1}`.
    pub fn word(&self, n_left: usize, n_right: usize) -> CodedWord {
        let mut left: Vec<Letter> = self.left_letters().take(n_left).collect();
        left.reverse();
        CodedWord {
            left,
            right: self.right_letters().take(n_right).collect(),
        }
    }
}

fn find_seed(f: &SteppingFn) -> Result<Coords> {
    if f.contains_coords(Coords::ZERO) {
        return Ok(Coords::ZERO);
    }
    let params = &f.params;
    let c = &f.window.c;
    let mut hit = None;
    for i in 0..SEED_SCAN {
        // q = 0, 1, −1, 2, −2, …
        let q = if i % 2 == 1 { i / 2 + 1 } else { -(i / 2) };
        let qe = QuadraticReal::from_int(q) * &params.eps;
        let p = (c - &qe).ceil();
        let p = p.to_i64().ok_or(Error::Overflow)?;
        let x = Coords::new(p, q);
        if f.contains_coords(x) {
            hit = Some(x);
            break;
        }
    }
    let Some(x) = hit else {
        return Err(Error::CapExceeded {
            what: "seed scan",
            cap: SEED_SCAN as usize,
        });
    };
    let mut o = f.orbit(x)?;
    if params.value(x).is_negative() {
        while params.value(o.position()).is_negative() {
            o.forward();
        }
    } else {
        loop {
            let here = o.position();
            o.backward();
            if params.value(o.position()).is_negative() {
                return Ok(here);
            }
        }
    }
    Ok(o.position())
}

/// A finite window `u_{−n} … u_{−1} | u_0 … u_{m−1}` of a bidirectional coded word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodedWord {
    /// Letters left of the pointer, in reading order.
    pub left: Vec<Letter>,
    /// Letters from index 0 onward.
    pub right: Vec<Letter>,
}

impl CodedWord {
    /// Letter `u_n` when it lies inside the stored range.
    pub fn get(&self, n: i64) -> Option<Letter> {
        if n >= 0 {
            self.right.get(n as usize).copied()
        } else {
            let k = self.left.len() as i64 + n;
            (k >= 0).then(|| self.left[k as usize])
        }
    }

    /// Left and right letters joined in reading order.
    pub fn flat(&self) -> Vec<Letter> {
        self.left.iter().chain(self.right.iter()).copied().collect()
    }
}

impl fmt::Display for CodedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "…{}|{}…",
            word_string(&self.left),
            word_string(&self.right)
        )
    }
}

/// Number of points per unit length, counted over `horizon` points on each side of the seed.
pub fn point_density(params: &CapParams, window: &Window, horizon: usize) -> Result<Rational> {
    if horizon == 0 {
        return Err(Error::InvalidParameter("horizon must be positive".into()));
    }
    let seq = CapSequence::new(params, window)?;
    let pts = seq.coords(horizon, horizon);
    let first = params.value(pts[0]);
    let last = params.value(*pts.last().expect("non-empty"));
    let span = last - first;
    let count = QuadraticReal::from_int((pts.len() - 1) as i64);
    let dens = count / span;
    // 64 fractional bits are plenty for an estimate
    let scale = BigInt::from(1u8) << 64u32;
    let scaled = (&dens * &QuadraticReal::from_bigint(scale.clone())).floor();
    Ok(Rational::new(scaled, scale))
}

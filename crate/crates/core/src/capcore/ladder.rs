use num_traits::Zero;
use serde::Serialize;

use super::{CapParams, Coords, Letter};
use crate::exactnum::QuadraticReal;
use crate::{Error, Result};

const LADDER_CAP: usize = 100_000;
/// Cap on continued-fraction steps while searching for a normalizing frame.
pub const FRAME_CAP: usize = 1_000;

/// Distances between neighbours, valid for window lengths in `(lower, upper]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistancePair {
    /// Lattice coordinates of the gap with positive star image.
    pub d1: Coords,
    /// Lattice coordinates of the gap with negative star image.
    pub d2: Coords,
    pub d1_star: QuadraticReal,
    pub d2_star: QuadraticReal,
    pub three_distances: bool,
    /// Ladder index; level 0 holds `ℓ₀ = 1` when the slopes are normalized.
    pub level: i64,
    /// `max(Δ₁⋆, −Δ₂⋆)`.
    pub lower: QuadraticReal,
    /// `Δ₁⋆ − Δ₂⋆`.
    pub upper: QuadraticReal,
}

impl DistancePair {
    fn at(params: &CapParams, d1: Coords, d2: Coords, level: i64, len: &QuadraticReal) -> Self {
        let d1_star = params.star(d1);
        let d2_star = params.star(d2);
        let upper = &d1_star - &d2_star;
        let lower = std::cmp::max(d1_star.clone(), -&d2_star);
        let three_distances = len < &upper;
        Self {
            d1,
            d2,
            d1_star,
            d2_star,
            three_distances,
            level,
            lower,
            upper,
        }
    }

    /// Lattice coordinates of the gap coded by `letter`.
    pub fn gap(&self, letter: Letter) -> Coords {
        match letter {
            Letter::A => self.d1,
            Letter::B => self.d1 + self.d2,
            Letter::C => self.d2,
        }
    }

    /// Physical gap lengths `Δ₁`, `Δ₁+Δ₂`, `Δ₂`, restricted to those that occur.
    pub fn physical_gaps(&self, params: &CapParams) -> Vec<QuadraticReal> {
        let mut out = vec![params.value(self.d1), params.value(self.d2)];
        if self.three_distances {
            out.push(params.value(self.d1 + self.d2));
        }
        out.sort();
        out
    }
}

/// A lattice basis `(b1, b2)` with derived slopes `star(b2)/star(b1)` and `value(b2)/value(b1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Frame {
    pub b1: Coords,
    pub b2: Coords,
    pub steps: usize,
}

impl Frame {
    pub fn slopes(&self, params: &CapParams) -> (QuadraticReal, QuadraticReal) {
        let eps = params.star(self.b2) / params.star(self.b1);
        let eta = params.value(self.b2) / params.value(self.b1);
        (eps, eta)
    }
}

/// Finds a basis in which the slopes satisfy `ε̃ ∈ (−1,0)` and `η̃ > 0`.
///
/// Follows the continued fraction of `η`: shifting `b2` by a multiple of `b1`
/// translates both slopes, swapping inverts them. The image of `ε` under the
/// convergent maps tends to `(−1,0)` because `ε ≠ η`.
pub(crate) fn slope_frame(params: &CapParams) -> Result<Frame> {
    let mut f = Frame {
        b1: Coords::new(1, 0),
        b2: Coords::new(0, 1),
        steps: 0,
    };
    let neg_one = QuadraticReal::from_int(-1);
    let ok =
        |e: &QuadraticReal, h: &QuadraticReal| e.is_negative() && e > &neg_one && h.is_positive();
    for _ in 0..FRAME_CAP {
        let (e, h) = f.slopes(params);
        if ok(&e, &h) {
            return Ok(f);
        }
        let k = h.floor();
        if !k.is_zero() {
            let k = i64::try_from(k).map_err(|_| Error::Overflow)?;
            f.b2 = f.b2.checked_sub(f.b1.scaled(k)?)?;
            f.steps += 1;
            let (e, h) = f.slopes(params);
            if ok(&e, &h) {
                return Ok(f);
            }
        }
        std::mem::swap(&mut f.b1, &mut f.b2);
        f.steps += 1;
    }
    Err(Error::CapExceeded {
        what: "slope normalization",
        cap: FRAME_CAP,
    })
}

/// Initial distance pair: both gaps physically positive, stars of opposite sign.
fn initial_pair(params: &CapParams) -> Result<(Coords, Coords)> {
    let mut f = slope_frame(params)?;
    if params.value(f.b1).is_negative() {
        f.b1 = -f.b1;
        f.b2 = -f.b2;
    }
    let d1 = f.b1.checked_add(f.b2)?;
    let d2 = f.b2;
    if params.star(f.b1).is_positive() {
        Ok((d1, d2))
    } else {
        Ok((d2, d1))
    }
}

/// Runs the ladder until `len ∈ (lower, upper]` and returns the distances valid there.
///
/// For normalized slopes the ladder starts from `(1+ε, ε)` at `ℓ₀ = 1`. Moving
/// down replaces `Δ₁` or `Δ₂` by `Δ₁+Δ₂` according to the sign of `Δ₁⋆+Δ₂⋆`;
/// moving up subtracts the physically shorter gap from the longer one.
pub fn distances(params: &CapParams, len: &QuadraticReal) -> Result<DistancePair> {
    if !len.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "window length {len} must be positive"
        )));
    }
    if !len.compatible(&params.eps) {
        return Err(Error::IncompatibleRadicands(len.d(), params.eps.d()));
    }
    let (mut d1, mut d2) = initial_pair(params)?;
    let mut level = 0i64;
    for _ in 0..LADDER_CAP {
        let s1 = params.star(d1);
        let s2 = params.star(d2);
        if len > &(&s1 - &s2) {
            (d1, d2) = step_up(params, d1, d2)?;
            level += 1;
            continue;
        }
        if len <= &std::cmp::max(s1.clone(), -&s2) {
            (d1, d2) = step_down(params, d1, d2)?;
            level -= 1;
            continue;
        }
        return Ok(DistancePair::at(params, d1, d2, level, len));
    }
    Err(Error::CapExceeded {
        what: "distance ladder",
        cap: LADDER_CAP,
    })
}

fn step_up(params: &CapParams, d1: Coords, d2: Coords) -> Result<(Coords, Coords)> {
    if params.value(d1) > params.value(d2) {
        Ok((d1.checked_sub(d2)?, d2))
    } else {
        Ok((d1, d2.checked_sub(d1)?))
    }
}

fn step_down(params: &CapParams, d1: Coords, d2: Coords) -> Result<(Coords, Coords)> {
    let sum = d1.checked_add(d2)?;
    if (params.star(d1) + params.star(d2)).is_positive() {
        Ok((sum, d2))
    } else {
        Ok((d1, sum))
    }
}

/// Ladder lengths `ℓ_n` for `n ∈ from..=to`, each with its two-distance pair.
pub fn ladder_levels(params: &CapParams, from: i64, to: i64) -> Result<Vec<DistancePair>> {
    let one = QuadraticReal::one();
    let start = distances(params, &one)?;
    let (mut d1, mut d2, mut level) = (start.d1, start.d2, start.level);
    while level > from {
        (d1, d2) = step_down(params, d1, d2)?;
        level -= 1;
    }
    while level < from {
        (d1, d2) = step_up(params, d1, d2)?;
        level += 1;
    }
    let mut out = Vec::new();
    while level <= to {
        let upper = params.star(d1) - params.star(d2);
        out.push(DistancePair::at(params, d1, d2, level, &upper));
        (d1, d2) = step_up(params, d1, d2)?;
        level += 1;
    }
    Ok(out)
}

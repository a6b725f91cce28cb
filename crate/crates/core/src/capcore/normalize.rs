use serde::Serialize;

use super::ladder::slope_frame;
use super::{distances, CapParams, Coords, Letter, Window};
use crate::exactnum::QuadraticReal;
use crate::Result;

/// Parameters `(ε̃, η̃, Ω̃)` with `ε̃ ∈ (−1,0)`, `η̃ > 0` and `max(1+ε̃, −ε̃) < |Ω̃| ≤ 1`,
/// together with the lattice basis realizing `Σ_{ε,η}(Ω) = s·Σ_{ε̃,η̃}(Ω̃)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub params: CapParams,
    pub window: Window,
    /// Physical scale `s = value(b1) > 0`.
    pub scale: QuadraticReal,
    /// Star scale `t = star(b1)`; the window is `Ω/t`.
    pub star_scale: QuadraticReal,
    /// Normalized point `(m, n)` is the original lattice point `m·b1 + n·b2`.
    pub b1: Coords,
    pub b2: Coords,
    /// Set when `t < 0`: the window is reflected, so its closure flips and the
    /// letters `A` and `C` trade places.
    pub mirrored: bool,
    /// Continued-fraction moves spent on the slopes, before the ladder.
    pub frame_steps: usize,
}

impl NormalForm {
    /// Original lattice coordinates of a normalized point.
    pub fn to_original(&self, x: Coords) -> Result<Coords> {
        self.b1.scaled(x.p)?.checked_add(self.b2.scaled(x.q)?)
    }

    /// Letter of the original coded word corresponding to a normalized letter.
    pub fn original_letter(&self, l: Letter) -> Letter {
        match (self.mirrored, l) {
            (true, Letter::A) => Letter::C,
            (true, Letter::C) => Letter::A,
            (_, l) => l,
        }
    }
}

/// Brings arbitrary parameters into the two-distance normal range.
///
/// The slopes are first moved by the continued fraction of `η` into
/// `ε̃ ∈ (−1,0)`, `η̃ > 0`; then the distance ladder finds the pair `(Δ₁, Δ₂)`
/// valid for `|Ω|`, and the basis `(Δ₁ − Δ₂, Δ₂)` scales the window length into
/// `(max(1+ε̃, −ε̃), 1]`. When `Δ₂` is physically longer the basis
/// `(Δ₂ − Δ₁, Δ₁)` is used instead and the result is mirrored.
pub fn normalize(params: &CapParams, window: &Window) -> Result<NormalForm> {
    let frame = slope_frame(params)?;
    let pair = distances(params, &window.len)?;
    let (b1, b2, mirrored) = if params.value(pair.d1) > params.value(pair.d2) {
        (pair.d1.checked_sub(pair.d2)?, pair.d2, false)
    } else {
        (pair.d2.checked_sub(pair.d1)?, pair.d1, true)
    };
    let s = params.value(b1);
    let t = params.star(b1);
    let eps = params.star(b2) / &t;
    let eta = params.value(b2) / &s;
    let nwin = if mirrored {
        let a = -(window.end() / &t.abs());
        Window::new(a, &window.len / &t.abs())?
    } else {
        Window::new(&window.c / &t, &window.len / &t)?
    };
    Ok(NormalForm {
        params: CapParams::new(eps, eta)?,
        window: nwin,
        scale: s,
        star_scale: t,
        b1,
        b2,
        mirrored,
        frame_steps: frame.steps,
    })
}

use std::collections::BTreeSet;

use serde::Serialize;

use super::factors::{complexity_counts, factors_of};
use crate::capcore::{CapParams, Letter, SteppingFn, Window};
use crate::exactnum::QuadraticReal;
use crate::{Error, Result};

/// `a + b·ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Affine {
    a: QuadraticReal,
    b: i64,
}

impl Affine {
    fn at(&self, l: &QuadraticReal) -> QuadraticReal {
        &self.a + &(QuadraticReal::from_int(self.b) * l)
    }

    /// Where `self(ℓ) = other(ℓ)`, if the slopes differ.
    fn crossing(&self, other: &Affine) -> Option<QuadraticReal> {
        (self.b != other.b)
            .then(|| (&other.a - &self.a) / QuadraticReal::from_int(self.b - other.b))
    }

    fn shifted(&self, s: &QuadraticReal) -> Affine {
        Affine {
            a: &self.a + s,
            b: self.b,
        }
    }
}

/// A piece of an iterated orbit, affine in `ℓ` on the open interval `(lo, hi)`.
#[derive(Clone, Debug)]
struct Piece {
    lo: QuadraticReal,
    hi: QuadraticReal,
    x: Affine,
}

struct Tracker {
    delta1: Affine,
    delta2: Affine,
    shifts: [QuadraticReal; 3],
    splits: BTreeSet<QuadraticReal>,
}

impl Tracker {
    fn new(eps: &QuadraticReal) -> Self {
        let one = QuadraticReal::one();
        let d1 = &one + eps;
        Self {
            // δ₁ = ℓ − 1 − ε and δ₂ = −ε on the level with Δ₁⋆ = 1+ε, Δ₂⋆ = ε
            delta1: Affine { a: -&d1, b: 1 },
            delta2: Affine { a: -eps, b: 0 },
            shifts: [d1.clone(), &d1 + eps, eps.clone()],
            splits: BTreeSet::new(),
        }
    }

    fn step(&mut self, pieces: &[Piece]) -> Vec<Piece> {
        let mut out = Vec::new();
        for p in pieces {
            let mut cuts: Vec<QuadraticReal> = [&self.delta1, &self.delta2]
                .iter()
                .filter_map(|d| p.x.crossing(d))
                .filter(|r| r > &p.lo && r < &p.hi)
                .collect();
            cuts.sort();
            cuts.dedup();
            let mut bounds = vec![p.lo.clone()];
            bounds.extend(cuts.iter().cloned());
            bounds.push(p.hi.clone());
            self.splits.extend(cuts);
            for w in bounds.windows(2) {
                let mid = (&w[0] + &w[1]) / QuadraticReal::from_int(2);
                let y = p.x.at(&mid);
                let letter = if y < self.delta1.at(&mid) {
                    Letter::A
                } else if y < self.delta2.at(&mid) {
                    Letter::B
                } else {
                    Letter::C
                };
                out.push(Piece {
                    lo: w[0].clone(),
                    hi: w[1].clone(),
                    x: p.x.shifted(&self.shifts[letter.index()]),
                });
            }
        }
        out
    }
}

fn check_eps(eps: &QuadraticReal) -> Result<CapParams> {
    if !(eps.is_negative() && eps > &QuadraticReal::from_int(-1)) {
        return Err(Error::Precondition(format!(
            "eps = {eps} must lie in (-1,0)"
        )));
    }
    CapParams::new(eps.clone(), -eps)
}

/// Lower end `max(−ε, 1+ε)` of the two-parameter range of lengths.
pub fn length_floor(eps: &QuadraticReal) -> QuadraticReal {
    std::cmp::max(-eps, &QuadraticReal::one() + eps)
}

/// `C_ℓ(n)` for the window `[0, ℓ)`.
fn complexity_at(params: &CapParams, len: &QuadraticReal, n: usize) -> Result<usize> {
    let f = SteppingFn::new(params, &Window::new(QuadraticReal::zero(), len.clone())?)?;
    Ok(*complexity_counts(&f, n)?.last().expect("n >= 1"))
}

/// All `ℓ ∈ (max(−ε,1+ε), 1]` with `C_ℓ(n) < 2n+1`, in increasing order.
///
/// Candidates are the solutions of `f^k(δ₂) = δ₁` (`k ≤ n`) and `f^k(δ₁) = δ₂`
/// (`k < n`) found piece by piece, with the orbits tracked as affine
/// functions of `ℓ`; each candidate is then confirmed by counting.
pub fn dn_breakpoints(eps: &QuadraticReal, n: usize) -> Result<Vec<QuadraticReal>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let params = check_eps(eps)?;
    let lo = length_floor(eps);
    let one = QuadraticReal::one();
    let mut tr = Tracker::new(eps);
    let mut cands: BTreeSet<QuadraticReal> = BTreeSet::new();
    cands.insert(one.clone());
    let starts = [
        (tr.delta2.clone(), tr.delta1.clone(), n),
        (tr.delta1.clone(), tr.delta2.clone(), n - 1),
    ];
    for (start, target, kmax) in starts {
        let mut pieces = vec![Piece {
            lo: lo.clone(),
            hi: one.clone(),
            x: start,
        }];
        for k in 0..=kmax {
            if k > 0 {
                pieces = tr.step(&pieces);
            }
            for p in &pieces {
                if let Some(r) = p.x.crossing(&target) {
                    if r > p.lo && r < p.hi {
                        cands.insert(r);
                    }
                }
            }
        }
    }
    cands.extend(tr.splits.iter().cloned());
    let mut out = Vec::new();
    for l in cands.into_iter().filter(|l| l > &lo && l <= &one) {
        if complexity_at(&params, &l, n)? < 2 * n + 1 {
            out.push(l);
        }
    }
    Ok(out)
}

/// Factor sets of length `n` on the cells cut out by the breakpoints and at the breakpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DnCell {
    /// `(lo, hi)` for an open cell, `(ℓ, ℓ)` for a breakpoint.
    pub lo: QuadraticReal,
    pub hi: QuadraticReal,
    pub factors: Vec<String>,
}

impl DnCell {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

/// Cells and breakpoints in increasing order, alternating from the first open cell.
pub fn dn_cells(eps: &QuadraticReal, n: usize) -> Result<Vec<DnCell>> {
    let params = check_eps(eps)?;
    let pts = dn_breakpoints(eps, n)?;
    let mut out = Vec::new();
    let mut lo = length_floor(eps);
    let at = |l: &QuadraticReal| -> Result<Vec<String>> {
        let f = SteppingFn::new(&params, &Window::new(QuadraticReal::zero(), l.clone())?)?;
        Ok(factors_of(&f, n)?.strings())
    };
    for p in pts {
        let mid = (&lo + &p) / QuadraticReal::from_int(2);
        out.push(DnCell {
            lo: lo.clone(),
            hi: p.clone(),
            factors: at(&mid)?,
        });
        out.push(DnCell {
            lo: p.clone(),
            hi: p.clone(),
            factors: at(&p)?,
        });
        lo = p;
    }
    Ok(out)
}

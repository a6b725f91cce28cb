use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::capcore::{word_string, CapParams, Letter, SteppingFn, Window};
use crate::exactnum::{QuadraticReal, ZTheta};
use crate::{Error, Result};

/// Largest length searched when detecting the onset of `C(n) = n + n₀ + 1`.
pub const N0_CAP: usize = 64;

/// A factor together with its interval `Ω_w = [start, end)` in internal space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub word: Vec<Letter>,
    pub start: QuadraticReal,
    pub end: QuadraticReal,
}

impl Factor {
    pub fn len(&self) -> QuadraticReal {
        &self.end - &self.start
    }

    pub fn as_string(&self) -> String {
        word_string(&self.word)
    }
}

/// All factors of length `n`, ordered by position of their intervals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorSet {
    pub n: usize,
    pub window_len: QuadraticReal,
    pub factors: Vec<Factor>,
}

impl FactorSet {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn words(&self) -> BTreeSet<Vec<Letter>> {
        self.factors.iter().map(|f| f.word.clone()).collect()
    }

    /// Factors as sorted strings over `{A, B, C}`.
    pub fn strings(&self) -> Vec<String> {
        self.words().iter().map(|w| word_string(w)).collect()
    }

    pub fn get(&self, w: &[Letter]) -> Option<&Factor> {
        self.factors.iter().find(|f| f.word == w)
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.get(w).is_some()
    }

    /// `ρ_w = |Ω_w| / |Ω|`.
    pub fn density(&self, w: &[Letter]) -> Result<QuadraticReal> {
        let f = self
            .get(w)
            .ok_or_else(|| Error::NotAFactor(word_string(w)))?;
        Ok(f.len() / &self.window_len)
    }
}

/// `{c} ∪ {f^{−i}(δ₁), f^{−i}(δ₂) : i < n}`, sorted without repetition.
fn boundaries(f: &SteppingFn, n: usize) -> Result<BTreeSet<QuadraticReal>> {
    let mut pts = BTreeSet::new();
    pts.insert(f.window.c.clone());
    for start in [&f.delta1, &f.delta2] {
        let mut y = start.clone();
        for i in 0..n {
            if i > 0 {
                y = f.step_inv(&y)?;
            }
            pts.insert(y.clone());
        }
    }
    Ok(pts)
}

/// Coding of `y, f(y), …, f^{n−1}(y)`.
pub fn coding(f: &SteppingFn, y: &QuadraticReal, n: usize) -> Result<Vec<Letter>> {
    let mut y = y.clone();
    let mut w = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 {
            y = f.step(&y)?;
        }
        w.push(f.region(&y));
    }
    Ok(w)
}

/// Factors of length `n ≥ 1` read from the partition of the window by
/// preimages of the discontinuities.
pub fn factors(params: &CapParams, window: &Window, n: usize) -> Result<FactorSet> {
    let f = SteppingFn::new(params, window)?;
    factors_of(&f, n)
}

pub fn factors_of(f: &SteppingFn, n: usize) -> Result<FactorSet> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "factor length must be at least 1".into(),
        ));
    }
    let pts: Vec<QuadraticReal> = boundaries(f, n)?.into_iter().collect();
    let end = f.window.end();
    let mut out: Vec<Factor> = Vec::with_capacity(pts.len());
    for (i, a) in pts.iter().enumerate() {
        let b = pts.get(i + 1).unwrap_or(&end).clone();
        let word = coding(f, a, n)?;
        match out.last_mut() {
            // a boundary that is not a discontinuity of the coding
            Some(prev) if prev.word == word => prev.end = b,
            _ => out.push(Factor {
                word,
                start: a.clone(),
                end: b,
            }),
        }
    }
    let mut seen = BTreeSet::new();
    for fac in &out {
        if !seen.insert(&fac.word) {
            return Err(Error::Inconsistent(format!(
                "factor {} has a disconnected interval",
                fac.as_string()
            )));
        }
    }
    Ok(FactorSet {
        n,
        window_len: f.window.len.clone(),
        factors: out,
    })
}

/// Distinct factors of length `n` occurring in a finite word.
pub fn scan_factors(word: &[Letter], n: usize) -> BTreeSet<Vec<Letter>> {
    if n == 0 || word.len() < n {
        return BTreeSet::new();
    }
    word.windows(n).map(|w| w.to_vec()).collect()
}

/// Factor complexity at one length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Complexity {
    pub n: usize,
    pub count: usize,
    /// Whether `|Ω| ∈ Z[ε]`.
    pub length_in_ring: bool,
    /// For `|Ω| ∈ Z[ε]`: the unique `n₀` with `C(n) = n + n₀ + 1` beyond it.
    pub n0: Option<usize>,
}

/// `C(n)` from the number of distinct boundary points, in linear time per length.
pub fn complexity_counts(f: &SteppingFn, max_n: usize) -> Result<Vec<usize>> {
    let mut pts = BTreeSet::new();
    pts.insert(f.window.c.clone());
    let mut ys = [f.delta1.clone(), f.delta2.clone()];
    let mut out = Vec::with_capacity(max_n);
    for i in 0..max_n {
        for y in ys.iter_mut() {
            if i > 0 {
                *y = f.step_inv(y)?;
            }
            pts.insert(y.clone());
        }
        out.push(pts.len());
    }
    Ok(out)
}

pub fn complexity(params: &CapParams, window: &Window, n: usize) -> Result<Complexity> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "factor length must be at least 1".into(),
        ));
    }
    let f = SteppingFn::new(params, window)?;
    let ring = ZTheta::new(params.eps.clone())?;
    let length_in_ring = ring.contains(&window.len);
    let count = *complexity_counts(&f, n)?.last().expect("n >= 1");
    let n0 = if length_in_ring {
        Some(detect_n0(&f)?)
    } else {
        None
    };
    Ok(Complexity {
        n,
        count,
        length_in_ring,
        n0,
    })
}

/// Smallest `n₀` with `C(n₀+1) − C(n₀) = 1`, taking `C(0) = 1`.
fn detect_n0(f: &SteppingFn) -> Result<usize> {
    let counts = complexity_counts(f, N0_CAP + 1)?;
    let mut prev = 1;
    for (i, &c) in counts.iter().enumerate() {
        if c - prev == 1 {
            return Ok(i);
        }
        prev = c;
    }
    Err(Error::CapExceeded {
        what: "n0 detection",
        cap: N0_CAP,
    })
}

/// Which extensions to count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// A special factor with its one-letter extensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialFactor {
    pub word: Vec<Letter>,
    pub extensions: Vec<Letter>,
}

/// Extensions of every factor of length `n`, read off the factors of length `n + 1`.
pub fn extensions(
    params: &CapParams,
    window: &Window,
    n: usize,
    side: Side,
) -> Result<BTreeMap<Vec<Letter>, Vec<Letter>>> {
    let f = SteppingFn::new(params, window)?;
    let longer = factors_of(&f, n + 1)?;
    let mut ext: BTreeMap<Vec<Letter>, Vec<Letter>> = factors_of(&f, n)?
        .words()
        .into_iter()
        .map(|w| (w, Vec::new()))
        .collect();
    for w in longer.words() {
        let (key, letter) = match side {
            Side::Left => (w[1..].to_vec(), w[0]),
            Side::Right => (w[..n].to_vec(), w[n]),
        };
        ext.entry(key).or_default().push(letter);
    }
    for v in ext.values_mut() {
        v.sort();
        v.dedup();
    }
    Ok(ext)
}

/// Factors of length `n` with at least two extensions on `side`.
pub fn special_factors(
    params: &CapParams,
    window: &Window,
    n: usize,
    side: Side,
) -> Result<Vec<SpecialFactor>> {
    Ok(extensions(params, window, n, side)?
        .into_iter()
        .filter(|(_, e)| e.len() >= 2)
        .map(|(word, extensions)| SpecialFactor { word, extensions })
        .collect())
}

/// Length-`n` prefixes of the codings of `f(δ₁) = c+ℓ+Δ₂⋆` and `f²(δ₂) = c+Δ₁⋆`.
///
/// For `ℓ ∉ Z[ε]` these are exactly the left special factors.
pub fn left_special_prefixes(
    params: &CapParams,
    window: &Window,
    n: usize,
) -> Result<Vec<Vec<Letter>>> {
    let f = SteppingFn::new(params, window)?;
    let y1 = f.step(&f.delta1)?;
    let y2 = f.step(&f.step(&f.delta2)?)?;
    let mut out = vec![coding(&f, &y1, n)?, coding(&f, &y2, n)?];
    out.sort();
    out.dedup();
    Ok(out)
}

/// Exact density `|Ω_w| / |Ω|` of a factor.
pub fn factor_density(params: &CapParams, window: &Window, w: &[Letter]) -> Result<QuadraticReal> {
    if w.is_empty() {
        return Err(Error::NotAFactor(String::new()));
    }
    factors(params, window, w.len())?.density(w)
}

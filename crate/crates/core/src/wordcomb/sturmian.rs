use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::factors::factors;
use crate::capcore::{binary_string, mechanical, CapParams, MechanicalKind, Window};
use crate::exactnum::QuadraticReal;
use crate::{Error, Result};

/// Outcome of the three counting properties of sturmian factors and a balance check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SturmianReport {
    pub n: usize,
    pub factors: Vec<String>,
    /// Each factor has `⌊nα⌋` or `⌈nα⌉` ones.
    pub ones_count: bool,
    /// All `n+1` factors occur in `s̄_{α,−α}(−n+1) … s̄_{α,−α}(n)`.
    pub central_block: bool,
    /// Exactly `⌈nα⌉` factors start with `1`.
    pub prefixed_by_one: bool,
    /// Ones-counts of equal-length factors differ by at most one.
    pub balanced: bool,
}

impl SturmianReport {
    pub fn all_pass(&self) -> bool {
        self.ones_count && self.central_block && self.prefixed_by_one && self.balanced
    }
}

fn ones(w: &str) -> usize {
    w.bytes().filter(|&b| b == b'1').count()
}

/// Binary factors of length `n` of any mechanical word with slope `α`.
pub fn sturmian_factors(alpha: &QuadraticReal, n: usize) -> Result<Vec<String>> {
    let params = CapParams::new(-alpha, alpha.clone())?;
    let w = Window::new(QuadraticReal::zero(), QuadraticReal::one())?;
    let fs = factors(&params, &w, n)?;
    let mut out: Vec<String> = fs
        .words()
        .iter()
        .map(|w| binary_string(w).expect("two-letter word"))
        .collect();
    out.sort();
    Ok(out)
}

/// Checks the counting properties at length `n`; balance is tested on
/// `s̄_{α,β}(0 … prefix−1)` for every length up to `n`.
pub fn sturmian_checks(
    alpha: &QuadraticReal,
    beta: &QuadraticReal,
    n: usize,
) -> Result<SturmianReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let fs = sturmian_factors(alpha, n)?;
    let na = QuadraticReal::from_int(n as i64) * alpha;
    let (lo, hi) = (na.floor().to_usize(), na.ceil().to_usize());
    let (lo, hi) = (lo.ok_or(Error::Overflow)?, hi.ok_or(Error::Overflow)?);
    let ones_count = fs.iter().all(|w| (lo..=hi).contains(&ones(w)));
    let prefixed_by_one = fs.iter().filter(|w| w.starts_with('1')).count() == hi;
    let ni = n as i64;
    let block = mechanical(alpha, &-alpha, MechanicalKind::Upper, (-ni + 1)..(ni + 1))?;
    let windows: BTreeSet<String> = block.windows(n).map(bits).collect();
    let central_block = fs.len() == n + 1 && windows == fs.iter().cloned().collect();
    let prefix = mechanical(alpha, beta, MechanicalKind::Upper, 0..(20 * ni).max(1000))?;
    let balanced = is_balanced(&prefix, n);
    Ok(SturmianReport {
        n,
        factors: fs,
        ones_count,
        central_block,
        prefixed_by_one,
        balanced,
    })
}

fn bits(w: &[u8]) -> String {
    w.iter().map(|b| if *b == 0 { '0' } else { '1' }).collect()
}

/// For every length `k ≤ max_len`, all windows of `w` carry ones-counts within one of each other.
pub fn is_balanced(w: &[u8], max_len: usize) -> bool {
    for k in 1..=max_len.min(w.len()) {
        let mut count: i64 = w[..k].iter().map(|&b| i64::from(b)).sum();
        let (mut lo, mut hi) = (count, count);
        for i in k..w.len() {
            count += i64::from(w[i]) - i64::from(w[i - k]);
            lo = lo.min(count);
            hi = hi.max(count);
        }
        if hi - lo > 1 {
            return false;
        }
    }
    true
}

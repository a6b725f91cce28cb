use std::ops::Range;

use serde::Serialize;

use crate::exactnum::QuadraticReal;
use crate::{Error, Result};

const SLACK: f64 = 1e-6;

/// Lower words use floors, upper words use ceilings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MechanicalKind {
    Lower,
    Upper,
}

/// Mechanical word `s(n) = ⌊(n+1)α+β⌋ − ⌊nα+β⌋` (or with ceilings) for `n ∈ range`.
///
/// Only the first term uses a full floor; later terms are decided in floating
/// point and recomputed exactly when within `SLACK` of an integer.
pub fn mechanical(
    alpha: &QuadraticReal,
    beta: &QuadraticReal,
    kind: MechanicalKind,
    range: Range<i64>,
) -> Result<Vec<u8>> {
    if alpha.is_rational() {
        return Err(Error::InvalidParameter(format!(
            "alpha = {alpha} must be irrational"
        )));
    }
    let one = QuadraticReal::one();
    if !alpha.is_positive() || alpha >= &one {
        return Err(Error::InvalidParameter(format!(
            "alpha = {alpha} must lie in (0,1)"
        )));
    }
    if !alpha.compatible(beta) {
        return Err(Error::IncompatibleRadicands(alpha.d(), beta.d()));
    }
    let x0 = QuadraticReal::from_int(range.start) * alpha + beta;
    // lower: r_k = frac(x0) + kα − m_k ∈ [0,1); upper: r_k = ⌈x0⌉ − x0 − kα + m_k ∈ [0,1)
    let r0 = match kind {
        MechanicalKind::Lower => x0.fract(),
        MechanicalKind::Upper => QuadraticReal::from_bigint(x0.ceil()) - &x0,
    };
    let (r0f, af) = (r0.to_f64(), alpha.to_f64());
    let mut out = Vec::with_capacity(range.clone().count());
    let mut m: i64 = 0;
    for k in 1..=range.count() as i64 {
        // the float decides unless it is too close to the threshold
        let one_up = match kind {
            MechanicalKind::Lower => {
                let est = r0f + k as f64 * af - m as f64;
                if (est - 1.0).abs() > SLACK {
                    est > 1.0
                } else {
                    &r0 + QuadraticReal::from_int(k) * alpha - QuadraticReal::from_int(m) >= one
                }
            }
            MechanicalKind::Upper => {
                let est = r0f - k as f64 * af + m as f64;
                if est.abs() > SLACK {
                    est < 0.0
                } else {
                    (&r0 - QuadraticReal::from_int(k) * alpha + QuadraticReal::from_int(m))
                        .is_negative()
                }
            }
        };
        if one_up {
            m += 1;
        }
        out.push(u8::from(one_up));
    }
    Ok(out)
}

/// Renders a binary word as a string of `0`s and `1`s.
pub fn bits_string(w: &[u8]) -> String {
    w.iter().map(|b| if *b == 0 { '0' } else { '1' }).collect()
}

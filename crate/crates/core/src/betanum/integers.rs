use serde::Serialize;

use super::expansion::{
    renyi_orbit, BetaBasis, Comparison, DigitString, QuadraticForm, QuadraticSign,
};
use crate::capcore::{CapParams, CapSequence, Window};
use crate::exactnum::QuadraticReal;
use crate::substderive::Morphism;
use crate::{Error, Result};

/// Non-negative β-integers up to a bound, with the word of gaps between neighbours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaIntegers {
    pub points: Vec<QuadraticReal>,
    pub digits: Vec<DigitString>,
    /// Distinct gap lengths `T_β^i(1)`, `i ≥ 0`.
    pub gap_values: Vec<QuadraticReal>,
    /// Index into `gap_values` of each gap `points[j+1] − points[j]`.
    pub gaps: Vec<usize>,
}

impl BetaIntegers {
    /// Gaps rendered over `A, B, C, …`.
    pub fn gap_word(&self) -> String {
        self.gaps
            .iter()
            .map(|&g| char::from(b'A' + g as u8))
            .collect()
    }
}

fn check_exact(basis: &BetaBasis) -> Result<()> {
    if basis.is_integer() || basis.is_quadratic_pisot() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "beta = {} is not a quadratic Pisot number",
            basis.beta()
        )))
    }
}

/// Admissible strings of length `len` in lexicographic order, which is also the order of their values.
fn admissible_strings(cmp: &Comparison, len: usize, max_digit: u32, out: &mut Vec<Vec<u32>>) {
    fn go(
        cmp: &Comparison,
        len: usize,
        max_digit: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for d in 0..=max_digit {
            cur.push(d);
            // Prefixes of admissible strings are admissible, so only suffixes through the new digit need checking
            let ok = (0..cur.len()).all(|i| cmp.suffix_ok(&cur[i..]));
            if ok {
                go(cmp, len, max_digit, cur, out);
            }
            cur.pop();
        }
    }
    go(cmp, len, max_digit, &mut Vec::with_capacity(len), out);
}

/// `Z_β ∩ [0, bound]` in increasing order.
pub fn beta_integers(basis: &BetaBasis, bound: &QuadraticReal) -> Result<BetaIntegers> {
    check_exact(basis)?;
    let beta = basis.beta();
    let mut len = 1;
    let mut pow = beta.clone();
    while &pow <= bound {
        pow = &pow * beta;
        len += 1;
        if len > 200 {
            return Err(Error::CapExceeded {
                what: "beta-integer digit length",
                cap: 200,
            });
        }
    }
    let cmp = Comparison::new(basis)?;
    let max_digit = u32::try_from(beta.ceil()).map_err(|_| Error::Overflow)?;
    let mut strings = Vec::new();
    if !bound.is_negative() {
        admissible_strings(&cmp, len, max_digit, &mut strings);
    }
    let mut points = Vec::new();
    let mut digits = Vec::new();
    for s in strings {
        let d = DigitString::integer(s);
        let v = d.value(basis);
        if &v > bound {
            break;
        }
        points.push(v);
        digits.push(d.trimmed());
    }
    let gap_values = renyi_orbit(basis, 4096);
    let mut gaps = Vec::with_capacity(points.len().saturating_sub(1));
    for w in points.windows(2) {
        let g = &w[1] - &w[0];
        let i = gap_values
            .iter()
            .position(|v| v == &g)
            .ok_or_else(|| Error::Inconsistent(format!("gap {g} is not of the form T^i(1)")))?;
        gaps.push(i);
    }
    Ok(BetaIntegers {
        points,
        digits,
        gap_values,
        gaps,
    })
}

/// Smallest enumeration holding at least `count` non-negative β-integers.
pub fn first_beta_integers(basis: &BetaBasis, count: usize) -> Result<BetaIntegers> {
    check_exact(basis)?;
    let mut bound = basis.beta().clone();
    loop {
        let mut z = beta_integers(basis, &bound)?;
        if z.points.len() >= count {
            z.points.truncate(count);
            z.digits.truncate(count);
            z.gaps.truncate(count.saturating_sub(1));
            return Ok(z);
        }
        bound = &bound * basis.beta();
    }
}

/// Result of comparing `Z_β ∩ R⁺` with a cut-and-project set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CapEquivalence {
    /// `Z_β ∩ R⁺ = Σ_{β′,β}(Ω) ∩ R⁺`, checked on the first `checked` points.
    Window {
        form: QuadraticForm,
        window: Window,
        checked: usize,
        agree: bool,
        first_mismatch: Option<usize>,
    },
    /// No window exists: the two gap lengths cannot be matched.
    Obstruction { form: QuadraticForm, reason: String },
}

impl CapEquivalence {
    pub fn holds(&self) -> bool {
        matches!(self, Self::Window { agree: true, .. })
    }
}

fn pisot_form(basis: &BetaBasis) -> Result<QuadraticForm> {
    if !basis.is_quadratic_pisot() {
        return Err(Error::Precondition(format!(
            "beta = {} is not a quadratic Pisot number",
            basis.beta()
        )));
    }
    basis
        .quadratic_form()
        .ok_or_else(|| Error::Precondition("unsupported minimal polynomial".into()))
}

/// Window realising `Z_β ∩ R⁺` as a cut-and-project set with slopes `(β′, β)`, checked on `count` points.
pub fn cap_equivalence(basis: &BetaBasis, count: usize) -> Result<CapEquivalence> {
    let form = pisot_form(basis)?;
    let conj = basis.beta().conjugate();
    let inv = conj.inverse()?;
    if form.n != 1 {
        let reason = match form.sign {
            QuadraticSign::Plus => format!(
                "gaps 1 and {n}/beta force m/(1+beta') = {n}/beta, i.e. (1-{n})beta' = 0",
                n = form.n
            ),
            QuadraticSign::Minus => format!(
                "gaps 1 and 1-{n}/beta force m/(1+beta') = 1-{n}/beta, i.e. ({n}-1)beta' = 0",
                n = form.n
            ),
        };
        return Ok(CapEquivalence::Obstruction { form, reason });
    }
    let window = match form.sign {
        QuadraticSign::Plus => Window::from_bounds(QuadraticReal::from_int(-1), -inv)?,
        QuadraticSign::Minus => Window::from_bounds(QuadraticReal::zero(), inv)?,
    };
    let z = first_beta_integers(basis, count)?;
    let params = CapParams::new(conj, basis.beta().clone())?;
    let seq = CapSequence::new(&params, &window)?;
    let pts = seq.points(0, count.saturating_sub(1));
    let first_mismatch = z.points.iter().zip(&pts).position(|(a, b)| a != &b.value);
    Ok(CapEquivalence::Window {
        form,
        window,
        checked: count,
        agree: first_mismatch.is_none(),
        first_mismatch,
    })
}

/// Substitution fixing the gap word of `Z_β` for a quadratic Pisot unit; `A` is the gap `1`.
pub fn beta_substitution(basis: &BetaBasis) -> Result<Morphism> {
    let form = pisot_form(basis)?;
    if form.n != 1 {
        return Err(Error::Precondition(format!(
            "beta = {} is not a unit",
            basis.beta()
        )));
    }
    let m = form.m as usize;
    let (a, b) = match form.sign {
        QuadraticSign::Plus => (vec![0; m], vec![0]),
        QuadraticSign::Minus => (vec![0; m - 1], vec![0; m - 2]),
    };
    let (mut a, mut b) = (a, b);
    a.push(1);
    if form.sign == QuadraticSign::Minus {
        b.push(1);
    }
    Morphism::new(vec!["A".into(), "B".into()], vec![a, b])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau() -> BetaBasis {
        BetaBasis::new(QuadraticReal::tau()).unwrap()
    }

    #[test]
    fn golden_gaps() {
        let z = beta_integers(&tau(), &QuadraticReal::from_int(10)).unwrap();
        assert_eq!(z.points[0], QuadraticReal::zero());
        assert!(z.gap_word().starts_with("ABAAB"));
        let inv = QuadraticReal::one() / QuadraticReal::tau();
        assert_eq!(z.gap_values, vec![QuadraticReal::one(), inv]);
        assert_eq!(z.digits[2].to_string(), "10");
        assert_eq!(z.digits[3].to_string(), "100");
    }

    #[test]
    fn gap_sets_for_units() {
        for m in 1..5 {
            let b = BetaBasis::from_polynomial(m, 1, QuadraticSign::Plus).unwrap();
            let z = beta_integers(&b, &QuadraticReal::from_int(30)).unwrap();
            assert_eq!(
                z.gap_values,
                vec![QuadraticReal::one(), b.beta().inverse().unwrap()]
            );
        }
    }

    #[test]
    fn substitutions() {
        assert_eq!(
            beta_substitution(&tau()).unwrap().to_string(),
            "A->AB, B->A"
        );
        let b = BetaBasis::from_polynomial(2, 1, QuadraticSign::Plus).unwrap();
        assert_eq!(beta_substitution(&b).unwrap().to_string(), "A->AAB, B->A");
        let b = BetaBasis::from_polynomial(3, 1, QuadraticSign::Minus).unwrap();
        assert_eq!(beta_substitution(&b).unwrap().to_string(), "A->AAB, B->AB");
    }

    #[test]
    fn equivalence_windows() {
        let e = cap_equivalence(&tau(), 200).unwrap();
        match &e {
            CapEquivalence::Window { window, .. } => {
                assert_eq!(window.c, QuadraticReal::from_int(-1));
                assert_eq!(window.end(), QuadraticReal::tau());
            }
            _ => panic!("expected a window"),
        }
        assert!(e.holds());
        let b = BetaBasis::from_polynomial(3, 1, QuadraticSign::Minus).unwrap();
        assert!(cap_equivalence(&b, 200).unwrap().holds());
        let b = BetaBasis::from_polynomial(2, 2, QuadraticSign::Plus).unwrap();
        assert!(matches!(
            cap_equivalence(&b, 10).unwrap(),
            CapEquivalence::Obstruction { .. }
        ));
        let two = BetaBasis::new(QuadraticReal::from_int(2)).unwrap();
        assert!(cap_equivalence(&two, 10).is_err());
    }

    #[test]
    fn non_pisot_rejected() {
        let b = BetaBasis::new(QuadraticReal::sqrt(5).unwrap()).unwrap();
        assert!(beta_integers(&b, &QuadraticReal::from_int(3)).is_err());
    }
}

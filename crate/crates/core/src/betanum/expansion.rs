use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::exactnum::{classify, AlgebraicProfile, QuadraticReal};
use crate::{Error, Result};

/// Base `β > 1` of a numeration system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaBasis {
    beta: QuadraticReal,
    /// Absent for rational `β`.
    profile: Option<AlgebraicProfile>,
}

/// Sign in `β² = mβ ± n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuadraticSign {
    Plus,
    Minus,
}

/// `β² = mβ + n` or `β² = mβ − n` with `m, n ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticForm {
    pub m: u64,
    pub n: u64,
    pub sign: QuadraticSign,
}

impl BetaBasis {
    pub fn new(beta: QuadraticReal) -> Result<Self> {
        if beta <= QuadraticReal::one() {
            return Err(Error::InvalidParameter(format!(
                "beta = {beta} must exceed 1"
            )));
        }
        let profile = if beta.is_rational() {
            None
        } else {
            Some(classify(&beta)?)
        };
        Ok(Self { beta, profile })
    }

    /// The larger root of `x² = m·x ± n`.
    pub fn from_polynomial(m: u64, n: u64, sign: QuadraticSign) -> Result<Self> {
        let (mi, ni) = (
            i64::try_from(m).map_err(|_| Error::Overflow)?,
            i64::try_from(n).map_err(|_| Error::Overflow)?,
        );
        let disc = match sign {
            QuadraticSign::Plus => mi * mi + 4 * ni,
            QuadraticSign::Minus => mi * mi - 4 * ni,
        };
        if disc < 0 {
            return Err(Error::InvalidParameter(format!(
                "x^2 = {m}x - {n} has no real root"
            )));
        }
        let root = QuadraticReal::sqrt(disc as u64)?;
        let beta = (QuadraticReal::from_int(mi) + root) / QuadraticReal::from_int(2);
        Self::new(beta)
    }

    pub fn beta(&self) -> &QuadraticReal {
        &self.beta
    }

    pub fn profile(&self) -> Option<&AlgebraicProfile> {
        self.profile.as_ref()
    }

    pub fn is_integer(&self) -> bool {
        self.beta.is_integer()
    }

    pub fn is_quadratic_pisot(&self) -> bool {
        self.profile.as_ref().is_some_and(|p| p.is_pisot)
    }

    /// `(m, n, ±)` when `β` is a quadratic integer.
    pub fn quadratic_form(&self) -> Option<QuadraticForm> {
        let p = self.profile.as_ref()?;
        if !p.is_quadratic_integer {
            return None;
        }
        let mp = &p.minimal_polynomial;
        let m = (-&mp.b).to_u64()?;
        let c = mp.c.to_i64()?;
        let (n, sign) = if c < 0 {
            (c.unsigned_abs(), QuadraticSign::Plus)
        } else {
            (c as u64, QuadraticSign::Minus)
        };
        (m >= 1 && n >= 1).then_some(QuadraticForm { m, n, sign })
    }
}

/// Digits `x_k … x_0 . x_{−1} …`, most significant first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitString {
    pub digits: Vec<u32>,
    /// Exponent of `digits[0]`; at least zero, so the integer part is always present.
    pub exponent: i64,
    /// False when the expansion was cut at the requested depth with a non-zero remainder.
    pub exact: bool,
}

impl DigitString {
    /// An integer-part string `x_k … x_0`.
    pub fn integer(digits: Vec<u32>) -> Self {
        let exponent = digits.len() as i64 - 1;
        Self {
            digits,
            exponent,
            exact: true,
        }
    }

    /// `Σ x_i β^i`.
    pub fn value(&self, basis: &BetaBasis) -> QuadraticReal {
        // Horner on the whole string, then shift by the lowest exponent
        let mut acc = QuadraticReal::zero();
        for &d in &self.digits {
            acc = &acc * basis.beta() + QuadraticReal::from_int(i64::from(d));
        }
        let low = self.exponent - self.digits.len() as i64 + 1;
        let shift = basis.beta().pow(low as i32).expect("beta is non-zero");
        acc * shift
    }

    /// Digits below the radix point.
    pub fn fractional_len(&self) -> usize {
        (self.digits.len() as i64 - self.exponent - 1).max(0) as usize
    }

    /// Drops leading zeros of the integer part.
    pub fn trimmed(&self) -> Self {
        let extra = self
            .digits
            .iter()
            .take(self.exponent as usize)
            .take_while(|&&d| d == 0)
            .count();
        Self {
            digits: self.digits[extra..].to_vec(),
            exponent: self.exponent - extra as i64,
            exact: self.exact,
        }
    }
}

fn push_digit(s: &mut String, d: u32) {
    if d < 10 {
        s.push(char::from_digit(d, 10).expect("single digit"));
    } else {
        s.push_str(&format!("({d})"));
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let int_len = (self.exponent + 1) as usize;
        for (i, &d) in self.digits.iter().enumerate() {
            if i == int_len {
                s.push('.');
            }
            push_digit(&mut s, d);
        }
        if !self.exact {
            s.push_str("...");
        }
        f.write_str(&s)
    }
}

impl FromStr for DigitString {
    type Err = Error;

    /// Reads `10.01`; digits above nine are written in parentheses, `(12)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.into(),
            reason: reason.into(),
        };
        let mut digits = Vec::new();
        let mut int_len = None;
        let mut chars = s.trim().chars();
        while let Some(c) = chars.next() {
            match c {
                '.' if int_len.is_none() => int_len = Some(digits.len()),
                '0'..='9' => digits.push(c.to_digit(10).expect("digit")),
                '(' => {
                    let inner: String = chars.by_ref().take_while(|&c| c != ')').collect();
                    digits.push(inner.parse().map_err(|_| bad("bad parenthesised digit"))?);
                }
                _ => return Err(bad("unexpected character")),
            }
        }
        let int_len = int_len.unwrap_or(digits.len());
        if int_len == 0 {
            return Err(bad("missing integer part"));
        }
        Ok(Self {
            digits,
            exponent: int_len as i64 - 1,
            exact: true,
        })
    }
}

impl Serialize for DigitString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn digit_of(x: &QuadraticReal) -> Result<u32> {
    x.floor().to_u32().ok_or(Error::Overflow)
}

/// Greedy β-expansion of `x ≥ 0` with at most `frac_depth` digits after the radix point.
pub fn greedy_expand(
    x: &QuadraticReal,
    basis: &BetaBasis,
    frac_depth: usize,
) -> Result<DigitString> {
    if x.is_negative() {
        return Err(Error::Precondition(format!("x = {x} must be non-negative")));
    }
    let beta = basis.beta();
    let mut k = 0i64;
    let mut pow = QuadraticReal::one();
    loop {
        let next = &pow * beta;
        if &next > x {
            break;
        }
        pow = next;
        k += 1;
    }
    let mut r = x.clone();
    let mut digits = Vec::new();
    let mut i = k;
    loop {
        let d = digit_of(&(&r / &pow))?;
        r = r - QuadraticReal::from_int(i64::from(d)) * &pow;
        digits.push(d);
        if i <= 0 && (r.is_zero() || -i >= frac_depth as i64) {
            break;
        }
        i -= 1;
        pow = pow / beta;
    }
    Ok(DigitString {
        digits,
        exponent: k,
        exact: r.is_zero(),
    })
}

/// Rényi development `d_β(1) = t₁ t₂ …`: a preperiod followed by a period (empty when finite).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RenyiDev {
    pub preperiod: Vec<u32>,
    pub period: Vec<u32>,
    /// False when `max_terms` digits were produced without a repeat.
    pub complete: bool,
}

/// `T_β(x) = βx − ⌊βx⌋`.
pub fn renyi_map(x: &QuadraticReal, basis: &BetaBasis) -> QuadraticReal {
    (x * basis.beta()).fract()
}

/// The states `T^i(1)`, `i ≥ 0`, before the orbit reaches zero or repeats.
pub fn renyi_orbit(basis: &BetaBasis, max_terms: usize) -> Vec<QuadraticReal> {
    let mut seen: HashMap<QuadraticReal, usize> = HashMap::new();
    let mut x = QuadraticReal::one();
    let mut out = Vec::new();
    while !x.is_zero() && !seen.contains_key(&x) && out.len() <= max_terms {
        seen.insert(x.clone(), out.len());
        out.push(x.clone());
        x = renyi_map(&x, basis);
    }
    out
}

pub fn renyi_development(basis: &BetaBasis, max_terms: usize) -> Result<RenyiDev> {
    let beta = basis.beta();
    let mut seen: HashMap<QuadraticReal, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut x = QuadraticReal::one();
    while digits.len() < max_terms {
        seen.insert(x.clone(), digits.len());
        let bx = &x * beta;
        digits.push(digit_of(&bx)?);
        x = bx.fract();
        if x.is_zero() {
            return Ok(RenyiDev {
                preperiod: digits,
                period: Vec::new(),
                complete: true,
            });
        }
        if let Some(&j) = seen.get(&x) {
            let period = digits.split_off(j);
            return Ok(RenyiDev {
                preperiod: digits,
                period,
                complete: true,
            });
        }
    }
    Ok(RenyiDev {
        preperiod: digits,
        period: Vec::new(),
        complete: false,
    })
}

impl RenyiDev {
    pub fn is_finite(&self) -> bool {
        self.complete && self.period.is_empty()
    }

    /// `t_i` for `i ≥ 1`; zero past a finite development.
    pub fn digit(&self, i: usize) -> u32 {
        assert!(i >= 1, "digits are indexed from one");
        let j = i - 1;
        if j < self.preperiod.len() {
            self.preperiod[j]
        } else if self.period.is_empty() {
            0
        } else {
            self.period[(j - self.preperiod.len()) % self.period.len()]
        }
    }

    /// `(t₁ … t_{m−1} (t_m − 1))^ω` for a finite development, the development itself otherwise.
    pub fn quasi_greedy(&self) -> RenyiDev {
        if !self.is_finite() {
            return self.clone();
        }
        let mut period = self.preperiod.clone();
        if let Some(last) = period.last_mut() {
            *last -= 1;
        }
        RenyiDev {
            preperiod: Vec::new(),
            period,
            complete: true,
        }
    }

    /// `Σ t_i β^{−i}` evaluated exactly from the preperiod and period.
    pub fn value(&self, basis: &BetaBasis) -> Result<QuadraticReal> {
        if !self.complete {
            return Err(Error::Precondition(
                "the development was cut before it closed".into(),
            ));
        }
        let inv = basis.beta().inverse()?;
        let head = |ds: &[u32]| {
            let mut acc = QuadraticReal::zero();
            let mut p = inv.clone();
            for &d in ds {
                acc = acc + QuadraticReal::from_int(i64::from(d)) * &p;
                p = &p * &inv;
            }
            acc
        };
        let mut v = head(&self.preperiod);
        if !self.period.is_empty() {
            let lp = inv.pow(self.preperiod.len() as i32)?;
            let lq = inv.pow(self.period.len() as i32)?;
            v = v + lp * head(&self.period) / (QuadraticReal::one() - lq);
        }
        Ok(v)
    }
}

impl fmt::Display for RenyiDev {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for &d in &self.preperiod {
            push_digit(&mut s, d);
        }
        if !self.period.is_empty() {
            s.push('(');
            for &d in &self.period {
                push_digit(&mut s, d);
            }
            s.push_str(")^w");
        } else if !self.complete {
            s.push_str("...");
        }
        f.write_str(&s)
    }
}

/// Digit source for the comparison sequence of the Parry condition.
pub(crate) struct Comparison {
    seq: RenyiDev,
}

impl Comparison {
    pub(crate) fn new(basis: &BetaBasis) -> Result<Self> {
        Ok(Self {
            seq: renyi_development(basis, 4096)?.quasi_greedy(),
        })
    }

    /// Every suffix of `digits`, padded with zeros, lies strictly below the comparison sequence.
    pub(crate) fn admits(&self, digits: &[u32]) -> bool {
        (0..digits.len()).all(|i| self.suffix_ok(&digits[i..]))
    }

    /// The suffix starting at the last position of `digits` and all earlier ones ending there.
    pub(crate) fn suffix_ok(&self, s: &[u32]) -> bool {
        for (j, &d) in s.iter().enumerate() {
            let t = self.seq.digit(j + 1);
            if d != t {
                return d < t;
            }
        }
        true
    }
}

/// Parry's condition with the quasi-greedy comparison sequence.
pub fn parry_admissible(digits: &[u32], basis: &BetaBasis) -> Result<bool> {
    Ok(Comparison::new(basis)?.admits(digits))
}

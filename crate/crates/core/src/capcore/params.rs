use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactnum::QuadraticReal;
use crate::{Error, Result};

/// Slopes `(ε, η)` of a cut-and-project scheme: points `p + qη` with star `p + qε`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapParams {
    pub eps: QuadraticReal,
    pub eta: QuadraticReal,
}

impl CapParams {
    pub fn new(eps: QuadraticReal, eta: QuadraticReal) -> Result<Self> {
        for (name, v) in [("eps", &eps), ("eta", &eta)] {
            if v.is_rational() {
                return Err(Error::InvalidParameter(format!(
                    "{name} = {v} must be irrational"
                )));
            }
        }
        if eps == eta {
            return Err(Error::InvalidParameter("eps and eta must differ".into()));
        }
        Ok(Self { eps, eta })
    }

    /// Star image `p + qε` of the lattice point with coordinates `(p, q)`.
    pub fn star(&self, c: Coords) -> QuadraticReal {
        c.eval(&self.eps)
    }

    /// Physical value `p + qη`.
    pub fn value(&self, c: Coords) -> QuadraticReal {
        c.eval(&self.eta)
    }

    /// True for `ε ∈ (−1, 0)` and `η > 0`.
    pub fn is_normalized_slopes(&self) -> bool {
        self.eps.is_negative() && self.eps > QuadraticReal::from_int(-1) && self.eta.is_positive()
    }
}

/// Half-open acceptance window `[c, c + len)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub c: QuadraticReal,
    pub len: QuadraticReal,
}

impl Window {
    pub fn new(c: QuadraticReal, len: QuadraticReal) -> Result<Self> {
        if !len.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "window length {len} must be positive"
            )));
        }
        if !c.compatible(&len) {
            return Err(Error::IncompatibleRadicands(c.d(), len.d()));
        }
        Ok(Self { c, len })
    }

    /// `[a, b)`.
    pub fn from_bounds(a: QuadraticReal, b: QuadraticReal) -> Result<Self> {
        let len = b.checked_sub(&a)?;
        Self::new(a, len)
    }

    pub fn end(&self) -> QuadraticReal {
        &self.c + &self.len
    }

    pub fn contains(&self, y: &QuadraticReal) -> bool {
        y >= &self.c && y < &self.end()
    }

    /// `0 ∈ [c, c + len]`.
    pub fn closure_contains_zero(&self) -> bool {
        !self.c.is_positive() && !self.end().is_negative()
    }

    pub fn translate(&self, x: &QuadraticReal) -> Self {
        Self {
            c: &self.c + x,
            len: self.len.clone(),
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.c, self.end())
    }
}

/// Lattice coordinates `(p, q)` used along orbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct Coords {
    pub p: i64,
    pub q: i64,
}

impl Coords {
    pub const ZERO: Coords = Coords { p: 0, q: 0 };

    pub const fn new(p: i64, q: i64) -> Self {
        Self { p, q }
    }

    pub fn eval(self, theta: &QuadraticReal) -> QuadraticReal {
        QuadraticReal::from_int(self.p) + QuadraticReal::from_int(self.q) * theta
    }

    pub fn checked_add(self, o: Coords) -> Result<Coords> {
        Ok(Coords {
            p: self.p.checked_add(o.p).ok_or(Error::Overflow)?,
            q: self.q.checked_add(o.q).ok_or(Error::Overflow)?,
        })
    }

    pub fn checked_sub(self, o: Coords) -> Result<Coords> {
        Ok(Coords {
            p: self.p.checked_sub(o.p).ok_or(Error::Overflow)?,
            q: self.q.checked_sub(o.q).ok_or(Error::Overflow)?,
        })
    }

    pub fn scaled(self, k: i64) -> Result<Coords> {
        Ok(Coords {
            p: self.p.checked_mul(k).ok_or(Error::Overflow)?,
            q: self.q.checked_mul(k).ok_or(Error::Overflow)?,
        })
    }
}

impl std::ops::Add for Coords {
    type Output = Coords;
    /// Panics on `i64` overflow.
    fn add(self, o: Coords) -> Coords {
        self.checked_add(o).expect("lattice coordinate overflow")
    }
}

impl std::ops::Sub for Coords {
    type Output = Coords;
    /// Panics on `i64` overflow.
    fn sub(self, o: Coords) -> Coords {
        self.checked_sub(o).expect("lattice coordinate overflow")
    }
}

impl std::ops::Neg for Coords {
    type Output = Coords;
    fn neg(self) -> Coords {
        Coords {
            p: -self.p,
            q: -self.q,
        }
    }
}

impl fmt::Display for Coords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// A point of a cut-and-project set together with its two images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapPoint {
    pub p: i64,
    pub q: i64,
    pub value: QuadraticReal,
    pub star: QuadraticReal,
}

impl CapPoint {
    pub fn new(params: &CapParams, c: Coords) -> Self {
        Self {
            p: c.p,
            q: c.q,
            value: params.value(c),
            star: params.star(c),
        }
    }

    pub fn coords(&self) -> Coords {
        Coords::new(self.p, self.q)
    }
}

/// Gap type between adjacent points: `A` for Δ₁, `B` for Δ₁+Δ₂, `C` for Δ₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::A, Letter::B, Letter::C];

    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::C => 'C',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'A' => Some(Letter::A),
            'B' => Some(Letter::B),
            'C' => Some(Letter::C),
            _ => None,
        }
    }

    /// Binary letter of a two-distance word: `A ↦ 1`, `C ↦ 0`.
    pub fn to_binary(self) -> Option<char> {
        match self {
            Letter::A => Some('1'),
            Letter::C => Some('0'),
            Letter::B => None,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Renders a word over `{A, B, C}`.
pub fn word_string(w: &[Letter]) -> String {
    w.iter().map(|l| l.to_char()).collect()
}

/// Parses a word over `{A, B, C}`.
pub fn parse_word(s: &str) -> Option<Vec<Letter>> {
    s.chars().map(Letter::from_char).collect()
}

/// Binary rendering `A ↦ 1`, `C ↦ 0`; `None` if `B` occurs.
pub fn binary_string(w: &[Letter]) -> Option<String> {
    w.iter().map(|l| l.to_binary()).collect()
}

/// Parses a binary word `1 ↦ A`, `0 ↦ C`.
pub fn parse_binary(s: &str) -> Option<Vec<Letter>> {
    s.chars()
        .map(|c| match c {
            '1' => Some(Letter::A),
            '0' => Some(Letter::C),
            _ => None,
        })
        .collect()
}

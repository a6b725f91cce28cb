use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::squarefree::split_square;
use super::Rational;
use crate::{Error, Result};

/// An exact element `a + b·√d` of a real quadratic field.
///
/// `d` is square-free and greater than one whenever `b ≠ 0`. Rationals carry
/// `b = 0` and `d = 1`, so equal numbers always have equal fields.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticReal {
    a: Rational,
    b: Rational,
    d: u64,
}

fn rsign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl QuadraticReal {
    /// Builds `a + b·√d`, extracting square factors from `d`.
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self> {
        if b.is_zero() || d == 0 {
            return Ok(Self::rational(a));
        }
        let (s, core) = split_square(d)?;
        let b = b * Rational::from_integer(BigInt::from(s));
        if core == 1 {
            return Ok(Self::rational(a + b));
        }
        Ok(Self { a, b, d: core })
    }

    pub fn rational(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
            d: 1,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::rational(Rational::from_integer(n))
    }

    pub fn from_ratio(n: i64, m: i64) -> Self {
        Self::rational(Rational::new(BigInt::from(n), BigInt::from(m)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `√d` for any non-negative integer `d`.
    pub fn sqrt(d: u64) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    /// Small-integer shorthand for `p/q + r/s·√d`.
    pub fn from_parts(p: i64, q: i64, r: i64, s: i64, d: u64) -> Result<Self> {
        Self::new(
            Rational::new(BigInt::from(p), BigInt::from(q)),
            Rational::new(BigInt::from(r), BigInt::from(s)),
            d,
        )
    }

    /// The golden mean `(1+√5)/2`.
    pub fn tau() -> Self {
        Self::from_parts(1, 2, 1, 2, 5).expect("5 is square-free")
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// The radicand; `1` for rationals.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    /// The rational value, if there is no irrational part.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    fn common_d(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (1, e) | (e, 1) => Ok(e),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(Error::IncompatibleRadicands(x, y)),
        }
    }

    /// True when both numbers live in a common quadratic field.
    pub fn compatible(&self, other: &Self) -> bool {
        self.common_d(other).is_ok()
    }

    fn build(a: Rational, b: Rational, d: u64) -> Self {
        if b.is_zero() {
            Self::rational(a)
        } else {
            Self { a, b, d }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_d(other)?;
        Ok(Self::build(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let d = self.common_d(other)?;
        Ok(Self::build(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_d(other)?;
        let dd = Rational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::build(a, b, d))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let inv = other.inverse()?;
        self.checked_mul(&inv)
    }

    /// Galois conjugate `a − b√d`.
    pub fn conjugate(&self) -> Self {
        Self::build(self.a.clone(), -self.b.clone(), self.d)
    }

    /// Field norm `x·x′`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(BigInt::from(self.d))
    }

    /// Field trace `x + x′`.
    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::build(&self.a / &n, -(&self.b / &n), self.d))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i32) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Exact sign in `{-1, 0, 1}`.
    pub fn signum(&self) -> i8 {
        let sa = rsign(&self.a);
        let sb = rsign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rational::from_integer(BigInt::from(self.d));
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Greatest integer not above the value.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.a.floor().to_integer();
        }
        let b2d = &self.b * &self.b * Rational::from_integer(BigInt::from(self.d));
        let t = b2d.floor().to_integer().sqrt();
        let fa = self.a.floor().to_integer();
        let mut n = if self.b.is_positive() {
            fa + t
        } else {
            fa - t - 1
        };
        while (self - &Self::from_bigint(n.clone())).is_negative() {
            n -= 1;
        }
        while !(self - &Self::from_bigint(&n + 1)).is_negative() {
            n += 1;
        }
        n
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Fractional part `x − ⌊x⌋ ∈ [0, 1)`.
    pub fn fract(&self) -> Self {
        self - &Self::from_bigint(self.floor())
    }

    /// Nearest `f64`, for plotting and tolerance checks only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    /// Lowest common denominator of both coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }

    /// Exact comparison, valid across different quadratic fields.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        if let Ok(diff) = self.checked_sub(other) {
            return diff.signum().cmp(&0);
        }
        // r + u√d − v√e with d ≠ e
        let r = &self.a - &other.a;
        let (u, d) = (&self.b, self.d);
        let (v, e) = (-other.b.clone(), other.d);
        let du = Rational::from_integer(BigInt::from(d));
        let ev = Rational::from_integer(BigInt::from(e));
        let su = rsign(u);
        let sv = rsign(&v);
        let s_sign = if su == sv {
            su
        } else {
            match (u * u * &du).cmp(&(&v * &v * &ev)) {
                Ordering::Greater => su,
                Ordering::Less => sv,
                Ordering::Equal => 0,
            }
        };
        let sr = rsign(&r);
        let total = if s_sign == 0 || sr == s_sign {
            if sr == 0 {
                s_sign
            } else {
                sr
            }
        } else if sr == 0 {
            s_sign
        } else {
            // sign(r² − s²) with s² = u²d + v²e + 2uv√(de)
            let de = d.checked_mul(e).expect("radicands within range");
            let s2 = QuadraticReal::new(
                u * u * &du + &v * &v * &ev,
                Rational::from_integer(BigInt::from(2)) * u * &v,
                de,
            )
            .expect("product of supported radicands");
            let diff = &Self::rational(&r * &r) - &s2;
            match diff.signum() {
                1 => sr,
                -1 => s_sign,
                _ => 0,
            }
        };
        total.cmp(&0)
    }
}

impl PartialOrd for QuadraticReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a, 'b> $tr<&'b QuadraticReal> for &'a QuadraticReal {
            type Output = QuadraticReal;
            /// Panics on incompatible radicands; use the `checked_*` variant to recover.
            fn $m(self, rhs: &'b QuadraticReal) -> QuadraticReal {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<QuadraticReal> for QuadraticReal {
            type Output = QuadraticReal;
            fn $m(self, rhs: QuadraticReal) -> QuadraticReal {
                (&self).$m(&rhs)
            }
        }
        impl<'b> $tr<&'b QuadraticReal> for QuadraticReal {
            type Output = QuadraticReal;
            fn $m(self, rhs: &'b QuadraticReal) -> QuadraticReal {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<QuadraticReal> for &'a QuadraticReal {
            type Output = QuadraticReal;
            fn $m(self, rhs: QuadraticReal) -> QuadraticReal {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &QuadraticReal {
    type Output = QuadraticReal;
    fn neg(self) -> QuadraticReal {
        QuadraticReal::build(-self.a.clone(), -self.b.clone(), self.d)
    }
}

impl Neg for QuadraticReal {
    type Output = QuadraticReal;
    fn neg(self) -> QuadraticReal {
        -&self
    }
}

impl From<i64> for QuadraticReal {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for QuadraticReal {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl From<BigInt> for QuadraticReal {
    fn from(n: BigInt) -> Self {
        Self::from_bigint(n)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Renders as `p/q+r/s*sqrt(d)`, a form the literal parser reads back.
impl fmt::Display for QuadraticReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write_rational(f, &self.a);
        }
        if !self.a.is_zero() {
            write_rational(f, &self.a)?;
            f.write_str(if self.b.is_positive() { "+" } else { "-" })?;
        } else if self.b.is_negative() {
            f.write_str("-")?;
        }
        let mag = self.b.abs();
        if !mag.is_one() {
            write_rational(f, &mag)?;
            f.write_str("*")?;
        }
        write!(f, "sqrt({})", self.d)
    }
}

impl fmt::Debug for QuadraticReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadraticReal({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, qq: i64, r: i64, s: i64, d: u64) -> QuadraticReal {
        QuadraticReal::from_parts(p, qq, r, s, d).unwrap()
    }

    #[test]
    fn norm_of_one_plus_sqrt2() {
        let x = q(1, 1, 1, 1, 2);
        assert_eq!(&x * &x.conjugate(), QuadraticReal::from_int(-1));
    }

    #[test]
    fn unit_three_plus_four_eps() {
        let eps = q(0, 1, -1, 2, 2);
        let three = QuadraticReal::from_int(3);
        let four = QuadraticReal::from_int(4);
        let g = &three + &(&four * &eps);
        let gc = &three - &(&four * &eps);
        assert_eq!(&g * &gc, QuadraticReal::one());
        assert_eq!(g.conjugate(), gc);
    }

    #[test]
    fn tau_cancellation() {
        let t = QuadraticReal::tau();
        let s = (&QuadraticReal::one() + &t) + (&QuadraticReal::from_int(2) - &t);
        assert_eq!(s, QuadraticReal::from_int(3));
        assert!(s.is_rational());
    }

    #[test]
    fn conjugate_of_tau_and_rational() {
        assert_eq!(QuadraticReal::tau().conjugate(), q(1, 2, -1, 2, 5));
        assert_eq!(
            QuadraticReal::from_int(5).conjugate(),
            QuadraticReal::from_int(5)
        );
    }

    #[test]
    fn signs_by_squaring() {
        // 9 > 8
        assert_eq!(q(3, 1, -2, 1, 2).signum(), 1);
        assert_eq!(QuadraticReal::zero().signum(), 0);
        assert_eq!((QuadraticReal::one() - QuadraticReal::tau()).signum(), -1);
    }

    #[test]
    fn floors() {
        let t = QuadraticReal::tau();
        assert_eq!(t.floor(), BigInt::from(1));
        let three_over_tau = &QuadraticReal::from_int(3) / &t;
        // oracle: 3/τ = (3√5 − 3)/2 and 5 ≤ 3√5 < 7 since 25 ≤ 45 < 49
        assert_eq!(three_over_tau, q(-3, 2, 3, 2, 5));
        assert_eq!(three_over_tau.floor(), BigInt::from(1));
        let m = -(&QuadraticReal::one() / &t);
        assert_eq!(m.floor(), BigInt::from(-1));
        assert_eq!(m.ceil(), BigInt::from(0));
    }

    #[test]
    fn square_factors_are_extracted() {
        let x = QuadraticReal::sqrt(8).unwrap();
        assert_eq!(x, q(0, 1, 2, 1, 2));
        assert_eq!(QuadraticReal::sqrt(9).unwrap(), QuadraticReal::from_int(3));
    }

    #[test]
    fn incompatible_radicands_error() {
        let a = QuadraticReal::sqrt(2).unwrap();
        let b = QuadraticReal::sqrt(3).unwrap();
        assert_eq!(a.checked_add(&b), Err(Error::IncompatibleRadicands(2, 3)));
        assert_eq!(
            a.checked_div(&QuadraticReal::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn cross_field_ordering() {
        let a = QuadraticReal::sqrt(2).unwrap();
        let b = QuadraticReal::sqrt(3).unwrap();
        assert!(a < b);
        let c = q(1, 10, 0, 1, 2) + QuadraticReal::sqrt(2).unwrap();
        // 0.1 + 1.41421 < 1.73205
        assert!(c < b);
        let e = q(-1, 3, 0, 1, 2) + QuadraticReal::sqrt(3).unwrap();
        // 1.73205 − 0.3333 = 1.3987 < 1.41421
        assert!(e < a);
    }

    #[test]
    fn display_round_forms() {
        assert_eq!(q(-2, 1, 2, 1, 2).to_string(), "-2+2*sqrt(2)");
        assert_eq!(q(1, 2, -1, 2, 5).to_string(), "1/2-1/2*sqrt(5)");
        assert_eq!(q(0, 1, -1, 1, 3).to_string(), "-sqrt(3)");
        assert_eq!(QuadraticReal::from_ratio(3, 4).to_string(), "3/4");
    }
}

//! Adaptive-precision interval backend for irrationals of higher degree.
//!
//! Elements are polynomials in a fixed real algebraic number `ξ`, reduced
//! modulo its defining polynomial, so addition and multiplication stay exact.
//! Only `sign` and `floor` go through rational interval enclosures, refined
//! until the answer is certain or the precision budget runs out.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{QuadraticReal, Rational};
use crate::{Error, Result};

/// Environment variable holding the maximal precision in bits.
pub const PRECISION_ENV: &str = "APERIODICA_PRECISION";
pub const DEFAULT_PRECISION: u32 = 512;

/// Precision budget from `APERIODICA_PRECISION`, falling back to the default.
pub fn precision_bits() -> u32 {
    std::env::var(PRECISION_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&b: &u32| b >= 16)
        .unwrap_or(DEFAULT_PRECISION)
}

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn point(r: Rational) -> Self {
        Self {
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().cloned().expect("four products");
        let hi = c.iter().max().cloned().expect("four products");
        Self { lo, hi }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let (a, b) = (&self.lo * r, &self.hi * r);
        if r.is_negative() {
            Self { lo: b, hi: a }
        } else {
            Self { lo: a, hi: b }
        }
    }

    /// Sign of every point, or `None` when the interval straddles zero.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

fn dyadic(n: BigInt, bits: u32) -> Rational {
    Rational::new(n, BigInt::one() << bits)
}

/// Enclosure of a quadratic number of width at most `|b|·2^-bits`.
pub fn enclose_quadratic(x: &QuadraticReal, bits: u32) -> Interval {
    if x.is_rational() {
        return Interval::point(x.a().clone());
    }
    let s = (BigInt::from(x.d()) << (2 * bits)).sqrt();
    let root = Interval {
        lo: dyadic(s.clone(), bits),
        hi: dyadic(s + 1, bits),
    };
    Interval::point(x.a().clone()).add(&root.scale(x.b()))
}

/// A real root of an integer polynomial, fixed by an isolating interval.
pub struct AlgebraicRoot {
    /// Coefficients in ascending powers.
    poly: Vec<BigInt>,
    bracket: Mutex<(Rational, Rational)>,
}

impl fmt::Debug for AlgebraicRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraicRoot")
            .field("poly", &self.poly)
            .finish()
    }
}

fn eval_poly(poly: &[BigInt], x: &Rational) -> Rational {
    poly.iter().rev().fold(Rational::zero(), |acc, c| {
        acc * x + Rational::from_integer(c.clone())
    })
}

impl AlgebraicRoot {
    /// The unique root of `poly` in `(lo, hi)`; the polynomial must change sign there.
    pub fn new(poly: Vec<BigInt>, lo: Rational, hi: Rational) -> Result<Self> {
        if poly.len() < 3 || poly.last().is_none_or(Zero::is_zero) {
            return Err(Error::InvalidParameter(
                "defining polynomial must have degree ≥ 2".into(),
            ));
        }
        let (fl, fh) = (eval_poly(&poly, &lo), eval_poly(&poly, &hi));
        if lo >= hi || (fl.is_positive() == fh.is_positive()) || fl.is_zero() || fh.is_zero() {
            return Err(Error::InvalidParameter(
                "bracket does not isolate a sign change".into(),
            ));
        }
        Ok(Self {
            poly,
            bracket: Mutex::new((lo, hi)),
        })
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn poly(&self) -> &[BigInt] {
        &self.poly
    }

    /// Enclosure of width at most `2^-bits`, refined by bisection and cached.
    pub fn enclose(&self, bits: u32) -> Interval {
        let target = dyadic(BigInt::one(), bits);
        let mut guard = self.bracket.lock().expect("bracket lock");
        let (lo, hi) = &mut *guard;
        let lo_pos = eval_poly(&self.poly, lo).is_positive();
        while &*hi - &*lo > target {
            let mid = (&*lo + &*hi) / Rational::from_integer(BigInt::from(2));
            let fm = eval_poly(&self.poly, &mid);
            if fm.is_zero() {
                *lo = mid.clone();
                *hi = mid;
                break;
            }
            if fm.is_positive() == lo_pos {
                *lo = mid;
            } else {
                *hi = mid;
            }
        }
        Interval {
            lo: lo.clone(),
            hi: hi.clone(),
        }
    }
}

/// Element `Σ cᵢ ξⁱ` of `Q(ξ)` with sign and floor decided by interval refinement.
#[derive(Clone, Debug)]
pub struct ApproxReal {
    coeffs: Vec<Rational>,
    root: Arc<AlgebraicRoot>,
}

impl PartialEq for ApproxReal {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.root, &o.root) && self.coeffs == o.coeffs
    }
}

impl Eq for ApproxReal {}

impl std::hash::Hash for ApproxReal {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.coeffs.hash(h);
    }
}

impl ApproxReal {
    fn trimmed(mut coeffs: Vec<Rational>, root: Arc<AlgebraicRoot>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs, root }
    }

    /// The generator `ξ` itself.
    pub fn generator(root: Arc<AlgebraicRoot>) -> Self {
        Self::trimmed(vec![Rational::zero(), Rational::one()], root)
    }

    pub fn rational(r: Rational, root: Arc<AlgebraicRoot>) -> Self {
        Self::trimmed(vec![r], root)
    }

    pub fn from_int(n: i64, root: Arc<AlgebraicRoot>) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)), root)
    }

    pub fn root(&self) -> &Arc<AlgebraicRoot> {
        &self.root
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.root, &o.root) {
            Ok(())
        } else {
            Err(Error::InvalidParameter(
                "operands belong to different fields".into(),
            ))
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rational::zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
            .collect();
        Ok(Self::trimmed(c, self.root.clone()))
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            root: self.root.clone(),
        }
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.neg())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Self::trimmed(Vec::new(), self.root.clone()));
        }
        let mut prod = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        // reduce modulo the defining polynomial
        let poly = self.root.poly();
        let deg = poly.len() - 1;
        let lead = Rational::from_integer(poly[deg].clone());
        while prod.len() > deg {
            let top = prod.pop().expect("non-empty") / &lead;
            let shift = prod.len() - deg;
            for (k, pk) in poly.iter().take(deg).enumerate() {
                prod[shift + k] -= &top * Rational::from_integer(pk.clone());
            }
        }
        Ok(Self::trimmed(prod, self.root.clone()))
    }

    pub fn enclose(&self, bits: u32) -> Interval {
        let xi = self.root.enclose(bits);
        self.coeffs
            .iter()
            .rev()
            .fold(Interval::point(Rational::zero()), |acc, c| {
                acc.mul(&xi).add(&Interval::point(c.clone()))
            })
    }

    /// Sign decided at increasing precision up to `max_bits`.
    pub fn sign(&self, max_bits: u32) -> Result<i8> {
        if self.is_zero() {
            return Ok(0);
        }
        let mut bits = 32;
        loop {
            if let Some(s) = self.enclose(bits).sign() {
                if s != 0 {
                    return Ok(s);
                }
            }
            if bits >= max_bits {
                return Err(Error::Undecidable(max_bits));
            }
            bits = (bits * 2).min(max_bits);
        }
    }

    /// Floor decided at increasing precision up to `max_bits`.
    pub fn floor(&self, max_bits: u32) -> Result<BigInt> {
        let mut bits = 32;
        loop {
            let iv = self.enclose(bits);
            let fl = iv.lo.floor().to_integer();
            if iv.hi < Rational::from_integer(&fl + 1) {
                return Ok(fl);
            }
            if bits >= max_bits {
                return Err(Error::Undecidable(max_bits));
            }
            bits = (bits * 2).min(max_bits);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn tribonacci() -> Arc<AlgebraicRoot> {
        // x³ − x² − x − 1, root ≈ 1.839
        let poly = [-1, -1, -1, 1].into_iter().map(BigInt::from).collect();
        Arc::new(AlgebraicRoot::new(poly, r(18, 10), r(19, 10)).unwrap())
    }

    #[test]
    fn reduction_uses_relation() {
        let root = tribonacci();
        let x = ApproxReal::generator(root.clone());
        let x3 = x.checked_mul(&x).unwrap().checked_mul(&x).unwrap();
        let rhs = ApproxReal::from_int(1, root.clone())
            .checked_add(&x)
            .unwrap()
            .checked_add(&x.checked_mul(&x).unwrap())
            .unwrap();
        assert_eq!(x3, rhs);
    }

    #[test]
    fn sign_and_floor() {
        let root = tribonacci();
        let x = ApproxReal::generator(root.clone());
        assert_eq!(x.floor(256).unwrap(), BigInt::from(1));
        let y = x
            .checked_sub(&ApproxReal::rational(r(1839, 1000), root.clone()))
            .unwrap();
        assert_eq!(y.sign(256).unwrap(), 1);
        let z = x
            .checked_sub(&ApproxReal::rational(r(1840, 1000), root))
            .unwrap();
        assert_eq!(z.sign(256).unwrap(), -1);
    }

    #[test]
    fn quadratic_enclosure_contains_value() {
        let x = QuadraticReal::from_parts(3, 1, -2, 1, 2).unwrap();
        let iv = enclose_quadratic(&x, 64);
        assert!(iv.lo.is_positive());
        assert!(iv.width() <= r(1, 1 << 60));
    }

    #[test]
    fn undecidable_when_budget_too_small() {
        let root = tribonacci();
        let x = ApproxReal::generator(root.clone());
        // ξ − 1.8392867552141612 differs from zero only beyond 2^-40
        let close = ApproxReal::rational(
            Rational::new(BigInt::from(18392867552141612u64), BigInt::from(10).pow(16)),
            root,
        );
        let diff = x.checked_sub(&close).unwrap();
        assert_eq!(diff.sign(40), Err(Error::Undecidable(40)));
        assert!(diff.sign(512).is_ok());
    }
}

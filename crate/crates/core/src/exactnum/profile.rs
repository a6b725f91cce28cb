use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{QuadraticReal, Rational};
use crate::{Error, Result};

/// Primitive integer polynomial `A·x² + B·x + C` with `A > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinimalPolynomial {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl MinimalPolynomial {
    /// Minimal polynomial of an irrational quadratic number.
    pub fn of(x: &QuadraticReal) -> Result<Self> {
        if x.is_rational() {
            return Err(Error::RationalInput(x.to_string()));
        }
        // x² − (x + x′)x + x·x′
        let tr = x.trace();
        let nm = x.norm();
        let l = tr.denom().lcm(nm.denom());
        let lr = Rational::from_integer(l.clone());
        let b = -(tr * &lr).to_integer();
        let c = (nm * &lr).to_integer();
        let g = l.gcd(&b).gcd(&c);
        Ok(Self {
            a: &l / &g,
            b: &b / &g,
            c: &c / &g,
        })
    }

    pub fn is_monic(&self) -> bool {
        self.a.is_one()
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn eval(&self, x: &QuadraticReal) -> QuadraticReal {
        let a = QuadraticReal::from_bigint(self.a.clone());
        let b = QuadraticReal::from_bigint(self.b.clone());
        let c = QuadraticReal::from_bigint(self.c.clone());
        &(&(&a * x) + &b) * x + c
    }
}

impl fmt::Display for MinimalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.a.is_one() {
            write!(f, "{}", self.a)?;
        }
        f.write_str("x^2")?;
        for (coef, tail) in [(&self.b, "x"), (&self.c, "")] {
            if coef.is_zero() {
                continue;
            }
            f.write_str(if coef.is_negative() { "-" } else { "+" })?;
            let m = coef.abs();
            if !(m.is_one() && !tail.is_empty()) {
                write!(f, "{m}")?;
            }
            f.write_str(tail)?;
        }
        Ok(())
    }
}

/// Algebraic classification of a quadratic irrational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicProfile {
    pub minimal_polynomial: MinimalPolynomial,
    pub is_quadratic_integer: bool,
    pub is_pisot: bool,
    pub is_unit: bool,
    pub is_sturm: bool,
}

fn in_unit_interval(x: &QuadraticReal) -> bool {
    x.is_positive() && x < &QuadraticReal::one()
}

pub fn classify(x: &QuadraticReal) -> Result<AlgebraicProfile> {
    let mp = MinimalPolynomial::of(x)?;
    let integer = mp.is_monic();
    let conj = x.conjugate();
    let one = QuadraticReal::one();
    let is_pisot = integer && x > &one && conj.abs() < one;
    let is_unit = integer && mp.c.abs().is_one();
    let is_sturm = in_unit_interval(x) && !in_unit_interval(&conj);
    Ok(AlgebraicProfile {
        minimal_polynomial: mp,
        is_quadratic_integer: integer,
        is_pisot,
        is_unit,
        is_sturm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_mean() {
        let p = classify(&QuadraticReal::tau()).unwrap();
        assert_eq!(p.minimal_polynomial.to_string(), "x^2-x-1");
        assert!(p.is_quadratic_integer && p.is_pisot && p.is_unit && !p.is_sturm);
    }

    #[test]
    fn silver_square() {
        let x = QuadraticReal::from_parts(3, 1, 2, 1, 2).unwrap();
        let p = classify(&x).unwrap();
        assert_eq!(p.minimal_polynomial.to_string(), "x^2-6x+1");
        assert!(p.is_quadratic_integer && p.is_pisot && p.is_unit);
    }

    #[test]
    fn inverse_sqrt2_is_sturm() {
        let x = QuadraticReal::from_parts(0, 1, 1, 2, 2).unwrap();
        let p = classify(&x).unwrap();
        assert_eq!(p.minimal_polynomial.to_string(), "2x^2-1");
        assert!(!p.is_quadratic_integer && p.is_sturm && !p.is_pisot);
    }

    #[test]
    fn rational_rejected() {
        assert!(matches!(
            classify(&QuadraticReal::from_int(3)),
            Err(Error::RationalInput(_))
        ));
    }

    #[test]
    fn polynomial_vanishes() {
        for x in [
            QuadraticReal::tau(),
            QuadraticReal::from_parts(-7, 3, 5, 4, 6).unwrap(),
            QuadraticReal::from_parts(1, 9, -2, 5, 13).unwrap(),
        ] {
            let mp = MinimalPolynomial::of(&x).unwrap();
            assert!(mp.eval(&x).is_zero());
            assert!(mp.eval(&x.conjugate()).is_zero());
            assert!(mp.a.is_positive());
        }
    }
}

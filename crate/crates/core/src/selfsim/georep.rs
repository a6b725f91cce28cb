use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::exactnum::QuadraticReal;
use crate::substderive::Morphism;
use crate::{Error, Result};

/// Geometric realisation of a fixed point: letter lengths from the Perron eigenvector and the points `z_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometricRepresentation {
    /// Dominant eigenvalue `λ` of the substitution matrix.
    pub lambda: QuadraticReal,
    /// Right eigenvector, scaled so its smallest entry is 1.
    pub lengths: Vec<QuadraticReal>,
    /// Left eigenvector scaled to sum 1: the letter frequencies.
    pub densities: Vec<QuadraticReal>,
    /// The fixed point is taken for `φ^power`, starting from `letter`.
    pub power: u32,
    pub letter: usize,
    /// `z_0 = 0, z_{n+1} = z_n + y_{u_n}`.
    pub points: Vec<QuadraticReal>,
    /// `λ^power · z_n ∈ {z_m}` whenever the product is within the computed range.
    pub inclusion_ok: bool,
}

/// Coefficients `c_0, …, c_k` of `det(xI − M) = Σ c_i x^i`.
pub fn characteristic_polynomial(m: &[Vec<u64>]) -> Vec<BigInt> {
    let n = m.len();
    let a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::from(1);
    let mut mk: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I, c_{n−k} = −tr(A·M_k)/k
        let mut next = mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        mk = next;
        let am = mul(&a, &mk);
        let tr: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        c[n - k] = -(tr / BigInt::from(k));
    }
    c
}

fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|l| &a[i][l] * &b[l][j]).sum())
                .collect()
        })
        .collect()
}

fn eval_poly(c: &[BigInt], x: &QuadraticReal) -> QuadraticReal {
    c.iter().rev().fold(QuadraticReal::zero(), |acc, ci| {
        acc * x + QuadraticReal::from_bigint(ci.clone())
    })
}

/// Perron root estimate by power iteration.
fn perron_estimate(m: &[Vec<u64>]) -> f64 {
    let n = m.len();
    let mut v = vec![1.0f64; n];
    let mut lambda = 0.0;
    for _ in 0..2000 {
        let w: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| m[i][j] as f64 * v[j]).sum())
            .collect();
        let norm = w.iter().cloned().fold(0.0, f64::max);
        lambda = norm;
        v = w.iter().map(|x| x / norm).collect();
    }
    lambda
}

/// Dominant eigenvalue as an exact rational or quadratic number.
pub fn dominant_eigenvalue(m: &[Vec<u64>]) -> Result<QuadraticReal> {
    let cp = characteristic_polynomial(m);
    let est = perron_estimate(m);
    let near = |x: &QuadraticReal| (x.to_f64() - est).abs() < 1e-6 * est.max(1.0);
    let r = QuadraticReal::from_int(est.round() as i64);
    if near(&r) && eval_poly(&cp, &r).is_zero() {
        return Ok(r);
    }
    // x² − p·x + q with p = λ + λ′ and q = λ·λ′, λ′ another root of modulus at most λ
    let hi = (2.0 * est).ceil() as i64;
    for p in -hi..=hi {
        let other = p as f64 - est;
        if other.abs() > est + 1e-9 {
            continue;
        }
        let q = (est * other).round() as i64;
        let disc = p * p - 4 * q;
        if disc <= 0 {
            continue;
        }
        let Ok(root) = QuadraticReal::sqrt(disc as u64) else {
            continue;
        };
        let cand = (QuadraticReal::from_int(p) + root) / QuadraticReal::from_int(2);
        if near(&cand) && eval_poly(&cp, &cand).is_zero() {
            return Ok(cand);
        }
    }
    Err(Error::Precondition(format!(
        "the dominant eigenvalue {est:.6} is neither rational nor quadratic"
    )))
}

/// Non-zero solution of `B·y = 0` for a matrix of corank one.
fn null_vector(mut b: Vec<Vec<QuadraticReal>>) -> Result<Vec<QuadraticReal>> {
    let n = b.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !b[r][col].is_zero()) else {
            continue;
        };
        b.swap(row, p);
        let inv = b[row][col].inverse()?;
        for x in b[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != row && !b[r][col].is_zero() {
                let f = b[r][col].clone();
                for cidx in 0..n {
                    let sub = &f * &b[row][cidx];
                    b[r][cidx] = &b[r][cidx] - &sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return Err(Error::Inconsistent(format!(
            "eigenspace has dimension {}",
            free.len()
        )));
    }
    let mut y = vec![QuadraticReal::zero(); n];
    y[free[0]] = QuadraticReal::one();
    for (r, &c) in pivots.iter().enumerate() {
        y[c] = -&b[r][free[0]];
    }
    Ok(y)
}

fn eigenvector(m: &[Vec<u64>], lambda: &QuadraticReal, left: bool) -> Result<Vec<QuadraticReal>> {
    let n = m.len();
    let b = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = if left { m[j][i] } else { m[i][j] };
                    let v = QuadraticReal::from_int(e as i64);
                    if i == j {
                        v - lambda
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    let mut y = null_vector(b)?;
    if y.iter().any(|x| x.is_negative()) {
        y = y.into_iter().map(|x| -x).collect();
    }
    if y.iter().any(|x| !x.is_positive()) {
        return Err(Error::Inconsistent(
            "Perron eigenvector is not positive".into(),
        ));
    }
    Ok(y)
}

/// Lengths, frequencies and the self-similar point sequence of a primitive substitution.
pub fn geometric_representation(m: &Morphism, n_points: usize) -> Result<GeometricRepresentation> {
    let mat = m.matrix();
    if !mat.primitive {
        return Err(Error::Precondition(format!("{m} is not primitive")));
    }
    let lambda = dominant_eigenvalue(&mat.m)?;
    let y = eigenvector(&mat.m, &lambda, false)?;
    let min = y.iter().min().expect("non-empty").clone();
    let lengths: Vec<QuadraticReal> = y.iter().map(|x| x / &min).collect();
    let l = eigenvector(&mat.m, &lambda, true)?;
    let total = l.iter().fold(QuadraticReal::zero(), |a, x| a + x);
    let densities = l.iter().map(|x| x / &total).collect();
    // a letter a with φ^p(a) starting with a, p the period of a ↦ first letter of φ(a)
    let first = |a: usize| m.image(a)[0];
    let k = m.size();
    let mut a = 0;
    for _ in 0..k {
        a = first(a);
    }
    let mut power = 1;
    let mut b = first(a);
    while b != a {
        b = first(b);
        power += 1;
    }
    let mp = m.power(power);
    let word = mp.fixed_point_prefix(a, n_points)?;
    let mut points = Vec::with_capacity(word.len() + 1);
    let mut z = QuadraticReal::zero();
    points.push(z.clone());
    for &c in &word {
        z = z + &lengths[c];
        points.push(z.clone());
    }
    let scale = lambda.pow(power as i32)?;
    let set: BTreeSet<&QuadraticReal> = points.iter().collect();
    let top = points.last().expect("non-empty");
    let inclusion_ok = points
        .iter()
        .map(|z| &scale * z)
        .take_while(|y| y <= top)
        .all(|y| set.contains(&y));
    Ok(GeometricRepresentation {
        lambda,
        lengths,
        densities,
        power,
        letter: a,
        points,
        inclusion_ok,
    })
}

/// Greatest common divisor of the row sums, for diagnostics of constant-length substitutions.
pub fn row_sum_gcd(m: &Morphism) -> u64 {
    m.matrix()
        .row_sums()
        .into_iter()
        .fold(0u64, |g, x| g.gcd(&x))
}

/// `λ` rounded to `f64`, for display.
pub fn lambda_f64(g: &GeometricRepresentation) -> f64 {
    g.lambda.to_f64().to_f64().unwrap_or(f64::NAN)
}

//! Small exact linear algebra over the integers and rationals.
//!
//! Matrices here have rank at most a dozen or so; everything is exact and
//! fraction-free where possible (Bareiss elimination).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact_algebra::Rational;

/// Dense integer matrix, row-major.
pub type IntMatrix = Vec<Vec<i64>>;

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Determinant by Bareiss elimination with row pivoting.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = to_big(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Leading principal minors `det(m[..k][..k])` for `k = 1..=n`.
pub fn leading_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    (1..=m.len())
        .map(|k| {
            let sub: IntMatrix = m[..k].iter().map(|row| row[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}

/// Sylvester's criterion for `-m`: the k-th leading minor of `m` has sign `(-1)^k`.
pub fn is_negative_definite(m: &[Vec<i64>]) -> bool {
    leading_minors(m).iter().enumerate().all(|(i, d)| {
        if (i + 1) % 2 == 0 {
            d.is_positive()
        } else {
            d.is_negative()
        }
    })
}

/// Solves `m x = rhs` for square nonsingular `m`; `None` when `m` is singular.
///
/// The right-hand side is cleared of denominators, the augmented system is
/// reduced with fraction-free Bareiss steps, and back substitution happens in
/// the rationals.
pub fn solve(m: &[Vec<i64>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    assert_eq!(rhs.len(), n, "dimension mismatch");
    if n == 0 {
        return Some(Vec::new());
    }
    let scale = rhs
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let mut a: Vec<Vec<BigInt>> = to_big(m);
    for (row, r) in a.iter_mut().zip(rhs) {
        row.push((r * Rational::from_integer(scale.clone())).to_integer());
    }
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let i = (k + 1..n).find(|&i| !a[i][k].is_zero())?;
            a.swap(i, k);
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(a[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(a[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(a[i][i].clone());
    }
    let s = Rational::from_integer(scale);
    Some(x.into_iter().map(|v| v / &s).collect())
}

/// `m v` for an integer matrix and rational vector.
pub fn mul_vec(m: &[Vec<i64>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(&a, b)| Rational::from_integer(BigInt::from(a)) * b)
                .sum()
        })
        .collect()
}

/// `v^T m w` over the rationals.
pub fn bilinear(m: &[Vec<i64>], v: &[Rational], w: &[Rational]) -> Rational {
    v.iter().zip(mul_vec(m, w)).map(|(a, b)| a * b).sum()
}

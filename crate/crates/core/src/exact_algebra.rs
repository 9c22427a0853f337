//! Exact arithmetic: rationals, dense univariate polynomials, sparse weighted
//! bihomogeneous polynomials and truncated power series.
//!
//! Everything here is exact. Polynomials over the rationals are kept in a
//! normalized form (no trailing zero coefficients) so that structural equality
//! coincides with mathematical equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// `num / den` as a reduced rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// An integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fractional part `x - floor(x)`, always in `[0, 1)`.
pub fn fract(x: &Rational) -> Rational {
    x - x.floor()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("term w^{w_exp} x^{x_exp} has weighted degree {found}, expected {expected}")]
    NotWeightedHomogeneous {
        w_exp: u32,
        x_exp: u32,
        found: u32,
        expected: u32,
    },
    #[error("weights ({0}, {1}) cannot be flattened to a coarse chart; the first weight must be 1")]
    UnsupportedWeights(u32, u32),
    #[error("weight mismatch: ({0}, {1}) vs ({2}, {3})")]
    WeightMismatch(u32, u32, u32, u32),
    #[error("line bundle degree {budget} is smaller than the chart degree {chart_degree}")]
    BudgetTooSmall { budget: u32, chart_degree: usize },
}

/// Order of vanishing. The zero polynomial vanishes to infinite order, and
/// `Infinite` compares greater than every finite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(k) => Some(k),
            Order::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Order::Infinite)
    }

    pub fn at_least(self, k: u32) -> bool {
        self >= Order::Finite(k)
    }

    /// `self - k`, saturating at zero; infinity stays infinite.
    pub fn minus(self, k: u32) -> Order {
        match self {
            Order::Finite(n) => Order::Finite(n.saturating_sub(k)),
            Order::Infinite => Order::Infinite,
        }
    }

    pub fn plus(self, k: u32) -> Order {
        match self {
            Order::Finite(n) => Order::Finite(n + k),
            Order::Infinite => Order::Infinite,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

// ---------------------------------------------------------------------------
// Univariate polynomials
// ---------------------------------------------------------------------------

/// Dense univariate polynomial in `u` over the rationals; `coeffs[k]` is the
/// coefficient of `u^k`. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable `u`.
    pub fn var() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// `u - r`.
    pub fn linear_root(r: Rational) -> Self {
        Self::from_coeffs(vec![-r, Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `u^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), AlgebraError> {
        let d = divisor.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lc_inv = divisor.coeffs[d].recip();
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if n < d {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); n - d + 1];
        for k in (0..=n - d).rev() {
            let c = &rem[k + d] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(d);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &UniPoly) -> Option<UniPoly> {
        match self.div_rem(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn rem(&self, divisor: &UniPoly) -> Result<UniPoly, AlgebraError> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Largest `k` with `factor^k | self`, found by repeated exact division.
    /// The zero polynomial vanishes to infinite order. `factor` must be
    /// nonconstant.
    pub fn order_along(&self, factor: &UniPoly) -> Order {
        assert!(
            factor.degree().is_some_and(|d| d > 0),
            "order_along needs a nonconstant factor"
        );
        if self.is_zero() {
            return Order::Infinite;
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(factor) {
            cur = q;
            k += 1;
        }
        Order::Finite(k)
    }

    /// Inverse of `self` in `Q[u]/(modulus)` when `gcd(self, modulus) = 1`.
    pub fn inverse_mod(&self, modulus: &UniPoly) -> Option<UniPoly> {
        // extended Euclid tracking only the coefficient of `self`
        let mut r0 = modulus.clone();
        let mut r1 = self.rem(modulus).ok()?;
        let mut s0 = UniPoly::zero();
        let mut s1 = UniPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).ok()?;
            let s = &s0 - &(&q * &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let inv = r0.coeffs[0].recip();
        s0.scale(&inv).rem(modulus).ok()
    }

    /// Exact equality up to a nonzero constant factor.
    pub fn associated(&self, other: &UniPoly) -> bool {
        self.monic() == other.monic()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = k == 0 || !abs.is_one();
            if show_coeff {
                if abs.is_integer() || k == 0 {
                    write!(f, "{abs}")?;
                } else {
                    write!(f, "({abs})")?;
                }
            }
            match k {
                0 => {}
                1 => f.write_str(if show_coeff { "*u" } else { "u" })?,
                _ => write!(f, "{}u^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

/// Monic greatest common divisor; `gcd(p, 0) = monic(p)` and `gcd(0, 0) = 0`.
///
/// Runs a primitive pseudo-remainder sequence over the integers, which keeps
/// coefficient growth far below that of Euclid over the rationals.
pub fn upoly_gcd(p: &UniPoly, q: &UniPoly) -> UniPoly {
    if p.is_zero() || q.is_zero() {
        return (p + q).monic();
    }
    let (mut a, mut b) = (primitive_part(p), primitive_part(q));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive_int(r);
    }
    UniPoly::from_coeffs(a.into_iter().map(Rational::from_integer).collect()).monic()
}

/// Integer coefficients of `c p` for the rational `c` making them coprime.
fn primitive_part(p: &UniPoly) -> Vec<BigInt> {
    let den = p.coeffs.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    primitive_int(p.coeffs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect())
}

fn primitive_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    v
}

/// `lc(b)^k a mod b` with all arithmetic in the integers; `b` nonzero.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let lr = r.last().expect("nonempty").clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Yun's squarefree decomposition: `p = lc(p) * prod S_k^{m_k}` with monic,
/// squarefree, pairwise coprime `S_k` and strictly increasing `m_k`.
/// Constant polynomials decompose into the empty product.
pub fn squarefree_decomposition(p: &UniPoly) -> Result<Vec<(UniPoly, u32)>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if p.is_constant() {
        return Ok(out);
    }
    let f = p.monic();
    let df = f.derivative();
    let a0 = upoly_gcd(&f, &df);
    let mut b = f.exact_div(&a0).expect("gcd divides f");
    let mut c = df.exact_div(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut mult = 1;
    while !b.is_constant() {
        let a = upoly_gcd(&b, &d);
        if !a.is_constant() {
            out.push((a.clone(), mult));
        }
        b = b.exact_div(&a).expect("a divides b");
        c = d.exact_div(&a).expect("a divides d");
        d = &c - &b.derivative();
        mult += 1;
    }
    Ok(out)
}

/// Squarefree part `prod S_k` of a nonzero polynomial, monic.
pub fn squarefree_part(p: &UniPoly) -> Result<UniPoly, AlgebraError> {
    Ok(squarefree_decomposition(p)?
        .into_iter()
        .fold(UniPoly::one(), |acc, (s, _)| &acc * &s))
}

/// Gcd-free basis: pairwise coprime, monic, squarefree, nonconstant polynomials
/// such that every input is a constant times a product of powers of them.
///
/// Zero and constant inputs contribute nothing. The output is sorted by
/// degree, then coefficients.
pub fn coprime_refinement(fs: &[UniPoly]) -> Vec<UniPoly> {
    let mut basis: Vec<UniPoly> = Vec::new();
    let mut pending: Vec<UniPoly> = Vec::new();
    for f in fs {
        if f.is_zero() {
            continue;
        }
        let parts = squarefree_decomposition(f).expect("nonzero");
        pending.extend(parts.into_iter().map(|(s, _)| s));
    }
    while let Some(x) = pending.pop() {
        if x.is_constant() {
            continue;
        }
        let hit = basis.iter().enumerate().find_map(|(i, g)| {
            let d = upoly_gcd(&x, g);
            (!d.is_constant()).then_some((i, d))
        });
        match hit {
            None => basis.push(x),
            Some((i, d)) => {
                let g = basis.swap_remove(i);
                pending.push(g.exact_div(&d).expect("gcd divides").monic());
                pending.push(x.exact_div(&d).expect("gcd divides").monic());
                pending.push(d);
            }
        }
    }
    basis.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    basis
}

// ---------------------------------------------------------------------------
// Truncated power series
// ---------------------------------------------------------------------------

/// Power series in `t` truncated after `t^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    order: usize,
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            order,
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in coeffs.into_iter().take(order + 1).enumerate() {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_poly(p: &UniPoly, order: usize) -> Self {
        Self::from_coeffs(order, p.coeffs().iter().cloned())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(order.min(self.order), self.coeffs.iter().cloned())
    }

    /// In-place division by `1 - t^e`: `c_n += c_{n-e}` in increasing `n`.
    pub fn div_one_minus_power(&mut self, e: usize) {
        assert!(e >= 1, "exponent must be positive");
        for n in e..=self.order {
            let prev = self.coeffs[n - e].clone();
            self.coeffs[n] += prev;
        }
    }

    /// In-place multiplication by `1 - t^e`, processed from the top down.
    pub fn mul_one_minus_power(&mut self, e: usize) {
        assert!(e >= 1, "exponent must be positive");
        for n in (e..=self.order).rev() {
            let prev = self.coeffs[n - e].clone();
            self.coeffs[n] -= prev;
        }
    }

    /// Drops the truncation, keeping the coefficients as a polynomial.
    pub fn to_poly(&self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.clone())
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order.min(rhs.order);
        PowerSeries::from_coeffs(order, (0..=order).map(|k| self.coeff(k) + rhs.coeff(k)))
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order.min(rhs.order);
        let mut out = PowerSeries::zero(order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                out.coeffs[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        out
    }
}

/// Taylor coefficients up to `t^order` of `numerator / prod (1 - t^e_i)`.
pub fn series_expand(numerator: &UniPoly, denominator_exponents: &[u32], order: usize) -> PowerSeries {
    let mut s = PowerSeries::from_poly(numerator, order);
    for &e in denominator_exponents {
        s.div_one_minus_power(e as usize);
    }
    s
}

// ---------------------------------------------------------------------------
// Weighted bihomogeneous polynomials
// ---------------------------------------------------------------------------

/// Polynomial in `(w, x)` of weights `(wt_w, wt_x)`, homogeneous of weighted
/// degree `degree`. Terms are keyed by exponent pairs `(i, j)` for `w^i x^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedBiPoly {
    weights: (u32, u32),
    degree: u32,
    terms: BTreeMap<(u32, u32), Rational>,
}

impl WeightedBiPoly {
    pub fn zero(weights: (u32, u32), degree: u32) -> Self {
        WeightedBiPoly {
            weights,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        weights: (u32, u32),
        degree: u32,
        terms: impl IntoIterator<Item = ((u32, u32), Rational)>,
    ) -> Result<Self, AlgebraError> {
        let mut p = Self::zero(weights, degree);
        for ((i, j), c) in terms {
            let found = i * weights.0 + j * weights.1;
            if found != degree {
                return Err(AlgebraError::NotWeightedHomogeneous {
                    w_exp: i,
                    x_exp: j,
                    found,
                    expected: degree,
                });
            }
            p.add_term((i, j), c);
        }
        Ok(p)
    }

    /// The single term `c w^i x^j`.
    pub fn monomial(weights: (u32, u32), c: Rational, w_exp: u32, x_exp: u32) -> Self {
        let degree = w_exp * weights.0 + x_exp * weights.1;
        Self::from_terms(weights, degree, [((w_exp, x_exp), c)]).expect("homogeneous by construction")
    }

    fn add_term(&mut self, key: (u32, u32), c: Rational) {
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn weights(&self) -> (u32, u32) {
        self.weights
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of `w^i x^j`.
    pub fn coeff(&self, w_exp: u32, x_exp: u32) -> Rational {
        self.terms
            .get(&(w_exp, x_exp))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn check_weights(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.weights != other.weights {
            return Err(AlgebraError::WeightMismatch(
                self.weights.0,
                self.weights.1,
                other.weights.0,
                other.weights.1,
            ));
        }
        Ok(())
    }

    /// Sum of two polynomials of the same weights and degree. A zero operand
    /// adopts the degree of the other.
    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_weights(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            let found = k.0 * self.weights.0 + k.1 * self.weights.1;
            if found != self.degree {
                return Err(AlgebraError::NotWeightedHomogeneous {
                    w_exp: k.0,
                    x_exp: k.1,
                    found,
                    expected: self.degree,
                });
            }
            out.add_term(k, c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_weights(other)?;
        let mut out = Self::zero(self.weights, self.degree + other.degree);
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &other.terms {
                out.add_term((i1 + i2, j1 + j2), a * b);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.weights, self.degree);
        for (&k, a) in &self.terms {
            out.add_term(k, a * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::from_terms(self.weights, 0, [((0, 0), Rational::one())]).expect("constant");
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same weights");
        }
        acc
    }
}

/// Flattens `P(w, x)` with weights `(1, k)` to the coarse chart `u = x / w^k`
/// and reports the order at the point `w = 0` as `budget - deg(chart)`.
///
/// `budget` is the degree of the line bundle on the coarse line that `P` is a
/// section of. The zero polynomial has infinite order at infinity.
pub fn chart_and_budget(p: &WeightedBiPoly, budget: u32) -> Result<(UniPoly, Order), AlgebraError> {
    let (ww, wx) = p.weights;
    if ww != 1 {
        return Err(AlgebraError::UnsupportedWeights(ww, wx));
    }
    let mut coeffs = Vec::new();
    for (&(i, j), c) in &p.terms {
        let found = i * ww + j * wx;
        if found != p.degree {
            return Err(AlgebraError::NotWeightedHomogeneous {
                w_exp: i,
                x_exp: j,
                found,
                expected: p.degree,
            });
        }
        let j = j as usize;
        if coeffs.len() <= j {
            coeffs.resize(j + 1, Rational::zero());
        }
        coeffs[j] = c.clone();
    }
    let chart = UniPoly::from_coeffs(coeffs);
    let ord = match chart.degree() {
        None => Order::Infinite,
        Some(d) if d > budget as usize => {
            return Err(AlgebraError::BudgetTooSmall {
                budget,
                chart_degree: d,
            })
        }
        Some(d) => Order::Finite(budget - d as u32),
    };
    Ok((chart, ord))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        // u^2 - 1, u^2 - 2u + 1
        assert_eq!(upoly_gcd(&p(&[-1, 0, 1]), &p(&[1, -2, 1])), p(&[-1, 1]));
        assert_eq!(upoly_gcd(&p(&[0, -1, 0, 1]), &p(&[0, 0, 1])), p(&[0, 1]));
        // 27 (u + 6)^2 and its derivative; Euclid by hand gives u + 6
        let delta = p(&[27 * 36, 27 * 12, 27]);
        assert_eq!(upoly_gcd(&delta, &delta.derivative()), p(&[6, 1]));
        assert_eq!(upoly_gcd(&p(&[2, 4]), &UniPoly::zero()), UniPoly::from_coeffs(vec![rat(1, 2), int(1)]));
        assert!(upoly_gcd(&UniPoly::zero(), &UniPoly::zero()).is_zero());
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_decomposition(&p(&[1, -2, 1])).unwrap(), vec![(p(&[-1, 1]), 2)]);
        assert_eq!(squarefree_decomposition(&p(&[0, -1, 0, 1])).unwrap(), vec![(p(&[0, -1, 0, 1]), 1)]);
        let delta = p(&[27 * 36, 27 * 12, 27]);
        assert_eq!(squarefree_decomposition(&delta).unwrap(), vec![(p(&[6, 1]), 2)]);
        assert_eq!(squarefree_decomposition(&UniPoly::zero()), Err(AlgebraError::ZeroPolynomial));
        assert!(squarefree_decomposition(&p(&[5])).unwrap().is_empty());
    }

    #[test]
    fn squarefree_mixed_multiplicities() {
        // u (u-1)^2 (u+2)^3
        let f = &(&p(&[0, 1]) * &p(&[-1, 1]).pow(2)) * &p(&[2, 1]).pow(3);
        let dec = squarefree_decomposition(&f.scale(&rat(-3, 5))).unwrap();
        assert_eq!(dec, vec![(p(&[0, 1]), 1), (p(&[-1, 1]), 2), (p(&[2, 1]), 3)]);
    }

    #[test]
    fn refinement_examples() {
        assert_eq!(coprime_refinement(&[p(&[0, -1, 1]), p(&[0, 1])]), vec![p(&[-1, 1]), p(&[0, 1])]);
        assert_eq!(coprime_refinement(&[p(&[0, 0, 1]), p(&[0, 0, 0, 1])]), vec![p(&[0, 1])]);
        assert_eq!(coprime_refinement(&[p(&[-1, 0, 1]), p(&[-1, 1])]), vec![p(&[-1, 1]), p(&[1, 1])]);
        assert!(coprime_refinement(&[p(&[3]), UniPoly::zero()]).is_empty());
    }

    #[test]
    fn series_examples() {
        let s = series_expand(&UniPoly::one(), &[1], 5);
        assert_eq!(s.coeffs(), &vec![int(1); 6][..]);
        let num = &UniPoly::one() - &UniPoly::monomial(int(1), 42);
        let s = series_expand(&num, &[1, 6, 14, 21], 10);
        assert_eq!(s.coeff(6), int(2));
        // partitions of 4 into parts 1, 2: 4, 2+1+1, 2+2
        assert_eq!(series_expand(&UniPoly::one(), &[1, 2], 4).coeff(4), int(3));
    }

    #[test]
    fn series_multiply_truncates_to_min_order() {
        let a = PowerSeries::from_coeffs(3, [int(1), int(1), int(1), int(1)]);
        let b = PowerSeries::from_coeffs(5, [int(1), int(-1)]);
        let c = &a * &b;
        assert_eq!(c.order(), 3);
        assert_eq!(c.coeffs(), &[int(1), int(0), int(0), int(0)][..]);
    }

    #[test]
    fn div_rem_and_inverse() {
        let (q, r) = p(&[1, 0, 0, 1]).div_rem(&p(&[1, 1])).unwrap();
        assert_eq!(q, p(&[1, -1, 1]));
        assert!(r.is_zero());
        assert_eq!(p(&[1]).div_rem(&UniPoly::zero()), Err(AlgebraError::DivisionByZero));
        // u * u = -1 mod u^2 + 1, so u^{-1} = -u
        assert_eq!(p(&[0, 1]).inverse_mod(&p(&[1, 0, 1])), Some(p(&[0, -1])));
        assert_eq!(p(&[0, 1]).inverse_mod(&p(&[0, 0, 1])), None);
        assert_eq!(p(&[0, 0, 3]).order_along(&p(&[0, 1])), Order::Finite(2));
        assert_eq!(UniPoly::zero().order_along(&p(&[0, 1])), Order::Infinite);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[1, -2, 1]).to_string(), "u^2 - 2*u + 1");
        assert_eq!(UniPoly::from_coeffs(vec![rat(6, 7), int(1)]).to_string(), "u + 6/7");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }

    fn a28_all_ones() -> WeightedBiPoly {
        WeightedBiPoly::from_terms(
            (1, 6),
            28,
            [(4, 4), (10, 3), (16, 2), (22, 1), (28, 0)].map(|k| (k, int(1))),
        )
        .unwrap()
    }

    #[test]
    fn chart_examples() {
        let (chart, ord) = chart_and_budget(&a28_all_ones(), 8).unwrap();
        assert_eq!(chart, p(&[1, 1, 1, 1, 1]));
        assert_eq!(ord, Order::Finite(4));
        let b42 = WeightedBiPoly::from_terms(
            (1, 6),
            42,
            [(0, 7), (12, 5), (18, 4), (24, 3), (30, 2), (36, 1), (42, 0)].map(|k| (k, int(1))),
        )
        .unwrap();
        let (chart, ord) = chart_and_budget(&b42, 12).unwrap();
        assert_eq!(chart.degree(), Some(7));
        assert_eq!(ord, Order::Finite(5));
        let (chart, ord) = chart_and_budget(&WeightedBiPoly::zero((1, 6), 28), 8).unwrap();
        assert!(chart.is_zero());
        assert_eq!(ord, Order::Infinite);
    }

    #[test]
    fn chart_errors() {
        assert!(matches!(
            WeightedBiPoly::from_terms((1, 6), 28, [((3, 4), int(1))]),
            Err(AlgebraError::NotWeightedHomogeneous { found: 27, .. })
        ));
        assert!(matches!(
            chart_and_budget(&a28_all_ones(), 3),
            Err(AlgebraError::BudgetTooSmall { .. })
        ));
        let p2 = WeightedBiPoly::monomial((2, 3), int(1), 3, 0);
        assert_eq!(chart_and_budget(&p2, 5), Err(AlgebraError::UnsupportedWeights(2, 3)));
    }

    #[test]
    fn bipoly_arithmetic() {
        let ell = WeightedBiPoly::monomial((1, 6), int(1), 0, 1)
            .try_add(&WeightedBiPoly::monomial((1, 6), int(-1), 6, 0))
            .unwrap();
        let sq = ell.pow(2);
        assert_eq!(sq.degree(), 12);
        assert_eq!(sq.coeff(6, 1), int(-2));
        assert!(ell.try_add(&sq).is_err());
        assert_eq!(sq.try_add(&sq.scale(&int(-1))).unwrap().terms().count(), 0);
    }

    #[test]
    fn order_compares_infinity_last() {
        assert!(Order::Infinite > Order::Finite(1000));
        assert!(Order::Infinite.at_least(4));
        assert_eq!(Order::Finite(6).minus(4), Order::Finite(2));
    }
}

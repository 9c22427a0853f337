//! Plurigenera of projective surfaces with cyclic quotient singularities.
//!
//! `χ(nD)` is the smooth Riemann–Roch expression plus one local correction per
//! singular point. Two polarizations are supported: `D = K_X` (canonical mode)
//! and `D = K_X + B` on a surface with `K_X ~ 0` (pair mode, where the
//! correction depends on how the boundary passes through the point).

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::exact_algebra::{int, rat, series_expand, PowerSeries, Rational, UniPoly};
use crate::quotient_sing::{delta, delta_canonical, hj_expand, HJChain, SingularityIncidence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RiemannRochError {
    #[error("volume must be positive, got {0}")]
    NonPositiveVolume(Rational),
    #[error("geometric genus must be nonnegative, got {0}")]
    NegativeGenus(i64),
    #[error("chi(O(nD)) at n = {n} is {value}, not an integer; the input data is inconsistent")]
    NonIntegral { n: u32, value: Rational },
    #[error("table has entries up to P_{have}, need P_{need}")]
    TableTooShort { have: usize, need: usize },
    #[error("weights and degree must be positive")]
    ZeroWeight,
    #[error("c = {0} is outside (0, 1]")]
    OutOfRange(Rational),
}

/// Which divisor is being multiplied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RRMode {
    /// `D = K_X`.
    Canonical,
    /// `D = K_X + B` with `K_X ~ 0`, so `D ~ B`.
    Pair,
}

/// One singular point and the correction it contributes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SingularityDatum {
    /// Boundary divisor through the point with the given local incidence.
    Incidence(SingularityIncidence),
    /// Pluricanonical correction of the chain.
    Canonical(HJChain),
}

impl SingularityDatum {
    pub fn chain(&self) -> &HJChain {
        match self {
            SingularityDatum::Incidence(inc) => inc.chain(),
            SingularityDatum::Canonical(c) => c,
        }
    }

    pub fn correction(&self, n: u32) -> Rational {
        match self {
            SingularityDatum::Incidence(inc) => delta(inc, n),
            SingularityDatum::Canonical(c) => delta_canonical(c, n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceRRData {
    chi_o: Rational,
    vol: Rational,
    p_g: i64,
    mode: RRMode,
    singularities: Vec<SingularityDatum>,
}

impl SurfaceRRData {
    pub fn new(
        chi_o: Rational,
        vol: Rational,
        p_g: i64,
        mode: RRMode,
        singularities: Vec<SingularityDatum>,
    ) -> Result<Self, RiemannRochError> {
        if !vol.is_positive() {
            return Err(RiemannRochError::NonPositiveVolume(vol));
        }
        if p_g < 0 {
            return Err(RiemannRochError::NegativeGenus(p_g));
        }
        Ok(SurfaceRRData {
            chi_o,
            vol,
            p_g,
            mode,
            singularities,
        })
    }

    pub fn chi_o(&self) -> &Rational {
        &self.chi_o
    }

    pub fn vol(&self) -> &Rational {
        &self.vol
    }

    pub fn p_g(&self) -> i64 {
        self.p_g
    }

    pub fn mode(&self) -> RRMode {
        self.mode
    }

    pub fn singularities(&self) -> &[SingularityDatum] {
        &self.singularities
    }
}

/// Stable surface with `K^2 = 1/143` and two singular points `1/13(1,6)`,
/// `1/11(1,7)`, polarized by `K_X`.
pub fn theorem_4_3() -> SurfaceRRData {
    let sings = [(13, 6), (11, 7)]
        .iter()
        .map(|&(n, q)| SingularityDatum::Canonical(hj_expand(n, q).expect("valid type")))
        .collect();
    SurfaceRRData::new(int(2), rat(1, 143), 1, RRMode::Canonical, sings).expect("valid data")
}

/// K3 pair with `(K + B)^2 = 1/42` and the boundary passing through
/// `1/2(1,1)`, `1/3(1,2)`, `1/7(1,6)` along an end of each chain.
pub fn theorem_4_4() -> SurfaceRRData {
    let sings = [(2, 1), (3, 2), (7, 6)]
        .iter()
        .map(|&(n, q)| {
            SingularityDatum::Incidence(SingularityIncidence::at_last_curve(
                hj_expand(n, q).expect("valid type"),
            ))
        })
        .collect();
    SurfaceRRData::new(int(2), rat(1, 42), 1, RRMode::Pair, sings).expect("valid data")
}

/// `P_0, P_1, …, P_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlurigeneraTable {
    values: Vec<BigInt>,
}

impl PlurigeneraTable {
    pub fn from_values(values: Vec<BigInt>) -> Self {
        PlurigeneraTable { values }
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.values.get(n)
    }

    /// Largest `n` in the table.
    pub fn max_n(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    /// Maximal runs `(first, last, value)` of equal consecutive entries, from `P_1` on.
    pub fn runs(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out: Vec<(usize, usize, BigInt)> = Vec::new();
        for (n, v) in self.values.iter().enumerate().skip(1) {
            match out.last_mut() {
                Some(last) if &last.2 == v => last.1 = n,
                _ => out.push((n, n, v.clone())),
            }
        }
        out
    }
}

/// `χ(O_X(nD))`.
pub fn chi_of_multiple(data: &SurfaceRRData, n: u32) -> Result<BigInt, RiemannRochError> {
    let nn = int(n as i64);
    let quadratic = match data.mode {
        RRMode::Canonical => &nn * (&nn - int(1)) / int(2),
        RRMode::Pair => &nn * &nn / int(2),
    };
    let mut chi = &data.chi_o + quadratic * &data.vol;
    for s in &data.singularities {
        chi += s.correction(n);
    }
    if chi.is_integer() {
        Ok(chi.to_integer())
    } else {
        Err(RiemannRochError::NonIntegral { n, value: chi })
    }
}

/// `P_n = h^0(nD)` for `0 <= n <= max_n`, assuming higher cohomology vanishes.
/// In canonical mode `P_1` is `p_g`, since `h^2(K_X) = 1` there.
pub fn plurigenera(data: &SurfaceRRData, max_n: u32) -> Result<PlurigeneraTable, RiemannRochError> {
    let mut values = Vec::with_capacity(max_n as usize + 1);
    for n in 0..=max_n {
        let v = match (n, data.mode) {
            (0, _) => BigInt::one(),
            (1, RRMode::Canonical) => BigInt::from(data.p_g),
            _ => chi_of_multiple(data, n)?,
        };
        values.push(v);
    }
    Ok(PlurigeneraTable { values })
}

/// `(Σ P_n t^n) · Π (1 - t^{w_i})` up to `t^order`.
pub fn hilbert_numerator(
    table: &PlurigeneraTable,
    weights: &[u32],
    order: usize,
) -> Result<UniPoly, RiemannRochError> {
    if table.values.len() <= order {
        return Err(RiemannRochError::TableTooShort {
            have: table.max_n(),
            need: order,
        });
    }
    if weights.contains(&0) {
        return Err(RiemannRochError::ZeroWeight);
    }
    let mut s = PowerSeries::from_coeffs(order, table.values.iter().map(|v| Rational::from_integer(v.clone())));
    for &w in weights {
        s.mul_one_minus_power(w as usize);
    }
    Ok(s.to_poly())
}

/// Hilbert series `(1 - t^d) / Π (1 - t^{w_i})` of a degree `d` hypersurface in
/// weighted projective space, up to `t^order`.
pub fn hypersurface_hilbert(weights: &[u32], degree: u32, order: usize) -> Result<PowerSeries, RiemannRochError> {
    if degree == 0 || weights.contains(&0) {
        return Err(RiemannRochError::ZeroWeight);
    }
    let numerator = UniPoly::one() - UniPoly::monomial(int(1), degree as usize);
    Ok(series_expand(&numerator, weights, order))
}

/// Smallest volume `(K_X + cB)^2` of the family as a function of the boundary
/// coefficient `c`.
pub fn min_volume(c: &Rational) -> Result<Rational, RiemannRochError> {
    if !c.is_positive() || c > &int(1) {
        return Err(RiemannRochError::OutOfRange(c.clone()));
    }
    let v = if c <= &rat(7, 13) {
        c * c / int(42)
    } else if c < &rat(6, 11) {
        rat(-11, 6) * c * c + int(2) * c - rat(7, 13)
    } else {
        rat(1, 143)
    };
    Ok(v)
}

//! Cyclic quotient surface singularities `1/n(1, q)`.
//!
//! A singularity is resolved by a Hirzebruch–Jung chain of smooth rational
//! curves `E_1, …, E_k` with `E_i^2 = -b_i`, where `n/q = [b_1, …, b_k]` is the
//! negative-regular continued fraction `b_1 - 1/(b_2 - …)`. All local
//! intersection computations (discrepancies, local pullbacks, Riemann–Roch
//! correction terms) are linear algebra on the chain's intersection matrix.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::exact_algebra::{fract, int, Rational};
use crate::linalg::{self, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularityError {
    #[error("1/{n}(1,{q}) needs 0 < q < n")]
    OutOfRange { n: u64, q: u64 },
    #[error("1/{n}(1,{q}) needs gcd(n, q) = 1")]
    NotCoprime { n: u64, q: u64 },
    #[error("a resolution chain needs at least one curve")]
    EmptyChain,
    #[error("chain curve {index} has self-intersection -{b}; every curve needs b >= 2")]
    SelfIntersection { index: usize, b: u32 },
    #[error("incidence has {found} entries but the chain has {expected} curves")]
    IncidenceLength { expected: usize, found: usize },
}

/// The type `1/n(1, q)`, stored with `q = min(q, q^{-1} mod n)` so that the two
/// orientations of the resolution chain give the same value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicQuotient {
    n: u64,
    q: u64,
}

impl CyclicQuotient {
    pub fn new(n: u64, q: u64) -> Result<Self, SingularityError> {
        if q == 0 || q >= n {
            return Err(SingularityError::OutOfRange { n, q });
        }
        if n.gcd(&q) != 1 {
            return Err(SingularityError::NotCoprime { n, q });
        }
        let q_inv = mod_inverse(q, n);
        Ok(CyclicQuotient { n, q: q.min(q_inv) })
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn weight(&self) -> u64 {
        self.q
    }
}

impl std::fmt::Display for CyclicQuotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "1/{}(1,{})", self.n, self.q)
    }
}

fn mod_inverse(q: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let e = (q as i128).extended_gcd(&(n as i128));
    e.x.rem_euclid(n as i128) as u64
}

/// Self-intersection numbers `[b_1, …, b_k]` (all `>= 2`) of a resolution chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HJChain {
    selfints: Vec<u32>,
}

impl HJChain {
    pub fn new(selfints: Vec<u32>) -> Result<Self, SingularityError> {
        if selfints.is_empty() {
            return Err(SingularityError::EmptyChain);
        }
        if let Some((index, &b)) = selfints.iter().enumerate().find(|(_, &b)| b < 2) {
            return Err(SingularityError::SelfIntersection { index, b });
        }
        Ok(HJChain { selfints })
    }

    pub fn selfints(&self) -> &[u32] {
        &self.selfints
    }

    pub fn len(&self) -> usize {
        self.selfints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selfints.is_empty()
    }

    pub fn reversed(&self) -> HJChain {
        HJChain {
            selfints: self.selfints.iter().rev().copied().collect(),
        }
    }

    /// Intersection matrix: `-b_i` on the diagonal, `1` between neighbours.
    pub fn gram(&self) -> IntMatrix {
        let k = self.len();
        let mut m = vec![vec![0i64; k]; k];
        for (i, &b) in self.selfints.iter().enumerate() {
            m[i][i] = -(b as i64);
            if i + 1 < k {
                m[i][i + 1] = 1;
                m[i + 1][i] = 1;
            }
        }
        m
    }

    /// `K · E_i = b_i - 2` by adjunction.
    pub fn canonical_degrees(&self) -> Vec<Rational> {
        self.selfints.iter().map(|&b| int(b as i64 - 2)).collect()
    }

    /// The continued fraction as an unreduced-orientation pair `(n, q)`.
    pub fn fraction(&self) -> (u64, u64) {
        let mut iter = self.selfints.iter().rev();
        let mut num = *iter.next().expect("nonempty") as u64;
        let mut den = 1u64;
        for &b in iter {
            let next = b as u64 * num - den;
            den = num;
            num = next;
        }
        (num, den)
    }

    fn solve(&self, rhs: &[Rational]) -> Vec<Rational> {
        linalg::solve(&self.gram(), rhs).expect("chain intersection matrix is negative definite")
    }
}

impl std::fmt::Display for HJChain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.selfints.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A chain together with the local intersection numbers `m_i = D~ · E_i` of the
/// strict transform of a Weil divisor `D` through the singular point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SingularityIncidence {
    chain: HJChain,
    strict_mult: Vec<u32>,
}

impl SingularityIncidence {
    pub fn new(chain: HJChain, strict_mult: Vec<u32>) -> Result<Self, SingularityError> {
        if strict_mult.len() != chain.len() {
            return Err(SingularityError::IncidenceLength {
                expected: chain.len(),
                found: strict_mult.len(),
            });
        }
        Ok(SingularityIncidence { chain, strict_mult })
    }

    /// A smooth branch meeting the last curve of the chain transversally.
    pub fn at_last_curve(chain: HJChain) -> Self {
        let mut m = vec![0; chain.len()];
        *m.last_mut().expect("nonempty") = 1;
        SingularityIncidence {
            chain,
            strict_mult: m,
        }
    }

    pub fn chain(&self) -> &HJChain {
        &self.chain
    }

    pub fn strict_mult(&self) -> &[u32] {
        &self.strict_mult
    }

    pub fn reversed(&self) -> Self {
        SingularityIncidence {
            chain: self.chain.reversed(),
            strict_mult: self.strict_mult.iter().rev().copied().collect(),
        }
    }

    /// Exceptional coefficients `v` of `π^*(n D)` near the point, i.e. the
    /// solution of `M v = -n m`.
    pub fn pullback_coefficients(&self, n_mult: u32) -> Vec<Rational> {
        let rhs: Vec<Rational> = self
            .strict_mult
            .iter()
            .map(|&m| int(-(m as i64) * n_mult as i64))
            .collect();
        self.chain.solve(&rhs)
    }

    /// Smallest `r >= 1` with `r v` integral for the pullback of `D` itself.
    pub fn local_index(&self) -> u64 {
        denominator_lcm(&self.pullback_coefficients(1))
    }
}

fn denominator_lcm(v: &[Rational]) -> u64 {
    v.iter()
        .fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()))
        .to_u64()
        .expect("index fits in u64")
}

/// Hirzebruch–Jung expansion of `n/q` with `b_i = ceil(n_i / q_i)`.
pub fn hj_expand(n: u64, q: u64) -> Result<HJChain, SingularityError> {
    if q == 0 || q >= n {
        return Err(SingularityError::OutOfRange { n, q });
    }
    if n.gcd(&q) != 1 {
        return Err(SingularityError::NotCoprime { n, q });
    }
    let (mut a, mut b) = (n, q);
    let mut selfints = Vec::new();
    while b > 0 {
        let c = a.div_ceil(b);
        selfints.push(c as u32);
        (a, b) = (b, c * b - a);
    }
    HJChain::new(selfints)
}

/// The singularity resolved by `chain`.
pub fn hj_evaluate(chain: &HJChain) -> CyclicQuotient {
    let (n, q) = chain.fraction();
    CyclicQuotient::new(n, q).expect("continued fractions of valid chains are reduced")
}

/// Coefficients `v_i` of `B` in `π^*K_X = K_X~ + B`, i.e. the solution of
/// `M v = -(b_i - 2)`.
pub fn discrepancies(chain: &HJChain) -> Vec<Rational> {
    let rhs: Vec<Rational> = chain.canonical_degrees().into_iter().map(|k| -k).collect();
    chain.solve(&rhs)
}

/// Smallest `r >= 1` with `r B` integral.
pub fn canonical_index(chain: &HJChain) -> u64 {
    denominator_lcm(&discrepancies(chain))
}

/// Riemann–Roch correction `δ_x(nD) = -1/2 {π^*nD}·(⌊π^*nD⌋ - K_X~)` of a Weil
/// divisor through the point, where `⌊π^*nD⌋` includes the strict transform.
pub fn delta(inc: &SingularityIncidence, n_mult: u32) -> Rational {
    let v = inc.pullback_coefficients(n_mult);
    let gram = inc.chain.gram();
    let frac: Vec<Rational> = v.iter().map(fract).collect();
    let floor: Vec<Rational> = v.iter().map(|x| x.floor()).collect();
    let floor_dot = linalg::mul_vec(&gram, &floor);
    let mut total = Rational::zero();
    for (i, f) in frac.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let strict = int(n_mult as i64 * inc.strict_mult[i] as i64);
        let k = int(inc.chain.selfints[i] as i64 - 2);
        total += f * (strict + &floor_dot[i] - k);
    }
    -total / int(2)
}

/// Correction for pluricanonical divisors:
/// `δ_x(nK) = 1/2 {nB}·({nB} + K_X~)`.
pub fn delta_canonical(chain: &HJChain, n_mult: u32) -> Rational {
    let frac: Vec<Rational> = discrepancies(chain)
        .iter()
        .map(|b| fract(&(b * int(n_mult as i64))))
        .collect();
    let self_int = linalg::bilinear(&chain.gram(), &frac, &frac);
    let k_dot: Rational = frac
        .iter()
        .zip(chain.canonical_degrees())
        .map(|(f, k)| f * k)
        .sum();
    (self_int + k_dot) / int(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rat;

    fn chain(b: &[u32]) -> HJChain {
        HJChain::new(b.to_vec()).unwrap()
    }

    #[test]
    fn expand_examples() {
        assert_eq!(hj_expand(2, 1).unwrap(), chain(&[2]));
        assert_eq!(hj_expand(7, 6).unwrap(), chain(&[2; 6]));
        assert_eq!(hj_expand(13, 6).unwrap(), chain(&[3, 2, 2, 2, 2, 2]));
        assert_eq!(hj_expand(6, 4), Err(SingularityError::NotCoprime { n: 6, q: 4 }));
        assert_eq!(hj_expand(5, 5), Err(SingularityError::OutOfRange { n: 5, q: 5 }));
        assert_eq!(hj_expand(5, 0), Err(SingularityError::OutOfRange { n: 5, q: 0 }));
    }

    #[test]
    fn evaluate_examples() {
        let cq = hj_evaluate(&chain(&[2, 3, 2, 2]));
        assert_eq!((cq.order(), cq.weight()), (11, 7));
        let cq = hj_evaluate(&chain(&[2, 2, 2, 2, 2, 3]));
        assert_eq!(chain(&[2, 2, 2, 2, 2, 3]).fraction(), (13, 11));
        assert_eq!(cq, CyclicQuotient::new(13, 6).unwrap());
        let cq = hj_evaluate(&chain(&[2]));
        assert_eq!((cq.order(), cq.weight()), (2, 1));
        assert_eq!(cq.to_string(), "1/2(1,1)");
    }

    #[test]
    fn chain_validation() {
        assert_eq!(HJChain::new(vec![]), Err(SingularityError::EmptyChain));
        assert_eq!(
            HJChain::new(vec![2, 1]),
            Err(SingularityError::SelfIntersection { index: 1, b: 1 })
        );
        assert!(SingularityIncidence::new(chain(&[2, 2]), vec![1]).is_err());
    }

    #[test]
    fn discrepancy_examples() {
        assert_eq!(discrepancies(&chain(&[2, 2, 2])), vec![int(0); 3]);
        assert_eq!(
            discrepancies(&chain(&[3, 2, 2, 2, 2, 2])),
            (1..=6).rev().map(|k| rat(k, 13)).collect::<Vec<_>>()
        );
        assert_eq!(discrepancies(&chain(&[2])), vec![int(0)]);
    }

    #[test]
    fn delta_examples() {
        let a6 = SingularityIncidence::new(chain(&[2; 6]), vec![0, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(delta(&a6, 1), rat(-3, 7));
        let a1 = SingularityIncidence::new(chain(&[2]), vec![1]).unwrap();
        assert_eq!(delta(&a1, 2), int(0));
        let a2 = SingularityIncidence::new(chain(&[2, 2]), vec![1, 0]).unwrap();
        assert_eq!(delta(&a2, 1), rat(-1, 3));
    }

    #[test]
    fn delta_canonical_examples() {
        assert_eq!(delta_canonical(&hj_expand(13, 6).unwrap(), 2), rat(-6, 13));
        assert_eq!(delta_canonical(&hj_expand(11, 7).unwrap(), 3), rat(-7, 11));
        assert_eq!(delta_canonical(&chain(&[4, 2, 3]), 0), int(0));
    }

    #[test]
    fn indices() {
        assert_eq!(canonical_index(&hj_expand(13, 6).unwrap()), 13);
        assert_eq!(canonical_index(&chain(&[2, 2])), 1);
        assert_eq!(SingularityIncidence::at_last_curve(chain(&[2; 6])).local_index(), 7);
    }
}

#![allow(clippy::needless_range_loop)]

//! Intersection calculus on configurations of smooth rational curves and on
//! integral lattices.
//!
//! A [`CurveConfig`] is a labelled dual graph with self-intersections; its
//! Gram matrix drives pullbacks of divisors to resolutions, canonical
//! pullbacks, and self-intersections. The lattice half of the module works
//! directly with integer Gram matrices: inertia, pairings, reflections, and
//! splitting off a hyperbolic plane at a primitive isotropic vector.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact_algebra::{int, Rational};
use crate::linalg::{self, IntMatrix};
use crate::quotient_sing::HJChain;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntersectionError {
    #[error("unknown curve label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate curve label {0:?}")]
    DuplicateLabel(String),
    #[error("{what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("adjacency entry ({0}, {1}) is invalid (must be symmetric, nonnegative, zero on the diagonal)")]
    BadAdjacency(usize, usize),
    #[error("edge ({0}, {1}) refers to a missing curve or is a loop")]
    BadEdge(usize, usize),
    #[error("intersection matrix of the contracted curves {0:?} is not negative definite")]
    NotNegativeDefinite(Vec<String>),
    #[error("divisor has support on contracted curve {0:?}")]
    SupportOnContracted(String),
    #[error("reflection root has square {0}, expected -2")]
    BadRoot(i64),
    #[error("vector has square {0}, expected 0")]
    NotIsotropic(i64),
    #[error("vector is not primitive (coordinate gcd {0})")]
    NotPrimitive(i64),
    #[error("lattice is odd (diagonal entry {0} is odd)")]
    OddLattice(usize),
    #[error("lattice is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
}

// ---------------------------------------------------------------------------
// Curve configurations and rational divisors
// ---------------------------------------------------------------------------

/// Labelled configuration of smooth rational curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveConfig {
    names: Vec<String>,
    selfint: Vec<i64>,
    adjacency: IntMatrix,
}

impl CurveConfig {
    pub fn new(names: Vec<String>, selfint: Vec<i64>, adjacency: IntMatrix) -> Result<Self, IntersectionError> {
        let n = names.len();
        if selfint.len() != n {
            return Err(IntersectionError::DimensionMismatch {
                what: "self-intersection list",
                expected: n,
                found: selfint.len(),
            });
        }
        if adjacency.len() != n {
            return Err(IntersectionError::DimensionMismatch {
                what: "adjacency rows",
                expected: n,
                found: adjacency.len(),
            });
        }
        for (i, row) in adjacency.iter().enumerate() {
            if row.len() != n {
                return Err(IntersectionError::DimensionMismatch {
                    what: "adjacency columns",
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &a) in row.iter().enumerate() {
                if a < 0 || (i == j && a != 0) || adjacency[j][i] != a {
                    return Err(IntersectionError::BadAdjacency(i, j));
                }
            }
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(IntersectionError::DuplicateLabel(name.clone()));
            }
        }
        Ok(CurveConfig {
            names,
            selfint,
            adjacency,
        })
    }

    /// Builds a configuration from `(label, self-intersection)` pairs and a list
    /// of transversal intersection points. Repeated edges add up.
    pub fn from_edges(
        curves: impl IntoIterator<Item = (String, i64)>,
        edges: &[(usize, usize)],
    ) -> Result<Self, IntersectionError> {
        let (names, selfint): (Vec<String>, Vec<i64>) = curves.into_iter().unzip();
        let n = names.len();
        let mut adjacency = vec![vec![0; n]; n];
        for &(i, j) in edges {
            if i >= n || j >= n || i == j {
                return Err(IntersectionError::BadEdge(i, j));
            }
            adjacency[i][j] += 1;
            adjacency[j][i] += 1;
        }
        Self::new(names, selfint, adjacency)
    }

    /// The chain of a cyclic quotient resolution, labelled `E1, …, Ek`.
    pub fn from_chain(chain: &HJChain) -> Self {
        let curves = chain
            .selfints()
            .iter()
            .enumerate()
            .map(|(i, &b)| (format!("E{}", i + 1), -(b as i64)));
        let edges: Vec<(usize, usize)> = (1..chain.len()).map(|i| (i - 1, i)).collect();
        Self::from_edges(curves, &edges).expect("chain is a valid configuration")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn selfints(&self) -> &[i64] {
        &self.selfint
    }

    pub fn adjacency(&self) -> &IntMatrix {
        &self.adjacency
    }

    /// Unordered pairs `(i, j)` with `i < j`, repeated by intersection number.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                for _ in 0..self.adjacency[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn index_of(&self, label: &str) -> Result<usize, IntersectionError> {
        self.names
            .iter()
            .position(|n| n == label)
            .ok_or_else(|| IntersectionError::UnknownLabel(label.to_string()))
    }
}

/// Gram matrix `diag(selfint) + adjacency`.
pub fn gram(config: &CurveConfig) -> IntMatrix {
    let mut g = config.adjacency.clone();
    for (i, &s) in config.selfint.iter().enumerate() {
        g[i][i] = s;
    }
    g
}

/// Rational divisor supported on labelled curves. Zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QDivisor {
    coeffs: BTreeMap<String, Rational>,
}

impl QDivisor {
    pub fn new() -> Self {
        Self::default()
    }

    /// The prime divisor `1 · label`.
    pub fn prime(label: &str) -> Self {
        Self::from_pairs([(label.to_string(), Rational::one())])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, Rational)>) -> Self {
        let mut d = Self::new();
        for (k, v) in pairs {
            d.add_to(&k, &v);
        }
        d
    }

    pub fn add_to(&mut self, label: &str, c: &Rational) {
        let e = self.coeffs.entry(label.to_string()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(label);
        }
    }

    pub fn coeff(&self, label: &str) -> Rational {
        self.coeffs.get(label).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(String::as_str)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_pairs(self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)))
    }

    pub fn plus(&self, other: &QDivisor) -> Self {
        let mut d = self.clone();
        for (k, v) in &other.coeffs {
            d.add_to(k, v);
        }
        d
    }

    /// Coefficient vector in the configuration's curve order.
    pub fn to_vector(&self, config: &CurveConfig) -> Result<Vec<Rational>, IntersectionError> {
        let mut v = vec![Rational::zero(); config.len()];
        for (k, c) in &self.coeffs {
            v[config.index_of(k)?] = c.clone();
        }
        Ok(v)
    }

    pub fn from_vector(config: &CurveConfig, v: &[Rational]) -> Self {
        Self::from_pairs(config.names.iter().cloned().zip(v.iter().cloned()))
    }
}

fn contracted_indices(config: &CurveConfig, contracted: &[String]) -> Result<Vec<usize>, IntersectionError> {
    let mut idx = Vec::with_capacity(contracted.len());
    for label in contracted {
        let i = config.index_of(label)?;
        if idx.contains(&i) {
            return Err(IntersectionError::DuplicateLabel(label.clone()));
        }
        idx.push(i);
    }
    Ok(idx)
}

/// Solves `G_cc x = rhs` on the contracted curves after checking that `G_cc`
/// is negative definite.
fn solve_on_contracted(
    config: &CurveConfig,
    idx: &[usize],
    rhs: &[Rational],
) -> Result<Vec<Rational>, IntersectionError> {
    let g = gram(config);
    let sub: IntMatrix = idx.iter().map(|&i| idx.iter().map(|&j| g[i][j]).collect()).collect();
    let not_definite = || IntersectionError::NotNegativeDefinite(idx.iter().map(|&i| config.names[i].clone()).collect());
    if !linalg::is_negative_definite(&sub) {
        return Err(not_definite());
    }
    linalg::solve(&sub, rhs).ok_or_else(not_definite)
}

fn check_disjoint(d: &QDivisor, contracted: &[String]) -> Result<(), IntersectionError> {
    match d.support().find(|l| contracted.iter().any(|c| c == l)) {
        Some(l) => Err(IntersectionError::SupportOnContracted(l.to_string())),
        None => Ok(()),
    }
}

/// Pullback of a divisor along the contraction of `contracted`: returns
/// `strict + Σ v_i E_i` with `(result) · E_i = 0` for every contracted `E_i`.
pub fn pullback(config: &CurveConfig, contracted: &[String], strict: &QDivisor) -> Result<QDivisor, IntersectionError> {
    check_disjoint(strict, contracted)?;
    let idx = contracted_indices(config, contracted)?;
    let dots = linalg::mul_vec(&gram(config), &strict.to_vector(config)?);
    let rhs: Vec<Rational> = idx.iter().map(|&i| -dots[i].clone()).collect();
    let v = solve_on_contracted(config, &idx, &rhs)?;
    let mut out = strict.clone();
    for (&i, c) in idx.iter().zip(&v) {
        out.add_to(&config.names[i], c);
    }
    Ok(out)
}

/// Pullback of the canonical class: `k_incidence + B` where `B`, supported on
/// the contracted curves, solves `(K + B) · E_i = 0` with `K · E_i = -2 - E_i^2`.
///
/// `k_incidence` is the part of a canonical representative living off the
/// contracted locus (e.g. the `(-1)`-curve of a blow-up); it is carried into
/// the result unchanged and may be empty.
pub fn pullback_canonical(
    config: &CurveConfig,
    contracted: &[String],
    k_incidence: &QDivisor,
) -> Result<QDivisor, IntersectionError> {
    check_disjoint(k_incidence, contracted)?;
    let idx = contracted_indices(config, contracted)?;
    let rhs: Vec<Rational> = idx.iter().map(|&i| int(2 + config.selfint[i])).collect();
    let b = solve_on_contracted(config, &idx, &rhs)?;
    let mut out = k_incidence.clone();
    for (&i, c) in idx.iter().zip(&b) {
        out.add_to(&config.names[i], c);
    }
    Ok(out)
}

/// `D1 · D2` through the configuration's Gram matrix.
pub fn intersection(config: &CurveConfig, d1: &QDivisor, d2: &QDivisor) -> Result<Rational, IntersectionError> {
    Ok(linalg::bilinear(&gram(config), &d1.to_vector(config)?, &d2.to_vector(config)?))
}

pub fn self_intersection(config: &CurveConfig, d: &QDivisor) -> Result<Rational, IntersectionError> {
    intersection(config, d, d)
}

// ---------------------------------------------------------------------------
// Standard configurations
// ---------------------------------------------------------------------------

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// The T_{2,3,7} configuration: ten (-2)-curves `T0 … T9`, the chain
/// `T0 – … – T8` with `T9` attached to `T6`.
pub fn t237() -> CurveConfig {
    let mut edges: Vec<(usize, usize)> = (0..8).map(|i| (i, i + 1)).collect();
    edges.push((6, 9));
    CurveConfig::from_edges(labels("T", 10).into_iter().map(|n| (n, -2)), &edges).expect("valid")
}

/// The blow-up of [`t237`] at `T5 ∩ T6`: the strict transforms `T5`, `T6` become
/// (-3)-curves joined through the (-1)-curve `E`.
pub fn type_i_config() -> CurveConfig {
    let mut curves: Vec<(String, i64)> = labels("T", 10).into_iter().map(|n| (n, -2)).collect();
    curves[5].1 = -3;
    curves[6].1 = -3;
    curves.push(("E".to_string(), -1));
    let e = 10;
    let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 1)).collect();
    edges.extend([(5, e), (e, 6), (6, 7), (7, 8), (6, 9)]);
    CurveConfig::from_edges(curves, &edges).expect("valid")
}

// ---------------------------------------------------------------------------
// Lattices
// ---------------------------------------------------------------------------

/// Integer coordinates of a lattice vector in a fixed basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        LatticeVector(v)
    }

    fn combine(&self, a: i64, other: &LatticeVector, b: i64) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(x, y)| a * x + b * y).collect())
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|x| -x).collect())
    }
}

/// Inertia of a real symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

fn check_square(gram: &[Vec<i64>]) -> Result<(), IntersectionError> {
    let n = gram.len();
    for row in gram {
        if row.len() != n {
            return Err(IntersectionError::DimensionMismatch {
                what: "Gram matrix columns",
                expected: n,
                found: row.len(),
            });
        }
    }
    for i in 0..n {
        for j in 0..i {
            if gram[i][j] != gram[j][i] {
                return Err(IntersectionError::NotSymmetric);
            }
        }
    }
    Ok(())
}

/// Inertia triple by symmetric congruence diagonalization over the rationals.
/// When every remaining diagonal entry vanishes, a row/column pair is added to
/// create a nonzero pivot.
pub fn signature(gram: &[Vec<i64>]) -> Result<Inertia, IntersectionError> {
    check_square(gram)?;
    let n = gram.len();
    let mut a: Vec<Vec<Rational>> = gram.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let mut inertia = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(i, k);
                for row in a.iter_mut() {
                    row.swap(i, k);
                }
            } else if let Some((i, j)) =
                (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
            {
                // replace e_i by e_i + e_j: the new diagonal entry is 2 a_ij
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[i][c] += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[i] += v;
                }
                a.swap(i, k);
                for row in a.iter_mut() {
                    row.swap(i, k);
                }
            } else {
                inertia.zero += n - k;
                return Ok(inertia);
            }
        }
        let pivot = a[k][k].clone();
        if pivot.is_positive() {
            inertia.positive += 1;
        } else {
            inertia.negative += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for r in k..n {
                let v = &f * &a[r][k];
                a[r][i] -= v;
            }
        }
    }
    Ok(inertia)
}

fn check_dims(gram: &[Vec<i64>], v: &LatticeVector) -> Result<(), IntersectionError> {
    if v.0.len() != gram.len() {
        return Err(IntersectionError::DimensionMismatch {
            what: "lattice vector length",
            expected: gram.len(),
            found: v.0.len(),
        });
    }
    Ok(())
}

/// `v^T G w`.
pub fn pairing(gram: &[Vec<i64>], v: &LatticeVector, w: &LatticeVector) -> Result<i64, IntersectionError> {
    check_dims(gram, v)?;
    check_dims(gram, w)?;
    let mut total: i128 = 0;
    for (i, row) in gram.iter().enumerate() {
        for (j, &g) in row.iter().enumerate() {
            total += v.0[i] as i128 * g as i128 * w.0[j] as i128;
        }
    }
    Ok(i64::try_from(total).expect("pairing fits in i64"))
}

/// Reflection `v ↦ v + (v·r) r` in a root of square -2.
pub fn weyl_reflect(gram: &[Vec<i64>], v: &LatticeVector, root: &LatticeVector) -> Result<LatticeVector, IntersectionError> {
    let rr = pairing(gram, root, root)?;
    if rr != -2 {
        return Err(IntersectionError::BadRoot(rr));
    }
    let vr = pairing(gram, v, root)?;
    Ok(v.combine(1, root, vr))
}

/// Whether `v · α ≥ 0` for every given root.
pub fn in_fundamental_chamber(
    gram: &[Vec<i64>],
    v: &LatticeVector,
    simple_roots: &[LatticeVector],
) -> Result<bool, IntersectionError> {
    for r in simple_roots {
        if pairing(gram, v, r)? < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A hyperbolic plane `⟨e, e'⟩ ≅ U` split off an even unimodular lattice,
/// together with a basis of its orthogonal complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperbolicSplitting {
    pub e: LatticeVector,
    pub e_prime: LatticeVector,
    pub complement_basis: Vec<LatticeVector>,
    pub complement_gram: IntMatrix,
}

/// Coefficients `c` with `Σ c_i a_i = gcd(a)`, and the gcd itself (nonnegative).
fn vector_bezout(a: &[i64]) -> (i64, Vec<i64>) {
    let mut g = 0i64;
    let mut coeffs = vec![0i64; a.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let e = g.extended_gcd(&ai);
        for c in coeffs.iter_mut() {
            *c *= e.x;
        }
        coeffs[i] = e.y;
        g = e.gcd;
    }
    if g < 0 {
        g = -g;
        coeffs.iter_mut().for_each(|c| *c = -*c);
    }
    (g, coeffs)
}

/// Integer row echelon form; returns the nonzero rows.
fn integer_row_basis(mut rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        // Euclid on column c below row r
        loop {
            let nz: Vec<usize> = (r..rows.len()).filter(|&i| rows[i][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).expect("nonempty");
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c] != 0 {
                    let q = Integer::div_floor(&rows[i][c], &rows[r][c]);
                    for k in 0..ncols {
                        rows[i][k] -= q * rows[r][k];
                    }
                    if rows[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                r += 1;
                break;
            }
        }
    }
    rows.into_iter().filter(|row| row.iter().any(|&x| x != 0)).collect()
}

/// Splits `U = ⟨e, e'⟩` off an even unimodular lattice at a primitive
/// isotropic vector `e`.
pub fn split_hyperbolic(gram: &[Vec<i64>], e: &LatticeVector) -> Result<HyperbolicSplitting, IntersectionError> {
    check_square(gram)?;
    check_dims(gram, e)?;
    let n = gram.len();
    if let Some(i) = (0..n).find(|&i| gram[i][i] % 2 != 0) {
        return Err(IntersectionError::OddLattice(i));
    }
    let det = linalg::determinant(gram);
    if det.abs() != BigInt::one() {
        return Err(IntersectionError::NotUnimodular(det));
    }
    let ee = pairing(gram, e, e)?;
    if ee != 0 {
        return Err(IntersectionError::NotIsotropic(ee));
    }
    let content = e.0.iter().fold(0i64, |g, &x| g.gcd(&x));
    if content != 1 {
        return Err(IntersectionError::NotPrimitive(content));
    }
    // functional x ↦ x·e; unimodularity makes it surjective onto Z
    let phi: Vec<i64> = (0..n)
        .map(|i| pairing(gram, &LatticeVector::basis(n, i), e))
        .collect::<Result<_, _>>()?;
    let (g, coeffs) = vector_bezout(&phi);
    debug_assert_eq!(g, 1, "primitive vector in a unimodular lattice");
    let v = LatticeVector(coeffs);
    let half_vv = pairing(gram, &v, &v)? / 2;
    let e_prime = v.combine(1, e, -half_vv);

    let mut projected = Vec::with_capacity(n);
    for i in 0..n {
        let x = LatticeVector::basis(n, i);
        let xe = pairing(gram, &x, e)?;
        let xep = pairing(gram, &x, &e_prime)?;
        let p = x.combine(1, e, -xep).combine(1, &e_prime, -xe);
        projected.push(p.0);
    }
    let complement_basis: Vec<LatticeVector> = integer_row_basis(projected).into_iter().map(LatticeVector).collect();
    let complement_gram: IntMatrix = complement_basis
        .iter()
        .map(|a| complement_basis.iter().map(|b| pairing(gram, a, b)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    Ok(HyperbolicSplitting {
        e: e.clone(),
        e_prime,
        complement_basis,
        complement_gram,
    })
}

/// `h = 6α0 + 12α1 + … + 42α6 + 28α7 + 14α8 + 21α9` in the T_{2,3,7} basis.
pub fn t237_polarization() -> LatticeVector {
    LatticeVector(vec![6, 12, 18, 24, 30, 36, 42, 28, 14, 21])
}

/// `s = α0`, the section class.
pub fn t237_section() -> LatticeVector {
    LatticeVector::basis(10, 0)
}

/// `f = α1 + 2α2 + … + 6α6 + 4α7 + 2α8 + 3α9`, the fiber class.
pub fn t237_fiber() -> LatticeVector {
    LatticeVector(vec![0, 1, 2, 3, 4, 5, 6, 4, 2, 3])
}

/// The standard basis vectors, i.e. the simple roots of a root-basis Gram.
pub fn simple_roots(rank: usize) -> Vec<LatticeVector> {
    (0..rank).map(|i| LatticeVector::basis(rank, i)).collect()
}

//! Weierstrass fibrations `y^2 = x^3 + A x + B` over the projective line.
//!
//! `A`, `B` and `Δ = 4A^3 + 27B^2` are sections of `O(4N)`, `O(6N)`, `O(12N)`
//! and are stored through their affine charts in `u`; the order at the point
//! at infinity is the budget minus the chart degree. Singular fibers are
//! located on the factors of a gcd-free basis of `Δ`, `A`, `B`, so conjugate
//! points are handled together and no roots are ever approximated.
//!
//! The second half builds the eleven-parameter Brieskorn family
//! `z^2 + y^3 + A_28(w, x) y + B_42(w, x)` on `P(1, 6)`, its special locus, and
//! sorts members into Type I (no non-minimal place), Type II (smooth fiber
//! after minimalizing) and Type III (nodal fiber after minimalizing).

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact_algebra::{
    chart_and_budget, coprime_refinement, int, AlgebraError, Order, Rational, UniPoly, WeightedBiPoly,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeierstrassError {
    #[error("budget must be at least 1")]
    ZeroBudget,
    #[error("{which}-chart has degree {degree}, above its budget {budget}")]
    ChartTooLarge {
        which: &'static str,
        degree: usize,
        budget: u32,
    },
    #[error("discriminant vanishes identically")]
    ZeroDiscriminant,
    #[error("order triple ({0}, {1}, {2}) does not come from a Weierstrass model")]
    InconsistentOrders(Order, Order, Order),
    #[error("place is minimal: A and B are not divisible to orders 4 and 6")]
    NotNonMinimal,
    #[error("minimalizing would drop the budget below 1")]
    BudgetExhausted,
    #[error("place must be a nonconstant polynomial")]
    ConstantPlace,
    #[error("all Brieskorn parameters vanish (triangle singularity, not log canonical)")]
    AllZeroParams,
    #[error("more than one non-minimal place: {0}")]
    SeveralNonMinimal(usize),
    #[error("non-minimal place of degree {0}; only rational points are supported")]
    NonRationalNonMinimal(usize),
    #[error("model is still non-minimal after one round")]
    StillNonMinimal,
    #[error("unexpected fiber {0} at the minimalized place")]
    UnexpectedFiber(KodairaType),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `A`, `B` charts with budget `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassModel {
    a: UniPoly,
    b: UniPoly,
    budget: u32,
}

impl WeierstrassModel {
    pub fn new(a: UniPoly, b: UniPoly, budget: u32) -> Result<Self, WeierstrassError> {
        if budget == 0 {
            return Err(WeierstrassError::ZeroBudget);
        }
        for (which, p, cap) in [("A", &a, 4 * budget), ("B", &b, 6 * budget)] {
            if let Some(d) = p.degree() {
                if d > cap as usize {
                    return Err(WeierstrassError::ChartTooLarge {
                        which,
                        degree: d,
                        budget: cap,
                    });
                }
            }
        }
        if a.is_zero() && b.is_zero() {
            return Err(WeierstrassError::ZeroDiscriminant);
        }
        Ok(WeierstrassModel { a, b, budget })
    }

    pub fn a(&self) -> &UniPoly {
        &self.a
    }

    pub fn b(&self) -> &UniPoly {
        &self.b
    }

    pub fn budget(&self) -> u32 {
        self.budget
    }
}

/// A fiber location: a monic squarefree factor (all of its roots together) or
/// the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(UniPoly),
    Infinity,
}

impl Place {
    /// Number of geometric points.
    pub fn residual_degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KodairaType {
    I0,
    I(u32),
    II,
    III,
    IV,
    I0Star,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
    NonMinimal,
}

impl KodairaType {
    /// Euler number of the fiber; undefined for non-minimal places.
    pub fn euler(self) -> Option<u32> {
        Some(match self {
            KodairaType::I0 => 0,
            KodairaType::I(n) => n,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::I0Star => 6,
            KodairaType::IStar(n) => n + 6,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
            KodairaType::NonMinimal => return None,
        })
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I0 => f.write_str("I0"),
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => f.write_str("II"),
            KodairaType::III => f.write_str("III"),
            KodairaType::IV => f.write_str("IV"),
            KodairaType::I0Star => f.write_str("I0*"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => f.write_str("IV*"),
            KodairaType::IIIStar => f.write_str("III*"),
            KodairaType::IIStar => f.write_str("II*"),
            KodairaType::NonMinimal => f.write_str("non-minimal"),
        }
    }
}

/// Value of the j-invariant at a place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JValue {
    Finite(Rational),
    /// Residue modulo a place of degree at least 2 that is not constant.
    Residue(UniPoly),
    Infinity,
}

impl fmt::Display for JValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JValue::Finite(r) => write!(f, "{r}"),
            JValue::Residue(p) => write!(f, "{p} mod place"),
            JValue::Infinity => f.write_str("inf"),
        }
    }
}

/// Orders of `A`, `B`, `Δ` at one place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceOrders {
    pub place: Place,
    pub ord_a: Order,
    pub ord_b: Order,
    pub ord_delta: Order,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberReport {
    pub place: Place,
    pub ord_a: Order,
    pub ord_b: Order,
    pub ord_delta: Order,
    pub kodaira: KodairaType,
    /// `None` at non-minimal places, where the value needs minimalizing first.
    pub j: Option<JValue>,
    pub residual_degree: usize,
}

/// `4a^3 + 27b^2`.
pub fn discriminant(m: &WeierstrassModel) -> Result<UniPoly, WeierstrassError> {
    let d = m.a.pow(3).scale(&int(4)) + m.b.pow(2).scale(&int(27));
    if d.is_zero() {
        return Err(WeierstrassError::ZeroDiscriminant);
    }
    Ok(d)
}

fn order_at_infinity(p: &UniPoly, budget: u32) -> Order {
    match p.degree() {
        None => Order::Infinite,
        Some(d) => Order::Finite(budget - d as u32),
    }
}

/// Orders of `A`, `B`, `Δ` at `place`.
pub fn orders_at(m: &WeierstrassModel, place: &Place) -> Result<PlaceOrders, WeierstrassError> {
    orders_with(m, &discriminant(m)?, place)
}

fn orders_with(m: &WeierstrassModel, delta: &UniPoly, place: &Place) -> Result<PlaceOrders, WeierstrassError> {
    let n = m.budget;
    let (ord_a, ord_b, ord_delta) = match place {
        Place::Infinity => (
            order_at_infinity(&m.a, 4 * n),
            order_at_infinity(&m.b, 6 * n),
            order_at_infinity(delta, 12 * n),
        ),
        Place::Finite(p) => {
            if p.degree().unwrap_or(0) == 0 {
                return Err(WeierstrassError::ConstantPlace);
            }
            (m.a.order_along(p), m.b.order_along(p), delta.order_along(p))
        }
    };
    Ok(PlaceOrders {
        place: place.clone(),
        ord_a,
        ord_b,
        ord_delta,
    })
}

/// Orders at every place where `Δ` vanishes, finite places first, then
/// infinity (always listed, possibly with `ord Δ = 0`).
pub fn analyze_places(m: &WeierstrassModel) -> Result<Vec<PlaceOrders>, WeierstrassError> {
    analyze_with(m, &discriminant(m)?)
}

fn analyze_with(m: &WeierstrassModel, delta: &UniPoly) -> Result<Vec<PlaceOrders>, WeierstrassError> {
    let mut out = Vec::new();
    for p in coprime_refinement(&[delta.clone(), m.a.clone(), m.b.clone()]) {
        if delta.rem(&p)?.is_zero() {
            out.push(orders_with(m, delta, &Place::Finite(p))?);
        }
    }
    out.push(orders_with(m, delta, &Place::Infinity)?);
    Ok(out)
}

/// Tate's table in characteristic zero.
pub fn classify(ord_a: Order, ord_b: Order, ord_delta: Order) -> Result<KodairaType, WeierstrassError> {
    let bad = || WeierstrassError::InconsistentOrders(ord_a, ord_b, ord_delta);
    let d = ord_delta.finite().ok_or_else(bad)?;
    let three_a = match ord_a {
        Order::Finite(k) => Order::Finite(3 * k),
        Order::Infinite => Order::Infinite,
    };
    let two_b = match ord_b {
        Order::Finite(k) => Order::Finite(2 * k),
        Order::Infinite => Order::Infinite,
    };
    let lower = three_a.min(two_b);
    let consistent = if three_a != two_b {
        lower == Order::Finite(d)
    } else {
        lower <= Order::Finite(d)
    };
    if !consistent {
        return Err(bad());
    }
    if d == 0 {
        return Ok(KodairaType::I0);
    }
    if ord_a == Order::Finite(0) {
        return Ok(KodairaType::I(d));
    }
    // from here on ord_a, ord_b >= 1 and d is pinned down by the check above
    let a = ord_a;
    let b = ord_b;
    let f = Order::Finite;
    Ok(if b == f(1) {
        KodairaType::II
    } else if a == f(1) {
        KodairaType::III
    } else if b == f(2) {
        KodairaType::IV
    } else if a == f(2) && b == f(3) {
        if d == 6 {
            KodairaType::I0Star
        } else {
            KodairaType::IStar(d - 6)
        }
    } else if b == f(3) || a == f(2) {
        KodairaType::I0Star
    } else if b == f(4) {
        KodairaType::IVStar
    } else if a == f(3) {
        KodairaType::IIIStar
    } else if b == f(5) {
        KodairaType::IIStar
    } else {
        KodairaType::NonMinimal
    })
}

/// Divides out `ℓ^4`, `ℓ^6` at a non-minimal place. The budget drops by the
/// degree of the place.
pub fn minimalize(m: &WeierstrassModel, place: &Place) -> Result<WeierstrassModel, WeierstrassError> {
    match place {
        Place::Infinity => {
            let o = orders_at(m, place)?;
            if !(o.ord_a.at_least(4) && o.ord_b.at_least(6)) {
                return Err(WeierstrassError::NotNonMinimal);
            }
            if m.budget < 2 {
                return Err(WeierstrassError::BudgetExhausted);
            }
            WeierstrassModel::new(m.a.clone(), m.b.clone(), m.budget - 1)
        }
        Place::Finite(p) => {
            let deg = p.degree().unwrap_or(0) as u32;
            if deg == 0 {
                return Err(WeierstrassError::ConstantPlace);
            }
            let a = m.a.exact_div(&p.pow(4)).ok_or(WeierstrassError::NotNonMinimal)?;
            let b = m.b.exact_div(&p.pow(6)).ok_or(WeierstrassError::NotNonMinimal)?;
            if m.budget <= deg {
                return Err(WeierstrassError::BudgetExhausted);
            }
            WeierstrassModel::new(a, b, m.budget - deg)
        }
    }
}

/// `j = 12^3 · 4A^3 / Δ` at the place. When `3 ord A = ord Δ` the common power
/// of the place is cancelled before evaluating.
pub fn j_invariant(m: &WeierstrassModel, place: &Place) -> Result<JValue, WeierstrassError> {
    let delta = discriminant(m)?;
    let o = orders_with(m, &delta, place)?;
    j_with(m, &delta, &o)
}

fn j_with(m: &WeierstrassModel, delta: &UniPoly, o: &PlaceOrders) -> Result<JValue, WeierstrassError> {
    let d = o.ord_delta.finite().expect("discriminant is nonzero");
    let three_a = match o.ord_a {
        Order::Finite(k) => 3 * k,
        Order::Infinite => return Ok(JValue::Finite(Rational::zero())),
    };
    if three_a > d {
        return Ok(JValue::Finite(Rational::zero()));
    }
    if three_a < d {
        return Ok(JValue::Infinity);
    }
    let scale = int(6912);
    let a3 = m.a.pow(3);
    match &o.place {
        Place::Infinity => {
            // equal orders means equal chart degrees
            let v = scale * a3.leading_coeff().expect("a nonzero") / delta.leading_coeff().expect("nonzero");
            Ok(JValue::Finite(v))
        }
        Place::Finite(p) => {
            let pk = p.pow(d);
            let num = a3.exact_div(&pk).expect("order computed");
            let den = delta.exact_div(&pk).expect("order computed");
            let inv = den.inverse_mod(p).expect("place is coprime to the cofactor");
            let r = (&num * &inv).rem(p)?.scale(&scale);
            if r.is_constant() {
                Ok(JValue::Finite(r.coeff(0)))
            } else {
                Ok(JValue::Residue(r))
            }
        }
    }
}

/// Orders, Kodaira types and j-values at every place of [`analyze_places`].
pub fn fiber_reports(m: &WeierstrassModel) -> Result<Vec<FiberReport>, WeierstrassError> {
    let delta = discriminant(m)?;
    analyze_with(m, &delta)?
        .into_iter()
        .map(|o| {
            let kodaira = classify(o.ord_a, o.ord_b, o.ord_delta)?;
            let j = if kodaira == KodairaType::NonMinimal {
                None
            } else {
                Some(j_with(m, &delta, &o)?)
            };
            Ok(FiberReport {
                residual_degree: o.place.residual_degree(),
                place: o.place,
                ord_a: o.ord_a,
                ord_b: o.ord_b,
                ord_delta: o.ord_delta,
                kodaira,
                j,
            })
        })
        .collect()
}

/// `Σ deg(place) · ord Δ`; equals `12N` for every model.
pub fn delta_sum(reports: &[FiberReport]) -> u32 {
    reports
        .iter()
        .map(|r| r.residual_degree as u32 * r.ord_delta.finite().unwrap_or(0))
        .sum()
}

/// `Σ deg(place) · e(fiber)`, or `None` if some place is non-minimal.
pub fn euler_sum(reports: &[FiberReport]) -> Option<u32> {
    reports
        .iter()
        .map(|r| r.kodaira.euler().map(|e| r.residual_degree as u32 * e))
        .sum()
}

// ---------------------------------------------------------------------------
// Brieskorn family
// ---------------------------------------------------------------------------

/// Coefficients of
/// `A_28 = t4 x^4 w^4 + t10 x^3 w^10 + t16 x^2 w^16 + t22 x w^22 + t28 w^28` and
/// `B_42 = x^7 + t12 x^5 w^12 + t18 x^4 w^18 + t24 x^3 w^24 + t30 x^2 w^30 + t36 x w^36 + t42 w^42`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BrieskornParams {
    pub t4: Rational,
    pub t10: Rational,
    pub t12: Rational,
    pub t16: Rational,
    pub t18: Rational,
    pub t22: Rational,
    pub t24: Rational,
    pub t28: Rational,
    pub t30: Rational,
    pub t36: Rational,
    pub t42: Rational,
}

/// Parameter names in weight order.
pub const BRIESKORN_KEYS: [&str; 11] = [
    "t4", "t10", "t12", "t16", "t18", "t22", "t24", "t28", "t30", "t36", "t42",
];

const A_INDEX: [u32; 5] = [4, 10, 16, 22, 28];
const B_INDEX: [u32; 6] = [12, 18, 24, 30, 36, 42];
const WEIGHTS: (u32, u32) = (1, 6);

impl BrieskornParams {
    /// Values in the order of [`BRIESKORN_KEYS`].
    pub fn values(&self) -> [&Rational; 11] {
        [
            &self.t4, &self.t10, &self.t12, &self.t16, &self.t18, &self.t22, &self.t24, &self.t28, &self.t30,
            &self.t36, &self.t42,
        ]
    }

    pub fn from_values(v: [Rational; 11]) -> Self {
        let [t4, t10, t12, t16, t18, t22, t24, t28, t30, t36, t42] = v;
        BrieskornParams {
            t4,
            t10,
            t12,
            t16,
            t18,
            t22,
            t24,
            t28,
            t30,
            t36,
            t42,
        }
    }

    pub fn get(&self, index: u32) -> Option<&Rational> {
        let pos = BRIESKORN_KEYS.iter().position(|k| k[1..] == index.to_string())?;
        Some(self.values()[pos])
    }

    fn set(&mut self, index: u32, v: Rational) {
        let slot = match index {
            4 => &mut self.t4,
            10 => &mut self.t10,
            12 => &mut self.t12,
            16 => &mut self.t16,
            18 => &mut self.t18,
            22 => &mut self.t22,
            24 => &mut self.t24,
            28 => &mut self.t28,
            30 => &mut self.t30,
            36 => &mut self.t36,
            42 => &mut self.t42,
            _ => unreachable!("not a parameter index"),
        };
        *slot = v;
    }

    pub fn is_zero(&self) -> bool {
        self.values().iter().all(|v| v.is_zero())
    }

    /// `A_28(w, x)` with weights `(1, 6)`.
    pub fn a28(&self) -> WeightedBiPoly {
        let terms = A_INDEX
            .iter()
            .map(|&k| ((k, (28 - k) / 6), self.get(k).expect("index").clone()));
        WeightedBiPoly::from_terms(WEIGHTS, 28, terms).expect("homogeneous")
    }

    /// `B_42(w, x)` with weights `(1, 6)`.
    pub fn b42(&self) -> WeightedBiPoly {
        let terms = B_INDEX
            .iter()
            .map(|&k| ((k, (42 - k) / 6), self.get(k).expect("index").clone()))
            .chain([((0, 7), Rational::one())]);
        WeightedBiPoly::from_terms(WEIGHTS, 42, terms).expect("homogeneous")
    }
}

/// The K3 model (`N = 2`) of a Brieskorn parameter point.
pub fn brieskorn_model(t: &BrieskornParams) -> Result<WeierstrassModel, WeierstrassError> {
    if t.is_zero() {
        return Err(WeierstrassError::AllZeroParams);
    }
    let (a, _) = chart_and_budget(&t.a28(), 8)?;
    let (b, _) = chart_and_budget(&t.b42(), 12)?;
    WeierstrassModel::new(a, b, 2)
}

/// `ℓ = x - (b/7) w^6`.
pub fn special_line(b: &Rational) -> WeightedBiPoly {
    WeightedBiPoly::from_terms(WEIGHTS, 6, [((0, 1), Rational::one()), ((6, 0), -b / int(7))]).expect("homogeneous")
}

/// Parameters of `A = a ℓ^4 w^4`, `B = ℓ^6 (ℓ + b w^6)`.
pub fn special_locus_params(a: &Rational, b: &Rational) -> BrieskornParams {
    let (big_a, big_b) = special_locus_sections(a, b);
    assert!(big_b.coeff(6, 6).is_zero(), "x^6 w^6 term cancels");
    debug_assert_eq!(big_b.coeff(0, 7), Rational::one());
    let mut t = BrieskornParams::default();
    for &k in &A_INDEX {
        t.set(k, big_a.coeff(k, (28 - k) / 6));
    }
    for &k in &B_INDEX {
        t.set(k, big_b.coeff(k, (42 - k) / 6));
    }
    t
}

fn special_locus_sections(a: &Rational, b: &Rational) -> (WeightedBiPoly, WeightedBiPoly) {
    let l = special_line(b);
    let w4 = WeightedBiPoly::monomial(WEIGHTS, a.clone(), 4, 0);
    let big_a = l.pow(4).try_mul(&w4).expect("same weights");
    let tail = l
        .try_add(&WeightedBiPoly::monomial(WEIGHTS, b.clone(), 6, 0))
        .expect("degree 6");
    let big_b = l.pow(6).try_mul(&tail).expect("same weights");
    (big_a, big_b)
}

/// Chart of `ℓ^12 (4a^3 w^12 + 27(ℓ + b w^6)^2)`, the closed form of the
/// discriminant along the special locus.
pub fn special_locus_discriminant(a: &Rational, b: &Rational) -> UniPoly {
    let l = special_line(b);
    let cubic = WeightedBiPoly::monomial(WEIGHTS, int(4) * a * a * a, 12, 0);
    let tail = l
        .try_add(&WeightedBiPoly::monomial(WEIGHTS, b.clone(), 6, 0))
        .expect("degree 6");
    let residual = cubic.try_add(&tail.pow(2).scale(&int(27))).expect("degree 12");
    let full = l.pow(12).try_mul(&residual).expect("same weights");
    chart_and_budget(&full, 24).expect("fits the budget").0
}

/// The linear place `u - b/7` of the special locus.
pub fn special_place(b: &Rational) -> Place {
    Place::Finite(UniPoly::linear_root(b / int(7)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceType {
    /// K3 with ADE singularities.
    I,
    /// Rational with one simple elliptic singularity.
    II,
    /// Rational with one cusp singularity.
    III,
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceType::I => "I",
            SurfaceType::II => "II",
            SurfaceType::III => "III",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceReport {
    pub surface_type: SurfaceType,
    pub k3_fibers: Vec<FiberReport>,
    /// `Σ deg · ord Δ` on the K3 model, always 24.
    pub k3_delta_sum: u32,
    /// The non-minimal place, for Types II and III.
    pub special_place: Option<Place>,
    /// Fibers of the minimal rational model, for Types II and III.
    pub rational_fibers: Option<Vec<FiberReport>>,
    /// Euler sum of the minimal model: 24 for Type I, 12 otherwise.
    pub euler_sum: u32,
    /// j at the special place (Type II) or `Infinity` (Type III).
    pub j: Option<JValue>,
}

pub fn classify_surface(t: &BrieskornParams) -> Result<SurfaceReport, WeierstrassError> {
    let m = brieskorn_model(t)?;
    let k3_fibers = fiber_reports(&m)?;
    let k3_delta_sum = delta_sum(&k3_fibers);
    let bad: Vec<&FiberReport> = k3_fibers
        .iter()
        .filter(|r| r.kodaira == KodairaType::NonMinimal)
        .collect();
    let place = match bad.as_slice() {
        [] => {
            let euler_sum = euler_sum(&k3_fibers).expect("all minimal");
            return Ok(SurfaceReport {
                surface_type: SurfaceType::I,
                k3_fibers,
                k3_delta_sum,
                special_place: None,
                rational_fibers: None,
                euler_sum,
                j: None,
            });
        }
        [one] => one.place.clone(),
        many => return Err(WeierstrassError::SeveralNonMinimal(many.len())),
    };
    if place.residual_degree() != 1 {
        return Err(WeierstrassError::NonRationalNonMinimal(place.residual_degree()));
    }
    let minimal = minimalize(&m, &place)?;
    let rational_fibers = fiber_reports(&minimal)?;
    let euler = euler_sum(&rational_fibers).ok_or(WeierstrassError::StillNonMinimal)?;
    let at = orders_at(&minimal, &place)?;
    let kodaira = classify(at.ord_a, at.ord_b, at.ord_delta)?;
    let surface_type = match kodaira {
        KodairaType::I0 => SurfaceType::II,
        KodairaType::I(_) => SurfaceType::III,
        other => return Err(WeierstrassError::UnexpectedFiber(other)),
    };
    let j = j_invariant(&minimal, &place)?;
    Ok(SurfaceReport {
        surface_type,
        k3_fibers,
        k3_delta_sum,
        special_place: Some(place),
        rational_fibers: Some(rational_fibers),
        euler_sum: euler,
        j: Some(j),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rat;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    fn all_ones() -> BrieskornParams {
        BrieskornParams::from_values(std::array::from_fn(|_| int(1)))
    }

    #[test]
    fn discriminant_examples() {
        let m = WeierstrassModel::new(UniPoly::zero(), p(&[1]), 1).unwrap();
        assert_eq!(discriminant(&m).unwrap(), p(&[27]));
        let m = WeierstrassModel::new(p(&[-3]), p(&[2]), 1).unwrap();
        assert_eq!(discriminant(&m), Err(WeierstrassError::ZeroDiscriminant));
        assert!(WeierstrassModel::new(UniPoly::zero(), UniPoly::zero(), 1).is_err());
        assert!(WeierstrassModel::new(p(&[0, 0, 0, 0, 0, 1]), p(&[1]), 1).is_err());
        assert!(WeierstrassModel::new(p(&[1]), p(&[1]), 0).is_err());
    }

    #[test]
    fn tate_table() {
        let f = Order::Finite;
        let inf = Order::Infinite;
        assert_eq!(classify(f(4), f(5), f(10)).unwrap(), KodairaType::IIStar);
        assert_eq!(classify(f(0), f(0), f(1)).unwrap(), KodairaType::I(1));
        assert_eq!(classify(f(4), f(6), f(12)).unwrap(), KodairaType::NonMinimal);
        assert_eq!(classify(f(0), f(0), f(0)).unwrap(), KodairaType::I0);
        assert_eq!(classify(inf, f(1), f(2)).unwrap(), KodairaType::II);
        assert_eq!(classify(f(1), inf, f(3)).unwrap(), KodairaType::III);
        assert_eq!(classify(f(2), f(2), f(4)).unwrap(), KodairaType::IV);
        assert_eq!(classify(f(2), f(3), f(6)).unwrap(), KodairaType::I0Star);
        assert_eq!(classify(inf, f(3), f(6)).unwrap(), KodairaType::I0Star);
        assert_eq!(classify(f(2), f(3), f(9)).unwrap(), KodairaType::IStar(3));
        assert_eq!(classify(f(3), f(4), f(8)).unwrap(), KodairaType::IVStar);
        assert_eq!(classify(f(3), inf, f(9)).unwrap(), KodairaType::IIIStar);
        assert_eq!(classify(inf, f(5), f(10)).unwrap(), KodairaType::IIStar);
        assert!(classify(f(1), f(1), f(5)).is_err());
        assert!(classify(f(0), f(0), inf).is_err());
        assert!(classify(f(2), f(5), f(7)).is_err());
    }

    #[test]
    fn euler_numbers() {
        assert_eq!(KodairaType::IStar(2).euler(), Some(8));
        assert_eq!(KodairaType::IIStar.euler(), Some(10));
        assert_eq!(KodairaType::NonMinimal.euler(), None);
        assert_eq!(KodairaType::IStar(2).to_string(), "I2*");
    }

    #[test]
    fn brieskorn_charts() {
        let t = BrieskornParams {
            t42: int(1),
            ..Default::default()
        };
        let m = brieskorn_model(&t).unwrap();
        assert!(m.a().is_zero());
        assert_eq!(m.b(), &p(&[1, 0, 0, 0, 0, 0, 0, 1]));
        assert_eq!(
            brieskorn_model(&BrieskornParams::default()),
            Err(WeierstrassError::AllZeroParams)
        );

        let m = brieskorn_model(&all_ones()).unwrap();
        assert_eq!(m.a(), &p(&[1, 1, 1, 1, 1]));
        assert_eq!(m.b(), &p(&[1, 1, 1, 1, 1, 1, 0, 1]));
        let inf = orders_at(&m, &Place::Infinity).unwrap();
        assert_eq!(
            (inf.ord_a, inf.ord_b, inf.ord_delta),
            (Order::Finite(4), Order::Finite(5), Order::Finite(10))
        );
        let reports = fiber_reports(&m).unwrap();
        assert_eq!(reports.last().unwrap().kodaira, KodairaType::IIStar);
        assert_eq!(delta_sum(&reports), 24);
        assert_eq!(euler_sum(&reports), Some(24));
    }

    #[test]
    fn infinity_non_minimal_when_b_vanishes() {
        // b = 0 gives infinite order of B at infinity; the triple is (4, inf, 12)
        let m = WeierstrassModel::new(p(&[1]), UniPoly::zero(), 1).unwrap();
        let places = analyze_places(&m).unwrap();
        assert_eq!(places.len(), 1);
        let o = &places[0];
        assert_eq!(o.place, Place::Infinity);
        assert_eq!((o.ord_a, o.ord_b, o.ord_delta), (Order::Finite(4), Order::Infinite, Order::Finite(12)));
        assert_eq!(
            classify(o.ord_a, o.ord_b, o.ord_delta).unwrap(),
            KodairaType::NonMinimal
        );
    }

    #[test]
    fn special_locus_expansion() {
        let t = special_locus_params(&int(1), &int(0));
        let expected = BrieskornParams {
            t4: int(1),
            ..Default::default()
        };
        assert_eq!(t, expected);

        // (0, 7): B = (x - w^6)^6 (x + 6 w^6)
        let m = brieskorn_model(&special_locus_params(&int(0), &int(7))).unwrap();
        assert!(m.a().is_zero());
        assert_eq!(m.b(), &(p(&[-1, 1]).pow(6) * p(&[6, 1])));

        // t4 = a always
        assert_eq!(special_locus_params(&rat(-3, 5), &rat(2, 9)).t4, rat(-3, 5));
    }

    #[test]
    fn special_locus_discriminant_factors() {
        for (a, b) in [(int(1), int(0)), (int(0), int(1)), (rat(2, 3), rat(-5, 4)), (int(-3), int(2))] {
            let m = brieskorn_model(&special_locus_params(&a, &b)).unwrap();
            assert_eq!(discriminant(&m).unwrap(), special_locus_discriminant(&a, &b));
        }
    }

    #[test]
    fn minimalize_and_back() {
        let (a, b) = (rat(2, 3), rat(-5, 4));
        let m = brieskorn_model(&special_locus_params(&a, &b)).unwrap();
        let place = special_place(&b);
        let mm = minimalize(&m, &place).unwrap();
        assert_eq!(mm.budget(), 1);
        let Place::Finite(l) = &place else { unreachable!() };
        assert_eq!(&(mm.a() * &l.pow(4)), m.a());
        assert_eq!(&(mm.b() * &l.pow(6)), m.b());
        // minimal model: a-hat = a, b-hat = u + 6b/7
        assert_eq!(mm.a(), &UniPoly::constant(a.clone()));
        assert_eq!(mm.b(), &UniPoly::from_coeffs(vec![int(6) * &b / int(7), int(1)]));
        assert_eq!(minimalize(&mm, &place), Err(WeierstrassError::NotNonMinimal));
        let generic = brieskorn_model(&all_ones()).unwrap();
        assert_eq!(minimalize(&generic, &Place::Infinity), Err(WeierstrassError::NotNonMinimal));
    }

    #[test]
    fn j_values() {
        let m = WeierstrassModel::new(UniPoly::constant(int(1)), UniPoly::var(), 1).unwrap();
        assert_eq!(j_invariant(&m, &Place::Finite(UniPoly::var())).unwrap(), JValue::Finite(int(1728)));
        let m = WeierstrassModel::new(UniPoly::zero(), p(&[1, 1]), 1).unwrap();
        assert_eq!(j_invariant(&m, &Place::Finite(p(&[0, 1]))).unwrap(), JValue::Finite(int(0)));
        // a = -3, b = 2 + u: Δ = 27 u (u + 4), one place carrying both I1 fibers
        let m = WeierstrassModel::new(p(&[-3]), p(&[2, 1]), 1).unwrap();
        let reports = fiber_reports(&m).unwrap();
        let r = &reports[0];
        assert_eq!(r.place, Place::Finite(p(&[0, 4, 1])));
        assert_eq!((r.kodaira, r.residual_degree), (KodairaType::I(1), 2));
        assert_eq!(r.j, Some(JValue::Infinity));
        // 3 ord A = ord Δ at infinity: j(∞) = 6912 lc(a)^3 / lc(Δ)
        let m = WeierstrassModel::new(p(&[0, 0, 0, 0, 1]), p(&[0, 0, 0, 0, 0, 0, 1]), 1).unwrap();
        assert_eq!(j_invariant(&m, &Place::Infinity).unwrap(), JValue::Finite(rat(6912, 31)));
    }

    #[test]
    fn residue_j_at_quadratic_place() {
        // a = u, b = 1: Δ = 4u^3 + 27 is squarefree, j = 0 where a vanishes only
        let m = WeierstrassModel::new(p(&[0, 1]), p(&[1]), 1).unwrap();
        let q = p(&[1, 0, 1]);
        let j = j_invariant(&m, &Place::Finite(q.clone())).unwrap();
        // 6912 u^3 / (4u^3 + 27) mod u^2 + 1 with u^3 = -u
        let expected = (p(&[0, -6912]) * p(&[27, -4]).inverse_mod(&q).unwrap()).rem(&q).unwrap();
        assert_eq!(j, JValue::Residue(expected));
    }

    #[test]
    fn surface_types() {
        let r = classify_surface(&special_locus_params(&int(0), &int(1))).unwrap();
        assert_eq!(r.surface_type, SurfaceType::II);
        assert_eq!(r.j, Some(JValue::Finite(int(0))));
        assert_eq!(r.euler_sum, 12);
        assert_eq!(r.k3_delta_sum, 24);
        let fibers = r.rational_fibers.unwrap();
        let kinds: Vec<_> = fibers.iter().map(|f| (f.kodaira, f.residual_degree)).collect();
        assert_eq!(kinds, vec![(KodairaType::II, 1), (KodairaType::IIStar, 1)]);
        assert_eq!(fibers[0].place, Place::Finite(p(&[0, 1]) + UniPoly::constant(rat(6, 7))));

        let r = classify_surface(&special_locus_params(&int(1), &int(0))).unwrap();
        assert_eq!(r.surface_type, SurfaceType::II);
        assert_eq!(r.j, Some(JValue::Finite(int(1728))));
        let kinds: Vec<_> = r
            .rational_fibers
            .unwrap()
            .iter()
            .map(|f| (f.kodaira, f.residual_degree))
            .collect();
        assert_eq!(kinds, vec![(KodairaType::I(1), 2), (KodairaType::IIStar, 1)]);

        let r = classify_surface(&special_locus_params(&int(-3), &int(2))).unwrap();
        assert_eq!(r.surface_type, SurfaceType::III);
        assert_eq!(r.j, Some(JValue::Infinity));
        assert_eq!(r.euler_sum, 12);

        let r = classify_surface(&all_ones()).unwrap();
        assert_eq!(r.surface_type, SurfaceType::I);
        assert_eq!(r.euler_sum, 24);
    }

    #[test]
    fn keys_and_get() {
        let t = all_ones();
        assert_eq!(t.get(28), Some(&int(1)));
        assert_eq!(t.get(5), None);
        assert_eq!(BRIESKORN_KEYS.len(), t.values().len());
    }
}

//! Exact computations for stable surfaces with small volume: cyclic quotient
//! singularities and their Riemann–Roch corrections, plurigenera and Hilbert
//! series, intersection numbers on resolutions, lattice checks, and Kodaira
//! fibers of Weierstrass fibrations.
//!
//! Everything is exact. Rationals are arbitrary precision and no floating
//! point value appears anywhere.

pub mod exact_algebra;
pub mod intersection_calc;
pub mod linalg;
pub mod quotient_sing;
pub mod riemann_roch;
pub mod weierstrass;

pub use exact_algebra::{AlgebraError, Order, PowerSeries, Rational, UniPoly, WeightedBiPoly};
pub use intersection_calc::{CurveConfig, IntersectionError, QDivisor};
pub use quotient_sing::{CyclicQuotient, HJChain, SingularityError, SingularityIncidence};
pub use riemann_roch::{PlurigeneraTable, RRMode, RiemannRochError, SingularityDatum, SurfaceRRData};
pub use weierstrass::{
    BrieskornParams, FiberReport, JValue, KodairaType, Place, SurfaceReport, SurfaceType, WeierstrassError,
    WeierstrassModel,
};

/// Any error raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Singularity(#[from] SingularityError),
    #[error(transparent)]
    Intersection(#[from] IntersectionError),
    #[error(transparent)]
    RiemannRoch(#[from] RiemannRochError),
    #[error(transparent)]
    Weierstrass(#[from] WeierstrassError),
}

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Float, Num, ToPrimitive};

use crate::judgment::Judgment;

/// Arithmetic the column-normalization and synthesis paths need: a field
/// with an ordering, plus conversion from judgments and counts.
pub trait Scalar: Num + Clone + PartialOrd + Debug + Send + Sync + 'static {
    /// Relative rounding error of one operation; zero for exact types.
    const ROUNDOFF: f64;

    fn from_judgment(j: Judgment) -> Self;
    fn from_count(n: usize) -> Self;
    fn as_f64(&self) -> f64;
}

/// Scalars with transcendental functions, required by the eigenvector,
/// consistency and sensitivity paths.
pub trait RealScalar: Scalar + Float {
    fn from_f64(v: f64) -> Self;
}

impl Scalar for f64 {
    const ROUNDOFF: f64 = f64::EPSILON;

    fn from_judgment(j: Judgment) -> Self {
        j.numer() as f64 / j.denom() as f64
    }
    fn from_count(n: usize) -> Self {
        n as f64
    }
    fn as_f64(&self) -> f64 {
        *self
    }
}

impl RealScalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
}

impl Scalar for f32 {
    const ROUNDOFF: f64 = f32::EPSILON as f64;

    fn from_judgment(j: Judgment) -> Self {
        j.numer() as f32 / j.denom() as f32
    }
    fn from_count(n: usize) -> Self {
        n as f32
    }
    fn as_f64(&self) -> f64 {
        *self as f64
    }
}

impl RealScalar for f32 {
    fn from_f64(v: f64) -> Self {
        v as f32
    }
}

impl Scalar for BigRational {
    const ROUNDOFF: f64 = 0.0;

    fn from_judgment(j: Judgment) -> Self {
        Ratio::new(BigInt::from(j.numer()), BigInt::from(j.denom()))
    }
    fn from_count(n: usize) -> Self {
        Ratio::from_integer(BigInt::from(n))
    }
    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for Ratio<i64> {
    const ROUNDOFF: f64 = 0.0;

    fn from_judgment(j: Judgment) -> Self {
        Ratio::new(j.numer() as i64, j.denom() as i64)
    }
    fn from_count(n: usize) -> Self {
        Ratio::from_integer(n as i64)
    }
    fn as_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// Tolerance for "sums to one" checks over `n` terms: `base`, widened for
/// low-precision scalars.
pub(crate) fn sum_tolerance<T: Scalar>(base: f64, n: usize) -> f64 {
    base.max(T::ROUNDOFF * 16.0 * n as f64)
}

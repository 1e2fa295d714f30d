use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::PairwiseMatrix;
use crate::priority::{lambda_max_raw, SquareMatrix};
use crate::scalar::RealScalar;

/// Saaty's random consistency index for dimensions 1..=15.
pub const RANDOM_INDEX: [f64; 15] = [
    0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49, 1.51, 1.48, 1.56, 1.57, 1.59,
];

/// Judgments with a consistency ratio at or below this are accepted.
pub const CR_THRESHOLD: f64 = 0.10;

pub fn random_index(n: usize) -> Option<f64> {
    n.checked_sub(1).and_then(|k| RANDOM_INDEX.get(k)).copied()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Inconsistent,
    UndefinedForDimension,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport<T> {
    pub dimension: usize,
    pub lambda_max: T,
    pub ci: T,
    pub cr: T,
    pub random_index: T,
    pub verdict: Verdict,
}

impl<T: RealScalar> ConsistencyReport<T> {
    pub fn is_consistent(&self) -> bool {
        self.verdict == Verdict::Consistent
    }

    /// Report for a matrix too large for the random index table: λmax and CI
    /// are filled in, CR and RI are NaN.
    fn undefined(dimension: usize, lambda_max: T, ci: T) -> Self {
        Self {
            dimension,
            lambda_max,
            ci,
            cr: T::nan(),
            random_index: T::nan(),
            verdict: Verdict::UndefinedForDimension,
        }
    }
}

fn lambda_and_ci<T: RealScalar>(a: &SquareMatrix<T>) -> Result<(T, T)> {
    let n = a.dim();
    let w = a.row_average_priorities();
    let lambda = lambda_max_raw(a, &w)?;
    let nt = T::from_count(n);
    Ok((lambda, (lambda - nt) / (nt - T::one())))
}

/// Consistency index and ratio of a judgment matrix.
///
/// λmax is estimated from the column-normalization priorities, so the
/// report agrees with the weights the model actually uses. Matrices of
/// dimension 2 are always consistent and report `ci = cr = 0`.
pub fn consistency<T: RealScalar>(m: &PairwiseMatrix) -> Result<ConsistencyReport<T>> {
    consistency_of(&m.to_real::<T>())
}

/// [`consistency`] for any positive reciprocal matrix, including ones whose
/// entries are not on the judgment scale.
pub fn consistency_of<T: RealScalar>(a: &SquareMatrix<T>) -> Result<ConsistencyReport<T>> {
    let n = a.dim();
    let ri = random_index(n).ok_or(Error::DimensionUnsupported(n))?;
    if n <= 2 {
        return Ok(ConsistencyReport {
            dimension: n,
            lambda_max: T::from_count(n),
            ci: T::zero(),
            cr: T::zero(),
            random_index: T::from_f64(ri),
            verdict: Verdict::Consistent,
        });
    }
    let (lambda, ci) = lambda_and_ci(a)?;
    let ri_t = T::from_f64(ri);
    let cr = ci / ri_t;
    let verdict = if cr <= T::from_f64(CR_THRESHOLD) {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    };
    Ok(ConsistencyReport {
        dimension: n,
        lambda_max: lambda,
        ci,
        cr,
        random_index: ri_t,
        verdict,
    })
}

/// Like [`consistency`], but degrades to an `UndefinedForDimension` report
/// instead of failing on dimensions beyond the random index table.
pub fn consistency_or_undefined<T: RealScalar>(m: &PairwiseMatrix) -> Result<ConsistencyReport<T>> {
    match consistency(m) {
        Err(Error::DimensionUnsupported(n)) => {
            let (lambda, ci) = lambda_and_ci(&m.to_real::<T>())?;
            Ok(ConsistencyReport::undefined(n, lambda, ci))
        }
        other => other,
    }
}

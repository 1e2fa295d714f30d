//! Priority derivation by column normalization and row averaging, with a
//! power-iteration principal eigenvector as an independent cross-check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::PairwiseMatrix;
use crate::scalar::{sum_tolerance, RealScalar, Scalar};

/// Weights must sum to one within this bound (widened for `f32`).
pub const SUM_TOLERANCE: f64 = 1e-9;
/// Power iteration stops once successive iterates differ by less than this
/// in max-norm (or the scalar's own resolution, if coarser).
pub const POWER_TOLERANCE: f64 = 1e-12;
pub const POWER_MAX_ITERATIONS: usize = 10_000;
/// Weights below this make `lambda_max` undefined.
pub const MIN_WEIGHT: f64 = 1e-12;

/// Dense row-major square matrix over a scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> SquareMatrix<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("rows are not square".into()));
        }
        Ok(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn column_sums(&self) -> Vec<T> {
        (0..self.n)
            .map(|j| (0..self.n).fold(T::zero(), |acc, i| acc + self.get(i, j).clone()))
            .collect()
    }

    /// Each cell divided by its column sum.
    pub fn normalize_columns(&self) -> SquareMatrix<T> {
        let sums = self.column_sums();
        Self::from_fn(self.n, |i, j| self.get(i, j).clone() / sums[j].clone())
    }

    /// Row sums of the column-normalized matrix, divided by the dimension.
    pub fn row_average_priorities(&self) -> Vec<T> {
        let norm = self.normalize_columns();
        let n = T::from_count(self.n);
        (0..self.n)
            .map(|i| (0..self.n).fold(T::zero(), |acc, j| acc + norm.get(i, j).clone()) / n.clone())
            .collect()
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(T::zero(), |acc, j| {
                    acc + self.get(i, j).clone() * x[j].clone()
                })
            })
            .collect()
    }
}

/// Outcome of power iteration.
#[derive(Debug, Clone)]
pub struct PowerIteration<T> {
    pub vector: Vec<T>,
    pub eigenvalue: T,
    pub iterations: usize,
}

impl<T: RealScalar> SquareMatrix<T> {
    /// Principal eigenvector normalized to sum 1, by power iteration from the
    /// uniform vector.
    pub fn principal_eigenvector(
        &self,
        tolerance: f64,
        max_iterations: usize,
    ) -> Result<PowerIteration<T>> {
        let n = self.n;
        let tol = T::from_f64(tolerance.max(T::ROUNDOFF * 64.0));
        let mut x = vec![T::one() / T::from_count(n); n];
        let mut residual = T::infinity();
        for it in 1..=max_iterations {
            let mut y = self.mul_vec(&x);
            let s = y.iter().fold(T::zero(), |a, v| a + *v);
            if !(s > T::zero()) || !s.is_finite() {
                break;
            }
            for v in &mut y {
                *v = *v / s;
            }
            residual = x
                .iter()
                .zip(&y)
                .fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()));
            x = y;
            if residual < tol {
                return Ok(PowerIteration {
                    vector: x,
                    eigenvalue: s,
                    iterations: it,
                });
            }
        }
        Err(Error::NonConvergence {
            iterations: max_iterations,
            residual: residual.as_f64(),
            last: x.iter().map(Scalar::as_f64).collect(),
        })
    }
}

/// Nonnegative weights over labelled elements, summing to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PriorityVector<T> {
    ids: Vec<String>,
    weights: Vec<T>,
}

impl<T: Scalar> PriorityVector<T> {
    pub fn new(ids: Vec<String>, weights: Vec<T>) -> Result<Self> {
        let v = Self::new_unchecked(ids, weights);
        v.check()?;
        Ok(v)
    }

    /// Skips the sum and sign checks. Used to replay externally published
    /// vectors that were rounded or mis-added.
    pub fn new_unchecked(ids: Vec<String>, weights: Vec<T>) -> Self {
        Self { ids, weights }
    }

    /// Uniform weights `1/n`.
    pub fn uniform(ids: Vec<String>) -> Self {
        let n = T::from_count(ids.len());
        let weights = vec![T::one() / n; ids.len()];
        Self { ids, weights }
    }

    fn check(&self) -> Result<()> {
        if self.ids.len() != self.weights.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} ids for {} weights",
                self.ids.len(),
                self.weights.len()
            )));
        }
        if let Some(k) = self.weights.iter().position(|w| !(*w >= T::zero())) {
            return Err(Error::InvalidWeights(format!(
                "weight {k} is {:?}",
                self.weights[k]
            )));
        }
        let sum = self.sum();
        if (sum.as_f64() - 1.0).abs() > sum_tolerance::<T>(SUM_TOLERANCE, self.weights.len()) {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {}",
                sum.as_f64()
            )));
        }
        Ok(())
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&T> {
        self.ids
            .iter()
            .position(|x| x == id)
            .map(|k| &self.weights[k])
    }

    pub fn sum(&self) -> T {
        self.weights.iter().fold(T::zero(), |a, w| a + w.clone())
    }

    /// True when the weights sum to one within [`SUM_TOLERANCE`].
    pub fn is_normalized(&self) -> bool {
        self.check().is_ok()
    }

    /// Index of the largest weight; the earliest wins exact ties.
    pub fn argmax(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, w) in self.weights.iter().enumerate() {
            if best.is_none_or(|b| *w > self.weights[b]) {
                best = Some(k);
            }
        }
        best
    }

    pub fn to_f64(&self) -> PriorityVector<f64> {
        PriorityVector {
            ids: self.ids.clone(),
            weights: self.weights.iter().map(Scalar::as_f64).collect(),
        }
    }

    /// Largest componentwise difference, compared in `f64`.
    pub fn max_abs_diff(&self, other: &PriorityVector<T>) -> f64 {
        self.weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| (a.as_f64() - b.as_f64()).abs())
            .fold(0.0, f64::max)
    }
}

/// Column sums of the judgment matrix.
pub fn column_sums<T: Scalar>(m: &PairwiseMatrix) -> Vec<T> {
    m.to_real::<T>().column_sums()
}

/// Judgments as fractions of their column sums.
pub fn normalize_columns<T: Scalar>(m: &PairwiseMatrix) -> SquareMatrix<T> {
    m.to_real::<T>().normalize_columns()
}

/// Priority vector by column normalization and row averaging. This is the
/// method of record for every matrix in a model.
pub fn derive_priorities<T: Scalar>(m: &PairwiseMatrix) -> PriorityVector<T> {
    let weights = m.to_real::<T>().row_average_priorities();
    let v = PriorityVector::new_unchecked(m.ids().to_vec(), weights);
    // every column of the normalized matrix sums to one, so the row averages do too
    assert!(
        v.check().is_ok(),
        "column-normalized priorities do not sum to one: {:?}",
        v.sum()
    );
    v
}

/// Normalized principal eigenvector, for cross-checking [`derive_priorities`].
pub fn eigen_priorities<T: RealScalar>(m: &PairwiseMatrix) -> Result<PriorityVector<T>> {
    let p = m
        .to_real::<T>()
        .principal_eigenvector(POWER_TOLERANCE, POWER_MAX_ITERATIONS)?;
    PriorityVector::new(m.ids().to_vec(), p.vector)
}

/// Principal-eigenvalue estimate `(1/n) Σ (A w)_i / w_i`.
pub fn lambda_max<T: RealScalar>(m: &PairwiseMatrix, w: &PriorityVector<T>) -> Result<T> {
    lambda_max_raw(&m.to_real::<T>(), w.weights())
}

pub fn lambda_max_raw<T: RealScalar>(a: &SquareMatrix<T>, w: &[T]) -> Result<T> {
    let n = a.dim();
    if w.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for a {n}x{n} matrix",
            w.len()
        )));
    }
    if let Some(index) = w.iter().position(|x| !(*x >= T::from_f64(MIN_WEIGHT))) {
        return Err(Error::ZeroWeight {
            index,
            weight: w[index].as_f64(),
        });
    }
    let aw = a.mul_vec(w);
    let total = aw
        .iter()
        .zip(w)
        .fold(T::zero(), |acc, (x, y)| acc + *x / *y);
    Ok(total / T::from_count(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::judgment::Judgment;
    use crate::matrix::build_matrix;
    use crate::BigRational;
    use num_traits::One;
    use proptest::prelude::*;

    fn alt_matrix(ab: (u32, u32), ac: (u32, u32), bc: (u32, u32)) -> PairwiseMatrix {
        let j = |(p, q)| Judgment::new(p, q).unwrap();
        build_matrix(
            vec!["SAAS".into(), "PAAS".into(), "IAAS".into()],
            &[(0, 1, j(ab)), (0, 2, j(ac)), (1, 2, j(bc))],
        )
        .unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn functionality_column_sums_and_normalization() {
        let m = alt_matrix((5, 1), (7, 1), (1, 1));
        assert!(close(&column_sums::<f64>(&m), &[1.343, 7.0, 9.0], 1e-3));
        let norm = normalize_columns::<f64>(&m);
        assert!((norm.get(0, 0) - 0.745).abs() < 1e-3);
        for j in 0..3 {
            let s: f64 = (0..3).map(|i| norm.get(i, j)).sum();
            assert!((s - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn architecture_normalized_cell() {
        let m = alt_matrix((1, 3), (1, 3), (1, 3));
        assert!((normalize_columns::<f64>(&m).get(2, 1) - 0.692).abs() < 1e-3);
    }

    #[test]
    fn indifference_matrix() {
        let ids: Vec<String> = (0..5).map(|k| k.to_string()).collect();
        let m = PairwiseMatrix::uniform(ids).unwrap();
        assert_eq!(column_sums::<f64>(&m), vec![5.0; 5]);
        let norm = normalize_columns::<f64>(&m);
        assert!((0..5).all(|i| (0..5).all(|j| (norm.get(i, j) - 0.2).abs() < 1e-15)));
        let p = eigen_priorities::<f64>(&m).unwrap();
        assert!(close(p.weights(), &[0.2; 5], 1e-12));
    }

    #[test]
    fn usability_priorities() {
        let m = alt_matrix((5, 1), (7, 1), (3, 1));
        let p = derive_priorities::<f64>(&m);
        assert!(close(p.weights(), &[0.724, 0.193, 0.083], 5e-3));
    }

    #[test]
    fn exact_priorities_sum_to_exactly_one() {
        let m = alt_matrix((5, 1), (7, 1), (1, 1));
        let p = derive_priorities::<BigRational>(&m);
        assert!(p.sum().is_one());
        // row sums over 3, not over the mis-added column total
        let f = p.to_f64();
        assert!(close(f.weights(), &[0.746, 0.134, 0.120], 5e-3));
    }

    #[test]
    fn two_by_two_eigenvector() {
        let m = build_matrix(
            vec!["A".into(), "B".into()],
            &[(0, 1, Judgment::intensity(3).unwrap())],
        )
        .unwrap();
        let p = eigen_priorities::<f64>(&m).unwrap();
        assert!(close(p.weights(), &[0.75, 0.25], 1e-12));
        let l = lambda_max(&m, &p).unwrap();
        assert!((l - 2.0).abs() < 1e-9);
    }

    #[test]
    fn lambda_rejects_zero_weight() {
        let m = PairwiseMatrix::uniform(vec!["A".into(), "B".into()]).unwrap();
        let w = PriorityVector::new_unchecked(vec!["A".into(), "B".into()], vec![1.0, 0.0]);
        assert!(matches!(
            lambda_max(&m, &w),
            Err(Error::ZeroWeight { index: 1, .. })
        ));
    }

    #[test]
    fn non_convergence_reports_last_iterate() {
        // with no iterations allowed the uniform start comes back unchanged
        let a = SquareMatrix::<f64>::from_rows(vec![vec![1.0, 2.0], vec![0.5, 1.0]]).unwrap();
        match a.principal_eigenvector(1e-12, 0) {
            Err(Error::NonConvergence { last, .. }) => assert_eq!(last, vec![0.5, 0.5]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn priority_vector_checks() {
        let ids = vec!["a".to_string(), "b".to_string()];
        assert!(PriorityVector::new(ids.clone(), vec![0.5, 0.5]).is_ok());
        assert!(PriorityVector::new(ids.clone(), vec![0.6, 0.5]).is_err());
        assert!(PriorityVector::new(ids.clone(), vec![1.5, -0.5]).is_err());
        assert!(PriorityVector::new(ids.clone(), vec![f64::NAN, 1.0]).is_err());
        assert!(PriorityVector::new(ids, vec![1.0]).is_err());
    }

    #[test]
    fn f32_path_agrees_with_f64() {
        let m = alt_matrix((5, 1), (3, 1), (1, 1));
        let a = derive_priorities::<f32>(&m).to_f64();
        let b = derive_priorities::<f64>(&m);
        assert!(a.max_abs_diff(&b) < 1e-6);
        let e = eigen_priorities::<f32>(&m).unwrap().to_f64();
        assert!(e.max_abs_diff(&eigen_priorities::<f64>(&m).unwrap()) < 1e-5);
    }

    fn consistent(w: &[f64]) -> SquareMatrix<f64> {
        SquareMatrix::from_fn(w.len(), |i, j| w[i] / w[j])
    }

    fn random_reciprocal() -> impl Strategy<Value = PairwiseMatrix> {
        let scale: Vec<Judgment> = Judgment::scale().collect();
        (2usize..9).prop_flat_map(move |n| {
            let k = n * (n - 1) / 2;
            proptest::collection::vec(proptest::sample::select(scale.clone()), k).prop_map(
                move |vals| {
                    let mut it = vals.into_iter();
                    let upper: Vec<_> = (0..n)
                        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                        .map(|(i, j)| (i, j, it.next().unwrap()))
                        .collect();
                    build_matrix((0..n).map(|k| format!("e{k}")).collect(), &upper).unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn consistent_matrices_recover_weights(w in proptest::collection::vec(0.01f64..10.0, 2..12)) {
            let a = consistent(&w);
            let total: f64 = w.iter().sum();
            let expect: Vec<f64> = w.iter().map(|x| x / total).collect();
            prop_assert!(close(&a.row_average_priorities(), &expect, 1e-9));
            let e = a.principal_eigenvector(POWER_TOLERANCE, POWER_MAX_ITERATIONS).unwrap();
            prop_assert!(close(&e.vector, &expect, 1e-9));
            let l = lambda_max_raw(&a, &expect).unwrap();
            prop_assert!((l - w.len() as f64).abs() < 1e-9);
        }

        #[test]
        fn both_methods_normalize(m in random_reciprocal()) {
            let d = derive_priorities::<f64>(&m);
            let e = eigen_priorities::<f64>(&m).unwrap();
            for v in [&d, &e] {
                prop_assert!((v.sum() - 1.0).abs() < 1e-9);
                prop_assert!(v.weights().iter().all(|w| *w >= 0.0));
            }
            let n = m.dim() as f64;
            prop_assert!(lambda_max(&m, &d).unwrap() >= n - 1e-6);
            prop_assert!(lambda_max(&m, &e).unwrap() >= n - 1e-6);
        }

        #[test]
        fn permutation_equivariance(m in random_reciprocal(), seed in any::<u64>()) {
            let n = m.dim();
            let mut perm: Vec<usize> = (0..n).collect();
            // Fisher-Yates driven by the seed
            let mut s = seed;
            for k in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(k, (s >> 33) as usize % (k + 1));
            }
            let ids: Vec<String> = perm.iter().map(|&p| m.ids()[p].clone()).collect();
            let rows: Vec<Vec<Judgment>> = perm
                .iter()
                .map(|&p| perm.iter().map(|&q| m.get(p, q)).collect())
                .collect();
            let pm = PairwiseMatrix::from_rows(ids, rows).unwrap();
            let a = derive_priorities::<f64>(&m);
            let b = derive_priorities::<f64>(&pm);
            for (k, &p) in perm.iter().enumerate() {
                prop_assert!((b.weights()[k] - a.weights()[p]).abs() < 1e-12);
                prop_assert_eq!(&b.ids()[k], &a.ids()[p]);
            }
        }

        #[test]
        fn argmax_is_scale_invariant(w in proptest::collection::vec(0.0f64..1.0, 2..10), k in 0.001f64..1000.0) {
            let ids: Vec<String> = (0..w.len()).map(|i| i.to_string()).collect();
            let a = PriorityVector::new_unchecked(ids.clone(), w.clone());
            let scaled: Vec<f64> = w.iter().map(|x| x * k).collect();
            let total: f64 = scaled.iter().sum();
            let renorm: Vec<f64> = scaled.iter().map(|x| if total > 0.0 { x / total } else { *x }).collect();
            let b = PriorityVector::new_unchecked(ids, renorm);
            let (ia, ib) = (a.argmax().unwrap(), b.argmax().unwrap());
            // rounding can only swap exact-tie-adjacent entries
            prop_assert!(ia == ib || (w[ia] - w[ib]).abs() <= 1e-12 * w[ia].max(w[ib]));
        }
    }
}

//! One-at-a-time weight sensitivity: how far a single criterion's weight can
//! move before the winning alternative changes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::RealScalar;
use crate::synthesis::{mix, rank, SynthesisResult};

/// Sweep resolution when scanning outward from the current weight.
pub const SWEEP_STEP: f64 = 1e-4;
/// Bisection stops once the bracketing interval is this narrow.
pub const BISECTION_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossover<T> {
    /// Weight at which the winner changes.
    pub weight: T,
    /// Winner just beyond the crossover.
    pub challenger: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensitivityReport<T> {
    pub criterion: String,
    pub current_weight: T,
    pub winner: String,
    /// Weights of the criterion for which `winner` stays first.
    pub stable_interval: (T, T),
    pub lower_crossover: Option<Crossover<T>>,
    pub upper_crossover: Option<Crossover<T>>,
}

impl<T: RealScalar> SensitivityReport<T> {
    /// The crossover nearest the current weight.
    pub fn first_crossover(&self) -> Option<&Crossover<T>> {
        match (&self.lower_crossover, &self.upper_crossover) {
            (Some(lo), Some(hi)) => {
                if self.current_weight - lo.weight <= hi.weight - self.current_weight {
                    Some(lo)
                } else {
                    Some(hi)
                }
            }
            (lo, hi) => lo.as_ref().or(hi.as_ref()),
        }
    }
}

/// Criteria weights with criterion `c` set to `w` and the others rescaled
/// proportionally to fill `1 - w`. If the others are all zero they share
/// `1 - w` equally.
pub fn reweight<T: RealScalar>(weights: &[T], c: usize, w: T) -> Vec<T> {
    let rest: T = weights
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != c)
        .fold(T::zero(), |a, (_, x)| a + *x);
    let remaining = T::one() - w;
    let others = T::from_count(weights.len() - 1);
    weights
        .iter()
        .enumerate()
        .map(|(k, x)| {
            if k == c {
                w
            } else if rest > T::zero() {
                *x * remaining / rest
            } else {
                remaining / others
            }
        })
        .collect()
}

fn criterion_index<T: RealScalar>(result: &SynthesisResult<T>, criterion: &str) -> Result<usize> {
    result
        .criteria_weights
        .ids()
        .iter()
        .position(|c| c == criterion)
        .ok_or_else(|| Error::UnknownCriterion(criterion.to_string()))
}

/// Alternative scores with `criterion`'s weight set to `weight`.
pub fn scores_at_weight<T: RealScalar>(
    result: &SynthesisResult<T>,
    criterion: &str,
    weight: T,
) -> Result<Vec<T>> {
    let c = criterion_index(result, criterion)?;
    if !(weight >= T::zero() && weight <= T::one()) {
        return Err(Error::InvalidWeights(format!(
            "weight {} is outside [0, 1]",
            weight.as_f64()
        )));
    }
    let w = reweight(result.criteria_weights.weights(), c, weight);
    Ok(mix(&w, &result.per_criterion_scores))
}

struct Sweep<'a, T> {
    result: &'a SynthesisResult<T>,
    c: usize,
}

impl<T: RealScalar> Sweep<'_, T> {
    fn winner_at(&self, w: T) -> String {
        let weights = reweight(self.result.criteria_weights.weights(), self.c, w);
        let scores = mix(&weights, &self.result.per_criterion_scores);
        rank(&self.result.alternative_ids, &scores)
            .swap_remove(0)
            .id
    }

    /// Scans from `start` toward `end` in `SWEEP_STEP` increments and bisects
    /// the first bracket where the winner differs from `winner`.
    fn scan(&self, winner: &str, start: T, end: T) -> Option<Crossover<T>> {
        let step = T::from_f64(SWEEP_STEP);
        let span = (end - start).abs();
        let steps = (span / step).ceil().to_usize().unwrap_or(0);
        let dir = if end >= start { T::one() } else { -T::one() };
        let mut prev = start;
        for k in 1..=steps {
            let mut w = start + dir * step * T::from_count(k);
            if (w - start).abs() > span {
                w = end;
            }
            let challenger = self.winner_at(w);
            if challenger != winner {
                return Some(self.bisect(winner, prev, w));
            }
            prev = w;
        }
        None
    }

    fn bisect(&self, winner: &str, mut same: T, mut differ: T) -> Crossover<T> {
        let tol = T::from_f64(BISECTION_TOLERANCE);
        let two = T::one() + T::one();
        while (differ - same).abs() > tol {
            let mid = (same + differ) / two;
            if mid == same || mid == differ {
                break;
            }
            if self.winner_at(mid) == winner {
                same = mid;
            } else {
                differ = mid;
            }
        }
        Crossover {
            weight: (same + differ) / two,
            challenger: self.winner_at(differ),
        }
    }
}

/// Sweeps one criterion's weight over `[0, 1]`, rescaling the others, and
/// reports where the current winner stays first.
pub fn weight_sensitivity<T: RealScalar>(
    result: &SynthesisResult<T>,
    criterion: &str,
) -> Result<SensitivityReport<T>> {
    let c = criterion_index(result, criterion)?;
    let current = result.criteria_weights.weights()[c];
    let sweep = Sweep { result, c };
    let winner = sweep.winner_at(current);
    let upper = sweep.scan(&winner, current, T::one());
    let lower = sweep.scan(&winner, current, T::zero());
    let stable_interval = (
        lower.as_ref().map_or(T::zero(), |x| x.weight),
        upper.as_ref().map_or(T::one(), |x| x.weight),
    );
    Ok(SensitivityReport {
        criterion: criterion.to_string(),
        current_weight: current,
        winner,
        stable_interval,
        lower_crossover: lower,
        upper_crossover: upper,
    })
}

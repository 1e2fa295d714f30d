use std::cmp::Ordering;

use serde::Serialize;

use crate::consistency::ConsistencyReport;
use crate::error::{Error, Result};
use crate::priority::PriorityVector;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedAlternative<T> {
    pub id: String,
    pub score: T,
    /// 1-based position after tie-breaking.
    pub rank: usize,
    /// Another alternative has exactly the same score.
    pub tied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixConsistency<T> {
    pub matrix: String,
    pub report: ConsistencyReport<T>,
}

/// Final scores of a model and everything they were computed from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SynthesisResult<T> {
    pub alternative_ids: Vec<String>,
    pub scores: Vec<T>,
    pub ranking: Vec<RankedAlternative<T>>,
    pub criteria_weights: PriorityVector<T>,
    /// `per_criterion_scores[a][c]`: priority of alternative `a` under criterion `c`.
    pub per_criterion_scores: Vec<Vec<T>>,
    /// Per-matrix diagnostics; empty when produced by bare [`synthesize`].
    pub consistency: Vec<MatrixConsistency<T>>,
}

impl<T: Scalar> SynthesisResult<T> {
    pub fn winner(&self) -> &str {
        &self.ranking[0].id
    }

    pub fn score(&self, id: &str) -> Option<&T> {
        self.alternative_ids
            .iter()
            .position(|a| a == id)
            .map(|k| &self.scores[k])
    }

    pub fn with_consistency(mut self, consistency: Vec<MatrixConsistency<T>>) -> Self {
        self.consistency = consistency;
        self
    }

    /// Alternative priority vector for criterion `c`.
    pub fn criterion_column(&self, c: usize) -> Vec<T> {
        self.per_criterion_scores
            .iter()
            .map(|row| row[c].clone())
            .collect()
    }
}

/// Mixes per-criterion alternative priorities by the criteria weights:
/// `score[a] = Σ_c weight[c] · priority[c][a]`.
///
/// `alternative_priorities` holds one vector per criterion, in the order of
/// `criteria_weights`.
pub fn synthesize<T: Scalar>(
    criteria_weights: &PriorityVector<T>,
    alternative_priorities: &[PriorityVector<T>],
) -> Result<SynthesisResult<T>> {
    let n = criteria_weights.len();
    if n < 2 {
        return Err(Error::DimensionMismatch(format!(
            "{n} criteria; need at least 2"
        )));
    }
    if alternative_priorities.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} alternative vectors for {n} criteria",
            alternative_priorities.len()
        )));
    }
    let alt_ids = alternative_priorities[0].ids().to_vec();
    let m = alt_ids.len();
    if m < 2 {
        return Err(Error::DimensionMismatch(format!(
            "{m} alternatives; need at least 2"
        )));
    }
    for (c, v) in criteria_weights.ids().iter().zip(alternative_priorities) {
        if v.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "vector for {c:?} has {} entries, expected {m}",
                v.len()
            )));
        }
        if v.ids() != alt_ids.as_slice() {
            return Err(Error::IdMismatch(format!(
                "vector for {c:?} is over {:?}, expected {:?}",
                v.ids(),
                alt_ids
            )));
        }
    }
    let per_criterion_scores: Vec<Vec<T>> = (0..m)
        .map(|a| {
            alternative_priorities
                .iter()
                .map(|v| v.weights()[a].clone())
                .collect()
        })
        .collect();
    let scores = mix(criteria_weights.weights(), &per_criterion_scores);
    let ranking = rank(&alt_ids, &scores);
    Ok(SynthesisResult {
        alternative_ids: alt_ids,
        scores,
        ranking,
        criteria_weights: criteria_weights.clone(),
        per_criterion_scores,
        consistency: Vec::new(),
    })
}

pub(crate) fn mix<T: Scalar>(weights: &[T], per_criterion: &[Vec<T>]) -> Vec<T> {
    per_criterion
        .iter()
        .map(|row| {
            weights
                .iter()
                .zip(row)
                .fold(T::zero(), |acc, (w, p)| acc + w.clone() * p.clone())
        })
        .collect()
}

/// Orders alternatives by descending score. Exact ties are broken by
/// ascending id and flagged.
pub fn rank<T: Scalar>(ids: &[String], scores: &[T]) -> Vec<RankedAlternative<T>> {
    let mut order: Vec<usize> = (0..ids.len().min(scores.len())).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .unwrap_or(Ordering::Equal)
            .then_with(|| ids[a].cmp(&ids[b]))
    });
    order
        .iter()
        .enumerate()
        .map(|(pos, &k)| RankedAlternative {
            id: ids[k].clone(),
            score: scores[k].clone(),
            rank: pos + 1,
            tied: order.iter().any(|&o| o != k && scores[o] == scores[k]),
        })
        .collect()
}

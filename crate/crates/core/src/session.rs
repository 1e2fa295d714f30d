//! Interactive elicitation: judgments arrive one at a time, and every
//! revision can be evaluated even while matrices are still incomplete.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::consistency::{consistency_or_undefined, ConsistencyReport};
use crate::error::{Error, Result};
use crate::hierarchy::{DecisionModel, Hierarchy, CRITERIA_MATRIX};
use crate::judgment::Judgment;
use crate::matrix::PairwiseMatrix;
use crate::priority::{derive_priorities, PriorityVector};
use crate::scalar::RealScalar;
use crate::synthesis::{synthesize, MatrixConsistency, SynthesisResult};

/// Which matrix of a model a judgment belongs to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MatrixId {
    Criteria,
    /// Alternatives compared under the named criterion.
    Alternatives(String),
}

impl MatrixId {
    pub fn parse(key: &str) -> Self {
        if key == CRITERIA_MATRIX {
            MatrixId::Criteria
        } else {
            MatrixId::Alternatives(key.to_string())
        }
    }

    pub fn key(&self) -> &str {
        match self {
            MatrixId::Criteria => CRITERIA_MATRIX,
            MatrixId::Alternatives(c) => c,
        }
    }
}

impl fmt::Display for MatrixId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl From<&str> for MatrixId {
    fn from(key: &str) -> Self {
        Self::parse(key)
    }
}

/// A model under construction. Pending pairs read as 1 in the matrices
/// until a judgment is entered.
#[derive(Debug, Clone, PartialEq)]
pub struct ElicitationSession {
    model: DecisionModel,
    entered: BTreeSet<(MatrixId, usize, usize)>,
    revision: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixEvaluation<T> {
    pub matrix: String,
    pub ids: Vec<String>,
    pub cells: Vec<Vec<Judgment>>,
    /// Fraction of upper-triangle judgments entered.
    pub completeness: f64,
    pub pending: Vec<(String, String)>,
    pub priorities: Option<PriorityVector<T>>,
    pub consistency: Option<ConsistencyReport<T>>,
}

impl<T> MatrixEvaluation<T> {
    pub fn is_complete(&self) -> bool {
        self.pending.is_empty()
    }
}

/// Everything derived from one session revision.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationSnapshot<T> {
    pub revision: u64,
    pub goal: String,
    pub criteria: MatrixEvaluation<T>,
    /// One per criterion, in criterion order.
    pub alternatives: Vec<MatrixEvaluation<T>>,
    pub entered: usize,
    pub required: usize,
    pub synthesis: Option<SynthesisResult<T>>,
}

impl<T> EvaluationSnapshot<T> {
    pub fn matrices(&self) -> impl Iterator<Item = &MatrixEvaluation<T>> {
        std::iter::once(&self.criteria).chain(&self.alternatives)
    }

    pub fn matrix(&self, key: &str) -> Option<&MatrixEvaluation<T>> {
        self.matrices().find(|m| m.matrix == key)
    }

    pub fn is_complete(&self) -> bool {
        self.entered == self.required
    }
}

impl ElicitationSession {
    /// Empty session: every matrix is the indifference matrix and every pair
    /// is pending.
    pub fn new(hierarchy: Hierarchy) -> Result<Self> {
        Ok(Self {
            model: DecisionModel::uniform(hierarchy)?,
            entered: BTreeSet::new(),
            revision: 0,
        })
    }

    /// Session with every judgment of `model` already entered.
    pub fn from_model(model: DecisionModel) -> Self {
        let mut entered = BTreeSet::new();
        for (key, m) in model.matrices() {
            for (i, j, _) in m.upper() {
                entered.insert((MatrixId::parse(key), i, j));
            }
        }
        Self {
            model,
            entered,
            revision: 0,
        }
    }

    pub fn revision(&self) -> u64 {
        self.revision
    }

    pub fn hierarchy(&self) -> &Hierarchy {
        self.model.hierarchy()
    }

    /// Current matrices; pending cells read as 1.
    pub fn model(&self) -> &DecisionModel {
        &self.model
    }

    pub fn entered(&self) -> &BTreeSet<(MatrixId, usize, usize)> {
        &self.entered
    }

    pub fn is_entered(&self, matrix: &MatrixId, i: usize, j: usize) -> bool {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.entered.contains(&(matrix.clone(), a, b))
    }

    pub fn required_judgments(&self) -> usize {
        self.model.hierarchy().required_judgments()
    }

    pub fn is_complete(&self) -> bool {
        self.entered.len() == self.required_judgments()
    }

    /// The finished model, once every judgment is entered.
    pub fn complete_model(&self) -> Option<&DecisionModel> {
        self.is_complete().then_some(&self.model)
    }

    pub fn matrix(&self, id: &MatrixId) -> Result<&PairwiseMatrix> {
        self.model
            .matrix(id.key())
            .ok_or_else(|| Error::UnknownMatrix(id.key().to_string()))
    }

    /// Records `a_ij = v`. A call with `i > j` is stored as `a_ji = 1/v`.
    /// Re-entering a pair overwrites it. Returns the new revision.
    pub fn set_judgment(
        &mut self,
        matrix: &MatrixId,
        i: usize,
        j: usize,
        v: Judgment,
    ) -> Result<u64> {
        let m = self
            .model
            .matrix_mut(matrix.key())
            .ok_or_else(|| Error::UnknownMatrix(matrix.key().to_string()))?;
        let (a, b, v) = if i < j {
            (i, j, v)
        } else {
            (j, i, v.reciprocal())
        };
        m.set(a, b, v)?;
        self.entered.insert((matrix.clone(), a, b));
        self.revision += 1;
        Ok(self.revision)
    }

    /// [`Self::set_judgment`] addressed by element ids.
    pub fn set_judgment_by_id(
        &mut self,
        matrix: &MatrixId,
        a: &str,
        b: &str,
        v: Judgment,
    ) -> Result<u64> {
        let m = self.matrix(matrix)?;
        let find = |id: &str| {
            m.index_of(id)
                .ok_or_else(|| Error::UnknownElement(id.to_string()))
        };
        let (i, j) = (find(a)?, find(b)?);
        self.set_judgment(matrix, i, j, v)
    }

    /// Replaces model and entries with those of `other`; the revision keeps
    /// counting from this session's.
    pub fn replace_with(&mut self, other: ElicitationSession) -> u64 {
        self.model = other.model;
        self.entered = other.entered;
        self.revision += 1;
        self.revision
    }

    /// Same state at revision 0, for sessions built by replaying a document.
    pub(crate) fn restarted(mut self) -> Self {
        self.revision = 0;
        self
    }

    fn pending(&self, id: &MatrixId, m: &PairwiseMatrix) -> Vec<(usize, usize)> {
        m.upper()
            .map(|(i, j, _)| (i, j))
            .filter(|&(i, j)| !self.entered.contains(&(id.clone(), i, j)))
            .collect()
    }

    fn evaluate_matrix<T: RealScalar>(&self, key: &str, m: &PairwiseMatrix) -> MatrixEvaluation<T> {
        let id = MatrixId::parse(key);
        let pending = self.pending(&id, m);
        let total = m.dim() * (m.dim() - 1) / 2;
        let complete = pending.is_empty();
        MatrixEvaluation {
            matrix: key.to_string(),
            ids: m.ids().to_vec(),
            cells: m.rows().to_vec(),
            completeness: (total - pending.len()) as f64 / total as f64,
            pending: pending
                .into_iter()
                .map(|(i, j)| (m.ids()[i].clone(), m.ids()[j].clone()))
                .collect(),
            priorities: complete.then(|| derive_priorities::<T>(m)),
            consistency: if complete {
                consistency_or_undefined::<T>(m).ok()
            } else {
                None
            },
        }
    }

    /// Priorities and consistency for every complete matrix, plus the
    /// synthesis once all matrices are complete.
    pub fn evaluate<T: RealScalar>(&self) -> EvaluationSnapshot<T> {
        let criteria = self.evaluate_matrix::<T>(CRITERIA_MATRIX, self.model.criteria_matrix());
        let alternatives: Vec<MatrixEvaluation<T>> = self
            .model
            .hierarchy()
            .criteria
            .iter()
            .zip(self.model.alternative_matrices())
            .map(|(c, m)| self.evaluate_matrix::<T>(&c.id, m))
            .collect();
        let synthesis =
            if criteria.is_complete() && alternatives.iter().all(MatrixEvaluation::is_complete) {
                let cw = criteria
                    .priorities
                    .clone()
                    .expect("complete matrix has priorities");
                let ap: Vec<_> = alternatives
                    .iter()
                    .map(|a| {
                        a.priorities
                            .clone()
                            .expect("complete matrix has priorities")
                    })
                    .collect();
                let diagnostics = std::iter::once(&criteria)
                    .chain(&alternatives)
                    .filter_map(|e| {
                        e.consistency.clone().map(|report| MatrixConsistency {
                            matrix: e.matrix.clone(),
                            report,
                        })
                    })
                    .collect();
                synthesize(&cw, &ap)
                    .ok()
                    .map(|s| s.with_consistency(diagnostics))
            } else {
                None
            };
        EvaluationSnapshot {
            revision: self.revision,
            goal: self.model.hierarchy().goal.clone(),
            criteria,
            alternatives,
            entered: self.entered.len(),
            required: self.required_judgments(),
            synthesis,
        }
    }

    /// Worst triads of a complete matrix; see [`inconsistency_hotspots`].
    pub fn hotspots(&self, matrix: &MatrixId, k: usize) -> Result<Vec<Triad>> {
        let m = self.matrix(matrix)?;
        if !self.pending(matrix, m).is_empty() {
            return Err(Error::Incomplete(matrix.key().to_string()));
        }
        inconsistency_hotspots(m, k)
    }
}

/// A triple `i < j < l` whose judgments disagree with `a_ij · a_jl = a_il`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Triad {
    pub elements: [String; 3],
    pub indices: [usize; 3],
    /// `|ln a_ij + ln a_jl - ln a_il|`.
    pub deviation: f64,
    /// The cell `(i, j)` the suggestion applies to.
    pub cell: (String, String),
    pub current: Judgment,
    /// `a_il / a_jl`, the value that would make the triad consistent.
    pub consistent_value: f64,
    /// `consistent_value` snapped to the nearest legal judgment.
    pub suggested: Judgment,
}

/// Scores every triad of a matrix by log-space intransitivity and returns
/// the `k` worst, largest deviation first (ties in index order).
pub fn inconsistency_hotspots(m: &PairwiseMatrix, k: usize) -> Result<Vec<Triad>> {
    let n = m.dim();
    if n < 3 {
        return Err(Error::TooSmall(n));
    }
    let ratio = |i: usize, j: usize| -> Ratio<u64> {
        let v = m.get(i, j);
        Ratio::new(v.numer() as u64, v.denom() as u64)
    };
    // exact ordering key: the cycle product folded to be >= 1
    let mut scored: Vec<(Ratio<u64>, [usize; 3])> = Vec::with_capacity(n * (n - 1) * (n - 2) / 6);
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                let r = ratio(i, j) * ratio(j, l) / ratio(i, l);
                let folded = if r < Ratio::from_integer(1) {
                    r.recip()
                } else {
                    r
                };
                scored.push((folded, [i, j, l]));
            }
        }
    }
    scored.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    Ok(scored
        .into_iter()
        .take(k)
        .map(|(r, [i, j, l])| {
            let consistent = ratio(i, l) / ratio(j, l);
            let consistent_value = *consistent.numer() as f64 / *consistent.denom() as f64;
            let ids = m.ids();
            Triad {
                elements: [ids[i].clone(), ids[j].clone(), ids[l].clone()],
                indices: [i, j, l],
                deviation: (*r.numer() as f64).ln() - (*r.denom() as f64).ln(),
                cell: (ids[i].clone(), ids[j].clone()),
                current: m.get(i, j),
                consistent_value,
                suggested: Judgment::nearest(consistent_value),
            }
        })
        .collect())
}

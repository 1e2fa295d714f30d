use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{validate_matrix, PairwiseMatrix};

/// Matrix key reserved for the criteria matrix in sessions and documents.
pub const CRITERIA_MATRIX: &str = "criteria";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Element {
    pub id: String,
    #[serde(default)]
    pub label: String,
}

impl Element {
    pub fn new(id: impl Into<String>, label: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            label: label.into(),
        }
    }
}

/// Three-layer decision hierarchy: a goal, the criteria it is judged by and
/// the alternatives being chosen between.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hierarchy {
    pub goal: String,
    pub criteria: Vec<Element>,
    pub alternatives: Vec<Element>,
}

fn check_layer(layer: &str, elems: &[Element]) -> Result<()> {
    if elems.len() < 2 {
        return Err(Error::InvalidHierarchy(format!(
            "{layer} layer needs at least 2 elements, got {}",
            elems.len()
        )));
    }
    let mut seen = HashSet::new();
    for e in elems {
        if e.id.trim().is_empty() {
            return Err(Error::InvalidHierarchy(format!(
                "{layer} layer has an empty id"
            )));
        }
        if !seen.insert(e.id.as_str()) {
            return Err(Error::InvalidHierarchy(format!(
                "{layer} id {:?} is not unique",
                e.id
            )));
        }
    }
    Ok(())
}

impl Hierarchy {
    pub fn new(
        goal: impl Into<String>,
        criteria: Vec<Element>,
        alternatives: Vec<Element>,
    ) -> Result<Self> {
        let h = Self {
            goal: goal.into(),
            criteria,
            alternatives,
        };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        check_layer("criteria", &self.criteria)?;
        check_layer("alternatives", &self.alternatives)?;
        if self.criteria.iter().any(|c| c.id == CRITERIA_MATRIX) {
            return Err(Error::InvalidHierarchy(format!(
                "criterion id {CRITERIA_MATRIX:?} is reserved"
            )));
        }
        Ok(())
    }

    pub fn criterion_ids(&self) -> Vec<String> {
        self.criteria.iter().map(|e| e.id.clone()).collect()
    }

    pub fn alternative_ids(&self) -> Vec<String> {
        self.alternatives.iter().map(|e| e.id.clone()).collect()
    }

    pub fn criterion_index(&self, id: &str) -> Option<usize> {
        self.criteria.iter().position(|e| e.id == id)
    }

    /// Number of upper-triangle judgments needed to complete every matrix.
    pub fn required_judgments(&self) -> usize {
        let n = self.criteria.len();
        let m = self.alternatives.len();
        n * (n - 1) / 2 + n * m * (m - 1) / 2
    }
}

/// A hierarchy together with every judgment matrix it needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionModel {
    hierarchy: Hierarchy,
    criteria_matrix: PairwiseMatrix,
    /// One per criterion, in criterion order.
    alternative_matrices: Vec<PairwiseMatrix>,
}

impl DecisionModel {
    pub fn new(
        hierarchy: Hierarchy,
        criteria_matrix: PairwiseMatrix,
        alternative_matrices: Vec<PairwiseMatrix>,
    ) -> Result<Self> {
        hierarchy.validate()?;
        let crit = hierarchy.criterion_ids();
        let alts = hierarchy.alternative_ids();
        if criteria_matrix.ids() != crit.as_slice() {
            return Err(Error::IdMismatch(format!(
                "criteria matrix ids {:?} differ from hierarchy criteria {:?}",
                criteria_matrix.ids(),
                crit
            )));
        }
        if alternative_matrices.len() != crit.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} alternative matrices for {} criteria",
                alternative_matrices.len(),
                crit.len()
            )));
        }
        for (c, m) in crit.iter().zip(&alternative_matrices) {
            if m.ids() != alts.as_slice() {
                return Err(Error::IdMismatch(format!(
                    "alternative matrix for {c:?} has ids {:?}, expected {:?}",
                    m.ids(),
                    alts
                )));
            }
        }
        for (key, m) in std::iter::once((CRITERIA_MATRIX, &criteria_matrix))
            .chain(crit.iter().map(String::as_str).zip(&alternative_matrices))
        {
            if let Some(v) = validate_matrix(m).first() {
                return Err(Error::Schema(format!("matrix {key:?}: {}", m.describe(v))));
            }
        }
        Ok(Self {
            hierarchy,
            criteria_matrix,
            alternative_matrices,
        })
    }

    /// Model whose matrices are all indifference matrices.
    pub fn uniform(hierarchy: Hierarchy) -> Result<Self> {
        hierarchy.validate()?;
        let criteria_matrix = PairwiseMatrix::uniform(hierarchy.criterion_ids())?;
        let alts = PairwiseMatrix::uniform(hierarchy.alternative_ids())?;
        let alternative_matrices = vec![alts; hierarchy.criteria.len()];
        Ok(Self {
            hierarchy,
            criteria_matrix,
            alternative_matrices,
        })
    }

    pub fn hierarchy(&self) -> &Hierarchy {
        &self.hierarchy
    }

    pub fn criteria_matrix(&self) -> &PairwiseMatrix {
        &self.criteria_matrix
    }

    pub fn alternative_matrices(&self) -> &[PairwiseMatrix] {
        &self.alternative_matrices
    }

    pub fn alternative_matrix(&self, criterion_id: &str) -> Option<&PairwiseMatrix> {
        self.hierarchy
            .criterion_index(criterion_id)
            .map(|k| &self.alternative_matrices[k])
    }

    /// Matrix by key: [`CRITERIA_MATRIX`] or a criterion id.
    pub fn matrix(&self, key: &str) -> Option<&PairwiseMatrix> {
        if key == CRITERIA_MATRIX {
            Some(&self.criteria_matrix)
        } else {
            self.alternative_matrix(key)
        }
    }

    pub(crate) fn matrix_mut(&mut self, key: &str) -> Option<&mut PairwiseMatrix> {
        if key == CRITERIA_MATRIX {
            Some(&mut self.criteria_matrix)
        } else {
            let k = self.hierarchy.criterion_index(key)?;
            Some(&mut self.alternative_matrices[k])
        }
    }

    /// `(key, matrix)` for the criteria matrix followed by each alternative matrix.
    pub fn matrices(&self) -> impl Iterator<Item = (&str, &PairwiseMatrix)> {
        std::iter::once((CRITERIA_MATRIX, &self.criteria_matrix)).chain(
            self.hierarchy
                .criteria
                .iter()
                .map(|c| c.id.as_str())
                .zip(&self.alternative_matrices),
        )
    }
}

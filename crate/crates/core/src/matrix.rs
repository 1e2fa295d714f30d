use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::judgment::Judgment;
use crate::priority::SquareMatrix;
use crate::scalar::Scalar;

/// Square reciprocal matrix of judgments over a labelled set of elements
/// (criteria or alternatives).
///
/// Values built through [`build_matrix`], [`PairwiseMatrix::uniform`] or
/// [`PairwiseMatrix::with_judgment`] always satisfy the matrix invariants;
/// [`PairwiseMatrix::from_rows_unchecked`] exists for diagnostics and can
/// produce matrices that [`validate_matrix`] will flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairwiseMatrix {
    ids: Vec<String>,
    cells: Vec<Vec<Judgment>>,
}

/// A broken matrix invariant, located by cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Violation {
    Diagonal { index: usize },
    Reciprocity { i: usize, j: usize },
    Shape { row: usize, len: usize },
    TooSmall { n: usize },
    EmptyId { index: usize },
    DuplicateId { id: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Diagonal { index } => write!(f, "cell ({index}, {index}) must be 1"),
            Violation::Reciprocity { i, j } => {
                write!(f, "cells ({i}, {j}) and ({j}, {i}) are not reciprocal")
            }
            Violation::Shape { row, len } => write!(f, "row {row} has {len} cells"),
            Violation::TooSmall { n } => write!(f, "dimension {n} is below 2"),
            Violation::EmptyId { index } => write!(f, "element {index} has an empty id"),
            Violation::DuplicateId { id } => write!(f, "id {id:?} appears more than once"),
        }
    }
}

pub(crate) fn check_ids(ids: &[String]) -> Result<()> {
    if ids.len() < 2 {
        return Err(Error::InvalidIds(format!(
            "need at least 2 elements, got {}",
            ids.len()
        )));
    }
    let mut seen = HashSet::new();
    for id in ids {
        if id.trim().is_empty() {
            return Err(Error::InvalidIds("empty id".into()));
        }
        if !seen.insert(id.as_str()) {
            return Err(Error::InvalidIds(format!("duplicate id {id:?}")));
        }
    }
    Ok(())
}

impl PairwiseMatrix {
    /// The indifference matrix: every cell 1.
    pub fn uniform(ids: Vec<String>) -> Result<Self> {
        check_ids(&ids)?;
        let n = ids.len();
        Ok(Self {
            ids,
            cells: vec![vec![Judgment::ONE; n]; n],
        })
    }

    /// Wraps raw rows without checking any invariant.
    pub fn from_rows_unchecked(ids: Vec<String>, cells: Vec<Vec<Judgment>>) -> Self {
        Self { ids, cells }
    }

    /// Wraps raw rows, rejecting them unless [`validate_matrix`] is clean.
    pub fn from_rows(ids: Vec<String>, cells: Vec<Vec<Judgment>>) -> Result<Self> {
        let m = Self { ids, cells };
        match validate_matrix(&m).first() {
            None => Ok(m),
            Some(v) => Err(Error::Schema(m.describe(v))),
        }
    }

    pub fn dim(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn get(&self, i: usize, j: usize) -> Judgment {
        self.cells[i][j]
    }

    pub fn rows(&self) -> &[Vec<Judgment>] {
        &self.cells
    }

    /// Upper-triangle entries `(i, j, a_ij)` with `i < j`, row by row.
    pub fn upper(&self) -> impl Iterator<Item = (usize, usize, Judgment)> + '_ {
        let n = self.dim();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j, self.cells[i][j])))
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        let n = self.dim();
        for index in [i, j] {
            if index >= n {
                return Err(Error::BadIndex {
                    index,
                    dimension: n,
                });
            }
        }
        if i == j {
            return Err(Error::BadIndex {
                index: i,
                dimension: n,
            });
        }
        Ok(())
    }

    /// Sets `a_ij = v` and `a_ji = 1/v`.
    pub(crate) fn set(&mut self, i: usize, j: usize, v: Judgment) -> Result<()> {
        self.check_pair(i, j)?;
        self.cells[i][j] = v;
        self.cells[j][i] = v.reciprocal();
        Ok(())
    }

    /// Copy of this matrix with `a_ij = v` (and the reciprocal cell updated).
    pub fn with_judgment(&self, i: usize, j: usize, v: Judgment) -> Result<Self> {
        let mut m = self.clone();
        m.set(i, j, v)?;
        Ok(m)
    }

    /// Real-valued copy of the cells.
    pub fn to_real<T: Scalar>(&self) -> SquareMatrix<T> {
        let n = self.dim();
        SquareMatrix::from_fn(n, |i, j| T::from_judgment(self.cells[i][j]))
    }

    /// Human-readable location of a violation using element ids.
    pub fn describe(&self, v: &Violation) -> String {
        let name = |k: usize| self.ids.get(k).map(String::as_str).unwrap_or("?");
        match v {
            Violation::Diagonal { index } => {
                format!("diagonal cell ({0}, {0}) must be 1", name(*index))
            }
            Violation::Reciprocity { i, j } => format!(
                "reciprocity violated at cell ({}, {}): {} vs {}",
                name(*i),
                name(*j),
                self.cells[*i][*j],
                self.cells[*j][*i]
            ),
            other => other.to_string(),
        }
    }
}

/// Builds a matrix from one judgment per unordered pair.
///
/// Entries are `(i, j, a_ij)`; `i > j` is accepted and stored as
/// `(j, i, 1/a_ij)`. The result does not depend on entry order.
pub fn build_matrix(
    ids: Vec<String>,
    upper: &[(usize, usize, Judgment)],
) -> Result<PairwiseMatrix> {
    let mut m = PairwiseMatrix::uniform(ids)?;
    let n = m.dim();
    let mut seen = vec![vec![false; n]; n];
    for &(i, j, v) in upper {
        m.check_pair(i, j)?;
        let (r, c, v) = if i < j {
            (i, j, v)
        } else {
            (j, i, v.reciprocal())
        };
        if seen[r][c] {
            return Err(Error::DuplicatePair {
                a: m.ids[r].clone(),
                b: m.ids[c].clone(),
            });
        }
        seen[r][c] = true;
        m.set(r, c, v)?;
    }
    for (i, row) in seen.iter().enumerate() {
        if let Some(j) = (i + 1..n).find(|&j| !row[j]) {
            return Err(Error::MissingPair {
                a: m.ids[i].clone(),
                b: m.ids[j].clone(),
            });
        }
    }
    Ok(m)
}

/// Lists every broken invariant; empty iff the matrix is valid.
pub fn validate_matrix(m: &PairwiseMatrix) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = m.ids.len();
    if n < 2 {
        out.push(Violation::TooSmall { n });
    }
    let mut seen = HashSet::new();
    for (index, id) in m.ids.iter().enumerate() {
        if id.trim().is_empty() {
            out.push(Violation::EmptyId { index });
        } else if !seen.insert(id.as_str()) {
            out.push(Violation::DuplicateId { id: id.clone() });
        }
    }
    let mut square = m.cells.len() == n;
    for (row, cells) in m.cells.iter().enumerate() {
        if cells.len() != n {
            out.push(Violation::Shape {
                row,
                len: cells.len(),
            });
            square = false;
        }
    }
    if !square {
        if m.cells.len() != n {
            out.push(Violation::Shape {
                row: m.cells.len(),
                len: 0,
            });
        }
        return out;
    }
    for i in 0..n {
        if !m.cells[i][i].is_one() {
            out.push(Violation::Diagonal { index: i });
        }
        for j in i + 1..n {
            if m.cells[i][j].reciprocal() != m.cells[j][i] {
                out.push(Violation::Reciprocity { i, j });
            }
        }
    }
    out
}

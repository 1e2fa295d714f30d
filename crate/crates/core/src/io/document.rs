use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::hierarchy::{DecisionModel, Element, Hierarchy, CRITERIA_MATRIX};
use crate::judgment::Judgment;
use crate::matrix::build_matrix;
use crate::session::{ElicitationSession, MatrixId};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub author: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

/// One judgment: `a` compared with `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pair {
    pub a: String,
    pub b: String,
    pub value: Judgment,
}

/// Parsed document. Pairs are held in canonical form: oriented so that `a`
/// precedes `b` in layer order, sorted row by row.
///
/// Documents may be partial (pairs or whole matrices missing); only
/// [`ModelDocument::into_model`] insists on completeness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDocument {
    pub hierarchy: Hierarchy,
    pub criteria_pairs: Vec<Pair>,
    /// Keyed by criterion id.
    pub alternative_pairs: BTreeMap<String, Vec<Pair>>,
    pub metadata: Option<Metadata>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    a: String,
    b: String,
    value: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    pairs: Vec<RawPair>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    version: u32,
    goal: String,
    criteria: Vec<Element>,
    alternatives: Vec<Element>,
    criteria_matrix: RawMatrix,
    #[serde(default)]
    alternative_matrices: BTreeMap<String, Vec<RawPair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<Metadata>,
}

/// Orients and orders pairs over `ids`, rejecting unknown ids, self-pairs
/// and pairs given twice.
fn canonical_pairs(matrix: &str, ids: &[String], raw: Vec<RawPair>) -> Result<Vec<Pair>> {
    let index: HashMap<&str, usize> = ids
        .iter()
        .enumerate()
        .map(|(k, s)| (s.as_str(), k))
        .collect();
    let mut seen: BTreeMap<(usize, usize), Judgment> = BTreeMap::new();
    for p in raw {
        let value: Judgment = p.value.parse().map_err(|e| Error::Scale {
            location: format!("matrix {matrix:?}, pair ({}, {})", p.a, p.b),
            source: Box::new(e),
        })?;
        let find = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::Schema(format!("matrix {matrix:?}: unknown element {id:?}")))
        };
        let (i, j) = (find(&p.a)?, find(&p.b)?);
        if i == j {
            return Err(Error::Schema(format!(
                "matrix {matrix:?}: diagonal cell ({0}, {0}) cannot be judged (it is always 1)",
                p.a
            )));
        }
        let (r, c, v) = if i < j {
            (i, j, value)
        } else {
            (j, i, value.reciprocal())
        };
        if let Some(prev) = seen.insert((r, c), v) {
            let msg = if prev == v {
                format!(
                    "matrix {matrix:?}: pair ({}, {}) is given twice",
                    ids[r], ids[c]
                )
            } else {
                format!(
                    "matrix {matrix:?}: reciprocity violated at cell ({}, {}): {} vs {}",
                    ids[r], ids[c], prev, v
                )
            };
            return Err(Error::Schema(msg));
        }
    }
    Ok(seen
        .into_iter()
        .map(|((i, j), value)| Pair {
            a: ids[i].clone(),
            b: ids[j].clone(),
            value,
        })
        .collect())
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parses and validates a document (which may be partial).
pub fn parse_document(bytes: &[u8]) -> Result<ModelDocument> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse {
        line: 1 + bytes[..e.valid_up_to()]
            .iter()
            .filter(|b| **b == b'\n')
            .count(),
        column: 0,
        message: format!("invalid UTF-8: {e}"),
    })?;
    let raw: RawDocument = serde_json::from_str(text).map_err(parse_error)?;
    if raw.version != FORMAT_VERSION {
        return Err(Error::Schema(format!(
            "unsupported format version {} (expected {FORMAT_VERSION})",
            raw.version
        )));
    }
    let hierarchy = Hierarchy {
        goal: raw.goal,
        criteria: raw.criteria,
        alternatives: raw.alternatives,
    };
    hierarchy
        .validate()
        .map_err(|e| Error::Schema(e.to_string()))?;
    let crit = hierarchy.criterion_ids();
    let alts = hierarchy.alternative_ids();
    let criteria_pairs = canonical_pairs(CRITERIA_MATRIX, &crit, raw.criteria_matrix.pairs)?;
    let mut alternative_pairs = BTreeMap::new();
    for (key, pairs) in raw.alternative_matrices {
        if hierarchy.criterion_index(&key).is_none() {
            return Err(Error::Schema(format!(
                "alternative matrix {key:?} does not name a criterion"
            )));
        }
        let pairs = canonical_pairs(&key, &alts, pairs)?;
        alternative_pairs.insert(key, pairs);
    }
    Ok(ModelDocument {
        hierarchy,
        criteria_pairs,
        alternative_pairs,
        metadata: raw.metadata,
    })
}

fn pairs_of(ids: &[String], upper: impl Iterator<Item = (usize, usize, Judgment)>) -> Vec<Pair> {
    upper
        .map(|(i, j, value)| Pair {
            a: ids[i].clone(),
            b: ids[j].clone(),
            value,
        })
        .collect()
}

fn to_upper(ids: &[String], pairs: &[Pair]) -> Vec<(usize, usize, Judgment)> {
    let pos = |id: &str| ids.iter().position(|x| x == id).expect("validated id");
    pairs
        .iter()
        .map(|p| (pos(&p.a), pos(&p.b), p.value))
        .collect()
}

impl ModelDocument {
    pub fn from_model(model: &DecisionModel, metadata: Option<Metadata>) -> Self {
        let h = model.hierarchy();
        let criteria_pairs = pairs_of(
            model.criteria_matrix().ids(),
            model.criteria_matrix().upper(),
        );
        let alternative_pairs = model
            .matrices()
            .skip(1)
            .map(|(key, m)| (key.to_string(), pairs_of(m.ids(), m.upper())))
            .collect();
        Self {
            hierarchy: h.clone(),
            criteria_pairs,
            alternative_pairs,
            metadata,
        }
    }

    /// Document holding only the judgments entered so far. Criteria without
    /// any entered judgment are omitted from `alternative_pairs`.
    pub fn from_session(session: &ElicitationSession, metadata: Option<Metadata>) -> Self {
        let model = session.model();
        let entered = |id: MatrixId, ids: &[String], m: &crate::matrix::PairwiseMatrix| {
            pairs_of(
                ids,
                m.upper().filter(|&(i, j, _)| session.is_entered(&id, i, j)),
            )
        };
        let cm = model.criteria_matrix();
        let criteria_pairs = entered(MatrixId::Criteria, cm.ids(), cm);
        let alternative_pairs = model
            .matrices()
            .skip(1)
            .map(|(key, m)| (key.to_string(), entered(MatrixId::parse(key), m.ids(), m)))
            .filter(|(_, p)| !p.is_empty())
            .collect();
        Self {
            hierarchy: model.hierarchy().clone(),
            criteria_pairs,
            alternative_pairs,
            metadata,
        }
    }

    /// Complete model; every matrix and every pair must be present.
    pub fn into_model(self) -> Result<DecisionModel> {
        let crit = self.hierarchy.criterion_ids();
        let alts = self.hierarchy.alternative_ids();
        let schema = |key: &str, e: Error| Error::Schema(format!("matrix {key:?}: {e}"));
        let criteria_matrix = build_matrix(crit.clone(), &to_upper(&crit, &self.criteria_pairs))
            .map_err(|e| schema(CRITERIA_MATRIX, e))?;
        let mut alternative_matrices = Vec::with_capacity(crit.len());
        for c in &crit {
            let pairs = self.alternative_pairs.get(c).ok_or_else(|| {
                Error::Schema(format!("missing alternative matrix for criterion {c:?}"))
            })?;
            let m =
                build_matrix(alts.clone(), &to_upper(&alts, pairs)).map_err(|e| schema(c, e))?;
            alternative_matrices.push(m);
        }
        DecisionModel::new(self.hierarchy, criteria_matrix, alternative_matrices)
    }

    /// Session with every pair of the document entered.
    pub fn to_session(&self) -> Result<ElicitationSession> {
        let mut s = ElicitationSession::new(self.hierarchy.clone())?;
        for p in &self.criteria_pairs {
            s.set_judgment_by_id(&MatrixId::Criteria, &p.a, &p.b, p.value)?;
        }
        for (key, pairs) in &self.alternative_pairs {
            let id = MatrixId::parse(key);
            for p in pairs {
                s.set_judgment_by_id(&id, &p.a, &p.b, p.value)?;
            }
        }
        Ok(s.restarted())
    }
}

fn raw_pairs(pairs: &[Pair]) -> Vec<RawPair> {
    pairs
        .iter()
        .map(|p| RawPair {
            a: p.a.clone(),
            b: p.b.clone(),
            value: p.value.to_string(),
        })
        .collect()
}

fn sorted(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(
                entries
                    .into_iter()
                    .map(|(k, v)| (k, sorted(v)))
                    .collect::<Map<_, _>>(),
            )
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sorted).collect()),
        other => other,
    }
}

/// Canonical rendering: sorted keys, two-space indentation, trailing newline.
pub fn render_document(doc: &ModelDocument) -> String {
    let raw = RawDocument {
        version: FORMAT_VERSION,
        goal: doc.hierarchy.goal.clone(),
        criteria: doc.hierarchy.criteria.clone(),
        alternatives: doc.hierarchy.alternatives.clone(),
        criteria_matrix: RawMatrix {
            pairs: raw_pairs(&doc.criteria_pairs),
        },
        alternative_matrices: doc
            .alternative_pairs
            .iter()
            .map(|(k, p)| (k.clone(), raw_pairs(p)))
            .collect(),
        metadata: doc.metadata.clone(),
    };
    let value = sorted(serde_json::to_value(raw).expect("document serializes"));
    let mut out = serde_json::to_string_pretty(&value).expect("value serializes");
    out.push('\n');
    out
}

/// Loads a complete, validated model.
pub fn load_model(bytes: &[u8]) -> Result<DecisionModel> {
    parse_document(bytes)?.into_model()
}

pub fn save_model(model: &DecisionModel) -> Vec<u8> {
    render_document(&ModelDocument::from_model(model, None)).into_bytes()
}

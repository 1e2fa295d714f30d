//! Wire types for the HTTP service.

use axum::http::StatusCode;
use prioritree::Error;
use serde::{Deserialize, Serialize};

/// Every JSON response: the session revision it reflects, the payload on
/// success, or a non-empty error list (and no payload) on failure.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ApiEnvelope<P> {
    pub revision: Option<u64>,
    pub payload: Option<P>,
    pub errors: Vec<ApiError>,
}

impl<P> ApiEnvelope<P> {
    pub fn ok(revision: u64, payload: P) -> Self {
        Self {
            revision: Some(revision),
            payload: Some(payload),
            errors: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApiError {
    pub code: String,
    pub message: String,
    /// Request field the error refers to, when there is one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

/// A failed request: status plus a single structured error.
#[derive(Debug, Clone)]
pub struct Failure {
    pub status: StatusCode,
    pub revision: Option<u64>,
    pub error: ApiError,
}

impl Failure {
    pub fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        Self {
            status,
            revision: None,
            error: ApiError {
                code: code.to_string(),
                message: message.into(),
                field: None,
            },
        }
    }

    pub fn field(mut self, field: &str) -> Self {
        self.error.field = Some(field.to_string());
        self
    }

    pub fn at_revision(mut self, revision: u64) -> Self {
        self.revision = Some(revision);
        self
    }

    pub fn not_found(what: &str) -> Self {
        Self::new(
            StatusCode::NOT_FOUND,
            "NotFound",
            format!("unknown session {what:?}"),
        )
    }

    pub fn conflict(expected: u64, current: u64) -> Self {
        Self::new(
            StatusCode::CONFLICT,
            "RevisionConflict",
            format!("If-Match revision {expected} does not match current revision {current}"),
        )
        .at_revision(current)
    }

    pub fn envelope(&self) -> ApiEnvelope<()> {
        ApiEnvelope {
            revision: self.revision,
            payload: None,
            errors: vec![self.error.clone()],
        }
    }
}

/// Maps an engine error onto a status code, error code and (if known) field.
pub fn classify(e: &Error) -> (StatusCode, &'static str, Option<&'static str>) {
    use StatusCode as S;
    match e {
        Error::Malformed(_) => (S::UNPROCESSABLE_ENTITY, "Malformed", Some("value")),
        Error::OutOfScale(_) => (S::UNPROCESSABLE_ENTITY, "OutOfScale", Some("value")),
        Error::BadIndex { .. } => (S::UNPROCESSABLE_ENTITY, "BadIndex", None),
        Error::UnknownElement(_) => (S::UNPROCESSABLE_ENTITY, "BadIndex", None),
        Error::UnknownMatrix(_) => (S::UNPROCESSABLE_ENTITY, "UnknownMatrix", Some("matrix")),
        Error::UnknownCriterion(_) => (
            S::UNPROCESSABLE_ENTITY,
            "UnknownCriterion",
            Some("criterion"),
        ),
        Error::InvalidHierarchy(_) | Error::InvalidIds(_) => {
            (S::UNPROCESSABLE_ENTITY, "InvalidHierarchy", None)
        }
        Error::Parse { .. } => (S::BAD_REQUEST, "ParseError", None),
        Error::Schema(_) => (S::UNPROCESSABLE_ENTITY, "SchemaError", None),
        Error::Scale { .. } => (S::UNPROCESSABLE_ENTITY, "ScaleError", None),
        Error::Incomplete(_) => (S::UNPROCESSABLE_ENTITY, "Incomplete", None),
        Error::TooSmall(_) => (S::UNPROCESSABLE_ENTITY, "TooSmall", Some("matrix")),
        Error::InvalidWeights(_) => (S::UNPROCESSABLE_ENTITY, "InvalidWeight", Some("weight")),
        _ => (S::UNPROCESSABLE_ENTITY, "Unprocessable", None),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (status, code, field) = classify(&e);
        let f = Failure::new(status, code, e.to_string());
        match field {
            Some(name) => f.field(name),
            None => f,
        }
    }
}

/// Body of `PUT /sessions/{id}/judgments`: `matrix` is `"criteria"` or a
/// criterion id; `a` and `b` are element ids; `value` is a token like `"1/7"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JudgmentRequest {
    pub matrix: String,
    pub a: String,
    pub b: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CreatedSession<S> {
    pub id: String,
    pub snapshot: S,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlternativeScore {
    pub id: String,
    pub score: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SensitivityPayload {
    pub report: prioritree::Sensitivity,
    /// Present when the request named a `weight`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scores: Option<Vec<AlternativeScore>>,
}

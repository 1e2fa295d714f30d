//! HTTP/JSON decision service. Sessions live in memory; export and import
//! of model documents is the only persistence.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, RwLock};

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderMap, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post, put};
use axum::Router;
use prioritree::io::{parse_document, render_document, ModelDocument};
use prioritree::sensitivity::scores_at_weight;
use prioritree::{weight_sensitivity, ElicitationSession, Hierarchy, Judgment, MatrixId, Snapshot};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tower_http::services::ServeDir;

use crate::api::{
    AlternativeScore, ApiEnvelope, CreatedSession, Failure, JudgmentRequest, SensitivityPayload,
};

type Shared = Arc<Mutex<ElicitationSession>>;

/// Session registry. Each session sits behind its own mutex, so edits to one
/// session are serialized while distinct sessions proceed in parallel.
#[derive(Default)]
pub struct AppState {
    sessions: RwLock<HashMap<String, Shared>>,
}

impl AppState {
    pub fn new() -> Self {
        Self::default()
    }

    fn insert(&self, session: ElicitationSession) -> (String, Shared) {
        let id = uuid::Uuid::new_v4().simple().to_string();
        let shared = Arc::new(Mutex::new(session));
        self.sessions
            .write()
            .expect("session registry poisoned")
            .insert(id.clone(), shared.clone());
        (id, shared)
    }

    fn get(&self, id: &str) -> Result<Shared, Failure> {
        self.sessions
            .read()
            .expect("session registry poisoned")
            .get(id)
            .cloned()
            .ok_or_else(|| Failure::not_found(id))
    }

    pub fn len(&self) -> usize {
        self.sessions
            .read()
            .expect("session registry poisoned")
            .len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl IntoResponse for Failure {
    fn into_response(self) -> Response {
        let mut resp = (self.status, axum::Json(self.envelope())).into_response();
        if let Some(r) = self.revision {
            set_etag(resp.headers_mut(), r);
        }
        resp
    }
}

fn set_etag(headers: &mut HeaderMap, revision: u64) {
    if let Ok(v) = HeaderValue::from_str(&format!("\"{revision}\"")) {
        headers.insert(header::ETAG, v);
    }
}

fn ok<P: Serialize>(status: StatusCode, revision: u64, payload: P) -> Response {
    let mut resp = (status, axum::Json(ApiEnvelope::ok(revision, payload))).into_response();
    set_etag(resp.headers_mut(), revision);
    resp
}

fn parse_json<T: DeserializeOwned>(body: &[u8]) -> Result<T, Failure> {
    serde_json::from_slice(body).map_err(|e| {
        use serde_json::error::Category;
        match e.classify() {
            Category::Data => Failure::new(
                StatusCode::UNPROCESSABLE_ENTITY,
                "SchemaError",
                e.to_string(),
            ),
            _ => Failure::new(StatusCode::BAD_REQUEST, "MalformedJson", e.to_string()),
        }
    })
}

/// Revision named by `If-Match`, accepting `3`, `"3"` and `W/"3"`.
fn if_match(headers: &HeaderMap) -> Result<Option<u64>, Failure> {
    let Some(raw) = headers.get(header::IF_MATCH) else {
        return Ok(None);
    };
    let bad = || {
        Failure::new(
            StatusCode::BAD_REQUEST,
            "BadIfMatch",
            "If-Match must name a revision",
        )
        .field("If-Match")
    };
    let text = raw.to_str().map_err(|_| bad())?.trim();
    if text == "*" {
        return Ok(None);
    }
    let text = text.strip_prefix("W/").unwrap_or(text).trim_matches('"');
    text.parse().map(Some).map_err(|_| bad())
}

fn check_revision(expected: Option<u64>, session: &ElicitationSession) -> Result<(), Failure> {
    match expected {
        Some(e) if e != session.revision() => Err(Failure::conflict(e, session.revision())),
        _ => Ok(()),
    }
}

fn lock(shared: &Shared) -> std::sync::MutexGuard<'_, ElicitationSession> {
    shared.lock().unwrap_or_else(|p| p.into_inner())
}

async fn create_session(
    State(state): State<Arc<AppState>>,
    body: Bytes,
) -> Result<Response, Failure> {
    let hierarchy: Hierarchy = parse_json(&body)?;
    let session = ElicitationSession::new(hierarchy)?;
    let snapshot: Snapshot = session.evaluate();
    let (id, _) = state.insert(session);
    Ok(ok(StatusCode::CREATED, 0, CreatedSession { id, snapshot }))
}

async fn get_session(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Response, Failure> {
    let shared = state.get(&id)?;
    let s = lock(&shared);
    Ok(ok(StatusCode::OK, s.revision(), s.evaluate::<f64>()))
}

async fn put_judgment(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    headers: HeaderMap,
    body: Bytes,
) -> Result<Response, Failure> {
    let shared = state.get(&id)?;
    let expected = if_match(&headers)?;
    let req: JudgmentRequest = parse_json(&body)?;
    let value: Judgment = req
        .value
        .parse()
        .map_err(|e: prioritree::Error| Failure::from(e).field("value"))?;
    let matrix = MatrixId::parse(&req.matrix);
    let mut s = lock(&shared);
    check_revision(expected, &s)?;
    let m = s.matrix(&matrix).map_err(Failure::from)?;
    for (field, elem) in [("a", &req.a), ("b", &req.b)] {
        if m.index_of(elem).is_none() {
            return Err(Failure::new(
                StatusCode::UNPROCESSABLE_ENTITY,
                "BadIndex",
                format!("matrix {:?} has no element {elem:?}", req.matrix),
            )
            .field(field));
        }
    }
    if req.a == req.b {
        return Err(Failure::new(
            StatusCode::UNPROCESSABLE_ENTITY,
            "BadIndex",
            "an element cannot be compared with itself",
        )
        .field("b"));
    }
    let revision = s.set_judgment_by_id(&matrix, &req.a, &req.b, value)?;
    Ok(ok(StatusCode::OK, revision, s.evaluate::<f64>()))
}

#[derive(Deserialize)]
struct HotspotQuery {
    matrix: Option<String>,
    k: Option<usize>,
}

async fn hotspots(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(q): Query<HotspotQuery>,
) -> Result<Response, Failure> {
    let shared = state.get(&id)?;
    let s = lock(&shared);
    let matrix = MatrixId::parse(
        q.matrix
            .as_deref()
            .unwrap_or(prioritree::hierarchy::CRITERIA_MATRIX),
    );
    let triads = s.hotspots(&matrix, q.k.unwrap_or(3))?;
    Ok(ok(StatusCode::OK, s.revision(), triads))
}

#[derive(Deserialize)]
struct SensitivityQuery {
    criterion: Option<String>,
    weight: Option<f64>,
}

async fn sensitivity(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(q): Query<SensitivityQuery>,
) -> Result<Response, Failure> {
    let shared = state.get(&id)?;
    let s = lock(&shared);
    let criterion = q.criterion.ok_or_else(|| {
        Failure::new(
            StatusCode::UNPROCESSABLE_ENTITY,
            "MissingParameter",
            "criterion is required",
        )
        .field("criterion")
    })?;
    let snap: Snapshot = s.evaluate();
    let syn = snap.synthesis.ok_or_else(|| {
        Failure::new(
            StatusCode::UNPROCESSABLE_ENTITY,
            "Incomplete",
            "sensitivity needs every judgment entered",
        )
    })?;
    let report = weight_sensitivity(&syn, &criterion)?;
    let scores = match q.weight {
        Some(w) => Some(
            scores_at_weight(&syn, &criterion, w)?
                .into_iter()
                .zip(&syn.alternative_ids)
                .map(|(score, id)| AlternativeScore {
                    id: id.clone(),
                    score,
                })
                .collect(),
        ),
        None => None,
    };
    Ok(ok(
        StatusCode::OK,
        s.revision(),
        SensitivityPayload {
            report,
            weight: q.weight,
            scores,
        },
    ))
}

async fn import(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    headers: HeaderMap,
    body: Bytes,
) -> Result<Response, Failure> {
    let shared = state.get(&id)?;
    let expected = if_match(&headers)?;
    let doc = parse_document(&body)?;
    let imported = doc.to_session()?;
    let mut s = lock(&shared);
    check_revision(expected, &s)?;
    let revision = s.replace_with(imported);
    Ok(ok(StatusCode::OK, revision, s.evaluate::<f64>()))
}

async fn export(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Response, Failure> {
    let shared = state.get(&id)?;
    let s = lock(&shared);
    let text = render_document(&ModelDocument::from_session(&s, None));
    let mut resp = ([(header::CONTENT_TYPE, "application/json")], text).into_response();
    set_etag(resp.headers_mut(), s.revision());
    Ok(resp)
}

/// Routes of the service. `ui_dir`, when it exists, is served at `/`.
pub fn router(state: Arc<AppState>, ui_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/judgments", put(put_judgment))
        .route("/sessions/{id}/hotspots", get(hotspots))
        .route("/sessions/{id}/sensitivity", get(sensitivity))
        .route("/sessions/{id}/import", post(import))
        .route("/sessions/{id}/export", get(export))
        .with_state(state);
    match ui_dir.filter(|d| d.is_dir()) {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

pub async fn serve(addr: SocketAddr, ui_dir: Option<PathBuf>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("prioritree listening on http://{}", listener.local_addr()?);
    let app = router(Arc::new(AppState::new()), ui_dir);
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

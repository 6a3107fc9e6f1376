//! HTTP front end: database browsing, question to explained hypotheses, and
//! read-only execution of a chosen hypothesis.

pub mod config;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};
use std::time::Duration;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path as UrlPath, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use nldb_core::catalog::{content_preview, load_from_database, CatalogError, RowPage, SchemaCatalog};
use nldb_core::exec::{ExecError, ExecutionResult, Executor};
use nldb_core::explain::{Explanation, Tier};
use nldb_core::hypothesis::{parse_beam_rows, BeamError, BeamRow, RemoteParser, SourceError};
use nldb_core::pipeline::{interpret, HypothesisSource, Interpretation, PipelineError, Rejection};
use nldb_core::transition::tokenize_question;
use nldb_core::values::{TermMap, ValueResolution};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use tower_http::cors::CorsLayer;

pub use config::{ServiceConfig, SourceConfig};

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> ApiError {
        ApiError { status, message: message.into() }
    }

    fn not_found(what: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::NOT_FOUND, what)
    }

    fn internal(message: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, message)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(serde_json::json!({ "error": self.message }))).into_response()
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> ApiError {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, r.body_text())
    }
}

impl From<ExecError> for ApiError {
    fn from(e: ExecError) -> ApiError {
        let status = match e {
            ExecError::Timeout(_) => StatusCode::REQUEST_TIMEOUT,
            ExecError::ReadOnly | ExecError::Sql(_) => StatusCode::BAD_REQUEST,
            ExecError::Open { .. } => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError::new(status, e.to_string())
    }
}

impl From<PipelineError> for ApiError {
    fn from(e: PipelineError) -> ApiError {
        match e {
            PipelineError::Source(SourceError::Remote(m)) => {
                ApiError::new(StatusCode::BAD_GATEWAY, format!("remote parser: {m}"))
            }
            PipelineError::Source(s) => ApiError::new(StatusCode::BAD_GATEWAY, s.to_string()),
            PipelineError::Beam(b) => ApiError::internal(b.to_string()),
        }
    }
}

struct DbEntry {
    catalog: SchemaCatalog,
    path: PathBuf,
}

/// Shared state: configuration and the catalogs loaded so far.
pub struct AppState {
    config: ServiceConfig,
    dbs: RwLock<BTreeMap<String, Arc<DbEntry>>>,
}

fn db_file(root: &Path, id: &str) -> PathBuf {
    root.join(id).join(format!("{id}.sqlite"))
}

impl AppState {
    pub fn new(config: ServiceConfig) -> Arc<AppState> {
        let state = Arc::new(AppState { config, dbs: RwLock::new(BTreeMap::new()) });
        state.rescan();
        state
    }

    pub fn config(&self) -> &ServiceConfig {
        &self.config
    }

    /// Loads databases that appeared in the directory since the last scan.
    /// Unreadable ones are logged and skipped.
    pub fn rescan(&self) {
        let Ok(entries) = std::fs::read_dir(&self.config.database_dir) else { return };
        let mut fresh = Vec::new();
        {
            let known = self.dbs.read().unwrap();
            for entry in entries.flatten() {
                let id = entry.file_name().to_string_lossy().into_owned();
                if !known.contains_key(&id) && db_file(&self.config.database_dir, &id).is_file() {
                    fresh.push(id);
                }
            }
        }
        for id in fresh {
            self.load(&id);
        }
    }

    fn load(&self, id: &str) -> Option<Arc<DbEntry>> {
        let path = db_file(&self.config.database_dir, id);
        match load_from_database(&path) {
            Ok(catalog) => {
                let entry = Arc::new(DbEntry { catalog, path });
                self.dbs.write().unwrap().insert(id.to_string(), entry.clone());
                Some(entry)
            }
            Err(e) => {
                tracing::warn!("skipping database {id}: {e}");
                None
            }
        }
    }

    fn entry(&self, id: &str) -> Result<Arc<DbEntry>, ApiError> {
        if let Some(e) = self.dbs.read().unwrap().get(id) {
            return Ok(e.clone());
        }
        let plain = !id.is_empty() && !id.contains(['/', '\\']) && id != "." && id != "..";
        let loaded = if plain && db_file(&self.config.database_dir, id).is_file() { self.load(id) } else { None };
        loaded.ok_or_else(|| ApiError::not_found(format!("unknown database `{id}`")))
    }

    /// Term maps are re-read on every request so edits apply without restart.
    fn terms(&self, id: &str, catalog: &SchemaCatalog) -> Result<Option<TermMap>, ApiError> {
        let Some(path) = self.config.term_maps.get(id) else { return Ok(None) };
        let text = std::fs::read_to_string(path)
            .map_err(|e| ApiError::internal(format!("term map {}: {e}", path.display())))?;
        TermMap::parse(&text, catalog).map(Some).map_err(|e| ApiError::internal(format!("term map: {e}")))
    }
}

#[derive(Serialize)]
struct DatabaseSummary {
    db_id: String,
    table_count: usize,
}

async fn list_databases(State(state): State<Arc<AppState>>) -> Json<Vec<DatabaseSummary>> {
    let s = state.clone();
    let _ = tokio::task::spawn_blocking(move || s.rescan()).await;
    let dbs = state.dbs.read().unwrap();
    Json(dbs.iter().map(|(id, e)| DatabaseSummary { db_id: id.clone(), table_count: e.catalog.tables.len() }).collect())
}

async fn schema(State(state): State<Arc<AppState>>, UrlPath(db): UrlPath<String>) -> Result<Response, ApiError> {
    let e = blocking(move || state.entry(&db)).await?;
    Ok(Json(&e.catalog).into_response())
}

#[derive(Deserialize)]
struct PreviewParams {
    limit: Option<usize>,
}

async fn table_rows(
    State(state): State<Arc<AppState>>,
    UrlPath((db, table)): UrlPath<(String, String)>,
    Query(params): Query<PreviewParams>,
) -> Result<Json<RowPage>, ApiError> {
    blocking(move || {
        let e = state.entry(&db)?;
        let limit = params.limit.unwrap_or(state.config.limits.preview_rows).min(state.config.limits.row_cap);
        content_preview(&e.catalog, &table, limit).map_err(|err| match err {
            CatalogError::UnknownTable(t) => ApiError::not_found(format!("unknown table `{t}`")),
            other => ApiError::internal(other.to_string()),
        })
    })
    .await
    .map(Json)
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum SourceChoice {
    Heuristic,
    Remote,
    BeamFile,
}

#[derive(Deserialize)]
pub struct QueryRequest {
    db_id: String,
    question: String,
    beam_size: Option<usize>,
    source: Option<SourceChoice>,
}

#[derive(Serialize)]
pub struct HypothesisView {
    pub id: usize,
    pub sql: String,
    pub weighted_score: f64,
    pub raw_score: f64,
    pub explanation: Explanation,
    pub text: String,
    pub value_notes: Vec<String>,
    pub resolved_values: Vec<ValueResolution>,
    pub valid: bool,
    /// Part of the default display; the rest sit behind "show more".
    pub shown: bool,
}

#[derive(Serialize, Default)]
pub struct TierStats {
    pub shallow: usize,
    pub deep: usize,
}

#[derive(Serialize)]
pub struct QueryResponse {
    pub question: String,
    pub tokens: Vec<String>,
    pub hypotheses: Vec<HypothesisView>,
    /// Hypotheses not shown by default.
    pub show_more: usize,
    pub tier_stats: TierStats,
    pub rejected: Vec<Rejection>,
}

enum Resolved {
    Heuristic,
    Remote(RemoteParser),
    Rows(Vec<BeamRow>),
}

fn pick_source(state: &AppState, db: &str, choice: Option<SourceChoice>) -> Result<Resolved, ApiError> {
    let configured = state.config.sources.get(db);
    match (choice, configured) {
        (Some(SourceChoice::Heuristic), _) | (None, None) | (None, Some(SourceConfig::Heuristic)) => {
            Ok(Resolved::Heuristic)
        }
        (Some(SourceChoice::Remote), Some(SourceConfig::Remote { url, timeout_ms }))
        | (None, Some(SourceConfig::Remote { url, timeout_ms })) => {
            let mut p = RemoteParser::new(url.clone());
            p.timeout = Duration::from_millis(*timeout_ms);
            Ok(Resolved::Remote(p))
        }
        (Some(SourceChoice::BeamFile), Some(SourceConfig::BeamFile { path }))
        | (None, Some(SourceConfig::BeamFile { path })) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| ApiError::new(StatusCode::BAD_GATEWAY, format!("beam file {}: {e}", path.display())))?;
            let rows = parse_beam_rows(&text).map_err(|e| ApiError::new(StatusCode::BAD_GATEWAY, e.to_string()))?;
            Ok(Resolved::Rows(rows))
        }
        (Some(_), _) => Err(ApiError::new(
            StatusCode::UNPROCESSABLE_ENTITY,
            format!("requested source is not configured for `{db}`"),
        )),
    }
}

fn run_query(state: &AppState, req: QueryRequest) -> Result<QueryResponse, ApiError> {
    let entry = state.entry(&req.db_id)?;
    if req.question.trim().is_empty() {
        return Err(ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "question is empty"));
    }
    let mut beam = state.config.beam.to_config();
    if let Some(k) = req.beam_size {
        if k == 0 {
            return Err(ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "beam_size must be positive"));
        }
        beam.beam_size = k;
    }
    let terms = state.terms(&req.db_id, &entry.catalog)?;
    let resolved = pick_source(state, &req.db_id, req.source)?;
    let source = match &resolved {
        Resolved::Heuristic => HypothesisSource::Heuristic,
        Resolved::Remote(p) => HypothesisSource::Remote(p),
        Resolved::Rows(rows) => HypothesisSource::Rows(rows.clone()),
    };
    let db = Executor::open(&entry.path)?.with_timeout(state.config.limits.timeout());
    let out = match interpret(&req.question, &entry.catalog, &db, source, &beam, terms.as_ref()) {
        Err(PipelineError::Beam(BeamError::NoCompletion(_))) => Interpretation {
            question: req.question.clone(),
            tokens: tokenize_question(&req.question).tokens.into_iter().map(|t| t.text).collect(),
            candidates: Vec::new(),
            rejected: Vec::new(),
        },
        other => other?,
    };
    let shown_n = state.config.shown_by_default;
    let mut stats = TierStats::default();
    let hypotheses: Vec<HypothesisView> = out
        .candidates
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            match c.explanation.tier {
                Tier::Shallow => stats.shallow += 1,
                Tier::Deep => stats.deep += 1,
            }
            HypothesisView {
                id: i,
                sql: c.sql,
                weighted_score: c.weighted_score,
                raw_score: c.raw_score,
                value_notes: c.explanation.value_notes.clone(),
                explanation: c.explanation,
                text: c.text,
                resolved_values: c.resolved_values,
                valid: true,
                shown: i < shown_n,
            }
        })
        .collect();
    Ok(QueryResponse {
        question: out.question,
        tokens: out.tokens,
        show_more: hypotheses.len().saturating_sub(shown_n),
        hypotheses,
        tier_stats: stats,
        rejected: out.rejected,
    })
}

async fn query(
    State(state): State<Arc<AppState>>,
    body: Result<Json<QueryRequest>, JsonRejection>,
) -> Result<Json<QueryResponse>, ApiError> {
    let Json(req) = body?;
    blocking(move || run_query(&state, req)).await.map(Json)
}

#[derive(Deserialize)]
pub struct ExecuteRequest {
    db_id: String,
    hypothesis_sql: String,
}

async fn execute(
    State(state): State<Arc<AppState>>,
    body: Result<Json<ExecuteRequest>, JsonRejection>,
) -> Result<Json<ExecutionResult>, ApiError> {
    let Json(req) = body?;
    blocking(move || {
        let entry = state.entry(&req.db_id)?;
        let db = Executor::open(&entry.path)?.with_timeout(state.config.limits.timeout());
        Ok(db.execute(&req.hypothesis_sql, state.config.limits.row_cap)?)
    })
    .await
    .map(Json)
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, ApiError> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f).await.map_err(|e| ApiError::internal(e.to_string()))?
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/api/databases", get(list_databases))
        .route("/api/databases/{db}/schema", get(schema))
        .route("/api/databases/{db}/tables/{table}", get(table_rows))
        .route("/api/query", post(query))
        .route("/api/execute", post(execute))
        .layer(CorsLayer::permissive())
        .with_state(state)
}

pub async fn serve(config: ServiceConfig) -> Result<(), ServiceError> {
    let addr = format!("{}:{}", config.bind, config.port);
    let app = router(AppState::new(config));
    let listener = tokio::net::TcpListener::bind(&addr).await?;
    tracing::info!("listening on {addr}");
    axum::serve(listener, app).await?;
    Ok(())
}

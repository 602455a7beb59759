use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::json;

use super::{Engine, IngestBatch, ServiceError};
use crate::model::Timestamp;
use crate::query::QueryError;
use crate::rdf::Iri;

const TURTLE: &str = "text/turtle; charset=utf-8";
const TSV: &str = "text/tab-separated-values; charset=utf-8";

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = match &self {
            ServiceError::UnknownUser(_) => StatusCode::NOT_FOUND,
            ServiceError::Query(QueryError::Unsupported { .. }) => StatusCode::UNPROCESSABLE_ENTITY,
            ServiceError::Query(_) | ServiceError::Data(_) | ServiceError::Modeling(_) => StatusCode::BAD_REQUEST,
            ServiceError::Config(_) | ServiceError::Io { .. } => StatusCode::INTERNAL_SERVER_ERROR,
        };
        (status, Json(json!({ "error": self.to_string() }))).into_response()
    }
}

fn bad_request(msg: impl Into<String>) -> ServiceError {
    ServiceError::Data(msg.into())
}

/// Routes for the observation, profile, SPARQL and health endpoints.
pub fn router(engine: Arc<Engine>) -> Router {
    Router::new()
        .route("/observations", post(post_observations))
        .route("/profiles/{user}", get(get_profile))
        .route("/sparql", post(post_sparql))
        .route("/health", get(health))
        .with_state(engine)
}

/// Serves until the process is stopped.
pub async fn serve(engine: Arc<Engine>, addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(engine)).await
}

async fn post_observations(State(engine): State<Arc<Engine>>, headers: HeaderMap, body: Bytes) -> Result<Response, ServiceError> {
    let text = std::str::from_utf8(&body).map_err(|e| bad_request(format!("body is not UTF-8: {e}")))?;
    let content_type = headers.get(header::CONTENT_TYPE).and_then(|v| v.to_str().ok()).unwrap_or("");
    let batch = if content_type.starts_with("text/turtle") {
        IngestBatch {
            turtle: vec![text.to_owned()],
            ..IngestBatch::default()
        }
    } else {
        serde_json::from_str(text).map_err(|e| bad_request(format!("invalid ingest payload: {e}")))?
    };
    let report = engine.ingest(&batch)?;
    Ok(Json(report).into_response())
}

#[derive(Debug, Deserialize)]
struct ProfileParams {
    as_of: Option<String>,
}

async fn get_profile(
    State(engine): State<Arc<Engine>>,
    Path(user): Path<String>,
    Query(params): Query<ProfileParams>,
) -> Result<Response, ServiceError> {
    let user = Iri::new(user).map_err(|e| bad_request(e.to_string()))?;
    let as_of = match params.as_of {
        Some(s) => Some(Timestamp::parse(&s).map_err(|e| bad_request(e.to_string()))?),
        None => None,
    };
    let turtle = engine.profile_turtle(&user, as_of)?;
    Ok(([(header::CONTENT_TYPE, TURTLE)], turtle).into_response())
}

async fn post_sparql(State(engine): State<Arc<Engine>>, body: String) -> Result<Response, ServiceError> {
    let tsv = engine.query_tsv(&body)?;
    Ok(([(header::CONTENT_TYPE, TSV)], tsv).into_response())
}

async fn health(State(engine): State<Arc<Engine>>) -> Json<serde_json::Value> {
    Json(json!({
        "status": "ok",
        "version": env!("CARGO_PKG_VERSION"),
        "triples": engine.triple_count(),
    }))
}

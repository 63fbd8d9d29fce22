//! Read-only JSON search endpoint.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::{Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;

use crate::error::Error;
use crate::search::{RerankMode, SearchOptions, Searcher};

#[derive(Clone)]
struct AppState {
    searcher: Arc<Searcher>,
    defaults: SearchOptions,
}

fn json(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn error(status: StatusCode, message: &str) -> Response {
    json(status, serde_json::json!({ "error": message }).to_string())
}

/// `GET /search?q=..&k=..&mode=..` and `GET /healthz`.
pub fn router(searcher: Arc<Searcher>, defaults: SearchOptions) -> Router {
    Router::new()
        .route("/search", get(search))
        .route("/healthz", get(healthz))
        .with_state(AppState { searcher, defaults })
}

async fn healthz(State(state): State<AppState>) -> Response {
    let body = serde_json::json!({ "status": "ok", "methods": state.searcher.index().len() });
    json(StatusCode::OK, body.to_string())
}

async fn search(State(state): State<AppState>, Query(params): Query<HashMap<String, String>>) -> Response {
    let Some(q) = params.get("q").filter(|q| !q.trim().is_empty()) else {
        return error(StatusCode::BAD_REQUEST, "missing query parameter q");
    };
    let mut opts = state.defaults;
    if let Some(k) = params.get("k") {
        match k.parse::<usize>() {
            Ok(k) if k >= 1 => opts.k = k,
            _ => return error(StatusCode::BAD_REQUEST, "k must be a positive integer"),
        }
    }
    if let Some(m) = params.get("mode") {
        match m.parse::<RerankMode>() {
            Ok(m) => opts.mode = m,
            Err(e) => return error(StatusCode::BAD_REQUEST, &e),
        }
    }
    let searcher = state.searcher.clone();
    let q = q.clone();
    let result = tokio::task::spawn_blocking(move || searcher.search(&q, &opts)).await;
    match result {
        Ok(Ok(resp)) => json(StatusCode::OK, resp.to_json()),
        Ok(Err(Error::NoSearchableWords)) => error(StatusCode::UNPROCESSABLE_ENTITY, "no searchable words"),
        Ok(Err(e)) => error(StatusCode::INTERNAL_SERVER_ERROR, &e.to_string()),
        Err(e) => error(StatusCode::INTERNAL_SERVER_ERROR, &e.to_string()),
    }
}

/// Serves until ctrl-c.
pub async fn serve(addr: SocketAddr, searcher: Arc<Searcher>, defaults: SearchOptions) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(searcher, defaults))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

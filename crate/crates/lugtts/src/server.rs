//! HTTP service: `/process`, `/voices` and `/version`.
//!
//! `/process` takes `INPUT_TEXT`, `INPUT_TYPE` (`TEXT` or `SSML`, default
//! `TEXT`), `OUTPUT_TYPE` and optionally `VOICE`, as a query string or a
//! form-encoded body. The body is exactly what [`Engine::process`] returns
//! for the same arguments.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use axum::extract::rejection::FormRejection;
use axum::extract::{Form, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use lugtts_core::doc::InputKind;
use lugtts_core::voicedb::VoiceInventory;
use lugtts_core::{Engine, OutputType};

pub const DEFAULT_PORT: u16 = 59125;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

struct AppState {
    engine: Engine,
    voices: BTreeMap<String, Arc<VoiceInventory>>,
    /// The first voice given.
    default_voice: Option<String>,
}

/// Voices are addressed by their inventory names.
pub fn router(engine: Engine, voices: Vec<Arc<VoiceInventory>>) -> Router {
    let default_voice = voices.first().map(|v| v.name.clone());
    let voices = voices.into_iter().map(|v| (v.name.clone(), v)).collect();
    let state = Arc::new(AppState { engine, voices, default_voice });
    Router::new()
        .route("/process", get(process).post(process))
        .route("/voices", get(list_voices))
        .route("/version", get(version))
        .with_state(state)
}

fn plain(status: StatusCode, body: impl Into<String>) -> Response {
    (status, [(header::CONTENT_TYPE, "text/plain; charset=utf-8")], body.into()).into_response()
}

pub fn content_type(output: OutputType) -> &'static str {
    match output {
        OutputType::Audio => "audio/wav",
        OutputType::AcoustParams => "text/plain",
        _ => "text/plain; charset=utf-8",
    }
}

async fn process(
    State(state): State<Arc<AppState>>,
    form: Result<Form<HashMap<String, String>>, FormRejection>,
) -> Response {
    let Form(params) = match form {
        Ok(f) => f,
        Err(e) => return plain(StatusCode::BAD_REQUEST, e.body_text()),
    };
    let Some(text) = params.get("INPUT_TEXT").cloned() else {
        return plain(StatusCode::BAD_REQUEST, "missing INPUT_TEXT");
    };
    let kind = match params.get("INPUT_TYPE").map(|s| s.parse::<InputKind>()) {
        None => InputKind::Plain,
        Some(Ok(k)) => k,
        Some(Err(e)) => return plain(StatusCode::BAD_REQUEST, e),
    };
    let output = match params.get("OUTPUT_TYPE").map(|s| s.parse::<OutputType>()) {
        None => return plain(StatusCode::BAD_REQUEST, "missing OUTPUT_TYPE"),
        Some(Ok(o)) => o,
        Some(Err(e)) => return plain(StatusCode::BAD_REQUEST, e),
    };
    let voice = match params.get("VOICE").or(state.default_voice.as_ref()) {
        Some(name) => match state.voices.get(name) {
            Some(v) => Some(Arc::clone(v)),
            None => return plain(StatusCode::NOT_FOUND, format!("unknown voice {name:?}")),
        },
        None if output == OutputType::Audio => return plain(StatusCode::NOT_FOUND, "no voice loaded"),
        None => None,
    };
    log::info!("process {} {} bytes of input", output.as_str(), text.len());
    let worker = Arc::clone(&state);
    let result =
        tokio::task::spawn_blocking(move || worker.engine.process(&text, kind, output, voice.as_deref())).await;
    match result {
        Ok(Ok(out)) => ([(header::CONTENT_TYPE, content_type(output))], out.into_bytes()).into_response(),
        Ok(Err(e)) => {
            log::warn!("{e}");
            plain(StatusCode::INTERNAL_SERVER_ERROR, e.to_string())
        }
        Err(e) => plain(StatusCode::INTERNAL_SERVER_ERROR, format!("worker failed: {e}")),
    }
}

async fn list_voices(State(state): State<Arc<AppState>>) -> Response {
    let body: String = state.voices.keys().map(|n| format!("{n}\n")).collect();
    plain(StatusCode::OK, body)
}

async fn version() -> Response {
    plain(StatusCode::OK, VERSION)
}

/// Serves until Ctrl-C.
pub async fn serve(listener: tokio::net::TcpListener, app: Router) -> std::io::Result<()> {
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

#![allow(dead_code)]

use std::sync::Arc;

use axum::body::Body;
use axum::http::{header, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use lugtts::server;
use lugtts_core::voicedb::synthetic_voice;
use lugtts_core::Engine;
use tower::ServiceExt;

/// Inputs for service/library comparisons: `(text, input type)`.
pub const CORPUS: [(&str, &str); 50] = [
    ("butiko", "TEXT"),
    ("omuntu", "TEXT"),
    ("abantu bagenda.", "TEXT"),
    ("ennyumba ya kabaka", "TEXT"),
    ("Ogenda wa?", "TEXT"),
    ("Ogenda?", "TEXT"),
    ("Genda!", "TEXT"),
    ("ne era", "TEXT"),
    ("ne era, omuntu.", "TEXT"),
    ("era ndyerera ddala ennyumba ya Yerobowaamu ng'omuntu bw'ayera obusa n'okuggwaawo ne buggwaawo bwonna", "TEXT"),
    ("3", "TEXT"),
    ("21", "TEXT"),
    ("101 abantu", "TEXT"),
    ("1000000000", "TEXT"),
    ("omwana ow'3. ajja", "TEXT"),
    ("Dr. mukasa", "TEXT"),
    ("Mw. Kato ne Mky. Nakato", "TEXT"),
    ("UTV", "TEXT"),
    ("$5", "TEXT"),
    ("", "TEXT"),
    ("   ", "TEXT"),
    ("kaalo kaalo kaalo", "TEXT"),
    ("bw’ayera", "TEXT"),
    ("ŋŋaani", "TEXT"),
    ("okugenda; okudda: okutuula", "TEXT"),
    ("\"genda\"", "TEXT"),
    ("mukasa (kabaka) ajja", "TEXT"),
    ("e.g. ku", "TEXT"),
    ("ani ajja?", "TEXT"),
    ("Bbiri. Ssatu. Nnya.", "TEXT"),
    ("ekika ebika muntu", "TEXT"),
    ("kolawo obungi misir", "TEXT"),
    ("nnyo nnyo", "TEXT"),
    ("x", "TEXT"),
    ("é", "TEXT"),
    ("genda\njangu", "TEXT"),
    ("butiko 2 butiko", "TEXT"),
    ("<speak>butiko</speak>", "SSML"),
    ("<speak><s>genda</s><s>jangu</s></speak>", "SSML"),
    (r#"<speak>omuntu <break strength="strong"/> abantu</speak>"#, "SSML"),
    (r#"<speak><say-as interpret-as="cardinal">3</say-as></speak>"#, "SSML"),
    (r#"<speak><say-as interpret-as="ordinal">2</say-as> omwana</speak>"#, "SSML"),
    (r#"<speak><say-as interpret-as="telephone">0772</say-as></speak>"#, "SSML"),
    (r#"<speak>ne <emphasis level="strong">era</emphasis></speak>"#, "SSML"),
    ("<speak>jangu &amp; genda</speak>", "SSML"),
    ("<speak><voice>genda</voice></speak>", "SSML"),
    (r#"<speak>genda <break time="300ms"/></speak>"#, "SSML"),
    ("<speak>wa", "SSML"),
    ("<voice>wa</voice>", "SSML"),
    ("plain text", "SSML"),
];

pub fn app() -> Router {
    server::router(Engine::default(), vec![Arc::new(synthetic_voice().clone())])
}

pub struct Reply {
    pub status: StatusCode,
    pub content_type: String,
    pub body: Vec<u8>,
}

async fn send(app: &Router, req: Request<Body>) -> Reply {
    let resp = app.clone().oneshot(req).await.expect("infallible service");
    let status = resp.status();
    let content_type = resp
        .headers()
        .get(header::CONTENT_TYPE)
        .map(|v| v.to_str().unwrap().to_string())
        .unwrap_or_default();
    let body = resp.into_body().collect().await.unwrap().to_bytes().to_vec();
    Reply { status, content_type, body }
}

pub async fn get(app: &Router, path: &str, params: &[(&str, &str)]) -> Reply {
    let uri = if params.is_empty() {
        path.to_string()
    } else {
        format!("{path}?{}", serde_urlencoded::to_string(params).unwrap())
    };
    send(app, Request::get(uri).body(Body::empty()).unwrap()).await
}

pub async fn post(app: &Router, path: &str, params: &[(&str, &str)]) -> Reply {
    let req = Request::post(path)
        .header(header::CONTENT_TYPE, "application/x-www-form-urlencoded")
        .body(Body::from(serde_urlencoded::to_string(params).unwrap()))
        .unwrap();
    send(app, req).await
}

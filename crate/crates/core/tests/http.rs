mod common;

use std::sync::Arc;

use axum::body::{to_bytes, Body};
use axum::http::{Request, StatusCode};
use axum::Router;
use tower::ServiceExt;

use usem_core::service::router;

use common::*;

async fn call(app: &Router, req: Request<Body>) -> (StatusCode, String) {
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let body = to_bytes(resp.into_body(), usize::MAX).await.unwrap();
    (status, String::from_utf8(body.to_vec()).unwrap())
}

fn app() -> Router {
    router(Arc::new(engine()))
}

fn sparql(q: &str) -> Request<Body> {
    Request::post("/sparql").body(Body::from(q.to_owned())).unwrap()
}

#[tokio::test]
async fn health_on_fresh_store() {
    let (status, body) = call(&app(), Request::get("/health").body(Body::empty()).unwrap()).await;
    assert_eq!(status, StatusCode::OK);
    let v: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["status"], "ok");
    assert_eq!(v["triples"], 0);
}

#[tokio::test]
async fn turtle_post_then_query_user() {
    let app = app();
    let req = Request::post("/observations")
        .header("content-type", "text/turtle")
        .body(Body::from(read("observations.ttl")))
        .unwrap();
    let (status, body) = call(&app, req).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    assert!(body.contains("\"observations\":1"), "{body}");

    let q = "SELECT ?u WHERE { <http://imreal-project.eu/observation/1> \
             <http://wis.ewi.tudelft.nl/rdf/grapple-core.owl#user> ?u }";
    let (status, rows) = call(&app, sparql(q)).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(rows, "?u\n<http://bob.myopenid.com>\n");
}

#[tokio::test]
async fn unknown_user_is_404() {
    let (status, body) = call(&app(), Request::get("/profiles/http%3A%2F%2Fnobody.example%2F").body(Body::empty()).unwrap()).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert!(body.contains("error"));
}

#[tokio::test]
async fn unsupported_keyword_is_422() {
    let (status, body) = call(&app(), sparql("SELECT ?s WHERE { ?s ?p ?o OPTIONAL { ?s ?p ?x } }")).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(body.contains("OPTIONAL"), "{body}");
}

#[tokio::test]
async fn malformed_inputs_are_400() {
    let app = app();
    let (status, _) = call(&app, sparql("SELECT WHERE {")).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let req = Request::post("/observations")
        .header("content-type", "application/json")
        .body(Body::from("{\"tweets\": []}"))
        .unwrap();
    assert_eq!(call(&app, req).await.0, StatusCode::BAD_REQUEST);
    let (status, _) = call(&app, Request::get("/profiles/http%3A%2F%2Fbob.myopenid.com?as_of=yesterday").body(Body::empty()).unwrap()).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn profile_content_type_is_turtle() {
    let app = app();
    let req = Request::post("/observations")
        .header("content-type", "text/turtle")
        .body(Body::from(read("observations.ttl")))
        .unwrap();
    call(&app, req).await;
    let resp = app
        .clone()
        .oneshot(Request::get("/profiles/http%3A%2F%2Fbob.myopenid.com").body(Body::empty()).unwrap())
        .await
        .unwrap();
    assert_eq!(resp.status(), StatusCode::OK);
    assert_eq!(resp.headers()["content-type"], "text/turtle; charset=utf-8");
}

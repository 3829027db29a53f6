use axum::body::Body;
use axum::http::{Request, StatusCode};
use flagcluster::cli::service::router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
    let req = match body {
        Some(b) => req.body(Body::from(b.to_string())).unwrap(),
        None => req.body(Body::empty()).unwrap(),
    };
    let resp = router().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

async fn call_raw(uri: &str, body: &str) -> StatusCode {
    let req = Request::builder()
        .method("POST")
        .uri(uri)
        .header("content-type", "application/json")
        .body(Body::from(body.to_string()))
        .unwrap();
    router().oneshot(req).await.unwrap().status()
}

fn printed_matrix() -> Value {
    json!([
        [0, 0, 0, 0, -1, 0],
        [0, 0, -1, 0, 1, 0],
        [0, 1, 0, -1, -1, 1],
        [0, 0, 1, 0, 0, -1],
        [1, -1, 1, 0, 0, -1],
        [0, 0, -1, 1, 1, 0],
        [1, 0, 0, 0, 0, 0],
        [-1, 1, 0, 0, 0, 0],
        [0, -1, 1, 0, 0, 0],
        [0, 0, -1, 1, 0, 0],
        [0, 0, 0, -1, 0, 0]
    ])
}

#[tokio::test]
async fn seed_endpoint_returns_the_a5_matrix() {
    let (st, doc) = call("POST", "/api/seed", Some(json!({"type": "A5", "J": [1, 3]}))).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(doc["v"], 1);
    assert_eq!(doc["matrix"]["entries"], printed_matrix());
    assert_eq!(doc["matrix"]["row_labels"], json!(["5", "6", "7", "8", "10", "11", "-1", "1", "-3", "4", "3"]));
    assert_eq!(doc["word"], json!([2, 4, 5, 4, 1, 2, 3, 4, 5, 2, 3, 4, 1, 2, 3]));
}

#[tokio::test]
async fn seed_endpoint_extend_and_preset() {
    let (st, doc) = call("POST", "/api/seed", Some(json!({"type": "A5", "J": [1, 3], "extend": true}))).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(doc["matrix"]["entries"][11], json!([0, -1, 0, 0, 0, 0]));
    assert_eq!(doc["matrix"]["entries"][12], json!([0, 0, 0, 0, 0, 1]));
    let (st, doc) = call("POST", "/api/seed", Some(json!({"type": "D5", "J": [1], "preset": "isotropic"}))).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(doc["matrix"]["col_labels"], json!(["z1", "z2", "z3", "z4", "z5"]));
}

#[tokio::test]
async fn invalid_input_is_400() {
    let (st, body) = call("POST", "/api/seed", Some(json!({"type": "A5"}))).await;
    assert_eq!(st, StatusCode::BAD_REQUEST);
    assert_eq!(body["error"]["kind"], "missing");
    let (st, _) = call("POST", "/api/seed", Some(json!({"type": "X9", "J": [1]}))).await;
    assert_eq!(st, StatusCode::BAD_REQUEST);
    let bad_word = json!({"type": "A5", "J": [1, 3], "word": [1, 4, 5, 4, 2, 2, 3, 4, 5, 2, 3, 4, 1, 2, 3]});
    let (st, body) = call("POST", "/api/seed", Some(bad_word)).await;
    assert_eq!(st, StatusCode::BAD_REQUEST);
    assert_eq!(body["error"]["kind"], "word_rejected");
    assert_eq!(call_raw("/api/seed", "{not json").await, StatusCode::BAD_REQUEST);
    assert_eq!(call_raw("/api/mutate", "{\"k\": 5}").await, StatusCode::BAD_REQUEST);
    let (st, _) = call("POST", "/api/classify", Some(json!({"principal": [[0, 1], [1, 0]]}))).await;
    assert_eq!(st, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn mutate_unknown_or_frozen_vertex_is_422() {
    let (_, doc) = call("POST", "/api/seed", Some(json!({"preset": "A5-J13"}))).await;
    for k in [json!("99"), json!("-1"), json!(3)] {
        let (st, body) = call("POST", "/api/mutate", Some(json!({"seed": doc.clone(), "k": k}))).await;
        assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY, "{body}");
        assert_eq!(body["error"]["kind"], "not_mutable");
    }
}

#[tokio::test]
async fn mutate_twice_restores_the_document() {
    let (_, doc) = call("POST", "/api/seed", Some(json!({"type": "A5", "J": [1, 3]}))).await;
    let (st, once) = call("POST", "/api/mutate", Some(json!({"seed": doc.clone(), "k": "7"}))).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(once["new_variable"]["label"], "7");
    assert_ne!(once["seed"], doc);
    let (st, twice) = call("POST", "/api/mutate", Some(json!({"seed": once["seed"].clone(), "k": 7}))).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(twice["seed"], doc);
}

#[tokio::test]
async fn replaying_history_reproduces_the_document() {
    let (_, doc) = call("POST", "/api/seed", Some(json!({"preset": "A5-J13"}))).await;
    let mut a = doc.clone();
    for k in ["6", "11", "7"] {
        a = call("POST", "/api/mutate", Some(json!({"seed": a, "k": k}))).await.1["seed"].clone();
    }
    let mut b = doc;
    for k in ["6", "11", "7"] {
        b = call("POST", "/api/mutate", Some(json!({"seed": b, "k": k}))).await.1["seed"].clone();
    }
    assert_eq!(a.to_string(), b.to_string());
    let (st, verdict) = call("POST", "/api/classify", Some(json!({"principal": principal_of(&a)}))).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(verdict["result"]["verdict"], "finite");
    assert_eq!(verdict["result"]["name"], "E6");
    // the current quiver is already of Dynkin shape
    assert_eq!(verdict["result"]["sequence"], json!([]));
}

fn principal_of(doc: &Value) -> Value {
    let n = doc["matrix"]["col_labels"].as_array().unwrap().len();
    let rows: Vec<Value> = doc["matrix"]["entries"].as_array().unwrap()[..n].to_vec();
    Value::Array(rows)
}

#[tokio::test]
async fn classify_endpoint() {
    let (st, v) = call("POST", "/api/classify", Some(json!({"principal": [[0, 2], [-2, 0]]}))).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(v["result"]["verdict"], "infinite");
    let (st, v) = call("POST", "/api/classify", Some(json!({"type": "D6", "J": [6]}))).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(v["text"], "Finite (A1)^4");
    assert!(v["dot"].as_str().unwrap().starts_with("digraph"));
    let (st, v) = call("POST", "/api/classify", Some(json!({"principal": [[0, 1], [-2, 0]], "symmetrizer": [2, 1]}))).await;
    assert_eq!(st, StatusCode::OK);
    assert!(matches!(v["result"]["name"].as_str(), Some("B2") | Some("C2")));
}

#[tokio::test]
async fn presets_endpoint() {
    let (st, v) = call("GET", "/api/presets", None).await;
    assert_eq!(st, StatusCode::OK);
    let names: Vec<&str> = v["presets"].as_array().unwrap().iter().map(|p| p["name"].as_str().unwrap()).collect();
    for want in ["A5-J13", "D4-J3", "D5-isotropic", "quadric-5", "grid-7-4"] {
        assert!(names.contains(&want), "{want} missing");
    }
    for name in names {
        let (st, _) = call("POST", "/api/seed", Some(json!({ "preset": name }))).await;
        assert_eq!(st, StatusCode::OK, "{name}");
    }
}

#[tokio::test]
async fn responses_are_pure_functions_of_the_request() {
    let req = json!({"type": "A4", "J": [2, 3]});
    let (_, a) = call("POST", "/api/seed", Some(req.clone())).await;
    let (_, b) = call("POST", "/api/seed", Some(req)).await;
    assert_eq!(a.to_string(), b.to_string());
}

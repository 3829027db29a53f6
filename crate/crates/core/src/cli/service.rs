//! Stateless JSON service. Every handler is a pure function of the request
//! body; clients hold the seed documents.

use axum::body::Bytes;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::document::{self, SeedDocument, SeedRequest, FORMAT_VERSION};
use crate::classify::{self, ClusterTypeVerdict};
use crate::error::Error;
use crate::liealg::DynkinDiagram;
use crate::seedgen::ExchangeMatrix;

pub fn router() -> Router {
    Router::new()
        .route("/api/seed", post(seed))
        .route("/api/mutate", post(mutate))
        .route("/api/classify", post(classify_handler))
        .route("/api/presets", get(presets))
}

pub async fn serve(host: &str, port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind((host, port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router()).await
}

pub struct ApiError {
    status: StatusCode,
    kind: String,
    message: String,
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NotMutable(_) | Error::InexactDivision(_) => StatusCode::UNPROCESSABLE_ENTITY,
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError { status, kind: e.kind().into(), message: e.to_string() }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({"v": FORMAT_VERSION, "error": {"kind": self.kind, "message": self.message}});
        (self.status, Json(body)).into_response()
    }
}

fn parse<T: DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError {
        status: StatusCode::BAD_REQUEST,
        kind: "bad_request".into(),
        message: e.to_string(),
    })
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, ApiError> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f).await.map_err(|e| ApiError {
        status: StatusCode::INTERNAL_SERVER_ERROR,
        kind: "internal".into(),
        message: e.to_string(),
    })?
}

async fn seed(body: Bytes) -> Result<Json<SeedDocument>, ApiError> {
    let req: SeedRequest = parse(&body)?;
    blocking(move || Ok(document::build_seed(&req)?)).await.map(Json)
}

#[derive(Deserialize)]
struct MutateRequest {
    seed: SeedDocument,
    k: Value,
}

#[derive(Serialize)]
pub struct NewVariable {
    pub label: String,
    pub text: String,
}

#[derive(Serialize)]
struct MutateResponse {
    v: u32,
    seed: SeedDocument,
    new_variable: NewVariable,
}

async fn mutate(body: Bytes) -> Result<Json<Value>, ApiError> {
    let req: MutateRequest = parse(&body)?;
    let k = match &req.k {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => return Err(Error::Invalid(format!("k must be a label, got {other}")).into()),
    };
    blocking(move || {
        req.seed.check()?;
        let label = req.seed.resolve_label(&k)?;
        let (seed, text) = req.seed.mutate(&label)?;
        let out = MutateResponse { v: FORMAT_VERSION, seed, new_variable: NewVariable { label, text } };
        Ok(serde_json::to_value(out).expect("responses serialize"))
    })
    .await
    .map(Json)
}

#[derive(Deserialize, Default)]
pub struct ClassifyRequest {
    #[serde(default)]
    pub principal: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub symmetrizer: Option<Vec<i64>>,
    #[serde(rename = "type", default)]
    pub diagram: Option<String>,
    #[serde(rename = "J", default)]
    pub j: Option<Vec<usize>>,
    #[serde(default)]
    pub extended: bool,
    #[serde(default)]
    pub cap: Option<usize>,
}

/// Shared by the service and the command line.
pub fn classify_request(req: &ClassifyRequest, cap: usize) -> crate::error::Result<(ExchangeMatrix, ClusterTypeVerdict)> {
    let m = match (&req.principal, &req.diagram) {
        (Some(p), _) => match &req.symmetrizer {
            Some(d) => {
                let labels: Vec<String> = (1..=p.len()).map(|i| i.to_string()).collect();
                ExchangeMatrix::new_symmetrizable(p.clone(), labels.clone(), labels, d.clone())?
            }
            None => ExchangeMatrix::from_principal(p.clone())?,
        },
        (None, Some(t)) => {
            let d = DynkinDiagram::parse(t, req.extended)?;
            let j = req.j.clone().ok_or_else(|| Error::Missing("J".into()))?;
            classify::flag_seed_matrix(&d, &j)?
        }
        (None, None) => return Err(Error::Missing("principal or type".into())),
    };
    let v = classify::is_finite_type(&m, cap)?;
    Ok((m, v))
}

pub fn verdict_json(v: &ClusterTypeVerdict) -> Value {
    let mut out = json!({"v": FORMAT_VERSION, "text": v.to_string(), "result": v});
    if let ClusterTypeVerdict::Finite { matrix, .. } = v {
        if let Ok(m) = ExchangeMatrix::from_principal(matrix.clone()) {
            out["dot"] = Value::String(m.to_dot("dynkin_form"));
        }
    }
    out
}

async fn classify_handler(body: Bytes) -> Result<Json<Value>, ApiError> {
    let req: ClassifyRequest = parse(&body)?;
    let env_cap = classify::cap_from_env();
    let cap = req.cap.map_or(env_cap, |c| c.min(env_cap));
    blocking(move || {
        let (_, v) = classify_request(&req, cap)?;
        Ok(verdict_json(&v))
    })
    .await
    .map(Json)
}

async fn presets() -> Json<Value> {
    Json(json!({"v": FORMAT_VERSION, "presets": document::presets()}))
}

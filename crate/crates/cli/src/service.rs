//! HTTP+JSON session service.
//!
//! `POST /sessions {gameRef, humanSide, horizon?}`, `POST /sessions/{id}/moves
//! {bit}`, `GET /sessions/{id}`, `GET /sessions/{id}/transcript`,
//! `GET /games`, `POST /decide`, `GET /health`. Errors are
//! `{code, message}` with 400 for malformed requests, 404 for unknown ids,
//! 409 for moves out of turn or after the end, 422 for exhausted resources.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path as UrlPath, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use borelwb::automata::AutomataError;
use borelwb::games::{catalog, gs_solve, replay, GaleStewartGame, GameError, Player, SessionStore, SessionView, Solution, Transcript};
use borelwb::mso::{decide_cantor, decide_cantor_codes, decide_s2s_with, parse_cantor, parse_mso, Binding, MsoError};
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::CliError;

pub struct GameEntry {
    pub summary: String,
    pub game: Arc<GaleStewartGame>,
    pub solution: Arc<Solution>,
}

pub struct AppState {
    pub config: Config,
    pub store: SessionStore,
    pub games: BTreeMap<String, GameEntry>,
    log: Option<Mutex<File>>,
}

impl AppState {
    /// The game catalog, solved once.
    pub fn new(config: Config) -> Result<Self, CliError> {
        let mut games = BTreeMap::new();
        for c in catalog() {
            let solution = Arc::new(gs_solve(&c.game)?);
            games.insert(c.name.to_string(), GameEntry { summary: c.summary.to_string(), game: Arc::new(c.game), solution });
        }
        Ok(AppState { config, store: SessionStore::new(), games, log: None })
    }

    /// Replays the transcripts in `path`, then appends every change to it.
    pub fn with_transcripts(mut self, path: &Path) -> Result<Self, CliError> {
        let io = |e: std::io::Error| CliError::Parse(format!("{}: {e}", path.display()));
        if path.exists() {
            let mut latest: BTreeMap<u64, Transcript> = BTreeMap::new();
            for line in BufReader::new(File::open(path).map_err(io)?).lines() {
                let line = line.map_err(io)?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: LogRecord =
                    serde_json::from_str(&line).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
                latest.insert(rec.id, rec.transcript);
            }
            for (id, t) in latest {
                let entry = self.games.get(&t.game_ref).ok_or_else(|| CliError::Parse(format!("unknown game {}", t.game_ref)))?;
                let views = replay(&self.store, &t, entry.game.clone(), entry.solution.clone())?;
                if views[0].id != id {
                    return Err(CliError::Parse(format!("{}: session ids are not contiguous at {id}", path.display())));
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
        self.log = Some(Mutex::new(file));
        Ok(self)
    }

    fn persist(&self, id: u64) {
        let Some(log) = &self.log else { return };
        if let Ok(transcript) = self.store.transcript(id) {
            let line = serde_json::to_string(&LogRecord { id, transcript }).expect("serializable");
            let mut f = log.lock().expect("log");
            // a failed append only loses persistence, the session itself is intact
            let _ = writeln!(f, "{line}");
        }
    }
}

#[derive(Serialize, Deserialize)]
struct LogRecord {
    id: u64,
    transcript: Transcript,
}

#[derive(Debug, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    status: StatusCode,
    pub code: String,
    pub message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError { status, code: code.to_string(), message: message.into() }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self)).into_response()
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "Malformed", r.body_text())
    }
}

fn automata_error(e: AutomataError) -> ApiError {
    match e {
        AutomataError::ResourceExceeded { .. } => ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "ResourceExceeded", e.to_string()),
        e => ApiError::new(StatusCode::BAD_REQUEST, "Malformed", e.to_string()),
    }
}

impl From<GameError> for ApiError {
    fn from(e: GameError) -> Self {
        let msg = e.to_string();
        match e {
            GameError::UnknownSession(_) => ApiError::new(StatusCode::NOT_FOUND, "UnknownSession", msg),
            GameError::WrongTurn => ApiError::new(StatusCode::CONFLICT, "WrongTurn", msg),
            GameError::SessionClosed => ApiError::new(StatusCode::CONFLICT, "SessionClosed", msg),
            GameError::BadMove(_) => ApiError::new(StatusCode::BAD_REQUEST, "BadMove", msg),
            GameError::Automata(a) => automata_error(a),
            GameError::BadHorizon { .. } | GameError::BadPayoff(_) => ApiError::new(StatusCode::BAD_REQUEST, "Malformed", msg),
        }
    }
}

impl From<MsoError> for ApiError {
    fn from(e: MsoError) -> Self {
        match e {
            MsoError::Automata(a) => automata_error(a),
            MsoError::BoundExceeded { .. } => ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "ResourceExceeded", e.to_string()),
            e => ApiError::new(StatusCode::BAD_REQUEST, "Malformed", e.to_string()),
        }
    }
}

type Shared = Arc<AppState>;
type ApiResult<T> = Result<T, ApiError>;

fn session_id(raw: &str) -> ApiResult<u64> {
    raw.parse().map_err(|_| ApiError::new(StatusCode::BAD_REQUEST, "Malformed", format!("session id {raw} is not a number")))
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct NewSession {
    pub game_ref: String,
    pub human_side: Player,
    pub horizon: Option<usize>,
}

async fn create_session(State(s): State<Shared>, body: Result<Json<NewSession>, JsonRejection>) -> ApiResult<(StatusCode, Json<SessionView>)> {
    let Json(req) = body?;
    let entry = s
        .games
        .get(&req.game_ref)
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "UnknownGame", format!("unknown game {}", req.game_ref)))?;
    let horizon = req.horizon.unwrap_or(s.config.horizon);
    if horizon == 0 {
        return Err(ApiError::new(StatusCode::BAD_REQUEST, "Malformed", "horizon must be positive"));
    }
    let view = s.store.session_new(&req.game_ref, entry.game.clone(), entry.solution.clone(), req.human_side, horizon);
    s.persist(view.id);
    Ok((StatusCode::CREATED, Json(view)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Move {
    pub bit: u8,
}

async fn make_move(
    State(s): State<Shared>,
    UrlPath(id): UrlPath<String>,
    body: Result<Json<Move>, JsonRejection>,
) -> ApiResult<Json<SessionView>> {
    let id = session_id(&id)?;
    let Json(m) = body?;
    let view = s.store.session_move(id, m.bit)?;
    s.persist(id);
    Ok(Json(view))
}

async fn get_session(State(s): State<Shared>, UrlPath(id): UrlPath<String>) -> ApiResult<Json<SessionView>> {
    Ok(Json(s.store.session_state(session_id(&id)?)?))
}

async fn get_transcript(State(s): State<Shared>, UrlPath(id): UrlPath<String>) -> ApiResult<Json<Transcript>> {
    Ok(Json(s.store.transcript(session_id(&id)?)?))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GameInfo {
    pub game_ref: String,
    pub summary: String,
    pub winner: Player,
    pub states: usize,
}

async fn list_games(State(s): State<Shared>) -> Json<Vec<GameInfo>> {
    Json(
        s.games
            .iter()
            .map(|(name, e)| GameInfo {
                game_ref: name.clone(),
                summary: e.summary.clone(),
                winner: e.solution.winner,
                states: e.game.payoff.states(),
            })
            .collect(),
    )
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DecideRequest {
    S2s { formula: String },
    Cantor { formula: String, #[serde(default)] bindings: BTreeMap<String, Binding> },
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DecideResponse {
    pub result: bool,
    /// Answer through the codes of the parameters, when determined.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub code_route: Option<bool>,
}

fn decide(req: DecideRequest, cap: usize) -> ApiResult<DecideResponse> {
    match req {
        DecideRequest::S2s { formula } => {
            let f = parse_mso(&formula)?;
            Ok(DecideResponse { result: decide_s2s_with(&f, cap)?, code_route: None })
        }
        DecideRequest::Cantor { formula, bindings } => {
            let f = parse_cantor(&formula)?;
            let result = decide_cantor(&f, &bindings)?;
            Ok(DecideResponse { result, code_route: decide_cantor_codes(&f, &bindings)? })
        }
    }
}

async fn post_decide(State(s): State<Shared>, body: Result<Json<DecideRequest>, JsonRejection>) -> ApiResult<Json<DecideResponse>> {
    let Json(req) = body?;
    let cap = s.config.cap;
    let out = tokio::task::spawn_blocking(move || decide(req, cap))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "Internal", e.to_string()))??;
    Ok(Json(out))
}

async fn health() -> Json<serde_json::Value> {
    Json(serde_json::json!({ "status": "ok" }))
}

async fn not_found() -> ApiError {
    ApiError::new(StatusCode::NOT_FOUND, "NotFound", "no such endpoint")
}

pub fn router(state: Shared) -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/games", get(list_games))
        .route("/decide", post(post_decide))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/moves", post(make_move))
        .route("/sessions/{id}/transcript", get(get_transcript))
        .fallback(not_found)
        .with_state(state)
}

/// Serves until the process is stopped.
pub fn serve(config: Config, transcripts: Option<PathBuf>) -> Result<(), CliError> {
    let port = config.port;
    let mut state = AppState::new(config)?;
    if let Some(p) = transcripts {
        state = state.with_transcripts(&p)?;
    }
    let app = router(Arc::new(state));
    let rt = tokio::runtime::Runtime::new().map_err(|e| CliError::Resource(e.to_string()))?;
    rt.block_on(async move {
        let listener = tokio::net::TcpListener::bind(("0.0.0.0", port))
            .await
            .map_err(|e| CliError::Resource(format!("port {port}: {e}")))?;
        eprintln!("listening on port {port}");
        axum::serve(listener, app).await.map_err(|e| CliError::Resource(e.to_string()))
    })
}

//! JSON over HTTP: finite board sessions and stateless infinite-strip queries.
//!
//! Vertices are 1-based everywhere; bit strings list vertex 1 first.

use std::net::SocketAddr;
use std::sync::Arc;
use std::time::SystemTime;

use axum::extract::rejection::JsonRejection;
use axum::extract::{FromRequest, Path, Query, Request, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{async_trait, Json, Router};
use lightsout_core::lightsout::{
    board_solutions, press, BoardState, ClickSet, Graph, GraphFile,
};
use lightsout_core::rowfinite::{PeriodicSpec, RowFiniteMatrix};
use lightsout_core::transfer::{solve_prefix, Certificate, PrefixPolicy, Target, TransferAutomaton};
use lightsout_core::{Error, Gf2Vector};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::sessions::{Session, SessionStore};

pub const MAX_VERTICES: usize = 2500;
pub const MAX_PREFIX: usize = 2048;
pub const MAX_HORIZON: usize = 256;

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, message)
    }

    fn not_found(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, format!("no session {id}"))
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InternalTheoremViolation(_) => StatusCode::INTERNAL_SERVER_ERROR,
            _ => StatusCode::BAD_REQUEST,
        };
        Self::new(status, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message }))).into_response()
    }
}

/// `Json` whose every rejection, syntax or shape, is a 400.
pub struct Body<T>(pub T);

#[async_trait]
impl<S, T> FromRequest<S> for Body<T>
where
    Json<T>: FromRequest<S, Rejection = JsonRejection>,
    S: Send + Sync,
{
    type Rejection = ApiError;

    async fn from_request(req: Request, state: &S) -> Result<Self, Self::Rejection> {
        Json::<T>::from_request(req, state)
            .await
            .map(|Json(v)| Body(v))
            .map_err(|e| ApiError::bad_request(e.body_text()))
    }
}

type Store = Arc<SessionStore>;

pub fn router(store: Store) -> Router {
    Router::new()
        .route("/boards", post(create_board))
        .route("/boards/:id", get(get_board))
        .route("/boards/:id/press", post(press_vertex))
        .route("/boards/:id/self-loop", post(set_self_loop))
        .route("/boards/:id/hint", get(hint))
        .route("/boards/:id/solution", get(solution))
        .route("/infinite/prefix", post(infinite_prefix))
        .with_state(store)
}

pub fn app() -> Router {
    router(Arc::new(SessionStore::default()))
}

pub async fn serve(port: u16) -> anyhow::Result<()> {
    let addr = SocketAddr::from(([0, 0, 0, 0], port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, app()).await?;
    Ok(())
}

#[derive(Debug, Deserialize)]
pub struct GridSpec {
    pub rows: usize,
    pub cols: usize,
}

#[derive(Debug, Deserialize)]
pub struct CreateBoard {
    pub grid: Option<GridSpec>,
    pub graph: Option<Graph>,
    /// A bit string, `"on"`, or `"off"` (the default).
    pub initial: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct BoardView {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cols: Option<usize>,
    pub graph: GraphFile,
    pub state: Gf2Vector,
    pub lit: Vec<usize>,
    pub all_off: bool,
}

fn view(id: &str, s: &Session) -> BoardView {
    BoardView {
        id: id.to_string(),
        rows: s.grid.map(|g| g.0),
        cols: s.grid.map(|g| g.1),
        graph: s.graph.clone().into(),
        state: s.state.0.clone(),
        lit: s.state.0.iter_ones().map(|i| i + 1).collect(),
        all_off: s.state.0.is_zero(),
    }
}

fn parse_initial(text: Option<&str>, n: usize) -> Result<BoardState, ApiError> {
    match text {
        None | Some("off") => Ok(BoardState::all_off(n)),
        Some("on") => Ok(BoardState::all_on(n)),
        Some(bits) => {
            let v: Gf2Vector = bits.parse().map_err(|e: Error| ApiError::bad_request(e.to_string()))?;
            if v.len() != n {
                return Err(ApiError::bad_request(format!("initial has {} bits for {n} vertices", v.len())));
            }
            Ok(BoardState(v))
        }
    }
}

async fn create_board(State(store): State<Store>, Body(req): Body<CreateBoard>) -> Result<Response, ApiError> {
    let (graph, grid) = match (req.grid, req.graph) {
        (Some(g), None) => {
            if g.rows.saturating_mul(g.cols) > MAX_VERTICES {
                return Err(ApiError::bad_request(format!("boards are limited to {MAX_VERTICES} vertices")));
            }
            (Graph::classic_grid(g.rows, g.cols)?, Some((g.rows, g.cols)))
        }
        (None, Some(graph)) => {
            if graph.vertex_count() > MAX_VERTICES {
                return Err(ApiError::bad_request(format!("boards are limited to {MAX_VERTICES} vertices")));
            }
            (graph, None)
        }
        _ => return Err(ApiError::bad_request("give exactly one of grid or graph")),
    };
    let state = parse_initial(req.initial.as_deref(), graph.vertex_count())?;
    let (id, session) = store.insert(Session {
        graph,
        grid,
        state,
        created_at: SystemTime::now(),
    });
    let body = view(&id, &session.lock().unwrap());
    Ok((StatusCode::CREATED, Json(body)).into_response())
}

fn session(store: &SessionStore, id: &str) -> Result<Arc<std::sync::Mutex<Session>>, ApiError> {
    store.get(id).ok_or_else(|| ApiError::not_found(id))
}

async fn get_board(State(store): State<Store>, Path(id): Path<String>) -> Result<Json<BoardView>, ApiError> {
    let s = session(&store, &id)?;
    let s = s.lock().unwrap();
    Ok(Json(view(&id, &s)))
}

#[derive(Debug, Deserialize)]
pub struct PressRequest {
    pub vertex: usize,
}

async fn press_vertex(
    State(store): State<Store>,
    Path(id): Path<String>,
    Body(req): Body<PressRequest>,
) -> Result<Json<BoardView>, ApiError> {
    let s = session(&store, &id)?;
    let mut s = s.lock().unwrap();
    s.state = press(&s.graph, &s.state, req.vertex)?;
    Ok(Json(view(&id, &s)))
}

#[derive(Debug, Deserialize)]
pub struct SelfLoopRequest {
    pub vertex: usize,
    /// Toggles when absent.
    pub on: Option<bool>,
}

async fn set_self_loop(
    State(store): State<Store>,
    Path(id): Path<String>,
    Body(req): Body<SelfLoopRequest>,
) -> Result<Json<BoardView>, ApiError> {
    let s = session(&store, &id)?;
    let mut s = s.lock().unwrap();
    if req.vertex == 0 || req.vertex > s.graph.vertex_count() {
        return Err(Error::IndexOutOfRange {
            index: req.vertex,
            limit: s.graph.vertex_count(),
        }
        .into());
    }
    let on = req.on.unwrap_or(!s.graph.has_self_loop(req.vertex));
    s.graph.set_self_loop(req.vertex, on)?;
    Ok(Json(view(&id, &s)))
}

/// What a solution should reach: all lights off, or lit exactly on the self-looped vertices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GoalKind {
    #[default]
    Off,
    SelfLoops,
}

#[derive(Debug, Default, Deserialize)]
pub struct GoalQuery {
    #[serde(default)]
    pub target: GoalKind,
}

enum Plan {
    Solvable { clicks: ClickSet, nullity: usize },
    Unsolvable { witness: Gf2Vector },
}

fn plan(s: &Session, goal: GoalKind) -> Result<Plan, ApiError> {
    let n = s.graph.vertex_count();
    let target = match goal {
        GoalKind::Off => BoardState::all_off(n),
        GoalKind::SelfLoops => BoardState(s.graph.self_loops().clone()),
    };
    let set = board_solutions(&s.graph, &s.state, &target)?;
    Ok(match set.particular() {
        Some(x) => Plan::Solvable {
            clicks: ClickSet(x.clone()),
            nullity: set.nullity(),
        },
        None => Plan::Unsolvable {
            witness: set.witness().cloned().expect("infeasible systems carry a witness"),
        },
    })
}

fn ones(v: &Gf2Vector) -> Vec<usize> {
    v.iter_ones().map(|i| i + 1).collect()
}

/// Lowest vertex in the canonical solution from the current state; `null` once solved.
async fn hint(
    State(store): State<Store>,
    Path(id): Path<String>,
    Query(q): Query<GoalQuery>,
) -> Result<Json<serde_json::Value>, ApiError> {
    let s = session(&store, &id)?;
    let s = s.lock().unwrap();
    Ok(Json(match plan(&s, q.target)? {
        Plan::Solvable { clicks, .. } => json!({
            "target": q.target,
            "solvable": true,
            "vertex": clicks.pressed().first(),
            "remaining": clicks.count(),
        }),
        Plan::Unsolvable { witness } => json!({
            "target": q.target,
            "solvable": false,
            "witness": ones(&witness),
        }),
    }))
}

/// The canonical click set, or a parity witness: an odd number of the witness
/// lights must change, yet every press changes an even number of them.
async fn solution(
    State(store): State<Store>,
    Path(id): Path<String>,
    Query(q): Query<GoalQuery>,
) -> Result<Json<serde_json::Value>, ApiError> {
    let s = session(&store, &id)?;
    let s = s.lock().unwrap();
    Ok(Json(match plan(&s, q.target)? {
        Plan::Solvable { clicks, nullity } => json!({
            "target": q.target,
            "solvable": true,
            "clicks": clicks.pressed(),
            "nullity": nullity,
        }),
        Plan::Unsolvable { witness } => json!({
            "target": q.target,
            "solvable": false,
            "witness": ones(&witness),
        }),
    }))
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Horizon(usize),
}

#[derive(Debug, Deserialize)]
pub struct PrefixRequest {
    pub spec: PeriodicSpec,
    pub p: usize,
    pub mode: Mode,
    /// Base block size for horizon mode; defaults to `max(p, 1)`.
    pub n: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct PeriodicClicks {
    pub transient: Gf2Vector,
    pub cycle: Gf2Vector,
}

#[derive(Debug, Serialize)]
pub struct PrefixResponse {
    pub p: usize,
    pub prefix: Gf2Vector,
    pub clicks: Vec<usize>,
    pub certificate: String,
    pub horizon: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub periodic: Option<PeriodicClicks>,
}

/// First `p` clicks lighting exactly the self-looped vertices of an infinite strip.
async fn infinite_prefix(Body(req): Body<PrefixRequest>) -> Result<Json<PrefixResponse>, ApiError> {
    if req.p > MAX_PREFIX {
        return Err(ApiError::bad_request(format!("p is limited to {MAX_PREFIX}")));
    }
    let m = RowFiniteMatrix::periodic(req.spec.clone());
    let (policy, periodic) = match req.mode {
        Mode::Exact => {
            let automaton = TransferAutomaton::new(&req.spec, &Target::Diagonal)?;
            let sol = automaton.eventually_periodic(&automaton.live_states())?;
            (
                PrefixPolicy::Exact,
                Some(PeriodicClicks {
                    transient: sol.transient,
                    cycle: sol.cycle,
                }),
            )
        }
        Mode::Horizon(h) => {
            if h == 0 || h > MAX_HORIZON {
                return Err(ApiError::bad_request(format!("horizon must be in 1..={MAX_HORIZON}")));
            }
            let n = req.n.unwrap_or(req.p.max(1));
            if n == 0 || n > MAX_PREFIX {
                return Err(ApiError::bad_request(format!("n must be in 1..={MAX_PREFIX}")));
            }
            (PrefixPolicy::Horizon { n, horizon: h }, None)
        }
    };
    let answer = solve_prefix(&m, req.p, policy, &Target::Diagonal)?;
    Ok(Json(PrefixResponse {
        p: req.p,
        clicks: ones(&answer.prefix),
        prefix: answer.prefix,
        certificate: answer.certificate.to_string(),
        horizon: answer.certificate,
        periodic,
    }))
}

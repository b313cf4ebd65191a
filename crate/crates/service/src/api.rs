// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::sync::Arc;

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::routing::{get, post};
use axum::{Json, Router};
use gscore_core::metrics::score_slope;
use gscore_core::{
    expected_categories_won, win_probability_linear, Category, CategoryKind, KappaMode, MetricKind, PlayerId, PoolMode,
    ValueScore, CATEGORY_COUNT,
};
use serde::{Deserialize, Serialize};
use uuid::Uuid;

use crate::error::ServiceError;
use crate::session::{Clock, Pick, Session, SessionConfig, Valuation};
use crate::store::{lock, AppState};

type Shared = State<Arc<AppState>>;
type ApiResult<T> = Result<Json<T>, ServiceError>;

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/picks", post(post_pick))
        .route("/sessions/{id}/recommendations", get(recommendations))
        .route("/sessions/{id}/whatif/{player_id}", get(whatif))
        .route("/players", get(players))
        .route("/rankings", get(rankings))
        .with_state(state)
}

fn query<T>(q: Result<Query<T>, QueryRejection>) -> Result<T, ServiceError> {
    q.map(|Query(v)| v).map_err(|e| ServiceError::BadRequest(e.body_text()))
}

fn body<T>(b: Result<Json<T>, JsonRejection>) -> Result<T, ServiceError> {
    b.map(|Json(v)| v).map_err(|e| ServiceError::BadRequest(e.body_text()))
}

fn session_id(raw: &str) -> Result<Uuid, ServiceError> {
    raw.parse().map_err(|_| ServiceError::UnknownSession(raw.to_owned()))
}

fn metric(raw: Option<&str>) -> Result<MetricKind, ServiceError> {
    raw.unwrap_or("g").parse().map_err(ServiceError::BadRequest)
}

// ---------------------------------------------------------------------------
// Views

fn by_label<T: Copy>(f: impl Fn(Category) -> T) -> BTreeMap<&'static str, T> {
    Category::ALL.iter().map(|&c| (c.label(), f(c))).collect()
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ScoreRow {
    pub rank: usize,
    pub player_id: PlayerId,
    pub total: f64,
    pub scores: BTreeMap<String, f64>,
    /// Expected categories won against a random opponent.
    pub v: f64,
    /// `v` minus the even-matchup baseline.
    pub marginal_v: f64,
}

impl ScoreRow {
    fn new(rank: usize, score: &ValueScore, roster: usize) -> Self {
        let (v, marginal_v) = expected_categories_won(score, roster, CATEGORY_COUNT);
        ScoreRow {
            rank,
            player_id: score.player_id.clone(),
            total: score.total,
            scores: by_label(|c| score.categories[c]).into_iter().map(|(k, v)| (k.to_owned(), v)).collect(),
            v,
            marginal_v,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BoardCell {
    pub pick: usize,
    pub seat: usize,
    pub player_id: Option<PlayerId>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SessionView {
    pub session_id: Uuid,
    pub config: SessionConfig,
    pub total_picks: usize,
    pub picks: Vec<Pick>,
    pub on_clock: Option<Clock>,
    pub complete: bool,
    pub available_count: usize,
    pub my_roster: Vec<PlayerId>,
    /// `board[round][seat]`; odd rounds run right to left.
    pub board: Vec<Vec<BoardCell>>,
}

impl SessionView {
    fn of(s: &Session) -> Self {
        let teams = s.config.teams;
        let board = (0..s.config.roster)
            .map(|round| {
                (0..teams)
                    .map(|seat| {
                        let offset = if round % 2 == 0 { seat } else { teams - 1 - seat };
                        let index = round * teams + offset;
                        BoardCell {
                            pick: index + 1,
                            seat,
                            player_id: s.picks().get(index).map(|p| p.player_id.clone()),
                        }
                    })
                    .collect()
            })
            .collect();
        SessionView {
            session_id: s.id,
            config: s.config,
            total_picks: s.config.total_picks(),
            picks: s.picks().to_vec(),
            on_clock: s.clock(),
            complete: s.is_complete(),
            available_count: s.available_count(),
            my_roster: s.roster(s.config.my_seat).into_iter().cloned().collect(),
            board,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PickView {
    pub pick: Pick,
    pub session: SessionView,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RankingView {
    pub metric: MetricKind,
    pub teams: usize,
    pub roster: usize,
    pub kappa: KappaMode,
    pub pool_mode: PoolMode,
    pub pool_size: usize,
    pub players: Vec<ScoreRow>,
}

impl RankingView {
    fn new<'a>(
        valuation: &Valuation,
        kind: MetricKind,
        teams: usize,
        pool_mode: PoolMode,
        scores: impl Iterator<Item = &'a ValueScore>,
        top: Option<usize>,
    ) -> Self {
        let roster = valuation.roster_size();
        RankingView {
            metric: kind,
            teams,
            roster,
            kappa: valuation.kappa,
            pool_mode,
            pool_size: valuation.aggregates.pool_size(),
            players: scores
                .take(top.unwrap_or(usize::MAX))
                .enumerate()
                .map(|(i, s)| ScoreRow::new(i + 1, s, roster))
                .collect(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CategoryChance {
    pub category: Category,
    pub label: String,
    pub g_score: f64,
    pub win_probability: f64,
    /// The linear approximation left `[0, 1]` and was clamped.
    pub clamped: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WhatIfView {
    pub session_id: Uuid,
    pub player_id: PlayerId,
    pub seat: usize,
    pub categories: Vec<CategoryChance>,
    /// Sum of the category probabilities.
    pub v: f64,
    pub baseline: f64,
    /// `Σ G` times the per-unit slope, before any clamping.
    pub marginal_v: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PlayerView {
    pub player_id: PlayerId,
    pub healthy_weeks: usize,
    /// Weekly means of counting stats and composite rates of percentage stats.
    pub means: BTreeMap<String, Option<f64>>,
}

// ---------------------------------------------------------------------------
// Handlers

async fn create_session(
    State(state): Shared,
    config: Result<Json<SessionConfig>, JsonRejection>,
) -> Result<(StatusCode, Json<SessionView>), ServiceError> {
    let config = body(config)?;
    let handle = state.create_session(config)?;
    let view = SessionView::of(&lock(&handle));
    tracing::info!(session = %view.session_id, teams = config.teams, roster = config.roster, "session created");
    Ok((StatusCode::CREATED, Json(view)))
}

async fn get_session(State(state): Shared, Path(id): Path<String>) -> ApiResult<SessionView> {
    let handle = state.session(session_id(&id)?)?;
    let view = SessionView::of(&lock(&handle));
    Ok(Json(view))
}

#[derive(Debug, Deserialize)]
struct PickRequest {
    player_id: PlayerId,
}

async fn post_pick(
    State(state): Shared,
    Path(id): Path<String>,
    request: Result<Json<PickRequest>, JsonRejection>,
) -> ApiResult<PickView> {
    let request = body(request)?;
    let (pick, handle) = state.record_pick(session_id(&id)?, request.player_id)?;
    tracing::info!(session = %id, pick = pick.pick, seat = pick.seat, player = %pick.player_id, "pick recorded");
    let session = SessionView::of(&lock(&handle));
    Ok(Json(PickView { pick, session }))
}

#[derive(Debug, Deserialize)]
struct RecommendationQuery {
    metric: Option<String>,
    top: Option<usize>,
}

async fn recommendations(
    State(state): Shared,
    Path(id): Path<String>,
    q: Result<Query<RecommendationQuery>, QueryRejection>,
) -> ApiResult<RankingView> {
    let q = query(q)?;
    let kind = metric(q.metric.as_deref())?;
    let handle = state.session(session_id(&id)?)?;
    let s = lock(&handle);
    let top = Some(q.top.unwrap_or(25));
    Ok(Json(RankingView::new(&s.valuation, kind, s.config.teams, s.config.pool_mode, s.recommendations(kind), top)))
}

async fn whatif(State(state): Shared, Path((id, player)): Path<(String, String)>) -> ApiResult<WhatIfView> {
    let handle = state.session(session_id(&id)?)?;
    let s = lock(&handle);
    let player = PlayerId::new(player);
    s.check_pick(&player)?;
    let score = s.valuation.g_score(&player).ok_or_else(|| ServiceError::UnknownPlayer(player.to_string()))?;
    let roster = s.valuation.roster_size();
    let categories: Vec<CategoryChance> = Category::ALL
        .iter()
        .map(|&c| {
            let g = score.categories[c];
            let linear = win_probability_linear(g, roster);
            CategoryChance {
                category: c,
                label: c.label().to_owned(),
                g_score: g,
                win_probability: linear.clamp(0.0, 1.0),
                clamped: !(0.0..=1.0).contains(&linear),
            }
        })
        .collect();
    Ok(Json(WhatIfView {
        session_id: s.id,
        player_id: player,
        seat: s.config.my_seat,
        v: categories.iter().map(|c| c.win_probability).sum(),
        baseline: CATEGORY_COUNT as f64 / 2.0,
        marginal_v: 0.5 * score_slope(roster) * score.total,
        categories,
    }))
}

async fn players(State(state): Shared) -> ApiResult<Vec<PlayerView>> {
    let dataset = state.dataset()?;
    let views = dataset
        .profiles
        .iter()
        .map(|p| PlayerView {
            player_id: p.player_id.clone(),
            healthy_weeks: p.weeks,
            means: by_label(|c| match c.kind() {
                CategoryKind::Counting => Some(p.counting(c).mean),
                CategoryKind::Percentage => p.shooting(c).success_rate(),
            })
            .into_iter()
            .map(|(k, v)| (k.to_owned(), v))
            .collect(),
        })
        .collect();
    Ok(Json(views))
}

#[derive(Debug, Deserialize)]
struct RankingQuery {
    metric: Option<String>,
    top: Option<usize>,
    teams: Option<usize>,
    roster: Option<usize>,
    kappa: Option<String>,
    pool_mode: Option<String>,
}

async fn rankings(State(state): Shared, q: Result<Query<RankingQuery>, QueryRejection>) -> ApiResult<RankingView> {
    let q = query(q)?;
    let kind = metric(q.metric.as_deref())?;
    let kappa: KappaMode = q.kappa.as_deref().unwrap_or("exact").parse().map_err(ServiceError::BadRequest)?;
    let pool_mode: PoolMode = q.pool_mode.as_deref().unwrap_or("z").parse().map_err(ServiceError::BadRequest)?;
    let defaults = SessionConfig::default();
    let config = SessionConfig {
        teams: q.teams.unwrap_or(defaults.teams),
        roster: q.roster.unwrap_or(defaults.roster),
        kappa,
        pool_mode,
        ..defaults
    };
    let dataset = state.dataset()?;
    config.validate(dataset.players.len())?;
    let valuation = dataset.valuation(config.teams, config.roster, kappa, pool_mode)?;
    let scores = valuation.ranking(kind).iter();
    Ok(Json(RankingView::new(&valuation, kind, config.teams, pool_mode, scores, q.top)))
}

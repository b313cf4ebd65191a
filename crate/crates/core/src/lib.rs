// SPDX-License-Identifier: Apache-2.0

//! Valuation engine for head-to-head category fantasy basketball.
//!
//! Player value is measured with Z-scores (player-to-player spread only) and
//! G-scores, which add each category's week-to-week variance to the
//! denominator. The crate covers the whole pipeline: weekly game-log ingest,
//! moments and scores, reference pool selection, closed-form category win
//! probabilities, and a seeded snake-draft/season simulator used to compare
//! the two metrics head to head.

pub mod category;
pub mod error;
pub mod ingest;
pub mod metrics;
pub mod pool;
pub mod report;
pub mod sim;
pub mod synth;

pub use category::{Category, CategoryKind, CategoryMap, CATEGORY_COUNT};
pub use error::{IngestError, MetricsError, PoolError, SimError};
pub use ingest::{
    filter_eligible, parse_game_log, write_game_log, GameLogFormat, PlayerHistory, PlayerId, PlayerWeek, StatLine,
};
pub use metrics::{
    counting_moments, expected_categories_won, g_score, kappa, kappa_exact, percentage_differential_moments,
    percentage_moments, rank_players, win_probability_counting, win_probability_linear, z_score, DifferentialMoments,
    KappaMode, LeagueAggregates, MetricKind, PlayerProfile, ValueScore,
};
pub use pool::{select_q_by_z, select_q_equilibrium, PoolMode, PoolSelection};
pub use sim::{
    aggregate_team_week, play_season, rotisserie_standings, run_draft, sample_season, score_matchup, snake_order,
    DraftConfig, Experiment, ExperimentConfig, Outcome, ScoringFormat, SeasonResult, TeamWeek,
};

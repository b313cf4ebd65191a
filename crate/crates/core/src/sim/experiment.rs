// SPDX-License-Identifier: Apache-2.0

//! Lone-drafter experiment: one seat drafts by one metric against a field
//! drafting by another, and seeded seasons measure how often that seat wins.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::draft::run_draft;
use super::season::{play_scheduled_season, Schedule, SeasonPool};
use super::{DraftConfig, ScoringFormat};
use crate::error::SimError;
use crate::ingest::PlayerHistory;
use crate::metrics::{rank_players, KappaMode, LeagueAggregates, MetricKind, PlayerProfile};
use crate::pool::{select_q_by_z, select_q_equilibrium, PoolMode, PoolSelection, DEFAULT_MAX_ITERS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub draft: DraftConfig,
    pub weeks: usize,
    pub seasons: usize,
    pub format: ScoringFormat,
    pub base_seed: u64,
}

/// Win tally of the seat under test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeatOutcome {
    pub seat: usize,
    pub wins: usize,
    pub seasons: usize,
}

impl SeatOutcome {
    pub fn win_rate(&self) -> f64 {
        self.wins as f64 / self.seasons as f64
    }

    pub fn std_error(&self) -> f64 {
        std_error(self.win_rate(), self.seasons)
    }
}

/// Binomial standard error `√(p (1 - p) / n)`.
pub fn std_error(p: f64, n: usize) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

/// RNG for one season. The root seed keys a ChaCha8 generator; the stream id
/// is `seat << 32 | season`, so every (seat, season) pair gets an independent
/// stream and seasons can run in any order.
pub fn season_rng(base_seed: u64, seat: usize, season: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    rng.set_stream(((seat as u64) << 32) | season as u64);
    rng
}

/// Eligible players, their season pool, and the static Z and G draft lists.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub players: Vec<PlayerHistory>,
    pub selection: PoolSelection,
    pub aggregates: LeagueAggregates,
    pool: SeasonPool,
    z_ranking: Vec<usize>,
    g_ranking: Vec<usize>,
}

impl Experiment {
    /// Choose `Q` (size `num_teams * roster_size`), aggregate over it, and rank every
    /// eligible player by Z and by G.
    pub fn prepare(
        eligible: Vec<PlayerHistory>,
        num_teams: usize,
        roster_size: usize,
        kappa: KappaMode,
        pool_mode: PoolMode,
    ) -> Result<Self, SimError> {
        let profiles = PlayerProfile::from_histories(&eligible)?;
        let q_size = num_teams * roster_size;
        let selection = match pool_mode {
            PoolMode::ZFullLeague => select_q_by_z(&profiles, q_size, roster_size)?,
            PoolMode::GEquilibrium => select_q_equilibrium(&profiles, q_size, roster_size, kappa, DEFAULT_MAX_ITERS)?,
        };
        let aggregates = selection.aggregates(&profiles, roster_size)?;
        let index_of = |kind| -> Result<Vec<usize>, SimError> {
            Ok(rank_players(&profiles, &aggregates, kind, kappa)?
                .iter()
                .map(|s| profiles.iter().position(|p| p.player_id == s.player_id).expect("ranked player exists"))
                .collect())
        };
        let z_ranking = index_of(MetricKind::Z)?;
        let g_ranking = index_of(MetricKind::G)?;
        let pool = SeasonPool::new(&eligible)?;
        Ok(Experiment { players: eligible, selection, aggregates, pool, z_ranking, g_ranking })
    }

    /// Player indices best first under `kind`.
    pub fn ranking(&self, kind: MetricKind) -> &[usize] {
        match kind {
            MetricKind::Z => &self.z_ranking,
            MetricKind::G => &self.g_ranking,
        }
    }

    /// Rosters (player indices) for every seat.
    pub fn draft(&self, config: &DraftConfig) -> Result<Vec<Vec<usize>>, SimError> {
        config.validate(self.players.len())?;
        let rankings: Vec<&[usize]> = (0..config.num_teams)
            .map(|seat| {
                let kind = if seat == config.seat_under_test { config.metric_under_test } else { config.field_metric };
                self.ranking(kind)
            })
            .collect();
        run_draft(config.num_teams, config.roster_size, &rankings)
    }

    /// Run `seasons` seeded seasons and count the seat under test's titles.
    ///
    /// Seasons run in parallel; the count does not depend on scheduling.
    pub fn run(&self, config: &ExperimentConfig) -> Result<SeatOutcome, SimError> {
        if config.seasons == 0 {
            return Err(SimError::Config("need at least one season".into()));
        }
        let teams = self.draft(&config.draft)?;
        let schedule = Schedule::round_robin(config.draft.num_teams, config.weeks)?;
        let seat = config.draft.seat_under_test;
        let wins = (0..config.seasons)
            .into_par_iter()
            .filter(|&season| {
                let mut rng = season_rng(config.base_seed, seat, season);
                let result = play_scheduled_season(&self.pool, &teams, &schedule, &mut rng);
                result.champion(config.format) == seat
            })
            .count();
        Ok(SeatOutcome { seat, wins, seasons: config.seasons })
    }

    /// [`Experiment::run`] for every seat in turn.
    pub fn run_all_seats(&self, config: &ExperimentConfig) -> Result<Vec<SeatOutcome>, SimError> {
        (0..config.draft.num_teams)
            .map(|seat| {
                let mut c = *config;
                c.draft.seat_under_test = seat;
                self.run(&c)
            })
            .collect()
    }
}

/// Pooled win rate and its standard error over several seats.
pub fn aggregate_outcomes(outcomes: &[SeatOutcome]) -> (f64, f64) {
    let wins: usize = outcomes.iter().map(|o| o.wins).sum();
    let seasons: usize = outcomes.iter().map(|o| o.seasons).sum();
    if seasons == 0 {
        return (0.0, 0.0);
    }
    let p = wins as f64 / seasons as f64;
    (p, std_error(p, seasons))
}

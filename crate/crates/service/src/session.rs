// SPDX-License-Identifier: Apache-2.0

//! Draft sessions: the pick log, the clock and the valuation each session ranks with.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, RwLock};

use gscore_core::pool::DEFAULT_MAX_ITERS;
use gscore_core::sim::seat_for_pick;
use gscore_core::{
    rank_players, select_q_by_z, select_q_equilibrium, KappaMode, LeagueAggregates, MetricKind, PlayerHistory,
    PlayerId, PlayerProfile, PoolMode, PoolSelection, ValueScore,
};
use serde::{Deserialize, Serialize};
use uuid::Uuid;

use crate::error::ServiceError;

fn default_teams() -> usize {
    12
}

fn default_roster() -> usize {
    13
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionConfig {
    #[serde(default = "default_teams")]
    pub teams: usize,
    #[serde(default = "default_roster")]
    pub roster: usize,
    #[serde(default)]
    pub my_seat: usize,
    #[serde(default)]
    pub kappa: KappaMode,
    #[serde(default)]
    pub pool_mode: PoolMode,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            teams: default_teams(),
            roster: default_roster(),
            my_seat: 0,
            kappa: KappaMode::Exact,
            pool_mode: PoolMode::ZFullLeague,
        }
    }
}

impl SessionConfig {
    pub fn total_picks(&self) -> usize {
        self.teams * self.roster
    }

    pub(crate) fn validate(&self, players: usize) -> Result<(), ServiceError> {
        let fail = |m: String| Err(ServiceError::InvalidConfig(m));
        if self.teams < 2 {
            return fail(format!("need at least 2 teams, got {}", self.teams));
        }
        if self.roster < 1 {
            return fail("roster must hold at least one player".into());
        }
        if self.my_seat >= self.teams {
            return fail(format!("my_seat {} out of range for {} teams", self.my_seat, self.teams));
        }
        if self.total_picks() > players {
            return fail(format!("{} picks requested but only {players} eligible players", self.total_picks()));
        }
        Ok(())
    }
}

/// Aggregates over the session's reference pool and both rankings of every eligible player.
#[derive(Debug)]
pub struct Valuation {
    pub aggregates: LeagueAggregates,
    pub selection: PoolSelection,
    pub kappa: KappaMode,
    z: Vec<ValueScore>,
    g: Vec<ValueScore>,
    g_index: HashMap<PlayerId, usize>,
}

impl Valuation {
    pub fn new(
        profiles: &[PlayerProfile],
        teams: usize,
        roster: usize,
        kappa: KappaMode,
        pool_mode: PoolMode,
    ) -> Result<Self, ServiceError> {
        let q_size = teams * roster;
        let selection = match pool_mode {
            PoolMode::ZFullLeague => select_q_by_z(profiles, q_size, roster),
            PoolMode::GEquilibrium => select_q_equilibrium(profiles, q_size, roster, kappa, DEFAULT_MAX_ITERS),
        }
        .map_err(|e| ServiceError::Engine(e.to_string()))?;
        let aggregates = selection.aggregates(profiles, roster).map_err(|e| ServiceError::Engine(e.to_string()))?;
        let rank =
            |kind| rank_players(profiles, &aggregates, kind, kappa).map_err(|e| ServiceError::Engine(e.to_string()));
        let z = rank(MetricKind::Z)?;
        let g = rank(MetricKind::G)?;
        let g_index = g.iter().enumerate().map(|(i, s)| (s.player_id.clone(), i)).collect();
        Ok(Valuation { aggregates, selection, kappa, z, g, g_index })
    }

    /// Every eligible player, best first.
    pub fn ranking(&self, kind: MetricKind) -> &[ValueScore] {
        match kind {
            MetricKind::Z => &self.z,
            MetricKind::G => &self.g,
        }
    }

    pub fn g_score(&self, id: &PlayerId) -> Option<&ValueScore> {
        self.g_index.get(id).map(|&i| &self.g[i])
    }

    pub fn roster_size(&self) -> usize {
        self.aggregates.roster_size
    }
}

type ValuationKey = (usize, usize, KappaMode, PoolMode);

/// The loaded league: eligible players and valuations cached per league shape.
#[derive(Debug)]
pub struct Dataset {
    pub players: Vec<PlayerHistory>,
    pub profiles: Vec<PlayerProfile>,
    valuations: RwLock<HashMap<ValuationKey, Arc<Valuation>>>,
}

impl Dataset {
    /// `players` should already be filtered for eligibility.
    pub fn new(players: Vec<PlayerHistory>) -> Result<Self, ServiceError> {
        let profiles = PlayerProfile::from_histories(&players).map_err(|e| ServiceError::Engine(e.to_string()))?;
        Ok(Dataset { players, profiles, valuations: RwLock::default() })
    }

    pub fn valuation(
        &self,
        teams: usize,
        roster: usize,
        kappa: KappaMode,
        pool_mode: PoolMode,
    ) -> Result<Arc<Valuation>, ServiceError> {
        let key = (teams, roster, kappa, pool_mode);
        if let Some(v) = self.valuations.read().expect("valuation cache poisoned").get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(Valuation::new(&self.profiles, teams, roster, kappa, pool_mode)?);
        self.valuations.write().expect("valuation cache poisoned").entry(key).or_insert(v.clone());
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pick {
    /// 1-based overall pick number.
    pub pick: usize,
    pub round: usize,
    pub seat: usize,
    pub player_id: PlayerId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clock {
    pub pick: usize,
    pub round: usize,
    pub seat: usize,
}

#[derive(Debug)]
pub struct Session {
    pub id: Uuid,
    pub config: SessionConfig,
    pub valuation: Arc<Valuation>,
    picks: Vec<Pick>,
    available: BTreeSet<PlayerId>,
}

impl Session {
    pub fn new(id: Uuid, config: SessionConfig, dataset: &Dataset) -> Result<Self, ServiceError> {
        config.validate(dataset.players.len())?;
        let valuation = dataset.valuation(config.teams, config.roster, config.kappa, config.pool_mode)?;
        let available = dataset.players.iter().map(|p| p.player_id.clone()).collect();
        Ok(Session { id, config, valuation, picks: Vec::new(), available })
    }

    pub fn picks(&self) -> &[Pick] {
        &self.picks
    }

    pub fn is_available(&self, id: &PlayerId) -> bool {
        self.available.contains(id)
    }

    pub fn available_count(&self) -> usize {
        self.available.len()
    }

    pub fn is_complete(&self) -> bool {
        self.picks.len() >= self.config.total_picks()
    }

    pub fn clock(&self) -> Option<Clock> {
        let n = self.picks.len();
        (!self.is_complete()).then(|| Clock {
            pick: n + 1,
            round: n / self.config.teams + 1,
            seat: seat_for_pick(self.config.teams, n),
        })
    }

    /// Check that `player` may be taken now without changing anything.
    pub fn check_pick(&self, player: &PlayerId) -> Result<Clock, ServiceError> {
        let Some(clock) = self.clock() else { return Err(ServiceError::SessionComplete) };
        if !self.available.contains(player) {
            return Err(if self.picks.iter().any(|p| &p.player_id == player) {
                ServiceError::AlreadyDrafted(player.to_string())
            } else {
                ServiceError::UnknownPlayer(player.to_string())
            });
        }
        Ok(clock)
    }

    /// Give `player` to the seat on the clock.
    pub fn record_pick(&mut self, player: PlayerId) -> Result<&Pick, ServiceError> {
        let clock = self.check_pick(&player)?;
        self.available.remove(&player);
        self.picks.push(Pick { pick: clock.pick, round: clock.round, seat: clock.seat, player_id: player });
        Ok(self.picks.last().expect("just pushed"))
    }

    /// Players drafted by `seat`, in pick order.
    pub fn roster(&self, seat: usize) -> Vec<&PlayerId> {
        self.picks.iter().filter(|p| p.seat == seat).map(|p| &p.player_id).collect()
    }

    /// Available players best first under `kind`.
    pub fn recommendations(&self, kind: MetricKind) -> impl Iterator<Item = &ValueScore> {
        self.valuation.ranking(kind).iter().filter(|s| self.available.contains(&s.player_id))
    }
}

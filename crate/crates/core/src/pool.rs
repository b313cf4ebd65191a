// SPDX-License-Identifier: Apache-2.0

//! Selection of the reference pool `Q` that league aggregates are computed over.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::PoolError;
use crate::ingest::PlayerId;
use crate::metrics::{rank_players, KappaMode, LeagueAggregates, MetricKind, PlayerProfile, ValueScore};

pub const DEFAULT_MAX_ITERS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PoolMode {
    /// Top players by Z-score with aggregates over the whole eligible league.
    #[default]
    ZFullLeague,
    /// Fixed point of "aggregate over Q, take the top |Q| by G-score".
    GEquilibrium,
}

impl fmt::Display for PoolMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PoolMode::ZFullLeague => "z",
            PoolMode::GEquilibrium => "equilibrium",
        })
    }
}

impl FromStr for PoolMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "z" => Ok(PoolMode::ZFullLeague),
            "equilibrium" | "g" => Ok(PoolMode::GEquilibrium),
            _ => Err(format!("unknown pool mode `{s}`, expected z or equilibrium")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoolSelection {
    /// Selected ids, best first under the scores that selected them.
    pub pool_ids: Vec<PlayerId>,
    pub mode: PoolMode,
    pub iterations_used: usize,
    pub converged: bool,
}

impl PoolSelection {
    /// Profiles of the selected players, in selection order.
    pub fn members<'a>(&self, profiles: &'a [PlayerProfile]) -> Vec<&'a PlayerProfile> {
        let wanted: BTreeSet<&PlayerId> = self.pool_ids.iter().collect();
        let mut members: Vec<&PlayerProfile> = profiles.iter().filter(|p| wanted.contains(&p.player_id)).collect();
        members.sort_by_key(|p| self.pool_ids.iter().position(|id| *id == p.player_id));
        members
    }

    pub fn aggregates(&self, profiles: &[PlayerProfile], roster_size: usize) -> Result<LeagueAggregates, PoolError> {
        Ok(LeagueAggregates::from_profiles(self.members(profiles), roster_size)?)
    }
}

fn check_size(q_size: usize, available: usize) -> Result<(), PoolError> {
    if q_size == 0 {
        return Err(PoolError::Empty);
    }
    if q_size > available {
        return Err(PoolError::TooLarge { requested: q_size, available });
    }
    Ok(())
}

fn top(scores: &[ValueScore], q_size: usize) -> Vec<PlayerId> {
    scores.iter().take(q_size).map(|s| s.player_id.clone()).collect()
}

fn as_set(ids: &[PlayerId]) -> BTreeSet<PlayerId> {
    ids.iter().cloned().collect()
}

/// Top `q_size` players by Z-score, aggregating over every eligible player.
pub fn select_q_by_z(players: &[PlayerProfile], q_size: usize, roster_size: usize) -> Result<PoolSelection, PoolError> {
    check_size(q_size, players.len())?;
    let agg = LeagueAggregates::from_profiles(players, roster_size)?;
    let scores = rank_players(players, &agg, MetricKind::Z, KappaMode::Exact)?;
    Ok(PoolSelection {
        pool_ids: top(&scores, q_size),
        mode: PoolMode::ZFullLeague,
        iterations_used: 1,
        converged: true,
    })
}

/// Iterate G-score re-aggregation from the Z selection until the set stops changing.
///
/// A two-cycle stops the iteration unconverged and returns whichever of the two
/// sets has the larger summed G total under the latest scores.
pub fn select_q_equilibrium(
    players: &[PlayerProfile],
    q_size: usize,
    roster_size: usize,
    kappa: KappaMode,
    max_iters: usize,
) -> Result<PoolSelection, PoolError> {
    let start = select_q_by_z(players, q_size, roster_size)?;
    let mut current = start.pool_ids;
    let mut previous: Option<BTreeSet<PlayerId>> = None;

    for iteration in 1..=max_iters.max(1) {
        let selection = PoolSelection {
            pool_ids: current.clone(),
            mode: PoolMode::GEquilibrium,
            iterations_used: iteration,
            converged: false,
        };
        let agg = selection.aggregates(players, roster_size)?;
        let scores = rank_players(players, &agg, MetricKind::G, kappa)?;
        let next = top(&scores, q_size);
        let current_set = as_set(&current);
        let next_set = as_set(&next);

        if next_set == current_set {
            return Ok(PoolSelection { pool_ids: next, converged: true, ..selection });
        }
        if previous.as_ref() == Some(&next_set) {
            let sum = |set: &BTreeSet<PlayerId>| -> f64 {
                scores.iter().filter(|s| set.contains(&s.player_id)).map(|s| s.total).sum()
            };
            let pool_ids = if sum(&current_set) > sum(&next_set) {
                scores.iter().filter(|s| current_set.contains(&s.player_id)).map(|s| s.player_id.clone()).collect()
            } else {
                next
            };
            return Ok(PoolSelection { pool_ids, ..selection });
        }
        previous = Some(current_set);
        current = next;
    }

    Ok(PoolSelection {
        pool_ids: current,
        mode: PoolMode::GEquilibrium,
        iterations_used: max_iters.max(1),
        converged: false,
    })
}

// SPDX-License-Identifier: Apache-2.0

//! Snake drafts and head-to-head season simulation.

mod draft;
mod experiment;
mod season;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use draft::{run_draft, seat_for_pick, snake_order};
pub use experiment::{aggregate_outcomes, season_rng, std_error, Experiment, ExperimentConfig, SeatOutcome};
pub use season::{
    aggregate_team_week, compare_category, play_season, rotisserie_standings, sample_season, score_matchup,
    CategoryRecord, Outcome, RotisserieStandings, Schedule, SeasonPool, SeasonResult, SeasonTally, TeamSeason,
    TeamWeek, WeekResult,
};

use crate::error::SimError;
use crate::metrics::MetricKind;

/// Head-to-head standings format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScoringFormat {
    /// Ranked by aggregate category record.
    EachCategory,
    /// Ranked by weeks won on category majority.
    MostCategories,
}

impl fmt::Display for ScoringFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScoringFormat::EachCategory => "each",
            ScoringFormat::MostCategories => "most",
        })
    }
}

impl FromStr for ScoringFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "each" | "each_category" => Ok(ScoringFormat::EachCategory),
            "most" | "most_categories" => Ok(ScoringFormat::MostCategories),
            _ => Err(format!("unknown format `{s}`, expected each or most")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DraftConfig {
    pub num_teams: usize,
    pub roster_size: usize,
    pub seat_under_test: usize,
    pub metric_under_test: MetricKind,
    pub field_metric: MetricKind,
}

impl Default for DraftConfig {
    fn default() -> Self {
        DraftConfig {
            num_teams: 12,
            roster_size: 13,
            seat_under_test: 0,
            metric_under_test: MetricKind::G,
            field_metric: MetricKind::Z,
        }
    }
}

impl DraftConfig {
    pub fn validate(&self, eligible: usize) -> Result<(), SimError> {
        if self.num_teams < 2 {
            return Err(SimError::Config(format!("need at least 2 teams, got {}", self.num_teams)));
        }
        if self.roster_size < 1 {
            return Err(SimError::Config("roster size must be at least 1".into()));
        }
        if self.seat_under_test >= self.num_teams {
            return Err(SimError::Config(format!(
                "seat {} out of range for {} teams",
                self.seat_under_test, self.num_teams
            )));
        }
        if self.num_teams * self.roster_size > eligible {
            return Err(SimError::Config(format!(
                "{} roster spots but only {eligible} eligible players",
                self.num_teams * self.roster_size
            )));
        }
        Ok(())
    }
}

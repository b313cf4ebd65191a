// SPDX-License-Identifier: Apache-2.0

//! Moments, Z-scores, G-scores and closed-form win probabilities.

mod moments;
mod score;
mod winprob;

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

pub use moments::{
    counting_moments, percentage_moments, CountingAggregate, CountingMoments, CountingProfile, LeagueAggregates,
    PercentageAggregate, PercentageMoments, PercentagePlayerMoments, PlayerProfile, ShootingProfile,
};
pub use score::{g_score, rank_players, ranking_order, z_score, Scorer, ValueScore};
pub use winprob::{
    expected_categories_won, percentage_differential_moments, score_slope, win_probability_counting,
    win_probability_linear, DifferentialMoments,
};

use crate::error::MetricsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Z,
    G,
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetricKind::Z => "z",
            MetricKind::G => "g",
        })
    }
}

impl FromStr for MetricKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "z" | "Z" => Ok(MetricKind::Z),
            "g" | "G" => Ok(MetricKind::G),
            _ => Err(format!("unknown metric `{s}`, expected z or g")),
        }
    }
}

/// How the weekly-variance multiplier κ is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaMode {
    /// `2N / (2N - 1)`.
    #[default]
    Exact,
    /// Constant 1.04.
    #[serde(rename = "fixed_1_04")]
    Fixed104,
    /// Constant 1.
    One,
}

impl KappaMode {
    pub fn value(self, roster_size: usize) -> Result<f64, MetricsError> {
        match self {
            KappaMode::Exact => kappa(roster_size),
            KappaMode::Fixed104 => Ok(1.04),
            KappaMode::One => Ok(1.0),
        }
    }
}

impl fmt::Display for KappaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KappaMode::Exact => "exact",
            KappaMode::Fixed104 => "1.04",
            KappaMode::One => "1",
        })
    }
}

impl FromStr for KappaMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(KappaMode::Exact),
            "1.04" | "fixed_1_04" => Ok(KappaMode::Fixed104),
            "1" | "one" => Ok(KappaMode::One),
            _ => Err(format!("unknown kappa `{s}`, expected exact, 1.04 or 1")),
        }
    }
}

/// κ = 2N / (2N - 1) as an exact ratio.
pub fn kappa_exact(roster_size: usize) -> Result<Ratio<u64>, MetricsError> {
    if roster_size < 1 {
        return Err(MetricsError::InvalidRosterSize(roster_size));
    }
    let n = roster_size as u64;
    Ok(Ratio::new(2 * n, 2 * n - 1))
}

/// κ = 2N / (2N - 1).
pub fn kappa(roster_size: usize) -> Result<f64, MetricsError> {
    kappa_exact(roster_size)?;
    let n = roster_size as f64;
    Ok(2.0 * n / (2.0 * n - 1.0))
}

// SPDX-License-Identifier: Apache-2.0

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::moments::{LeagueAggregates, PlayerProfile};
use super::{KappaMode, MetricKind};
use crate::category::{Category, CategoryKind, CategoryMap};
use crate::error::MetricsError;
use crate::ingest::PlayerId;

/// Per-category and total score of one player under one metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueScore {
    pub player_id: PlayerId,
    pub kind: MetricKind,
    pub categories: CategoryMap<f64>,
    /// Sum of `categories` in category order.
    pub total: f64,
}

/// Scores players against fixed aggregates with denominators computed once.
#[derive(Debug, Clone)]
pub struct Scorer<'a> {
    agg: &'a LeagueAggregates,
    kind: MetricKind,
    denominators: CategoryMap<f64>,
}

impl<'a> Scorer<'a> {
    /// Z denominators are `σ`; G denominators are `√(σ² + κτ²)`.
    pub fn new(agg: &'a LeagueAggregates, kind: MetricKind, kappa: KappaMode) -> Result<Self, MetricsError> {
        let k = match kind {
            MetricKind::Z => 0.0,
            MetricKind::G => kappa.value(agg.roster_size)?,
        };
        let denominators = CategoryMap::from_fn(|c| {
            let (sigma, tau) = agg.spread(c);
            (sigma * sigma + k * tau * tau).sqrt()
        });
        let degenerate: Vec<Category> =
            denominators.iter().filter(|(_, d)| !(**d > 0.0 && d.is_finite())).map(|(c, _)| c).collect();
        if !degenerate.is_empty() {
            return Err(MetricsError::DegenerateCategories(degenerate));
        }
        Ok(Scorer { agg, kind, denominators })
    }

    pub fn denominators(&self) -> &CategoryMap<f64> {
        &self.denominators
    }

    pub fn score(&self, profile: &PlayerProfile) -> ValueScore {
        let categories = CategoryMap::from_fn(|c| {
            let numerator = match c.kind() {
                CategoryKind::Counting => {
                    let delta = profile.counting(c).mean - self.agg.counting(c).mean;
                    if c.lower_is_better() {
                        -delta
                    } else {
                        delta
                    }
                }
                CategoryKind::Percentage => {
                    let pool = self.agg.percentage(c);
                    profile.shooting(c).weighted_rate_delta(pool.mean_attempts, pool.success_rate)
                }
            };
            numerator / self.denominators[c]
        });
        let total = categories.values().sum();
        ValueScore { player_id: profile.player_id.clone(), kind: self.kind, categories, total }
    }
}

/// G-score of one player: category deviations over `√(σ² + κτ²)`, turnovers negated.
pub fn g_score(profile: &PlayerProfile, agg: &LeagueAggregates, kappa: KappaMode) -> Result<ValueScore, MetricsError> {
    Ok(Scorer::new(agg, MetricKind::G, kappa)?.score(profile))
}

/// Z-score of one player: the G-score with every weekly variance term dropped.
pub fn z_score(profile: &PlayerProfile, agg: &LeagueAggregates) -> Result<ValueScore, MetricsError> {
    Ok(Scorer::new(agg, MetricKind::Z, KappaMode::Exact)?.score(profile))
}

/// Descending total score; ties broken by player id.
pub fn ranking_order(a: &ValueScore, b: &ValueScore) -> Ordering {
    b.total.total_cmp(&a.total).then_with(|| a.player_id.cmp(&b.player_id))
}

/// Score every profile and sort best first.
pub fn rank_players(
    profiles: &[PlayerProfile],
    agg: &LeagueAggregates,
    kind: MetricKind,
    kappa: KappaMode,
) -> Result<Vec<ValueScore>, MetricsError> {
    let scorer = Scorer::new(agg, kind, kappa)?;
    let mut scores: Vec<ValueScore> = profiles.iter().map(|p| scorer.score(p)).collect();
    scores.sort_by(ranking_order);
    Ok(scores)
}

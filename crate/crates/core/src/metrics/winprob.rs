// SPDX-License-Identifier: Apache-2.0

//! Closed-form category win probabilities for a team built around one known player.
//!
//! Every other roster spot on both teams is a random draw from the pool. The
//! team-B-minus-team-A differential is treated as normal and its CDF at zero
//! is replaced by the first-order expansion of `erf`, which is linear in the
//! player's category score.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::moments::{LeagueAggregates, PlayerProfile};
use super::score::ValueScore;
use crate::category::{Category, CategoryKind};
use crate::error::MetricsError;

/// `1 / √(π (N - ½))`: win probability gained per unit of category score, times two.
pub fn score_slope(roster_size: usize) -> f64 {
    assert!(roster_size >= 1, "roster size must be at least 1");
    1.0 / (PI * (roster_size as f64 - 0.5)).sqrt()
}

/// `½ [1 + G / √(π (N - ½))]` without clamping.
pub fn win_probability_linear(category_score: f64, roster_size: usize) -> f64 {
    0.5 * (1.0 + category_score * score_slope(roster_size))
}

/// Probability that the team holding the player wins the category, clamped to `[0, 1]`.
pub fn win_probability_counting(category_score: f64, roster_size: usize) -> f64 {
    win_probability_linear(category_score, roster_size).clamp(0.0, 1.0)
}

/// Mean and variance of the team-B-minus-team-A percentage differential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DifferentialMoments {
    pub mean: f64,
    pub variance: f64,
    pub win_probability: f64,
    /// Whether the linear approximation left `[0, 1]` and was clamped.
    pub clamped: bool,
}

/// Differential moments of a percentage category with `player` on team A.
///
/// `D_μ = -(μ_A(p) / (N μ_A)) (μ_R(p) - μ_R)` and
/// `D_σ² = ((2N - 1) σ_R² + 2N τ_R²) / N²`.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail the checks too
pub fn percentage_differential_moments(
    player: &PlayerProfile,
    agg: &LeagueAggregates,
    category: Category,
    roster_size: usize,
) -> Result<DifferentialMoments, MetricsError> {
    assert_eq!(category.kind(), CategoryKind::Percentage, "{category} is not a percentage category");
    if roster_size < 1 {
        return Err(MetricsError::InvalidRosterSize(roster_size));
    }
    let pool = agg.percentage(category);
    if !(pool.mean_attempts > 0.0) {
        return Err(MetricsError::NoAttempts(category));
    }
    let n = roster_size as f64;
    let delta = player.shooting(category).weighted_rate_delta(pool.mean_attempts, pool.success_rate);
    let mean = -delta / n;
    let variance = ((2.0 * n - 1.0) * pool.sigma.powi(2) + 2.0 * n * pool.tau.powi(2)) / (n * n);
    if !(variance > 0.0) {
        return Err(MetricsError::DegenerateCategories(vec![category]));
    }
    // ½[1 + erf(-D_μ / √(2 D_σ²))] with erf(x) ≈ 2x/√π
    let linear = 0.5 * (1.0 + 2.0 / PI.sqrt() * (-mean) / (2.0 * variance).sqrt());
    Ok(DifferentialMoments {
        mean,
        variance,
        win_probability: linear.clamp(0.0, 1.0),
        clamped: !(0.0..=1.0).contains(&linear),
    })
}

/// Expected categories won `V` against a random opponent, and `V - |C|/2`.
pub fn expected_categories_won(score: &ValueScore, roster_size: usize, categories: usize) -> (f64, f64) {
    assert!(categories >= 1, "need at least one category");
    let marginal = 0.5 * score_slope(roster_size) * score.total;
    (categories as f64 / 2.0 + marginal, marginal)
}

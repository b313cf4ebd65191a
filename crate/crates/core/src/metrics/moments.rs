// SPDX-License-Identifier: Apache-2.0

//! Per-player weekly moments and the pool-level aggregates built from them.
//!
//! All variances are population variances (divide by the number of weeks or
//! players). Percentage categories never materialize a weekly success rate:
//! every formula works on `(made, attempted)` so zero-attempt weeks are well
//! defined and contribute zero weighted deviation.

use serde::{Deserialize, Serialize};

use crate::category::{Category, CategoryKind};
use crate::error::MetricsError;
use crate::ingest::{PlayerHistory, PlayerId};

/// Weekly mean and standard deviation of one counting category for one player.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CountingProfile {
    pub mean: f64,
    pub tau: f64,
}

/// Sufficient statistics of one player's weekly `(made, attempted)` pairs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ShootingProfile {
    pub mean_attempts: f64,
    pub mean_made: f64,
    pub var_made: f64,
    pub var_attempts: f64,
    pub cov_made_attempts: f64,
}

impl ShootingProfile {
    /// Composite success rate `Σ made / Σ attempted`; `None` when the player never attempted.
    pub fn success_rate(&self) -> Option<f64> {
        (self.mean_attempts > 0.0).then(|| self.mean_made / self.mean_attempts)
    }

    /// Standard deviation over weeks of `(attempts / pool_attempts) * (rate - pool_rate)`.
    ///
    /// The weekly term equals `(made - pool_rate * attempts) / pool_attempts`, so its
    /// variance follows from the stored second moments.
    pub fn weighted_tau(&self, pool_attempts: f64, pool_rate: f64) -> f64 {
        let var = self.var_made - 2.0 * pool_rate * self.cov_made_attempts + pool_rate * pool_rate * self.var_attempts;
        var.max(0.0).sqrt() / pool_attempts
    }

    /// Volume-weighted rate differential `(μ_A(q) / μ_A) * (μ_R(q) - μ_R)`.
    ///
    /// Zero for a player with no attempts.
    pub fn weighted_rate_delta(&self, pool_attempts: f64, pool_rate: f64) -> f64 {
        match self.success_rate() {
            Some(rate) => self.mean_attempts / pool_attempts * (rate - pool_rate),
            None => 0.0,
        }
    }
}

/// Weekly moments of a player across all nine categories.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlayerProfile {
    pub player_id: PlayerId,
    pub weeks: usize,
    counting: [CountingProfile; 7],
    shooting: [ShootingProfile; 2],
}

impl PlayerProfile {
    /// Build a profile from the player's healthy weeks.
    pub fn from_history(history: &PlayerHistory) -> Result<Self, MetricsError> {
        let weeks: Vec<_> = history.healthy_weeks().map(|w| &w.stats).collect();
        if weeks.is_empty() {
            return Err(MetricsError::EmptyHistory(history.player_id.clone()));
        }
        let n = weeks.len() as f64;

        let counting = Category::COUNTING.map(|c| {
            let mean = weeks.iter().map(|s| s.counting(c)).sum::<f64>() / n;
            let var = weeks.iter().map(|s| (s.counting(c) - mean).powi(2)).sum::<f64>() / n;
            CountingProfile { mean, tau: var.sqrt() }
        });
        let shooting = Category::PERCENTAGE.map(|c| {
            let mean_made = weeks.iter().map(|s| s.shooting(c).0).sum::<f64>() / n;
            let mean_attempts = weeks.iter().map(|s| s.shooting(c).1).sum::<f64>() / n;
            let (mut var_made, mut var_attempts, mut cov) = (0.0, 0.0, 0.0);
            for s in &weeks {
                let (m, a) = s.shooting(c);
                let (dm, da) = (m - mean_made, a - mean_attempts);
                var_made += dm * dm;
                var_attempts += da * da;
                cov += dm * da;
            }
            ShootingProfile {
                mean_attempts,
                mean_made,
                var_made: var_made / n,
                var_attempts: var_attempts / n,
                cov_made_attempts: cov / n,
            }
        });

        Ok(PlayerProfile { player_id: history.player_id.clone(), weeks: weeks.len(), counting, shooting })
    }

    pub fn from_histories(histories: &[PlayerHistory]) -> Result<Vec<Self>, MetricsError> {
        histories.iter().map(Self::from_history).collect()
    }

    /// # Panics
    /// If `category` is a percentage category.
    pub fn counting(&self, category: Category) -> &CountingProfile {
        assert_eq!(category.kind(), CategoryKind::Counting, "{category} is not a counting category");
        &self.counting[category.slot()]
    }

    /// # Panics
    /// If `category` is a counting category.
    pub fn shooting(&self, category: Category) -> &ShootingProfile {
        assert_eq!(category.kind(), CategoryKind::Percentage, "{category} is not a percentage category");
        &self.shooting[category.slot()]
    }

    pub fn counting_mut(&mut self, category: Category) -> &mut CountingProfile {
        assert_eq!(category.kind(), CategoryKind::Counting);
        &mut self.counting[category.slot()]
    }

    pub fn shooting_mut(&mut self, category: Category) -> &mut ShootingProfile {
        assert_eq!(category.kind(), CategoryKind::Percentage);
        &mut self.shooting[category.slot()]
    }
}

/// Pool-level constants for a counting category.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CountingAggregate {
    /// Mean of the players' weekly means.
    pub mean: f64,
    /// Population standard deviation of the players' weekly means.
    pub sigma: f64,
    /// Root-mean-square of the players' weekly standard deviations.
    pub tau: f64,
}

impl CountingAggregate {
    pub fn over<'a>(
        profiles: impl IntoIterator<Item = &'a PlayerProfile>,
        category: Category,
    ) -> Result<Self, MetricsError> {
        let stats: Vec<CountingProfile> = profiles.into_iter().map(|p| *p.counting(category)).collect();
        if stats.is_empty() {
            return Err(MetricsError::EmptyPool);
        }
        let n = stats.len() as f64;
        let mean = stats.iter().map(|s| s.mean).sum::<f64>() / n;
        let sigma = (stats.iter().map(|s| (s.mean - mean).powi(2)).sum::<f64>() / n).sqrt();
        let tau = (stats.iter().map(|s| s.tau * s.tau).sum::<f64>() / n).sqrt();
        Ok(CountingAggregate { mean, sigma, tau })
    }
}

/// Pool-level constants for a percentage category.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PercentageAggregate {
    /// Mean of the players' weekly attempt means.
    pub mean_attempts: f64,
    /// Attempt-weighted mean of the players' composite success rates.
    pub success_rate: f64,
    /// Population standard deviation of the players' composite success rates.
    pub sigma: f64,
    /// Root-mean-square of the players' weighted-deviation standard deviations.
    pub tau: f64,
}

impl PercentageAggregate {
    /// Players without attempts count toward the pool size but contribute no rate deviation.
    pub fn over<'a>(
        profiles: impl IntoIterator<Item = &'a PlayerProfile>,
        category: Category,
    ) -> Result<Self, MetricsError> {
        let stats: Vec<ShootingProfile> = profiles.into_iter().map(|p| *p.shooting(category)).collect();
        if stats.is_empty() {
            return Err(MetricsError::EmptyPool);
        }
        let n = stats.len() as f64;
        let total_attempts: f64 = stats.iter().map(|s| s.mean_attempts).sum();
        if total_attempts <= 0.0 {
            return Err(MetricsError::NoAttempts(category));
        }
        let mean_attempts = total_attempts / n;
        // Σ a_q μ_R(q) = Σ a_q (made_q / a_q) = Σ made_q
        let success_rate = stats.iter().map(|s| s.mean_made).sum::<f64>() / total_attempts;
        let sigma = (stats.iter().map(|s| s.success_rate().map_or(0.0, |r| (r - success_rate).powi(2))).sum::<f64>()
            / n)
            .sqrt();
        let tau = (stats.iter().map(|s| s.weighted_tau(mean_attempts, success_rate).powi(2)).sum::<f64>() / n).sqrt();
        Ok(PercentageAggregate { mean_attempts, success_rate, sigma, tau })
    }
}

/// Everything needed to score any player against a reference pool.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeagueAggregates {
    pub pool_ids: Vec<PlayerId>,
    /// Players per team.
    pub roster_size: usize,
    counting: [CountingAggregate; 7],
    percentage: [PercentageAggregate; 2],
}

impl LeagueAggregates {
    pub fn from_profiles<'a>(
        pool: impl IntoIterator<Item = &'a PlayerProfile>,
        roster_size: usize,
    ) -> Result<Self, MetricsError> {
        if roster_size < 1 {
            return Err(MetricsError::InvalidRosterSize(roster_size));
        }
        let pool: Vec<&PlayerProfile> = pool.into_iter().collect();
        if pool.is_empty() {
            return Err(MetricsError::EmptyPool);
        }
        let mut counting = [CountingAggregate::default(); 7];
        for c in Category::COUNTING {
            counting[c.slot()] = CountingAggregate::over(pool.iter().copied(), c)?;
        }
        let mut percentage = [PercentageAggregate::default(); 2];
        for c in Category::PERCENTAGE {
            percentage[c.slot()] = PercentageAggregate::over(pool.iter().copied(), c)?;
        }
        Ok(LeagueAggregates {
            pool_ids: pool.iter().map(|p| p.player_id.clone()).collect(),
            roster_size,
            counting,
            percentage,
        })
    }

    /// Build aggregates from explicit per-category constants.
    pub fn from_parts(
        pool_ids: Vec<PlayerId>,
        roster_size: usize,
        counting: [CountingAggregate; 7],
        percentage: [PercentageAggregate; 2],
    ) -> Self {
        LeagueAggregates { pool_ids, roster_size, counting, percentage }
    }

    pub fn counting(&self, category: Category) -> &CountingAggregate {
        assert_eq!(category.kind(), CategoryKind::Counting, "{category} is not a counting category");
        &self.counting[category.slot()]
    }

    pub fn percentage(&self, category: Category) -> &PercentageAggregate {
        assert_eq!(category.kind(), CategoryKind::Percentage, "{category} is not a percentage category");
        &self.percentage[category.slot()]
    }

    pub fn counting_mut(&mut self, category: Category) -> &mut CountingAggregate {
        assert_eq!(category.kind(), CategoryKind::Counting);
        &mut self.counting[category.slot()]
    }

    pub fn percentage_mut(&mut self, category: Category) -> &mut PercentageAggregate {
        assert_eq!(category.kind(), CategoryKind::Percentage);
        &mut self.percentage[category.slot()]
    }

    pub fn pool_size(&self) -> usize {
        self.pool_ids.len()
    }

    pub fn category_count(&self) -> usize {
        Category::ALL.len()
    }

    /// `(σ, τ)` for any category: `(σ_M, τ_M)` or `(σ_R, τ_R)`.
    pub fn spread(&self, category: Category) -> (f64, f64) {
        match category.kind() {
            CategoryKind::Counting => {
                let a = self.counting(category);
                (a.sigma, a.tau)
            }
            CategoryKind::Percentage => {
                let a = self.percentage(category);
                (a.sigma, a.tau)
            }
        }
    }
}

/// Result of [`counting_moments`].
#[derive(Debug, Clone, PartialEq)]
pub struct CountingMoments {
    pub per_player: Vec<CountingProfile>,
    pub pool: CountingAggregate,
}

/// Per-player output of [`percentage_moments`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PercentagePlayerMoments {
    pub mean_attempts: f64,
    pub success_rate: Option<f64>,
    pub tau: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PercentageMoments {
    pub per_player: Vec<PercentagePlayerMoments>,
    pub pool: PercentageAggregate,
}

/// Per-player and pool moments of a counting category, with every player in the pool.
pub fn counting_moments(pool: &[PlayerHistory], category: Category) -> Result<CountingMoments, MetricsError> {
    assert_eq!(category.kind(), CategoryKind::Counting, "{category} is not a counting category");
    if pool.is_empty() {
        return Err(MetricsError::EmptyPool);
    }
    let profiles = PlayerProfile::from_histories(pool)?;
    Ok(CountingMoments {
        per_player: profiles.iter().map(|p| *p.counting(category)).collect(),
        pool: CountingAggregate::over(&profiles, category)?,
    })
}

/// Per-player and pool moments of a percentage category, with every player in the pool.
pub fn percentage_moments(pool: &[PlayerHistory], category: Category) -> Result<PercentageMoments, MetricsError> {
    assert_eq!(category.kind(), CategoryKind::Percentage, "{category} is not a percentage category");
    if pool.is_empty() {
        return Err(MetricsError::EmptyPool);
    }
    let profiles = PlayerProfile::from_histories(pool)?;
    let agg = PercentageAggregate::over(&profiles, category)?;
    Ok(PercentageMoments {
        per_player: profiles
            .iter()
            .map(|p| {
                let s = p.shooting(category);
                PercentagePlayerMoments {
                    mean_attempts: s.mean_attempts,
                    success_rate: s.success_rate(),
                    tau: s.weighted_tau(agg.mean_attempts, agg.success_rate),
                }
            })
            .collect(),
        pool: agg,
    })
}

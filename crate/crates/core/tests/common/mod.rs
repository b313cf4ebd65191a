// SPDX-License-Identifier: Apache-2.0

//! Independent reference implementations shared by the oracle tests and the
//! acceptance runner. Nothing here calls into the library's moment or score code.

#![allow(dead_code)]

use gscore_core::{Category, CategoryMap, Outcome, PlayerHistory, PlayerWeek, StatLine};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Normal};

pub fn line(points: f64) -> StatLine {
    StatLine { points, ..StatLine::default() }
}

pub fn history(id: &str, lines: &[StatLine]) -> PlayerHistory {
    PlayerHistory {
        player_id: id.into(),
        weeks: lines
            .iter()
            .enumerate()
            .map(|(w, s)| PlayerWeek { player_id: id.into(), week: w as u32 + 1, injured: false, stats: *s })
            .collect(),
    }
}

/// Outcome map with the first `wins` categories won and the rest lost.
pub fn record(wins: usize) -> CategoryMap<Outcome> {
    CategoryMap::from_fn(|c| if c.index() < wins { Outcome::Win } else { Outcome::Loss })
}

// ---------------------------------------------------------------------------
// Counting-category model: player q scores N(mu_q, tau_q^2) each week.

pub struct NormalPool {
    pub mean: Vec<f64>,
    pub sd: Vec<f64>,
}

impl NormalPool {
    pub fn generate(size: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let means = Normal::new(50.0, 10.0).unwrap();
        let mean = (0..size).map(|_| means.sample(&mut rng)).collect();
        let sd = (0..size).map(|_| rng.random_range(5.0..15.0)).collect();
        NormalPool { mean, sd }
    }

    /// Two weeks at `mu - tau` and `mu + tau` reproduce mean `mu` and population sd `tau`
    /// exactly. Every counting category carries the same values; shooting lines vary by
    /// player so no category is degenerate.
    pub fn histories(&self) -> Vec<PlayerHistory> {
        (0..self.mean.len())
            .map(|q| {
                let week = |v: f64| StatLine {
                    points: v,
                    rebounds: v,
                    assists: v,
                    steals: v,
                    blocks: v,
                    threes: v,
                    turnovers: v,
                    fg_made: 3.0 + (q % 5) as f64,
                    fg_attempted: 10.0,
                    ft_made: 1.0 + (q % 3) as f64,
                    ft_attempted: 5.0,
                };
                history(&format!("n{q:03}"), &[week(self.mean[q] - self.sd[q]), week(self.mean[q] + self.sd[q])])
            })
            .collect()
    }

    /// Brute-force G for player `p` with `kappa`.
    pub fn g(&self, p: usize, kappa: f64) -> f64 {
        let n = self.mean.len() as f64;
        let mu = self.mean.iter().sum::<f64>() / n;
        let sigma_sq = self.mean.iter().map(|m| (m - mu).powi(2)).sum::<f64>() / n;
        let tau_sq = self.sd.iter().map(|t| t * t).sum::<f64>() / n;
        (self.mean[p] - mu) / (sigma_sq + kappa * tau_sq).sqrt()
    }

    /// Fraction of matchups won by the team holding `p` plus `roster - 1` random pool
    /// players against `roster` random pool players, all drawn with replacement.
    pub fn win_rate(&self, p: usize, roster: usize, matchups: usize, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = Normal::new(0.0, 1.0).unwrap();
        let q = self.mean.len();
        let draw = |rng: &mut ChaCha8Rng, i: usize| self.mean[i] + self.sd[i] * z.sample(rng);
        let mut wins = 0usize;
        for _ in 0..matchups {
            let mut a = draw(&mut rng, p);
            for _ in 1..roster {
                let i = rng.random_range(0..q);
                a += draw(&mut rng, i);
            }
            let mut b = 0.0;
            for _ in 0..roster {
                let i = rng.random_range(0..q);
                b += draw(&mut rng, i);
            }
            if a > b {
                wins += 1;
            }
        }
        wins as f64 / matchups as f64
    }
}

// ---------------------------------------------------------------------------
// Percentage-category model: fixed weekly (made, attempted) tables.

/// `(mu_A, mu_R, sigma_R, tau_R)`.
pub type PoolMoments = (f64, f64, f64, f64);

pub struct ShootingPool {
    /// `made[q][w]`, `attempted[q][w]`.
    pub made: Vec<Vec<f64>>,
    pub attempted: Vec<Vec<f64>>,
}

impl ShootingPool {
    /// Every player shoots about 40 times a week at a personal rate near 47%. Players
    /// 0 and 1 are a strong and a weak shooter.
    pub fn generate(size: usize, weeks: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rates = Normal::<f64>::new(0.47, 0.05).unwrap();
        let volume = Normal::<f64>::new(40.0, 8.0).unwrap();
        let mut made = Vec::with_capacity(size);
        let mut attempted = Vec::with_capacity(size);
        for q in 0..size {
            let rate: f64 = match q {
                0 => 0.59,
                1 => 0.35,
                _ => rates.sample(&mut rng),
            }
            .clamp(0.05, 0.95);
            let att: Vec<f64> = (0..weeks).map(|_| volume.sample(&mut rng).round().max(0.0)).collect();
            let m = att.iter().map(|&a| Binomial::new(a as u64, rate).unwrap().sample(&mut rng) as f64).collect();
            made.push(m);
            attempted.push(att);
        }
        ShootingPool { made, attempted }
    }

    pub fn histories(&self) -> Vec<PlayerHistory> {
        (0..self.made.len())
            .map(|q| {
                let lines: Vec<StatLine> = (0..self.made[q].len())
                    .map(|w| StatLine {
                        points: (q % 7) as f64,
                        fg_made: self.made[q][w],
                        fg_attempted: self.attempted[q][w],
                        ft_made: self.made[q][w],
                        ft_attempted: self.attempted[q][w],
                        ..StatLine::default()
                    })
                    .collect();
                history(&format!("s{q:03}"), &lines)
            })
            .collect()
    }

    /// `(mu_A, mu_R, sigma_R, tau_R)` and per-player `(mu_A(q), mu_R(q), tau_R(q))`
    /// straight from the definitions: weekly rates are materialized and zero-attempt
    /// weeks contribute a zero weighted deviation.
    pub fn moments(&self) -> (PoolMoments, Vec<(f64, Option<f64>, f64)>) {
        let n = self.made.len() as f64;
        let per: Vec<(f64, Option<f64>)> = (0..self.made.len())
            .map(|q| {
                let a: f64 = self.attempted[q].iter().sum();
                let m: f64 = self.made[q].iter().sum();
                let w = self.made[q].len() as f64;
                (a / w, (a > 0.0).then(|| m / a))
            })
            .collect();
        let mu_a = per.iter().map(|p| p.0).sum::<f64>() / n;
        let mu_r = per.iter().filter_map(|p| p.1.map(|r| p.0 * r)).sum::<f64>() / per.iter().map(|p| p.0).sum::<f64>();
        let sigma_r = (per.iter().map(|p| p.1.map_or(0.0, |r| (r - mu_r).powi(2))).sum::<f64>() / n).sqrt();
        let taus: Vec<f64> = (0..self.made.len())
            .map(|q| {
                let xs: Vec<f64> = self.made[q]
                    .iter()
                    .zip(&self.attempted[q])
                    .map(|(&m, &a)| if a > 0.0 { a / mu_a * (m / a - mu_r) } else { 0.0 })
                    .collect();
                let mean = xs.iter().sum::<f64>() / xs.len() as f64;
                (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / xs.len() as f64).sqrt()
            })
            .collect();
        let tau_r = (taus.iter().map(|t| t * t).sum::<f64>() / n).sqrt();
        let players = per.iter().zip(&taus).map(|(&(a, r), &t)| (a, r, t)).collect();
        ((mu_a, mu_r, sigma_r, tau_r), players)
    }

    /// Empirical mean and population variance of `rate_B - rate_A` where team A holds
    /// player `p` (random week) plus `roster - 1` random (player, week) draws and team B
    /// holds `roster` such draws.
    pub fn differential(&self, p: usize, roster: usize, matchups: usize, seed: u64) -> (f64, f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (q, w) = (self.made.len(), self.made[0].len());
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..matchups {
            let wp = rng.random_range(0..w);
            let (mut ma, mut aa) = (self.made[p][wp], self.attempted[p][wp]);
            for _ in 1..roster {
                let (i, j) = (rng.random_range(0..q), rng.random_range(0..w));
                ma += self.made[i][j];
                aa += self.attempted[i][j];
            }
            let (mut mb, mut ab) = (0.0, 0.0);
            for _ in 0..roster {
                let (i, j) = (rng.random_range(0..q), rng.random_range(0..w));
                mb += self.made[i][j];
                ab += self.attempted[i][j];
            }
            let d = mb / ab - ma / aa;
            sum += d;
            sum_sq += d * d;
        }
        let mean = sum / matchups as f64;
        (mean, sum_sq / matchups as f64 - mean * mean)
    }
}

/// Brute-force mean and population sd of one counting category over a history.
pub fn counting_mean_sd(h: &PlayerHistory, c: Category) -> (f64, f64) {
    let xs: Vec<f64> = h.healthy_weeks().map(|w| w.stats.counting(c)).collect();
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    (mean, (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n).sqrt())
}

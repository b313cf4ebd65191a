// SPDX-License-Identifier: Apache-2.0

//! Seeded generator of plausible weekly game logs.
//!
//! Players are drawn from three archetypes (guard, wing, big) with individual
//! minutes and per-minute rates. Each week a player appears in two to four
//! games; every game draws its minutes and a shooting-form factor, attempts
//! and counting stats are Poisson in minutes, and makes are binomial in
//! attempts. Players occasionally miss runs of weeks, which are logged as
//! injured weeks with empty lines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, LogNormal, Normal, Poisson};
use serde::{Deserialize, Serialize};

use crate::ingest::{PlayerHistory, PlayerId, PlayerWeek, StatLine};

const STAT_WOBBLE: f64 = 0.2;
const SHOOTING_WOBBLE: f64 = 0.08;
const FT_WOBBLE: f64 = 0.12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub players: usize,
    pub weeks: u32,
    pub seed: u64,
    /// Chance per healthy week that an injury starts.
    pub injury_rate: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig { players: 450, weeks: 25, seed: 2024, injury_rate: 0.03 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Archetype {
    Guard,
    Wing,
    Big,
}

/// Per-36-minute rates and shooting percentages of one player.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlayerModel {
    pub archetype: Archetype,
    pub minutes: f64,
    pub fga: f64,
    pub three_share: f64,
    pub two_pct: f64,
    pub three_pct: f64,
    pub fta: f64,
    pub ft_pct: f64,
    pub rebounds: f64,
    pub assists: f64,
    pub steals: f64,
    pub blocks: f64,
    pub turnovers: f64,
}

struct Base {
    fga: f64,
    three_share: f64,
    two_pct: f64,
    three_pct: f64,
    fta: f64,
    ft_pct: f64,
    rebounds: f64,
    assists: f64,
    steals: f64,
    blocks: f64,
    turnovers: f64,
}

fn base(archetype: Archetype) -> Base {
    match archetype {
        Archetype::Guard => Base {
            fga: 15.5,
            three_share: 0.40,
            two_pct: 0.51,
            three_pct: 0.36,
            fta: 4.2,
            ft_pct: 0.82,
            rebounds: 5.0,
            assists: 5.4,
            steals: 1.3,
            blocks: 0.45,
            turnovers: 2.2,
        },
        Archetype::Wing => Base {
            fga: 14.5,
            three_share: 0.36,
            two_pct: 0.52,
            three_pct: 0.36,
            fta: 3.8,
            ft_pct: 0.79,
            rebounds: 6.5,
            assists: 3.8,
            steals: 1.1,
            blocks: 0.7,
            turnovers: 2.0,
        },
        Archetype::Big => Base {
            fga: 12.5,
            three_share: 0.14,
            two_pct: 0.57,
            three_pct: 0.34,
            fta: 4.5,
            ft_pct: 0.71,
            rebounds: 9.0,
            assists: 2.8,
            steals: 0.8,
            blocks: 1.5,
            turnovers: 2.0,
        },
    }
}

impl PlayerModel {
    pub fn draw<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let archetype = match rng.random_range(0..10) {
            0..=3 => Archetype::Guard,
            4..=6 => Archetype::Wing,
            _ => Archetype::Big,
        };
        let b = base(archetype);
        let spread = LogNormal::new(0.0, 0.2).expect("valid lognormal");
        // Better players both play more and produce more per minute.
        let quality: f64 = rng.random();
        let minutes = 10.0 + 26.0 * quality.powf(0.8) + rng.random_range(-3.0..3.0);
        let usage = 0.6 + 0.8 * quality;
        let jitter = |rng: &mut R, x: f64| x * spread.sample(rng);
        PlayerModel {
            archetype,
            minutes: minutes.clamp(8.0, 38.0),
            fga: jitter(rng, b.fga * usage),
            three_share: jitter(rng, b.three_share).clamp(0.0, 0.75),
            two_pct: (b.two_pct + rng.random_range(-0.05..0.05)).clamp(0.35, 0.72),
            three_pct: (b.three_pct + rng.random_range(-0.06..0.05)).clamp(0.2, 0.45),
            fta: jitter(rng, b.fta * usage * usage),
            ft_pct: (b.ft_pct + rng.random_range(-0.15..0.12)).clamp(0.45, 0.93),
            rebounds: jitter(rng, b.rebounds),
            assists: jitter(rng, b.assists * usage),
            steals: jitter(rng, b.steals),
            blocks: jitter(rng, b.blocks),
            turnovers: jitter(rng, b.turnovers * usage),
        }
    }

    /// One game. `form` scales every rate for the night; each stat and
    /// shooting percentage also gets its own nightly wobble.
    fn game<R: Rng + ?Sized>(&self, rng: &mut R, line: &mut StatLine) {
        let minutes = Normal::new(self.minutes, 3.5).expect("valid normal").sample(rng).clamp(0.0, 46.0);
        let form = LogNormal::new(0.0, 0.15).expect("valid lognormal").sample(rng);
        let wobble = LogNormal::new(0.0, STAT_WOBBLE).expect("valid lognormal");
        let scale = minutes / 36.0 * form;
        let count = |rng: &mut R, rate: f64| -> f64 {
            let lambda = rate * scale * wobble.sample(rng);
            if lambda <= 0.0 {
                0.0
            } else {
                Poisson::new(lambda).expect("positive rate").sample(rng)
            }
        };
        let makes = |rng: &mut R, attempts: f64, pct: f64, sd: f64| -> f64 {
            let p = (pct + Normal::new(0.0, sd).expect("valid normal").sample(rng)).clamp(0.0, 1.0);
            Binomial::new(attempts as u64, p).expect("valid binomial").sample(rng) as f64
        };
        let fga = count(rng, self.fga);
        let threes_attempted = makes(rng, fga, self.three_share, 0.0);
        let threes = makes(rng, threes_attempted, self.three_pct, SHOOTING_WOBBLE);
        let twos = makes(rng, fga - threes_attempted, self.two_pct, SHOOTING_WOBBLE);
        let fta = count(rng, self.fta);
        let ftm = makes(rng, fta, self.ft_pct, FT_WOBBLE);
        line.fg_attempted += fga;
        line.fg_made += twos + threes;
        line.threes += threes;
        line.ft_attempted += fta;
        line.ft_made += ftm;
        line.points += 2.0 * twos + 3.0 * threes + ftm;
        line.rebounds += count(rng, self.rebounds);
        line.assists += count(rng, self.assists);
        line.steals += count(rng, self.steals);
        line.blocks += count(rng, self.blocks);
        line.turnovers += count(rng, self.turnovers);
    }

    /// One week of two to four games.
    pub fn week<R: Rng + ?Sized>(&self, rng: &mut R) -> StatLine {
        let games = match rng.random_range(0..10) {
            0..=1 => 2,
            2..=6 => 3,
            _ => 4,
        };
        let mut line = StatLine::default();
        for _ in 0..games {
            self.game(rng, &mut line);
        }
        line
    }
}

/// Generate a league of weekly histories. Identical configs give identical output.
pub fn generate_league(config: &SynthConfig) -> Vec<PlayerHistory> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.players)
        .map(|i| {
            let model = PlayerModel::draw(&mut rng);
            let player_id = PlayerId::new(format!("p{:03}", i + 1));
            let mut out_for = 0u32;
            let weeks = (1..=config.weeks)
                .map(|week| {
                    if out_for == 0 && rng.random_bool(config.injury_rate) {
                        out_for = rng.random_range(1..=6);
                    }
                    if out_for > 0 {
                        out_for -= 1;
                        PlayerWeek { player_id: player_id.clone(), week, injured: true, stats: StatLine::default() }
                    } else {
                        PlayerWeek { player_id: player_id.clone(), week, injured: false, stats: model.week(&mut rng) }
                    }
                })
                .collect();
            PlayerHistory { player_id, weeks }
        })
        .collect()
}

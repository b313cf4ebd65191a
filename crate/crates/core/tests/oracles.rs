// SPDX-License-Identifier: Apache-2.0

//! Library results checked against brute-force and Monte Carlo references.

mod common;

use std::collections::{BTreeSet, HashSet};

use common::{counting_mean_sd, history, NormalPool, ShootingPool};
use gscore_core::metrics::{percentage_moments, score_slope};
use gscore_core::sim::{season_rng, SeasonPool};
use gscore_core::synth::{generate_league, SynthConfig};
use gscore_core::{
    counting_moments, filter_eligible, g_score, percentage_differential_moments, play_season, rank_players, run_draft,
    sample_season, select_q_by_z, select_q_equilibrium, win_probability_counting, Category, DraftConfig, Experiment,
    ExperimentConfig, KappaMode, LeagueAggregates, MetricKind, PlayerHistory, PlayerId, PlayerProfile, PlayerWeek,
    PoolMode, ScoringFormat, StatLine,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn counting_moments_match_brute_force() {
    let league =
        filter_eligible(&generate_league(&SynthConfig { players: 60, weeks: 15, seed: 9, injury_rate: 0.05 }), 5);
    for c in Category::COUNTING {
        let m = counting_moments(&league, c).unwrap();
        let brute: Vec<(f64, f64)> = league.iter().map(|h| counting_mean_sd(h, c)).collect();
        for (got, want) in m.per_player.iter().zip(&brute) {
            assert!((got.mean - want.0).abs() < 1e-9 && (got.tau - want.1).abs() < 1e-9, "{c}");
        }
        let n = brute.len() as f64;
        let mu = brute.iter().map(|b| b.0).sum::<f64>() / n;
        let sigma = (brute.iter().map(|b| (b.0 - mu).powi(2)).sum::<f64>() / n).sqrt();
        let tau = (brute.iter().map(|b| b.1 * b.1).sum::<f64>() / n).sqrt();
        assert!((m.pool.mean - mu).abs() < 1e-9);
        assert!((m.pool.sigma - sigma).abs() < 1e-9);
        assert!((m.pool.tau - tau).abs() < 1e-9);
    }
}

#[test]
fn percentage_moments_match_brute_force() {
    let mut pool = ShootingPool::generate(40, 12, 4);
    // A player who sits out some weeks entirely, and one who never shoots.
    pool.made[5][3] = 0.0;
    pool.attempted[5][3] = 0.0;
    pool.made[7] = vec![0.0; 12];
    pool.attempted[7] = vec![0.0; 12];
    let ((mu_a, mu_r, sigma_r, tau_r), players) = pool.moments();
    let m = percentage_moments(&pool.histories(), Category::FieldGoalPct).unwrap();
    assert!((m.pool.mean_attempts - mu_a).abs() < 1e-9);
    assert!((m.pool.success_rate - mu_r).abs() < 1e-12);
    assert!((m.pool.sigma - sigma_r).abs() < 1e-12);
    assert!((m.pool.tau - tau_r).abs() < 1e-12);
    for (got, want) in m.per_player.iter().zip(&players) {
        assert!((got.mean_attempts - want.0).abs() < 1e-9);
        match (got.success_rate, want.1) {
            (Some(a), Some(b)) => assert!((a - b).abs() < 1e-12),
            (a, b) => assert_eq!(a, b),
        }
        assert!((got.tau - want.2).abs() < 1e-12);
    }
    assert_eq!(m.per_player[7].success_rate, None);
    assert_eq!(m.per_player[7].tau, 0.0);
}

#[test]
fn counting_win_probability_matches_simulation() {
    let pool = NormalPool::generate(156, 31);
    let histories = pool.histories();
    let profiles = PlayerProfile::from_histories(&histories).unwrap();
    let agg = LeagueAggregates::from_profiles(&profiles, 13).unwrap();
    let kappa = 26.0 / 25.0;
    let mut checked = 0;
    for p in (0..156).filter(|&p| pool.g(p, kappa).abs() <= 0.5).step_by(12) {
        let g = g_score(&profiles[p], &agg, KappaMode::Exact).unwrap().categories[Category::Points];
        assert!((g - pool.g(p, kappa)).abs() < 1e-9);
        let predicted = win_probability_counting(g, 13);
        let observed = pool.win_rate(p, 13, 200_000, p as u64);
        assert!(
            (predicted - observed).abs() < 0.02,
            "player {p}: G {g:.3} predicted {predicted:.4} observed {observed:.4}"
        );
        checked += 1;
    }
    assert!(checked >= 3);
}

#[test]
fn percentage_differential_matches_simulation() {
    let pool = ShootingPool::generate(156, 52, 11);
    let histories = pool.histories();
    let profiles = PlayerProfile::from_histories(&histories).unwrap();
    let agg = LeagueAggregates::from_profiles(&profiles, 13).unwrap();
    for p in [0, 1] {
        let d = percentage_differential_moments(&profiles[p], &agg, Category::FieldGoalPct, 13).unwrap();
        let (mean, var) = pool.differential(p, 13, 300_000, 100 + p as u64);
        assert!((d.mean / mean - 1.0).abs() < 0.03, "player {p}: mean {} vs {mean}", d.mean);
        assert!((d.variance / var - 1.0).abs() < 0.03, "player {p}: variance {} vs {var}", d.variance);
    }
}

#[test]
fn expected_categories_linear_in_total() {
    let pool = NormalPool::generate(50, 2);
    let histories = pool.histories();
    let profiles = PlayerProfile::from_histories(&histories).unwrap();
    let agg = LeagueAggregates::from_profiles(&profiles, 13).unwrap();
    for p in &profiles[..5] {
        let s = g_score(p, &agg, KappaMode::Exact).unwrap();
        let (v, marginal) = gscore_core::expected_categories_won(&s, 13, 9);
        let sum: f64 = Category::ALL.iter().map(|&c| s.categories[c]).sum();
        assert!((marginal - sum * score_slope(13) / 2.0).abs() < 1e-12);
        assert!((v - 4.5 - marginal).abs() < 1e-12);
    }
}

/// Chi-square goodness of fit of season sampling against uniform over healthy weeks.
#[test]
fn season_sampling_is_uniform_over_healthy_weeks() {
    let weeks: Vec<PlayerWeek> = (0..10)
        .map(|w| PlayerWeek {
            player_id: "u".into(),
            week: w,
            injured: w % 4 == 3,
            stats: StatLine { points: w as f64, ..StatLine::default() },
        })
        .collect();
    let history = PlayerHistory { player_id: "u".into(), weeks };
    let healthy: Vec<u32> = history.healthy_weeks().map(|w| w.week).collect();
    let mut counts = [0usize; 10];
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let seasons = 4_000;
    for _ in 0..seasons {
        for w in sample_season(&history, 20, &mut rng).unwrap() {
            assert!(!w.injured);
            counts[w.week as usize] += 1;
        }
    }
    let expected = (seasons * 20) as f64 / healthy.len() as f64;
    let chi2: f64 = healthy.iter().map(|&w| (counts[w as usize] as f64 - expected).powi(2) / expected).sum();
    // 7 healthy weeks -> 6 degrees of freedom; 99.9th percentile is 22.46.
    assert!(chi2 < 22.46, "chi-square {chi2}");
}

/// Reference snake draft driven by explicit pick numbers rather than round order.
fn replay_draft(teams: usize, rounds: usize, rankings: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut taken = HashSet::new();
    let mut rosters = vec![Vec::new(); teams];
    for pick in 1..=teams * rounds {
        let round = (pick - 1) / teams;
        let pos = (pick - 1) % teams;
        let seat = if round % 2 == 0 { pos } else { teams - 1 - pos };
        let choice = *rankings[seat].iter().find(|p| !taken.contains(*p)).unwrap();
        taken.insert(choice);
        rosters[seat].push(choice);
    }
    rosters
}

#[test]
fn draft_matches_independent_replay() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let teams = rng.random_range(2..9);
        let rounds = rng.random_range(1..8);
        let players = teams * rounds + rng.random_range(0..10);
        let rankings: Vec<Vec<usize>> = (0..teams)
            .map(|_| {
                let mut list: Vec<usize> = (0..players).collect();
                for i in (1..list.len()).rev() {
                    list.swap(i, rng.random_range(0..=i));
                }
                list
            })
            .collect();
        let refs: Vec<&[usize]> = rankings.iter().map(|r| r.as_slice()).collect();
        assert_eq!(run_draft(teams, rounds, &refs).unwrap(), replay_draft(teams, rounds, &rankings));
    }
}

fn equilibrium_player(id: &str, points: f64, assists: f64, steals: (f64, f64), base: f64) -> PlayerHistory {
    let line = |s: f64| StatLine {
        points,
        rebounds: base * 3.0,
        assists,
        steals: s,
        blocks: base,
        threes: base,
        turnovers: 3.0 - base,
        fg_made: 4.0 + base,
        fg_attempted: 10.0,
        ft_made: 2.0 + base,
        ft_attempted: 5.0,
    };
    history(id, &[line(steals.0), line(steals.1)])
}

/// `b` wins the Z selection on a volatile steals edge; once weekly steals variance
/// enters the denominators, `c`'s steadier assists edge is worth more.
#[test]
fn equilibrium_displaces_volatile_specialist() {
    let histories = vec![
        equilibrium_player("a", 30.0, 8.0, (0.0, 4.0), 2.0),
        equilibrium_player("b", 20.0, 4.0, (0.0, 8.0), 1.0),
        equilibrium_player("c", 20.0, 6.5, (0.0, 2.0), 1.0),
        equilibrium_player("d", 12.0, 3.0, (0.0, 2.0), 0.0),
        equilibrium_player("e", 10.0, 2.0, (0.0, 2.0), 0.0),
    ];
    let profiles = PlayerProfile::from_histories(&histories).unwrap();
    let ids = |v: &[PlayerId]| v.iter().map(|p| p.as_str().to_string()).collect::<BTreeSet<_>>();

    let z = select_q_by_z(&profiles, 2, 13).unwrap();
    assert_eq!(ids(&z.pool_ids), ["a", "b"].map(String::from).into());

    let eq = select_q_equilibrium(&profiles, 2, 13, KappaMode::Exact, 10).unwrap();
    assert!(eq.converged);
    assert_eq!(eq.iterations_used, 2);
    assert_eq!(ids(&eq.pool_ids), ["a", "c"].map(String::from).into());

    // Fixed point: re-scoring against the returned pool selects the same pool.
    let agg = eq.aggregates(&profiles, 13).unwrap();
    let top: Vec<PlayerId> = rank_players(&profiles, &agg, MetricKind::G, KappaMode::Exact)
        .unwrap()
        .into_iter()
        .take(2)
        .map(|s| s.player_id)
        .collect();
    assert_eq!(ids(&top), ids(&eq.pool_ids));
}

#[test]
fn experiment_matches_sequential_replay() {
    let league =
        filter_eligible(&generate_league(&SynthConfig { players: 120, weeks: 20, seed: 3, injury_rate: 0.03 }), 10);
    let exp = Experiment::prepare(league, 4, 6, KappaMode::One, PoolMode::ZFullLeague).unwrap();
    let config = ExperimentConfig {
        draft: DraftConfig { num_teams: 4, roster_size: 6, seat_under_test: 2, ..DraftConfig::default() },
        weeks: 10,
        seasons: 64,
        format: ScoringFormat::MostCategories,
        base_seed: 99,
    };
    let outcome = exp.run(&config).unwrap();
    let pool = SeasonPool::new(&exp.players).unwrap();
    let teams = exp.draft(&config.draft).unwrap();
    let wins = (0..64)
        .filter(|&s| {
            let mut rng = season_rng(99, 2, s);
            play_season(&pool, &teams, 10, &mut rng).unwrap().champion(ScoringFormat::MostCategories) == 2
        })
        .count();
    assert_eq!(outcome.wins, wins);
    assert_eq!(exp.run(&config).unwrap(), outcome);
}

#[test]
fn single_season_rate_is_zero_or_one() {
    let league =
        filter_eligible(&generate_league(&SynthConfig { players: 80, weeks: 15, seed: 8, injury_rate: 0.0 }), 10);
    let exp = Experiment::prepare(league, 4, 5, KappaMode::One, PoolMode::ZFullLeague).unwrap();
    let config = ExperimentConfig {
        draft: DraftConfig { num_teams: 4, roster_size: 5, ..DraftConfig::default() },
        weeks: 6,
        seasons: 1,
        format: ScoringFormat::EachCategory,
        base_seed: 1,
    };
    let r = exp.run(&config).unwrap().win_rate();
    assert!(r == 0.0 || r == 1.0);
}

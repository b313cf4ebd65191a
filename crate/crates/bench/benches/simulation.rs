// SPDX-License-Identifier: Apache-2.0

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use gscore_bench::eligible_league;
use gscore_core::sim::{season_rng, SeasonPool};
use gscore_core::{play_season, DraftConfig, Experiment, ExperimentConfig, KappaMode, PoolMode, ScoringFormat};

fn simulation(c: &mut Criterion) {
    let exp = Experiment::prepare(eligible_league(), 12, 13, KappaMode::One, PoolMode::ZFullLeague).unwrap();
    let draft = DraftConfig::default();
    let teams = exp.draft(&draft).unwrap();
    let pool = SeasonPool::new(&exp.players).unwrap();

    c.bench_function("draft_12x13", |b| b.iter(|| exp.draft(black_box(&draft)).unwrap()));
    c.bench_function("season_20_weeks", |b| {
        let mut season = 0;
        b.iter(|| {
            season += 1;
            play_season(&pool, black_box(&teams), 20, &mut season_rng(1, 0, season)).unwrap()
        })
    });
    let mut group = c.benchmark_group("experiment");
    group.sample_size(10);
    group.bench_function("seat_100_seasons", |b| {
        let config =
            ExperimentConfig { draft, weeks: 20, seasons: 100, format: ScoringFormat::EachCategory, base_seed: 3 };
        b.iter(|| exp.run(black_box(&config)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, simulation);
criterion_main!(benches);

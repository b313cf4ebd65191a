// SPDX-License-Identifier: Apache-2.0

//! `gscore`: rank players, select reference pools, run draft experiments and serve
//! the draft room backend.

use std::fs::File;
use std::io::{BufReader, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use gscore_core::pool::DEFAULT_MAX_ITERS;
use gscore_core::report::{
    denominator_table, render_denominators, render_experiment, render_ranking, ExperimentReport, RenderFormat,
};
use gscore_core::synth::{generate_league, SynthConfig};
use gscore_core::{
    filter_eligible, parse_game_log, rank_players, select_q_by_z, select_q_equilibrium, write_game_log, DraftConfig,
    Experiment, ExperimentConfig, GameLogFormat, KappaMode, MetricKind, PlayerHistory, PlayerProfile, PoolMode,
    PoolSelection, ScoringFormat,
};
use gscore_service::{AppState, Dataset};

#[derive(Debug, Parser)]
#[command(name = "gscore", version, about = "Z-score and G-score valuation for category fantasy basketball")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a weekly game log and summarize the player pool.
    Ingest {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        min_weeks: usize,
    },
    /// Rank every eligible player by Z or G.
    Rank(RankArgs),
    /// Select the reference pool the aggregates are computed over.
    Pool(PoolArgs),
    /// Run the lone-drafter experiment.
    Simulate(SimulateArgs),
    /// Render summary tables.
    Report {
        #[command(subcommand)]
        report: ReportCommand,
    },
    /// Start the draft room backend.
    Serve(ServeArgs),
    /// Write a seeded synthetic game log.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
struct LeagueArgs {
    #[arg(long)]
    input: PathBuf,
    /// Healthy weeks a player needs to be eligible.
    #[arg(long, default_value_t = 10)]
    min_weeks: usize,
}

#[derive(Debug, Args)]
struct RankArgs {
    #[command(flatten)]
    league: LeagueArgs,
    #[arg(long, default_value = "g")]
    metric: MetricKind,
    #[arg(long, default_value_t = 12)]
    teams: usize,
    #[arg(long, default_value_t = 13)]
    roster: usize,
    /// exact, 1.04 or 1.
    #[arg(long, default_value = "exact")]
    kappa: KappaMode,
    /// z or equilibrium.
    #[arg(long, default_value = "z")]
    pool_mode: PoolMode,
    /// csv or md.
    #[arg(long, default_value = "csv")]
    output: RenderFormat,
    /// Only print the best `top` players.
    #[arg(long)]
    top: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PoolArgs {
    #[command(flatten)]
    league: LeagueArgs,
    #[arg(long, default_value = "z")]
    mode: PoolMode,
    #[arg(long, default_value_t = 156)]
    q_size: usize,
    #[arg(long, default_value_t = 13)]
    roster: usize,
    #[arg(long, default_value = "exact")]
    kappa: KappaMode,
    #[arg(long, default_value_t = DEFAULT_MAX_ITERS)]
    max_iters: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Seat {
    One(usize),
    All,
}

impl FromStr for Seat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Seat::All),
            _ => s.parse().map(Seat::One).map_err(|_| format!("expected a seat number or `all`, got `{s}`")),
        }
    }
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Game log to draft from; a synthetic league is generated when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 10)]
    min_weeks: usize,
    /// Seed of the synthetic league used without `--input`.
    #[arg(long, default_value_t = SynthConfig::default().seed)]
    synth_seed: u64,
    #[arg(long, default_value_t = 12)]
    teams: usize,
    #[arg(long, default_value_t = 13)]
    roster: usize,
    #[arg(long, default_value_t = 20)]
    weeks: usize,
    #[arg(long, default_value_t = 1000)]
    seasons: usize,
    /// Seat under test, or `all`.
    #[arg(long, default_value = "all")]
    seat: Seat,
    #[arg(long, default_value = "g")]
    metric: MetricKind,
    #[arg(long, default_value = "z")]
    field: MetricKind,
    /// each or most.
    #[arg(long, default_value = "each")]
    format: ScoringFormat,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "1")]
    kappa: KappaMode,
    #[arg(long, default_value = "z")]
    pool_mode: PoolMode,
    #[arg(long, default_value = "csv")]
    output: RenderFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum ReportCommand {
    /// Z and G denominators per category over the selected pool.
    Denominators {
        #[command(flatten)]
        league: LeagueArgs,
        #[arg(long, default_value_t = 12)]
        teams: usize,
        #[arg(long, default_value_t = 13)]
        roster: usize,
        #[arg(long, default_value = "1")]
        kappa: KappaMode,
        #[arg(long, default_value = "z")]
        pool_mode: PoolMode,
        #[arg(long, default_value = "md")]
        output: RenderFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-render a `simulate` CSV with its aggregate row.
    Experiment {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "md")]
        output: RenderFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct ServeArgs {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 10)]
    min_weeks: usize,
    #[arg(long, default_value = "127.0.0.1")]
    bind: String,
    #[arg(long, default_value_t = 8080)]
    port: u16,
    /// Append-only session log, replayed at startup.
    #[arg(long, default_value = "gscore-sessions.jsonl")]
    log: PathBuf,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[arg(long, default_value_t = SynthConfig::default().players)]
    players: usize,
    #[arg(long, default_value_t = SynthConfig::default().weeks)]
    weeks: u32,
    #[arg(long, default_value_t = SynthConfig::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = SynthConfig::default().injury_rate)]
    injury_rate: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Ingest { input, min_weeks } => ingest(&input, min_weeks),
        Command::Rank(args) => rank(args),
        Command::Pool(args) => pool(args),
        Command::Simulate(args) => simulate(args),
        Command::Report { report } => match report {
            ReportCommand::Denominators { league, teams, roster, kappa, pool_mode, output, out } => {
                denominators(&league, teams, roster, kappa, pool_mode, output, out.as_deref())
            }
            ReportCommand::Experiment { input, output, out } => {
                let text = std::fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
                let report = ExperimentReport::from_csv(&text)
                    .map_err(anyhow::Error::msg)
                    .with_context(|| format!("parsing {}", input.display()))?;
                emit(&render_experiment(&report, output), out.as_deref())
            }
        },
        Command::Serve(args) => serve(args),
        Command::Synth(args) => synth(args),
    }
}

fn read_log(path: &Path) -> Result<Vec<PlayerHistory>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    parse_game_log(BufReader::new(file), GameLogFormat::Csv).with_context(|| format!("parsing {}", path.display()))
}

fn eligible(league: &LeagueArgs) -> Result<Vec<PlayerHistory>> {
    let players = filter_eligible(&read_log(&league.input)?, league.min_weeks);
    if players.is_empty() {
        bail!("no player has {} healthy weeks", league.min_weeks);
    }
    Ok(players)
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn select(
    profiles: &[PlayerProfile],
    mode: PoolMode,
    q: usize,
    roster: usize,
    kappa: KappaMode,
    iters: usize,
) -> Result<PoolSelection> {
    Ok(match mode {
        PoolMode::ZFullLeague => select_q_by_z(profiles, q, roster)?,
        PoolMode::GEquilibrium => select_q_equilibrium(profiles, q, roster, kappa, iters)?,
    })
}

fn ingest(input: &Path, min_weeks: usize) -> Result<()> {
    let histories = read_log(input)?;
    let rows: usize = histories.iter().map(|h| h.weeks.len()).sum();
    let injured = histories.iter().flat_map(|h| &h.weeks).filter(|w| w.injured).count();
    let healthy: Vec<usize> = histories.iter().map(|h| h.healthy_weeks().count()).collect();
    let eligible = filter_eligible(&histories, min_weeks);
    println!("rows: {rows}");
    println!("players: {}", histories.len());
    println!("injured weeks: {injured}");
    println!(
        "healthy weeks per player: min {} max {}",
        healthy.iter().min().copied().unwrap_or(0),
        healthy.iter().max().copied().unwrap_or(0)
    );
    println!("eligible players (>= {min_weeks} healthy weeks): {}", eligible.len());
    Ok(())
}

fn rank(args: RankArgs) -> Result<()> {
    let players = eligible(&args.league)?;
    let profiles = PlayerProfile::from_histories(&players)?;
    let selection =
        select(&profiles, args.pool_mode, args.teams * args.roster, args.roster, args.kappa, DEFAULT_MAX_ITERS)?;
    let agg = selection.aggregates(&profiles, args.roster)?;
    let mut scores = rank_players(&profiles, &agg, args.metric, args.kappa)?;
    scores.truncate(args.top.unwrap_or(scores.len()));
    emit(&render_ranking(&scores, args.output), args.out.as_deref())
}

fn pool(args: PoolArgs) -> Result<()> {
    let profiles = PlayerProfile::from_histories(&eligible(&args.league)?)?;
    let s = select(&profiles, args.mode, args.q_size, args.roster, args.kappa, args.max_iters)?;
    println!("mode: {}", s.mode);
    println!("size: {}", s.pool_ids.len());
    println!("iterations: {}", s.iterations_used);
    println!("converged: {}", s.converged);
    for id in &s.pool_ids {
        println!("{id}");
    }
    Ok(())
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let league = match &args.input {
        Some(path) => read_log(path)?,
        None => generate_league(&SynthConfig { seed: args.synth_seed, ..SynthConfig::default() }),
    };
    let players = filter_eligible(&league, args.min_weeks);
    let experiment = Experiment::prepare(players, args.teams, args.roster, args.kappa, args.pool_mode)?;
    let draft = DraftConfig {
        num_teams: args.teams,
        roster_size: args.roster,
        seat_under_test: match args.seat {
            Seat::One(s) => s,
            Seat::All => 0,
        },
        metric_under_test: args.metric,
        field_metric: args.field,
    };
    let config =
        ExperimentConfig { draft, weeks: args.weeks, seasons: args.seasons, format: args.format, base_seed: args.seed };
    let outcomes = match args.seat {
        Seat::One(_) => vec![experiment.run(&config)?],
        Seat::All => experiment.run_all_seats(&config)?,
    };
    let report = ExperimentReport::new(args.format, args.metric, args.field, &outcomes);
    emit(&render_experiment(&report, args.output), args.out.as_deref())
}

fn denominators(
    league: &LeagueArgs,
    teams: usize,
    roster: usize,
    kappa: KappaMode,
    mode: PoolMode,
    output: RenderFormat,
    out: Option<&Path>,
) -> Result<()> {
    let profiles = PlayerProfile::from_histories(&eligible(league)?)?;
    let selection = select(&profiles, mode, teams * roster, roster, kappa, DEFAULT_MAX_ITERS)?;
    let mut report = denominator_table(&selection.aggregates(&profiles, roster)?, kappa)?;
    report.pool_mode = Some(mode.to_string());
    emit(&render_denominators(&report, output), out)
}

fn serve(args: ServeArgs) -> Result<()> {
    tracing_subscriber::fmt().with_writer(std::io::stderr).init();
    let dataset = match &args.input {
        Some(path) => Some(Dataset::new(filter_eligible(&read_log(path)?, args.min_weeks))?),
        None => None,
    };
    let state = Arc::new(AppState::with_log(dataset, &args.log)?);
    let addr: SocketAddr = format!("{}:{}", args.bind, args.port)
        .parse()
        .with_context(|| format!("bad bind address {}:{}", args.bind, args.port))?;
    tokio::runtime::Runtime::new()?.block_on(gscore_service::serve(state, addr))?;
    Ok(())
}

fn synth(args: SynthArgs) -> Result<()> {
    let league = generate_league(&SynthConfig {
        players: args.players,
        weeks: args.weeks,
        seed: args.seed,
        injury_rate: args.injury_rate,
    });
    let mut buf = Vec::new();
    write_game_log(&mut buf, &league)?;
    emit(std::str::from_utf8(&buf)?, args.out.as_deref())
}

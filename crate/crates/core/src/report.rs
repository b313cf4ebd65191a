// SPDX-License-Identifier: Apache-2.0

//! Denominator and experiment tables, rendered as CSV or markdown.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::category::Category;
use crate::error::MetricsError;
use crate::metrics::{KappaMode, LeagueAggregates, MetricKind, ValueScore};
use crate::sim::{std_error, ScoringFormat, SeatOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RenderFormat {
    Csv,
    Markdown,
}

impl FromStr for RenderFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(RenderFormat::Csv),
            "md" | "markdown" => Ok(RenderFormat::Markdown),
            _ => Err(format!("unknown output format `{s}`, expected csv or md")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenominatorRow {
    pub category: Category,
    pub sigma_sq: f64,
    pub tau_sq: f64,
    pub z_denominator: f64,
    pub g_denominator: f64,
    /// `z_denominator / g_denominator`, in `(0, 1]`.
    pub ratio: f64,
}

impl DenominatorRow {
    pub fn new(category: Category, sigma_sq: f64, tau_sq: f64, kappa: f64) -> Self {
        let z = sigma_sq.sqrt();
        let g = (sigma_sq + kappa * tau_sq).sqrt();
        DenominatorRow { category, sigma_sq, tau_sq, z_denominator: z, g_denominator: g, ratio: z / g }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenominatorReport {
    pub kappa: f64,
    /// How the aggregates' pool was chosen, when known.
    pub pool_mode: Option<String>,
    pub pool_size: usize,
    pub rows: Vec<DenominatorRow>,
}

/// One row per category. Percentage rows carry `σ_R²` and the attempt-weighted `τ_R²`.
pub fn denominator_table(agg: &LeagueAggregates, kappa: KappaMode) -> Result<DenominatorReport, MetricsError> {
    let k = kappa.value(agg.roster_size)?;
    let rows = Category::ALL
        .iter()
        .map(|&c| {
            let (sigma, tau) = agg.spread(c);
            DenominatorRow::new(c, sigma * sigma, tau * tau, k)
        })
        .collect();
    Ok(DenominatorReport { kappa: k, pool_mode: None, pool_size: agg.pool_size(), rows })
}

const DENOMINATOR_COLUMNS: [&str; 6] =
    ["category", "sigma_sq", "tau_sq", "z_denominator", "g_denominator", "ratio_pct"];

fn denominator_cells(row: &DenominatorRow) -> [String; 6] {
    [
        row.category.label().to_string(),
        format!("{:.6}", row.sigma_sq),
        format!("{:.6}", row.tau_sq),
        format!("{:.6}", row.z_denominator),
        format!("{:.6}", row.g_denominator),
        format!("{:.2}", row.ratio * 100.0),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub seat: usize,
    pub wins: usize,
    pub n_seasons: usize,
    pub win_rate: f64,
    pub std_error: f64,
}

impl From<&SeatOutcome> for ExperimentRow {
    fn from(o: &SeatOutcome) -> Self {
        ExperimentRow {
            seat: o.seat,
            wins: o.wins,
            n_seasons: o.seasons,
            win_rate: o.win_rate(),
            std_error: o.std_error(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub format: ScoringFormat,
    pub metric: MetricKind,
    pub field: MetricKind,
    pub seats: Vec<ExperimentRow>,
}

impl ExperimentReport {
    pub fn new(format: ScoringFormat, metric: MetricKind, field: MetricKind, outcomes: &[SeatOutcome]) -> Self {
        ExperimentReport { format, metric, field, seats: outcomes.iter().map(ExperimentRow::from).collect() }
    }

    /// Pooled row over all seats, or `None` when there are none.
    pub fn aggregate(&self) -> Option<ExperimentRow> {
        let wins: usize = self.seats.iter().map(|r| r.wins).sum();
        let n: usize = self.seats.iter().map(|r| r.n_seasons).sum();
        if n == 0 {
            return None;
        }
        let p = wins as f64 / n as f64;
        Some(ExperimentRow { seat: usize::MAX, wins, n_seasons: n, win_rate: p, std_error: std_error(p, n) })
    }

    /// Parse the CSV produced by [`render_experiment`]. The aggregate row is recomputed, not read.
    pub fn from_csv(text: &str) -> Result<Self, String> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let headers = reader.headers().map_err(|e| e.to_string())?.clone();
        if headers.iter().collect::<Vec<_>>() != EXPERIMENT_COLUMNS {
            return Err(format!("unexpected header: {}", headers.iter().collect::<Vec<_>>().join(",")));
        }
        let mut seats = Vec::new();
        let mut meta: Option<(ScoringFormat, MetricKind, MetricKind)> = None;
        for (i, record) in reader.records().enumerate() {
            let record = record.map_err(|e| e.to_string())?;
            let line = i + 2;
            let field = |k: usize| record.get(k).ok_or_else(|| format!("line {line}: missing column"));
            let row_meta = (
                field(1)?.parse::<ScoringFormat>()?,
                field(2)?.parse::<MetricKind>()?,
                field(3)?.parse::<MetricKind>()?,
            );
            match meta {
                None => meta = Some(row_meta),
                Some(m) if m != row_meta => return Err(format!("line {line}: mixed experiment settings")),
                _ => {}
            }
            if field(0)? == "all" {
                continue;
            }
            let parse =
                |k: usize| -> Result<usize, String> { field(k)?.parse().map_err(|e| format!("line {line}: {e}")) };
            let (seat, wins, n) = (parse(0)?, parse(4)?, parse(5)?);
            if wins > n || n == 0 {
                return Err(format!("line {line}: {wins} wins in {n} seasons"));
            }
            let p = wins as f64 / n as f64;
            seats.push(ExperimentRow { seat, wins, n_seasons: n, win_rate: p, std_error: std_error(p, n) });
        }
        let (format, metric, field) = meta.ok_or("no rows")?;
        Ok(ExperimentReport { format, metric, field, seats })
    }
}

const EXPERIMENT_COLUMNS: [&str; 8] =
    ["seat", "format", "metric", "field", "wins", "n_seasons", "win_rate_pct", "std_error_pct"];

fn experiment_cells(report: &ExperimentReport, row: &ExperimentRow) -> [String; 8] {
    [
        if row.seat == usize::MAX { "all".to_string() } else { row.seat.to_string() },
        report.format.to_string(),
        report.metric.to_string(),
        report.field.to_string(),
        row.wins.to_string(),
        row.n_seasons.to_string(),
        format!("{:.2}", row.win_rate * 100.0),
        format!("{:.2}", row.std_error * 100.0),
    ]
}

fn render_table<const N: usize>(columns: [&str; N], rows: &[[String; N]], format: RenderFormat) -> String {
    let mut out = String::new();
    match format {
        RenderFormat::Csv => {
            out.push_str(&columns.join(","));
            out.push('\n');
            for row in rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        RenderFormat::Markdown => {
            let _ = writeln!(out, "| {} |", columns.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(N));
            for row in rows {
                let _ = writeln!(out, "| {} |", row.join(" | "));
            }
        }
    }
    out
}

pub fn render_denominators(report: &DenominatorReport, format: RenderFormat) -> String {
    let rows: Vec<_> = report.rows.iter().map(denominator_cells).collect();
    render_table(DENOMINATOR_COLUMNS, &rows, format)
}

/// Per-seat rows followed by an `all` row; header only when there are no seats.
pub fn render_experiment(report: &ExperimentReport, format: RenderFormat) -> String {
    let mut rows: Vec<_> = report.seats.iter().map(|r| experiment_cells(report, r)).collect();
    if let Some(agg) = report.aggregate() {
        rows.push(experiment_cells(report, &agg));
    }
    render_table(EXPERIMENT_COLUMNS, &rows, format)
}

const RANKING_COLUMNS: [&str; 12] =
    ["rank", "player_id", "pts", "reb", "ast", "stl", "blk", "tpm", "tov", "fg_pct", "ft_pct", "total"];

/// One row per player in the given order; scores to 4 decimals.
pub fn render_ranking(scores: &[ValueScore], format: RenderFormat) -> String {
    let rows: Vec<[String; 12]> = scores
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut cells: [String; 12] = Default::default();
            cells[0] = (i + 1).to_string();
            cells[1] = s.player_id.to_string();
            for c in Category::ALL {
                cells[2 + c.index()] = format!("{:.4}", s.categories[c]);
            }
            cells[11] = format!("{:.4}", s.total);
            cells
        })
        .collect();
    render_table(RANKING_COLUMNS, &rows, format)
}

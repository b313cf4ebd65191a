// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::category::Category;
use crate::ingest::PlayerId;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("unexpected header `{found}`")]
    Header { found: String },
    #[error("line {line}: {message}")]
    Malformed { line: u64, message: String },
    #[error("line {line}: {message}")]
    Validation { line: u64, message: String },
    #[error("line {line}: duplicate week {week} for player {player}")]
    DuplicateWeek { line: u64, player: String, week: u32 },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("player pool is empty")]
    EmptyPool,
    #[error("player {0} has no weeks")]
    EmptyHistory(PlayerId),
    #[error("no attempts recorded in {0} across the pool")]
    NoAttempts(Category),
    #[error("zero denominator in categories {0:?}")]
    DegenerateCategories(Vec<Category>),
    #[error("roster size must be at least 1, got {0}")]
    InvalidRosterSize(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PoolError {
    #[error("pool size {requested} exceeds the {available} eligible players")]
    TooLarge { requested: usize, available: usize },
    #[error("pool size must be at least 1")]
    Empty,
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("seat {seat} ran out of ranked players")]
    RankingExhausted { seat: usize },
    #[error("player {0} has no healthy weeks")]
    NoHealthyWeeks(PlayerId),
    #[error("round robin needs an even number of teams, got {0}")]
    OddTeamCount(usize),
    #[error(transparent)]
    Pool(#[from] PoolError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

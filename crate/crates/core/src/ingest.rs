// SPDX-License-Identifier: Apache-2.0

//! Weekly game-log records, the CSV reader/writer, and the eligibility filter.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::category::Category;
use crate::error::IngestError;

/// Exact header required on every game-log file.
pub const GAME_LOG_HEADER: [&str; 14] =
    ["player_id", "week", "injured", "pts", "reb", "ast", "stl", "blk", "tpm", "tov", "fgm", "fga", "ftm", "fta"];

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlayerId(pub String);

impl PlayerId {
    pub fn new(id: impl Into<String>) -> Self {
        PlayerId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for PlayerId {
    fn from(s: &str) -> Self {
        PlayerId(s.to_owned())
    }
}

/// Raw statistics for one scoring period. Team totals use the same shape.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct StatLine {
    pub points: f64,
    pub rebounds: f64,
    pub assists: f64,
    pub steals: f64,
    pub blocks: f64,
    pub threes: f64,
    pub turnovers: f64,
    pub fg_made: f64,
    pub fg_attempted: f64,
    pub ft_made: f64,
    pub ft_attempted: f64,
}

impl StatLine {
    /// Total for a counting category. For a percentage category this is the made count.
    pub fn counting(&self, category: Category) -> f64 {
        match category {
            Category::Points => self.points,
            Category::Rebounds => self.rebounds,
            Category::Assists => self.assists,
            Category::Steals => self.steals,
            Category::Blocks => self.blocks,
            Category::Threes => self.threes,
            Category::Turnovers => self.turnovers,
            Category::FieldGoalPct => self.fg_made,
            Category::FreeThrowPct => self.ft_made,
        }
    }

    pub fn counting_mut(&mut self, category: Category) -> &mut f64 {
        match category {
            Category::Points => &mut self.points,
            Category::Rebounds => &mut self.rebounds,
            Category::Assists => &mut self.assists,
            Category::Steals => &mut self.steals,
            Category::Blocks => &mut self.blocks,
            Category::Threes => &mut self.threes,
            Category::Turnovers => &mut self.turnovers,
            Category::FieldGoalPct => &mut self.fg_made,
            Category::FreeThrowPct => &mut self.ft_made,
        }
    }

    /// `(made, attempted)` for a percentage category; `(total, 0)` for a counting one.
    pub fn shooting(&self, category: Category) -> (f64, f64) {
        match category {
            Category::FieldGoalPct => (self.fg_made, self.fg_attempted),
            Category::FreeThrowPct => (self.ft_made, self.ft_attempted),
            other => (self.counting(other), 0.0),
        }
    }

    pub fn add(&mut self, other: &StatLine) {
        self.points += other.points;
        self.rebounds += other.rebounds;
        self.assists += other.assists;
        self.steals += other.steals;
        self.blocks += other.blocks;
        self.threes += other.threes;
        self.turnovers += other.turnovers;
        self.fg_made += other.fg_made;
        self.fg_attempted += other.fg_attempted;
        self.ft_made += other.ft_made;
        self.ft_attempted += other.ft_attempted;
    }

    fn fields(&self) -> [f64; 11] {
        [
            self.points,
            self.rebounds,
            self.assists,
            self.steals,
            self.blocks,
            self.threes,
            self.turnovers,
            self.fg_made,
            self.fg_attempted,
            self.ft_made,
            self.ft_attempted,
        ]
    }

    fn validate(&self) -> Result<(), String> {
        for (name, v) in GAME_LOG_HEADER[3..].iter().zip(self.fields()) {
            if !v.is_finite() || v < 0.0 {
                return Err(format!("{name} must be finite and non-negative, got {v}"));
            }
        }
        if self.fg_made > self.fg_attempted {
            return Err(format!("fgm {} exceeds fga {}", self.fg_made, self.fg_attempted));
        }
        if self.ft_made > self.ft_attempted {
            return Err(format!("ftm {} exceeds fta {}", self.ft_made, self.ft_attempted));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlayerWeek {
    pub player_id: PlayerId,
    pub week: u32,
    pub injured: bool,
    pub stats: StatLine,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlayerHistory {
    pub player_id: PlayerId,
    pub weeks: Vec<PlayerWeek>,
}

impl PlayerHistory {
    pub fn healthy_weeks(&self) -> impl Iterator<Item = &PlayerWeek> {
        self.weeks.iter().filter(|w| !w.injured)
    }
}

/// Input encodings accepted by [`parse_game_log`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GameLogFormat {
    #[default]
    Csv,
}

#[derive(Debug, Deserialize)]
struct Row {
    player_id: String,
    week: u32,
    injured: u8,
    pts: f64,
    reb: f64,
    ast: f64,
    stl: f64,
    blk: f64,
    tpm: f64,
    tov: f64,
    fgm: f64,
    fga: f64,
    ftm: f64,
    fta: f64,
}

/// Parse a game log into one history per player, in order of first appearance.
///
/// Rows keep their file order within each player. Injured rows are retained with
/// the flag set.
pub fn parse_game_log<R: Read>(source: R, format: GameLogFormat) -> Result<Vec<PlayerHistory>, IngestError> {
    match format {
        GameLogFormat::Csv => parse_csv(source),
    }
}

fn parse_csv<R: Read>(source: R) -> Result<Vec<PlayerHistory>, IngestError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(source);

    let headers = match reader.headers() {
        Ok(h) => h.clone(),
        Err(e) => return Err(IngestError::Malformed { line: 1, message: e.to_string() }),
    };
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        // Empty file.
        return Ok(Vec::new());
    }
    if headers.iter().ne(GAME_LOG_HEADER.iter().copied()) {
        return Err(IngestError::Header { found: headers.iter().collect::<Vec<_>>().join(",") });
    }

    let mut histories: Vec<PlayerHistory> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut seen: HashSet<(String, u32)> = HashSet::new();

    for record in reader.records() {
        let record = record.map_err(|e| IngestError::Malformed {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let row: Row =
            record.deserialize(Some(&headers)).map_err(|e| IngestError::Malformed { line, message: e.to_string() })?;

        let injured = match row.injured {
            0 => false,
            1 => true,
            other => {
                return Err(IngestError::Malformed { line, message: format!("injured must be 0 or 1, got {other}") })
            }
        };
        if row.player_id.is_empty() {
            return Err(IngestError::Malformed { line, message: "empty player_id".into() });
        }
        let stats = StatLine {
            points: row.pts,
            rebounds: row.reb,
            assists: row.ast,
            steals: row.stl,
            blocks: row.blk,
            threes: row.tpm,
            turnovers: row.tov,
            fg_made: row.fgm,
            fg_attempted: row.fga,
            ft_made: row.ftm,
            ft_attempted: row.fta,
        };
        stats.validate().map_err(|message| IngestError::Validation { line, message })?;

        if !seen.insert((row.player_id.clone(), row.week)) {
            return Err(IngestError::DuplicateWeek { line, player: row.player_id, week: row.week });
        }

        let slot = *index.entry(row.player_id.clone()).or_insert_with(|| {
            histories.push(PlayerHistory { player_id: PlayerId(row.player_id.clone()), weeks: Vec::new() });
            histories.len() - 1
        });
        histories[slot].weeks.push(PlayerWeek { player_id: PlayerId(row.player_id), week: row.week, injured, stats });
    }
    Ok(histories)
}

/// Write histories in the game-log CSV format. Parsing the output reproduces the input.
pub fn write_game_log<W: Write>(sink: W, histories: &[PlayerHistory]) -> Result<(), IngestError> {
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record(GAME_LOG_HEADER)?;
    for week in histories.iter().flat_map(|h| &h.weeks) {
        let s = &week.stats;
        let mut record =
            vec![week.player_id.0.clone(), week.week.to_string(), if week.injured { "1" } else { "0" }.to_string()];
        record.extend(s.fields().iter().map(|v| v.to_string()));
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}

/// Keep players with at least `min_weeks` healthy weeks, stripped of their injured weeks.
pub fn filter_eligible(histories: &[PlayerHistory], min_weeks: usize) -> Vec<PlayerHistory> {
    histories
        .iter()
        .filter_map(|h| {
            let weeks: Vec<PlayerWeek> = h.healthy_weeks().cloned().collect();
            (weeks.len() >= min_weeks.max(1)).then(|| PlayerHistory { player_id: h.player_id.clone(), weeks })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "player_id,week,injured,pts,reb,ast,stl,blk,tpm,tov,fgm,fga,ftm,fta\n";

    fn parse(body: &str) -> Result<Vec<PlayerHistory>, IngestError> {
        parse_game_log(format!("{HEADER}{body}").as_bytes(), GameLogFormat::Csv)
    }

    fn week(id: &str, week: u32, injured: bool) -> PlayerWeek {
        PlayerWeek { player_id: id.into(), week, injured, stats: StatLine { points: 10.0, ..StatLine::default() } }
    }

    #[test]
    fn maps_columns_in_declared_order() {
        let parsed = parse("p1,3,0,10,5,2,1,0,2,1,4,9,2,3\n").unwrap();
        assert_eq!(parsed.len(), 1);
        let w = &parsed[0].weeks[0];
        assert_eq!(w.player_id.as_str(), "p1");
        assert_eq!(w.week, 3);
        assert!(!w.injured);
        let expected = StatLine {
            points: 10.0,
            rebounds: 5.0,
            assists: 2.0,
            steals: 1.0,
            blocks: 0.0,
            threes: 2.0,
            turnovers: 1.0,
            fg_made: 4.0,
            fg_attempted: 9.0,
            ft_made: 2.0,
            ft_attempted: 3.0,
        };
        assert_eq!(w.stats, expected);
    }

    #[test]
    fn empty_input_is_empty_collection() {
        assert!(parse_game_log(&b""[..], GameLogFormat::Csv).unwrap().is_empty());
        assert!(parse("").unwrap().is_empty());
    }

    #[test]
    fn made_above_attempted_is_rejected() {
        let err = parse("p1,1,0,10,5,2,1,0,2,1,5,4,2,3\n").unwrap_err();
        assert!(matches!(err, IngestError::Validation { line: 2, .. }), "{err}");
    }

    #[test]
    fn duplicate_week_is_rejected() {
        let err = parse("p1,1,0,1,1,1,1,1,1,1,1,1,1,1\np2,1,0,1,1,1,1,1,1,1,1,1,1,1\np1,1,1,0,0,0,0,0,0,0,0,0,0,0\n")
            .unwrap_err();
        assert!(matches!(err, IngestError::DuplicateWeek { line: 4, week: 1, .. }), "{err}");
    }

    #[test]
    fn malformed_rows_report_line_numbers() {
        let err = parse("p1,1,0,1,1,1,1,1,1,1,1,1,1,1\np1,2,0,x,1,1,1,1,1,1,1,1,1,1\n").unwrap_err();
        assert!(matches!(err, IngestError::Malformed { line: 3, .. }), "{err}");
        let err = parse("p1,1,2,1,1,1,1,1,1,1,1,1,1,1\n").unwrap_err();
        assert!(matches!(err, IngestError::Malformed { line: 2, .. }), "{err}");
        let err = parse("p1,1,0,1\n").unwrap_err();
        assert!(matches!(err, IngestError::Malformed { line: 2, .. }), "{err}");
        let err = parse("p1,1,0,-1,1,1,1,1,1,1,1,1,1,1\n").unwrap_err();
        assert!(matches!(err, IngestError::Validation { .. }), "{err}");
    }

    #[test]
    fn wrong_header_is_rejected() {
        let err = parse_game_log(&b"id,week\np1,1\n"[..], GameLogFormat::Csv).unwrap_err();
        assert!(matches!(err, IngestError::Header { .. }));
    }

    #[test]
    fn injured_rows_are_kept_and_flagged() {
        let parsed = parse("p1,1,1,0,0,0,0,0,0,0,0,0,0,0\np1,2,0,1,1,1,1,1,1,1,1,1,1,1\n").unwrap();
        assert_eq!(parsed[0].weeks.len(), 2);
        assert!(parsed[0].weeks[0].injured);
    }

    #[test]
    fn eligibility_threshold() {
        let mut weeks: Vec<PlayerWeek> = (0..12).map(|w| week("a", w, w < 3)).collect();
        let a = PlayerHistory { player_id: "a".into(), weeks: weeks.clone() };
        weeks = (0..10).map(|w| week("b", w, false)).collect();
        let b = PlayerHistory { player_id: "b".into(), weeks };
        let kept = filter_eligible(&[a.clone(), b.clone()], 10);
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0], b);

        let kept = filter_eligible(&[a], 1);
        assert_eq!(kept[0].weeks.len(), 9);
        assert!(kept[0].weeks.iter().all(|w| !w.injured));
    }
}

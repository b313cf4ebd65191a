// SPDX-License-Identifier: Apache-2.0

//! Team aggregation, category comparison, schedules and season standings.

use std::cmp::Ordering;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::ScoringFormat;
use crate::category::{Category, CategoryKind, CategoryMap};
use crate::error::SimError;
use crate::ingest::{PlayerHistory, PlayerWeek, StatLine};

/// A team's summed statistics for one scoring period.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TeamWeek {
    pub stats: StatLine,
    pub players: usize,
}

impl TeamWeek {
    pub fn add(&mut self, line: &StatLine) {
        self.stats.add(line);
        self.players += 1;
    }
}

/// Sum counting statistics and pool made/attempted across the given player-weeks.
pub fn aggregate_team_week<'a>(player_weeks: impl IntoIterator<Item = &'a PlayerWeek>) -> TeamWeek {
    let mut team = TeamWeek::default();
    for w in player_weeks {
        team.add(&w.stats);
    }
    team
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Win,
    Loss,
    Tie,
}

impl Outcome {
    pub fn flip(self) -> Outcome {
        match self {
            Outcome::Win => Outcome::Loss,
            Outcome::Loss => Outcome::Win,
            Outcome::Tie => Outcome::Tie,
        }
    }

    fn from_ordering(o: Ordering) -> Outcome {
        match o {
            Ordering::Greater => Outcome::Win,
            Ordering::Less => Outcome::Loss,
            Ordering::Equal => Outcome::Tie,
        }
    }
}

/// Compare made/attempted rates without dividing.
///
/// A side with no attempts counts as a 0% shooter that ties any other side
/// with no makes.
fn compare_rates((made_a, att_a): (f64, f64), (made_b, att_b): (f64, f64)) -> Ordering {
    match (att_a > 0.0, att_b > 0.0) {
        (true, true) => (made_a * att_b).total_cmp(&(made_b * att_a)),
        (false, false) => Ordering::Equal,
        (false, true) => {
            if made_b > 0.0 {
                Ordering::Less
            } else {
                Ordering::Equal
            }
        }
        (true, false) => {
            if made_a > 0.0 {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        }
    }
}

/// How `a` ranks against `b` in one category: `Greater` means `a` is better.
pub fn compare_category(a: &StatLine, b: &StatLine, category: Category) -> Ordering {
    match category.kind() {
        CategoryKind::Counting => {
            let o = a.counting(category).total_cmp(&b.counting(category));
            if category.lower_is_better() {
                o.reverse()
            } else {
                o
            }
        }
        CategoryKind::Percentage => compare_rates(a.shooting(category), b.shooting(category)),
    }
}

/// Per-category outcome for team `a`.
pub fn score_matchup(a: &TeamWeek, b: &TeamWeek) -> CategoryMap<Outcome> {
    CategoryMap::from_fn(|c| Outcome::from_ordering(compare_category(&a.stats, &b.stats, c)))
}

/// Draw `weeks` independent healthy weeks with replacement.
pub fn sample_season<'a, R: Rng + ?Sized>(
    history: &'a PlayerHistory,
    weeks: usize,
    rng: &mut R,
) -> Result<Vec<&'a PlayerWeek>, SimError> {
    let healthy: Vec<&PlayerWeek> = history.healthy_weeks().collect();
    if healthy.is_empty() {
        return Err(SimError::NoHealthyWeeks(history.player_id.clone()));
    }
    Ok((0..weeks).map(|_| healthy[rng.random_range(0..healthy.len())]).collect())
}

/// Healthy weekly lines of every player, indexed like the histories they came from.
#[derive(Debug, Clone)]
pub struct SeasonPool {
    lines: Vec<Vec<StatLine>>,
}

impl SeasonPool {
    pub fn new(histories: &[PlayerHistory]) -> Result<Self, SimError> {
        let lines = histories
            .iter()
            .map(|h| {
                let lines: Vec<StatLine> = h.healthy_weeks().map(|w| w.stats).collect();
                if lines.is_empty() {
                    Err(SimError::NoHealthyWeeks(h.player_id.clone()))
                } else {
                    Ok(lines)
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(SeasonPool { lines })
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Same draw sequence as [`sample_season`] on the player's history.
    pub fn sample<'a, R: Rng + ?Sized>(&'a self, player: usize, rng: &mut R) -> &'a StatLine {
        let lines = &self.lines[player];
        &lines[rng.random_range(0..lines.len())]
    }
}

/// Weekly pairings from the circle method, cycling through rounds as needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub weeks: Vec<Vec<(usize, usize)>>,
}

impl Schedule {
    pub fn round_robin(num_teams: usize, weeks: usize) -> Result<Self, SimError> {
        if num_teams == 0 || num_teams % 2 != 0 {
            return Err(SimError::OddTeamCount(num_teams));
        }
        let rounds = num_teams - 1;
        // Team 0 stays fixed; the rest rotate one place per round.
        let round = |r: usize| -> Vec<(usize, usize)> {
            let ring: Vec<usize> = std::iter::once(0).chain((0..rounds).map(|i| 1 + (i + r) % rounds)).collect();
            (0..num_teams / 2).map(|i| (ring[i], ring[num_teams - 1 - i])).collect()
        };
        Ok(Schedule { weeks: (0..weeks).map(|w| round(w % rounds)).collect() })
    }

    pub fn num_weeks(&self) -> usize {
        self.weeks.len()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryRecord {
    pub wins: u32,
    pub losses: u32,
    pub ties: u32,
}

impl CategoryRecord {
    pub fn add(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Win => self.wins += 1,
            Outcome::Loss => self.losses += 1,
            Outcome::Tie => self.ties += 1,
        }
    }

    pub fn from_outcomes(outcomes: &CategoryMap<Outcome>) -> Self {
        let mut r = CategoryRecord::default();
        outcomes.values().for_each(|&o| r.add(o));
        r
    }

    pub fn net(&self) -> i64 {
        i64::from(self.wins) - i64::from(self.losses)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeekResult {
    pub opponent: usize,
    pub outcomes: CategoryMap<Outcome>,
}

impl WeekResult {
    pub fn record(&self) -> CategoryRecord {
        CategoryRecord::from_outcomes(&self.outcomes)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TeamSeason {
    pub weeks: Vec<WeekResult>,
    /// Category outcomes summed over the season.
    pub record: CategoryRecord,
    /// Weekly majority results in half-weeks: 2 per week won, 1 per week tied.
    pub half_weeks_won: u32,
    /// Season totals, for rotisserie.
    pub totals: StatLine,
}

impl TeamSeason {
    pub fn weeks_won(&self) -> f64 {
        f64::from(self.half_weeks_won) / 2.0
    }
}

/// Accumulates head-to-head results into a [`SeasonResult`].
#[derive(Debug, Clone)]
pub struct SeasonTally {
    teams: Vec<TeamSeason>,
}

impl SeasonTally {
    pub fn new(num_teams: usize) -> Self {
        SeasonTally { teams: vec![TeamSeason::default(); num_teams] }
    }

    /// Record one weekly matchup given the outcomes from team `a`'s side.
    pub fn record_matchup(&mut self, a: usize, b: usize, outcomes_for_a: CategoryMap<Outcome>) {
        let outcomes_for_b = outcomes_for_a.map(|_, o| o.flip());
        let (rec_a, rec_b) =
            (CategoryRecord::from_outcomes(&outcomes_for_a), CategoryRecord::from_outcomes(&outcomes_for_b));
        let (half_a, half_b) = match rec_a.wins.cmp(&rec_b.wins) {
            Ordering::Greater => (2, 0),
            Ordering::Less => (0, 2),
            Ordering::Equal => (1, 1),
        };
        for (team, opponent, outcomes, rec, half) in
            [(a, b, outcomes_for_a, rec_a, half_a), (b, a, outcomes_for_b, rec_b, half_b)]
        {
            let t = &mut self.teams[team];
            t.record.wins += rec.wins;
            t.record.losses += rec.losses;
            t.record.ties += rec.ties;
            t.half_weeks_won += half;
            t.weeks.push(WeekResult { opponent, outcomes });
        }
    }

    pub fn add_totals(&mut self, team: usize, week: &TeamWeek) {
        self.teams[team].totals.add(&week.stats);
    }

    /// Close the season; `tiebreak` holds one coin-flip key per team.
    pub fn finish(self, tiebreak: Vec<u64>) -> SeasonResult {
        assert_eq!(tiebreak.len(), self.teams.len());
        SeasonResult { teams: self.teams, tiebreak }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeasonResult {
    pub teams: Vec<TeamSeason>,
    /// Seeded coin-flip keys used as the last tie-break (higher wins).
    pub tiebreak: Vec<u64>,
}

impl SeasonResult {
    /// Team indices from first to last place.
    ///
    /// Each Category: wins minus losses, then wins, then fewer losses. Most Categories:
    /// weeks won (ties count half), then wins minus losses. The coin flip settles the rest.
    pub fn standings(&self, format: ScoringFormat) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.teams.len()).collect();
        order.sort_by(|&i, &j| {
            let (a, b) = (&self.teams[i], &self.teams[j]);
            let primary = match format {
                ScoringFormat::EachCategory => b
                    .record
                    .net()
                    .cmp(&a.record.net())
                    .then(b.record.wins.cmp(&a.record.wins))
                    .then(a.record.losses.cmp(&b.record.losses)),
                ScoringFormat::MostCategories => {
                    b.half_weeks_won.cmp(&a.half_weeks_won).then(b.record.net().cmp(&a.record.net()))
                }
            };
            primary.then(self.tiebreak[j].cmp(&self.tiebreak[i])).then(i.cmp(&j))
        });
        order
    }

    pub fn champion(&self, format: ScoringFormat) -> usize {
        self.standings(format)[0]
    }
}

/// Simulate one season: sample every rostered player's weeks, pair teams by
/// round robin, and score every matchup.
pub fn play_season<R: Rng + ?Sized>(
    pool: &SeasonPool,
    teams: &[Vec<usize>],
    weeks: usize,
    rng: &mut R,
) -> Result<SeasonResult, SimError> {
    let schedule = Schedule::round_robin(teams.len(), weeks)?;
    Ok(play_scheduled_season(pool, teams, &schedule, rng))
}

pub(crate) fn play_scheduled_season<R: Rng + ?Sized>(
    pool: &SeasonPool,
    teams: &[Vec<usize>],
    schedule: &Schedule,
    rng: &mut R,
) -> SeasonResult {
    let weeks = schedule.num_weeks();
    let mut team_weeks = vec![vec![TeamWeek::default(); weeks]; teams.len()];
    for (t, roster) in teams.iter().enumerate() {
        for &player in roster {
            for week in team_weeks[t].iter_mut() {
                week.add(pool.sample(player, rng));
            }
        }
    }

    let mut tally = SeasonTally::new(teams.len());
    for (t, weeks) in team_weeks.iter().enumerate() {
        for w in weeks {
            tally.add_totals(t, w);
        }
    }
    for (w, pairs) in schedule.weeks.iter().enumerate() {
        for &(a, b) in pairs {
            tally.record_matchup(a, b, score_matchup(&team_weeks[a][w], &team_weeks[b][w]));
        }
    }
    let tiebreak = (0..teams.len()).map(|_| rng.random::<u64>()).collect();
    tally.finish(tiebreak)
}

/// Rotisserie ranks over season totals.
#[derive(Debug, Clone, PartialEq)]
pub struct RotisserieStandings {
    /// `ranks[team][k]` is the team's rank in `categories[k]`; 1 is best, ties share the mean.
    pub ranks: Vec<Vec<f64>>,
    pub totals: Vec<f64>,
    /// Team indices from first to last place (lowest rank sum first).
    pub order: Vec<usize>,
}

pub fn rotisserie_standings(season_totals: &[StatLine], categories: &[Category]) -> RotisserieStandings {
    let n = season_totals.len();
    let ranks: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            categories
                .iter()
                .map(|&c| {
                    let (mut better, mut tied) = (0usize, 0usize);
                    for j in (0..n).filter(|&j| j != i) {
                        match compare_category(&season_totals[j], &season_totals[i], c) {
                            Ordering::Greater => better += 1,
                            Ordering::Equal => tied += 1,
                            Ordering::Less => {}
                        }
                    }
                    1.0 + better as f64 + tied as f64 / 2.0
                })
                .collect()
        })
        .collect();
    let totals: Vec<f64> = ranks.iter().map(|r| r.iter().sum()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| totals[i].total_cmp(&totals[j]).then(i.cmp(&j)));
    RotisserieStandings { ranks, totals, order }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pw(points: f64, turnovers: f64, ft: (f64, f64)) -> PlayerWeek {
        PlayerWeek {
            player_id: "x".into(),
            week: 0,
            injured: false,
            stats: StatLine { points, turnovers, ft_made: ft.0, ft_attempted: ft.1, ..StatLine::default() },
        }
    }

    #[test]
    fn aggregation_example() {
        let a =
            aggregate_team_week(&[pw(10.0, 1.0, (2.0, 3.0)), pw(15.0, 2.0, (4.0, 4.0)), pw(33.0, 2.0, (5.0, 10.0))]);
        let b = aggregate_team_week(&[pw(12.0, 1.0, (1.0, 2.0)), pw(8.0, 1.0, (0.0, 1.0)), pw(20.0, 1.0, (8.0, 10.0))]);
        assert_eq!((a.stats.points, a.stats.turnovers, a.stats.ft_made, a.stats.ft_attempted), (58.0, 5.0, 11.0, 17.0));
        // The player rows sum to 9/13 (69%); only that total agrees with B winning free throws.
        assert_eq!((b.stats.points, b.stats.turnovers, b.stats.ft_made, b.stats.ft_attempted), (40.0, 3.0, 9.0, 13.0));
        let o = score_matchup(&a, &b);
        assert_eq!(o[Category::Points], Outcome::Win);
        assert_eq!(o[Category::Turnovers], Outcome::Loss);
        assert_eq!(o[Category::FreeThrowPct], Outcome::Loss);
        assert_eq!(o[Category::Rebounds], Outcome::Tie);
    }

    #[test]
    fn identical_teams_tie_everything() {
        let a = aggregate_team_week(&[pw(10.0, 1.0, (2.0, 3.0))]);
        assert!(score_matchup(&a, &a).values().all(|&o| o == Outcome::Tie));
    }

    #[test]
    fn zero_attempt_rules() {
        let none = (0.0, 0.0);
        assert_eq!(compare_rates(none, none), Ordering::Equal);
        assert_eq!(compare_rates(none, (1.0, 4.0)), Ordering::Less);
        assert_eq!(compare_rates((1.0, 4.0), none), Ordering::Greater);
        assert_eq!(compare_rates(none, (0.0, 4.0)), Ordering::Equal);
        assert_eq!(compare_rates((2.0, 4.0), (1.0, 2.0)), Ordering::Equal);
    }

    #[test]
    fn sampling_with_one_healthy_week() {
        let mut weeks = vec![pw(7.0, 0.0, (0.0, 0.0))];
        let mut hurt = pw(99.0, 0.0, (0.0, 0.0));
        hurt.injured = true;
        weeks.push(hurt);
        let history = PlayerHistory { player_id: "x".into(), weeks };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let season = sample_season(&history, 20, &mut rng).unwrap();
        assert_eq!(season.len(), 20);
        assert!(season.iter().all(|w| w.stats.points == 7.0));

        let empty = PlayerHistory { player_id: "y".into(), weeks: vec![] };
        assert!(matches!(sample_season(&empty, 20, &mut rng), Err(SimError::NoHealthyWeeks(_))));
    }

    #[test]
    fn round_robin_shape() {
        let s = Schedule::round_robin(4, 3).unwrap();
        let mut pairs: Vec<(usize, usize)> = s.weeks.iter().flatten().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(Schedule::round_robin(5, 3).unwrap_err(), SimError::OddTeamCount(5));
    }

    #[test]
    fn rotisserie_ties_share_ranks() {
        let line = StatLine { points: 5.0, ..StatLine::default() };
        let r = rotisserie_standings(&[line; 4], &Category::ALL);
        assert!(r.totals.iter().all(|&t| t == 9.0 * 2.5));
    }
}

// SPDX-License-Identifier: Apache-2.0

use std::collections::HashSet;
use std::hash::Hash;

use crate::error::SimError;

/// Seat on the clock for every pick of a snake draft, in pick order.
///
/// Even rounds (0-based) run seats `0..num_teams`, odd rounds run them in reverse.
pub fn snake_order(num_teams: usize, rounds: usize) -> Vec<usize> {
    (0..rounds).flat_map(|r| (0..num_teams).map(move |i| if r % 2 == 0 { i } else { num_teams - 1 - i })).collect()
}

/// Seat making overall pick `pick` (0-based) of a snake draft.
pub fn seat_for_pick(num_teams: usize, pick: usize) -> usize {
    let (round, i) = (pick / num_teams, pick % num_teams);
    if round % 2 == 0 {
        i
    } else {
        num_teams - 1 - i
    }
}

/// Run a snake draft in which every seat takes its highest-ranked available player.
///
/// `rankings[s]` is seat `s`'s static list, best first. Returns each seat's picks in
/// the order they were made.
pub fn run_draft<T: Clone + Eq + Hash>(
    num_teams: usize,
    roster_size: usize,
    rankings: &[&[T]],
) -> Result<Vec<Vec<T>>, SimError> {
    if rankings.len() != num_teams {
        return Err(SimError::Config(format!("{} ranking lists for {num_teams} teams", rankings.len())));
    }
    let mut taken: HashSet<&T> = HashSet::with_capacity(num_teams * roster_size);
    let mut cursor = vec![0usize; num_teams];
    let mut teams: Vec<Vec<T>> = vec![Vec::with_capacity(roster_size); num_teams];

    for seat in snake_order(num_teams, roster_size) {
        let list = rankings[seat];
        while cursor[seat] < list.len() && taken.contains(&list[cursor[seat]]) {
            cursor[seat] += 1;
        }
        let pick = list.get(cursor[seat]).ok_or(SimError::RankingExhausted { seat })?;
        taken.insert(pick);
        teams[seat].push(pick.clone());
        cursor[seat] += 1;
    }
    Ok(teams)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn picks_of(order: &[usize], seat: usize) -> Vec<usize> {
        order.iter().enumerate().filter(|(_, &s)| s == seat).map(|(i, _)| i + 1).collect()
    }

    #[test]
    fn six_team_four_round_board() {
        let order = snake_order(6, 4);
        assert_eq!(order.len(), 24);
        assert_eq!(picks_of(&order, 0), vec![1, 12, 13, 24]);
        assert_eq!(picks_of(&order, 5), vec![6, 7, 18, 19]);
        assert_eq!(picks_of(&order, 1), vec![2, 11, 14, 23]);
        for (pick, &seat) in order.iter().enumerate() {
            assert_eq!(seat_for_pick(6, pick), seat);
        }
    }

    #[test]
    fn single_team_picks_every_time() {
        assert_eq!(snake_order(1, 3), vec![0, 0, 0]);
    }

    #[test]
    fn shared_list_hands_out_snake_slices() {
        let list: Vec<usize> = (0..24).collect();
        let teams = run_draft(6, 4, &[&list[..]; 6]).unwrap();
        let order = snake_order(6, 4);
        for (seat, team) in teams.iter().enumerate() {
            let expected: Vec<usize> = picks_of(&order, seat).into_iter().map(|p| p - 1).collect();
            assert_eq!(*team, expected);
        }
    }

    #[test]
    fn two_teams_one_round() {
        let list = ["A", "B", "C"];
        let teams = run_draft(2, 1, &[&list[..], &list[..]]).unwrap();
        assert_eq!(teams, vec![vec!["A"], vec!["B"]]);
    }

    #[test]
    fn short_list_is_an_error() {
        let list = [1, 2, 3];
        assert_eq!(run_draft(2, 2, &[&list[..], &list[..]]).unwrap_err(), SimError::RankingExhausted { seat: 0 });
    }
}

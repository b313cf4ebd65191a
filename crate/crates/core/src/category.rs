// SPDX-License-Identifier: Apache-2.0

//! The nine standard head-to-head categories and a fixed-size map keyed by them.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// How a category is aggregated across a team.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CategoryKind {
    /// Summed across players.
    Counting,
    /// Total successes over total attempts.
    Percentage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Points,
    Rebounds,
    Assists,
    Steals,
    Blocks,
    Threes,
    Turnovers,
    FieldGoalPct,
    FreeThrowPct,
}

pub const CATEGORY_COUNT: usize = 9;

impl Category {
    pub const ALL: [Category; CATEGORY_COUNT] = [
        Category::Points,
        Category::Rebounds,
        Category::Assists,
        Category::Steals,
        Category::Blocks,
        Category::Threes,
        Category::Turnovers,
        Category::FieldGoalPct,
        Category::FreeThrowPct,
    ];

    pub const COUNTING: [Category; 7] = [
        Category::Points,
        Category::Rebounds,
        Category::Assists,
        Category::Steals,
        Category::Blocks,
        Category::Threes,
        Category::Turnovers,
    ];

    pub const PERCENTAGE: [Category; 2] = [Category::FieldGoalPct, Category::FreeThrowPct];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Position of the category within its own kind (`COUNTING` or `PERCENTAGE`).
    pub fn slot(self) -> usize {
        match self.kind() {
            CategoryKind::Counting => self.index(),
            CategoryKind::Percentage => self.index() - Category::COUNTING.len(),
        }
    }

    pub fn kind(self) -> CategoryKind {
        match self {
            Category::FieldGoalPct | Category::FreeThrowPct => CategoryKind::Percentage,
            _ => CategoryKind::Counting,
        }
    }

    /// Turnovers are won by the lower total.
    pub fn lower_is_better(self) -> bool {
        self == Category::Turnovers
    }

    /// Short column label used in tables and CSV headers.
    pub fn label(self) -> &'static str {
        match self {
            Category::Points => "pts",
            Category::Rebounds => "reb",
            Category::Assists => "ast",
            Category::Steals => "stl",
            Category::Blocks => "blk",
            Category::Threes => "tpm",
            Category::Turnovers => "tov",
            Category::FieldGoalPct => "fg_pct",
            Category::FreeThrowPct => "ft_pct",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Category::Points => "Points",
            Category::Rebounds => "Rebounds",
            Category::Assists => "Assists",
            Category::Steals => "Steals",
            Category::Blocks => "Blocks",
            Category::Threes => "Threes",
            Category::Turnovers => "Turnovers",
            Category::FieldGoalPct => "Field Goal %",
            Category::FreeThrowPct => "Free Throw %",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Category::ALL.into_iter().find(|c| c.label() == s).ok_or_else(|| format!("unknown category `{s}`"))
    }
}

/// One value per category, indexed by [`Category`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CategoryMap<T>([T; CATEGORY_COUNT]);

impl<T> CategoryMap<T> {
    pub fn from_fn(mut f: impl FnMut(Category) -> T) -> Self {
        CategoryMap(Category::ALL.map(&mut f))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Category, &T)> {
        Category::ALL.into_iter().zip(self.0.iter())
    }

    pub fn values(&self) -> impl Iterator<Item = &T> {
        self.0.iter()
    }

    pub fn map<U>(&self, mut f: impl FnMut(Category, &T) -> U) -> CategoryMap<U> {
        CategoryMap::from_fn(|c| f(c, &self.0[c.index()]))
    }
}

impl<T: Default> Default for CategoryMap<T> {
    fn default() -> Self {
        CategoryMap::from_fn(|_| T::default())
    }
}

impl<T> Index<Category> for CategoryMap<T> {
    type Output = T;

    fn index(&self, c: Category) -> &T {
        &self.0[c.index()]
    }
}

impl<T> IndexMut<Category> for CategoryMap<T> {
    fn index_mut(&mut self, c: Category) -> &mut T {
        &mut self.0[c.index()]
    }
}

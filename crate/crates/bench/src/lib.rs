// SPDX-License-Identifier: Apache-2.0

//! Shared inputs for the benchmarks.

use gscore_core::synth::{generate_league, SynthConfig};
use gscore_core::{filter_eligible, PlayerHistory};

/// The default synthetic league, restricted to players with 10 healthy weeks.
pub fn eligible_league() -> Vec<PlayerHistory> {
    filter_eligible(&generate_league(&SynthConfig::default()), 10)
}

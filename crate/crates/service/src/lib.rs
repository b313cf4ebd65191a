// SPDX-License-Identifier: Apache-2.0

//! Local JSON-over-HTTP backend for running a live draft against the engine's
//! rankings.
//!
//! | route | |
//! |---|---|
//! | `POST /sessions` | create a session from `{teams, roster, my_seat, kappa, pool_mode}` |
//! | `GET /sessions/{id}` | pick log, clock and board |
//! | `POST /sessions/{id}/picks` | `{player_id}` for the seat on the clock |
//! | `GET /sessions/{id}/recommendations?metric=g&top=25` | best available players |
//! | `GET /sessions/{id}/whatif/{player_id}` | per-category win probabilities with that player |
//! | `GET /players` | eligible players |
//! | `GET /rankings?metric=z\|g` | full ranking for a league shape |
//!
//! Errors are `{code, message}` JSON bodies.

mod api;
mod error;
mod session;
mod store;

use std::net::SocketAddr;
use std::sync::Arc;

pub use api::{
    router, BoardCell, CategoryChance, PickView, PlayerView, RankingView, ScoreRow, SessionView, WhatIfView,
};
pub use error::ServiceError;
pub use session::{Clock, Dataset, Pick, Session, SessionConfig, Valuation};
pub use store::{AppState, Event};

/// Bind `addr` and serve until ctrl-c.
pub async fn serve(state: Arc<AppState>, addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(addr = %listener.local_addr()?, "listening");
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

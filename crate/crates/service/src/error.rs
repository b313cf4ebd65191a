// SPDX-License-Identifier: Apache-2.0

use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum ServiceError {
    #[error("no dataset loaded; start the service with --input")]
    NoDataset,
    #[error("unknown session `{0}`")]
    UnknownSession(String),
    #[error("unknown player `{0}`")]
    UnknownPlayer(String),
    #[error("player `{0}` has already been drafted")]
    AlreadyDrafted(String),
    #[error("every pick in this session has been made")]
    SessionComplete,
    #[error("invalid session config: {0}")]
    InvalidConfig(String),
    #[error("{0}")]
    BadRequest(String),
    #[error("valuation failed: {0}")]
    Engine(String),
    #[error("session log: {0}")]
    Log(#[from] std::io::Error),
    #[error("session log line {line}: {message}")]
    Replay { line: usize, message: String },
}

impl ServiceError {
    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::NoDataset => "no_dataset",
            ServiceError::UnknownSession(_) => "unknown_session",
            ServiceError::UnknownPlayer(_) => "unknown_player",
            ServiceError::AlreadyDrafted(_) => "already_drafted",
            ServiceError::SessionComplete => "session_complete",
            ServiceError::InvalidConfig(_) => "invalid_config",
            ServiceError::BadRequest(_) => "bad_request",
            ServiceError::Engine(_) => "engine_error",
            ServiceError::Log(_) => "log_error",
            ServiceError::Replay { .. } => "replay_error",
        }
    }

    pub fn status(&self) -> StatusCode {
        match self {
            ServiceError::NoDataset | ServiceError::AlreadyDrafted(_) | ServiceError::SessionComplete => {
                StatusCode::CONFLICT
            }
            ServiceError::UnknownSession(_) | ServiceError::UnknownPlayer(_) => StatusCode::NOT_FOUND,
            ServiceError::InvalidConfig(_) => StatusCode::UNPROCESSABLE_ENTITY,
            ServiceError::BadRequest(_) => StatusCode::BAD_REQUEST,
            ServiceError::Engine(_) | ServiceError::Log(_) | ServiceError::Replay { .. } => {
                StatusCode::INTERNAL_SERVER_ERROR
            }
        }
    }
}

#[derive(Debug, Serialize)]
struct ErrorBody {
    code: &'static str,
    message: String,
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let body = ErrorBody { code: self.code(), message: self.to_string() };
        (self.status(), Json(body)).into_response()
    }
}

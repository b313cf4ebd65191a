// SPDX-License-Identifier: Apache-2.0

//! Session registry with an append-only JSON-lines event log.
//!
//! Reads take the registry read lock and then one session's mutex. Writers hold
//! the session mutex across validation, the log append and the in-memory update,
//! so picks to one session are serialized and the log order matches the state.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::{Arc, Mutex, MutexGuard, RwLock};

use gscore_core::PlayerId;
use serde::{Deserialize, Serialize};
use uuid::Uuid;

use crate::error::ServiceError;
use crate::session::{Dataset, Pick, Session, SessionConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum Event {
    Create { session_id: Uuid, config: SessionConfig },
    Pick { session_id: Uuid, player_id: PlayerId },
}

pub struct AppState {
    dataset: Option<Dataset>,
    sessions: RwLock<HashMap<Uuid, Arc<Mutex<Session>>>>,
    log: Option<Mutex<File>>,
}

impl AppState {
    /// In-memory only.
    pub fn new(dataset: Option<Dataset>) -> Self {
        AppState { dataset, sessions: RwLock::default(), log: None }
    }

    /// Replay `log_path` if it exists, then append every later event to it.
    pub fn with_log(dataset: Option<Dataset>, log_path: &Path) -> Result<Self, ServiceError> {
        let mut state = AppState::new(dataset);
        if log_path.exists() {
            state.replay(BufReader::new(File::open(log_path)?))?;
        }
        state.log = Some(Mutex::new(OpenOptions::new().create(true).append(true).open(log_path)?));
        Ok(state)
    }

    fn replay(&mut self, reader: impl BufRead) -> Result<(), ServiceError> {
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let fail = |message: String| ServiceError::Replay { line: i + 1, message };
            let event: Event = serde_json::from_str(&line).map_err(|e| fail(e.to_string()))?;
            self.apply(event).map_err(|e| fail(e.to_string()))?;
        }
        Ok(())
    }

    fn apply(&self, event: Event) -> Result<(), ServiceError> {
        match event {
            Event::Create { session_id, config } => {
                let session = Session::new(session_id, config, self.dataset()?)?;
                self.sessions_mut().insert(session_id, Arc::new(Mutex::new(session)));
            }
            Event::Pick { session_id, player_id } => {
                let session = self.session(session_id)?;
                lock(&session).record_pick(player_id)?;
            }
        }
        Ok(())
    }

    fn append(&self, event: &Event) -> Result<(), ServiceError> {
        if let Some(log) = &self.log {
            let mut line = serde_json::to_string(event).map_err(|e| ServiceError::Engine(e.to_string()))?;
            line.push('\n');
            let mut file = log.lock().expect("session log poisoned");
            file.write_all(line.as_bytes())?;
            file.flush()?;
        }
        Ok(())
    }

    fn sessions_mut(&self) -> std::sync::RwLockWriteGuard<'_, HashMap<Uuid, Arc<Mutex<Session>>>> {
        self.sessions.write().expect("session registry poisoned")
    }

    pub fn dataset(&self) -> Result<&Dataset, ServiceError> {
        self.dataset.as_ref().ok_or(ServiceError::NoDataset)
    }

    pub fn session(&self, id: Uuid) -> Result<Arc<Mutex<Session>>, ServiceError> {
        self.sessions
            .read()
            .expect("session registry poisoned")
            .get(&id)
            .cloned()
            .ok_or_else(|| ServiceError::UnknownSession(id.to_string()))
    }

    pub fn create_session(&self, config: SessionConfig) -> Result<Arc<Mutex<Session>>, ServiceError> {
        let id = Uuid::new_v4();
        let session = Arc::new(Mutex::new(Session::new(id, config, self.dataset()?)?));
        self.append(&Event::Create { session_id: id, config })?;
        self.sessions_mut().insert(id, session.clone());
        Ok(session)
    }

    pub fn record_pick(&self, id: Uuid, player: PlayerId) -> Result<(Pick, Arc<Mutex<Session>>), ServiceError> {
        let handle = self.session(id)?;
        let pick = {
            let mut session = lock(&handle);
            session.check_pick(&player)?;
            self.append(&Event::Pick { session_id: id, player_id: player.clone() })?;
            session.record_pick(player)?.clone()
        };
        Ok((pick, handle))
    }
}

pub fn lock(session: &Mutex<Session>) -> MutexGuard<'_, Session> {
    session.lock().expect("session poisoned")
}

//! Hypotheses from outside the built-in search: precomputed beam files and
//! a remote parser.

use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{sort_hypotheses, BeamConfig, Hypothesis};
use crate::catalog::SchemaCatalog;
use crate::transition::{Action, TokenizedQuestion};

#[derive(Debug, Error)]
pub enum SourceError {
    #[error("cannot read {path}: {reason}")]
    Read { path: String, reason: String },
    #[error("row {row}: {reason}")]
    Malformed { row: usize, reason: String },
    #[error("remote parser: {0}")]
    Remote(String),
}

/// One serialized hypothesis: action tags and per-step log-probs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BeamRow {
    /// Example index, used by evaluation files that hold many questions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<usize>,
    pub actions: Vec<String>,
    pub logps: Vec<f64>,
}

/// Parses JSON lines; blank lines are skipped and rows are numbered from 1.
pub fn parse_beam_rows(text: &str) -> Result<Vec<BeamRow>, SourceError> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: BeamRow = serde_json::from_str(line).map_err(|e| SourceError::Malformed { row: i + 1, reason: e.to_string() })?;
        rows.push(row);
    }
    Ok(rows)
}

impl BeamRow {
    /// Validates the row against the automaton; bad tags or sequences give an
    /// invalid hypothesis rather than an error.
    pub fn to_hypothesis(&self, catalog: &SchemaCatalog, question: &TokenizedQuestion, config: &BeamConfig) -> Hypothesis {
        let parsed: Result<Vec<Action>, _> = self.actions.iter().map(|t| Action::parse_tag(t, Some(catalog))).collect();
        match parsed {
            Ok(actions) => Hypothesis::from_actions(actions, self.logps.clone(), catalog, question, config),
            Err(e) => {
                let mut h = Hypothesis::from_actions(Vec::new(), Vec::new(), catalog, question, config);
                h.step_logps = self.logps.clone();
                h.raw_score = self.logps.iter().sum();
                h.weighted_score = h.raw_score;
                h.invalidate(e.to_string());
                h
            }
        }
    }
}

/// Rows in file order, then stably re-ranked by weighted score.
pub fn rows_to_hypotheses(rows: &[BeamRow], catalog: &SchemaCatalog, question: &TokenizedQuestion, config: &BeamConfig) -> Vec<Hypothesis> {
    let mut hyps: Vec<Hypothesis> = rows.iter().map(|r| r.to_hypothesis(catalog, question, config)).collect();
    sort_hypotheses(&mut hyps);
    hyps
}

pub fn load_beam_file(
    path: &Path,
    catalog: &SchemaCatalog,
    question: &TokenizedQuestion,
    config: &BeamConfig,
) -> Result<Vec<Hypothesis>, SourceError> {
    let text = std::fs::read_to_string(path).map_err(|e| SourceError::Read { path: path.display().to_string(), reason: e.to_string() })?;
    Ok(rows_to_hypotheses(&parse_beam_rows(&text)?, catalog, question, config))
}

#[derive(Serialize)]
struct RemoteRequest<'a> {
    db_id: &'a str,
    question: &'a str,
    beam_size: usize,
}

#[derive(Deserialize)]
struct RemoteResponse {
    hypotheses: Vec<BeamRow>,
}

/// HTTP client for an external parser that returns whole scored sequences.
#[derive(Clone, Debug)]
pub struct RemoteParser {
    pub url: String,
    pub timeout: Duration,
}

impl RemoteParser {
    pub fn new(url: impl Into<String>) -> RemoteParser {
        RemoteParser { url: url.into(), timeout: Duration::from_secs(5) }
    }

    pub fn fetch(&self, db_id: &str, question: &str, beam_size: usize) -> Result<Vec<BeamRow>, SourceError> {
        let agent: ureq::Agent = ureq::Agent::config_builder().timeout_global(Some(self.timeout)).build().into();
        let mut resp = agent
            .post(&self.url)
            .send_json(RemoteRequest { db_id, question, beam_size })
            .map_err(|e| SourceError::Remote(e.to_string()))?;
        let body: RemoteResponse = resp.body_mut().read_json().map_err(|e| SourceError::Remote(e.to_string()))?;
        Ok(body.hypotheses)
    }
}

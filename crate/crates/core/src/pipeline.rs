//! Question to ranked, explained SQL hypotheses.

use serde::Serialize;
use thiserror::Error;

use crate::catalog::SchemaCatalog;
use crate::exec::Executor;
use crate::explain::{diff_explanations, Explainer, Explanation};
use crate::hypothesis::{
    beam_search, filter_and_dedupe, rows_to_hypotheses, BeamConfig, BeamError, BeamRow, HeuristicScorer, Hypothesis,
    RemoteParser, SourceError, StepScorer,
};
use crate::sql::{parse_sql, print_sql};
use crate::transition::tokenize_question;
use crate::values::{TermMap, ValueResolution, ValueResolver};

pub enum HypothesisSource<'a> {
    Heuristic,
    Scorer(&'a dyn StepScorer),
    Rows(Vec<BeamRow>),
    Remote(&'a RemoteParser),
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Source(#[from] SourceError),
    #[error(transparent)]
    Beam(#[from] BeamError),
}

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    pub rank: usize,
    pub sql: String,
    pub weighted_score: f64,
    pub raw_score: f64,
    pub explanation: Explanation,
    /// The explanation rendered as plain text.
    pub text: String,
    pub resolved_values: Vec<ValueResolution>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Rejection {
    pub sql: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Interpretation {
    pub question: String,
    pub tokens: Vec<String>,
    pub candidates: Vec<Candidate>,
    pub rejected: Vec<Rejection>,
}

fn rejection(h: &Hypothesis) -> Rejection {
    Rejection { sql: h.sql.clone(), reason: h.validity_reason.clone().unwrap_or_default() }
}

/// Hypotheses with resolved values, in rank order. Those whose SQL does not
/// survive a parse round trip are marked invalid.
pub fn resolved_hypotheses(
    question: &str,
    catalog: &SchemaCatalog,
    source: HypothesisSource<'_>,
    config: &BeamConfig,
    terms: Option<&TermMap>,
) -> Result<Vec<Hypothesis>, PipelineError> {
    let q = tokenize_question(question);
    let mut hyps = match source {
        HypothesisSource::Heuristic => beam_search(&q, catalog, &HeuristicScorer::new(), config)?,
        HypothesisSource::Scorer(s) => beam_search(&q, catalog, s, config)?,
        HypothesisSource::Rows(rows) => rows_to_hypotheses(&rows, catalog, &q, config),
        HypothesisSource::Remote(remote) => {
            let rows = remote.fetch(&catalog.db_id, question, config.beam_size)?;
            rows_to_hypotheses(&rows, catalog, &q, config)
        }
    };
    let mut resolver = ValueResolver::new(catalog);
    if let Some(t) = terms {
        resolver = resolver.with_terms(t);
    }
    for h in &mut hyps {
        if !h.valid {
            continue;
        }
        h.resolve(&resolver, catalog);
        if h.valid && !round_trips(&h.sql, catalog) {
            h.invalidate("SQL does not survive a parse round trip");
        }
    }
    Ok(hyps)
}

fn round_trips(sql: &str, catalog: &SchemaCatalog) -> bool {
    parse_sql(sql, catalog).ok().and_then(|ast| print_sql(&ast, catalog).ok()).is_some_and(|again| again == sql)
}

/// Full pipeline: hypotheses, value resolution, execution filter, string
/// dedupe, explanations and sibling diffs.
pub fn interpret(
    question: &str,
    catalog: &SchemaCatalog,
    db: &Executor,
    source: HypothesisSource<'_>,
    config: &BeamConfig,
    terms: Option<&TermMap>,
) -> Result<Interpretation, PipelineError> {
    let hyps = resolved_hypotheses(question, catalog, source, config, terms)?;
    let outcome = filter_and_dedupe(hyps, db);
    let mut rejected: Vec<Rejection> = outcome.rejected.iter().map(rejection).collect();
    let mut candidates = Vec::new();
    for h in outcome.kept {
        let Some(ast) = h.ast.as_ref() else { continue };
        match Explainer::shipped().explain(ast, catalog, &h.resolved_values) {
            Ok(explanation) => candidates.push(Candidate {
                rank: candidates.len() + 1,
                sql: h.sql.clone(),
                weighted_score: h.weighted_score,
                raw_score: h.raw_score,
                text: explanation.render(),
                explanation,
                resolved_values: h.resolved_values.clone(),
            }),
            Err(e) => rejected.push(Rejection { sql: h.sql.clone(), reason: e.to_string() }),
        }
    }
    let mut docs: Vec<Explanation> = candidates.iter().map(|c| c.explanation.clone()).collect();
    diff_explanations(&mut docs);
    for (c, d) in candidates.iter_mut().zip(docs) {
        c.explanation = d;
    }
    let tokens = tokenize_question(question).tokens.into_iter().map(|t| t.text).collect();
    Ok(Interpretation { question: question.to_string(), tokens, candidates, rejected })
}

//! Scored SQL hypotheses: weighted beam search over a pluggable step scorer,
//! hypothesis sources and filtering.

mod heuristic;
mod smoothing;
mod source;

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::catalog::SchemaCatalog;
use crate::exec::Executor;
use crate::sql::{print_sql, Query};
use crate::transition::{Action, ActionKind, Automaton, Grammar, RuleId, Slot, SqlGrammar, TokenizedQuestion};
use crate::values::{ValueResolution, ValueResolver};

pub use heuristic::HeuristicScorer;
pub use smoothing::{column_label_smoothing_loss, LossError};
pub use source::{load_beam_file, parse_beam_rows, rows_to_hypotheses, BeamRow, RemoteParser, SourceError};

/// Slack allowed when checking that step log-probs are normalized.
pub const NORMALIZATION_SLACK: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BeamConfig {
    pub beam_size: usize,
    /// Weight of SelectColumn log-probs.
    pub alpha: f64,
    /// Weight of CopyToken and CopyStop log-probs.
    pub beta: f64,
    pub max_steps: usize,
    /// Search on raw scores and apply the weights only to the final ranking.
    pub rerank_only: bool,
}

impl Default for BeamConfig {
    fn default() -> Self {
        BeamConfig { beam_size: 5, alpha: 3.0, beta: 0.1, max_steps: 200, rerank_only: false }
    }
}

impl BeamConfig {
    pub fn weight(&self, kind: ActionKind) -> f64 {
        match kind {
            ActionKind::SelectColumn => self.alpha,
            ActionKind::CopyToken | ActionKind::CopyStop => self.beta,
            ActionKind::ApplyRule | ActionKind::Reduce => 1.0,
        }
    }

    pub fn weighted(&self, actions: &[Action], logps: &[f64]) -> f64 {
        actions.iter().zip(logps).map(|(a, lp)| self.weight(a.kind()) * lp).sum()
    }
}

/// What a scorer sees at one decoding step.
pub struct StepContext<'a> {
    pub question: &'a TokenizedQuestion,
    pub catalog: Option<&'a SchemaCatalog>,
    pub grammar: &'a Grammar,
    pub prefix: &'a [Action],
    pub slot: Slot,
    /// Rules enclosing the frontier, outermost first.
    pub ancestors: &'a [RuleId],
}

/// Log-probabilities for the legal next actions, in the order given. Entries
/// may be `-inf`; the rest must log-sum-exp to at most 0.
pub trait StepScorer {
    fn score(&self, ctx: &StepContext<'_>, legal: &[Action]) -> Vec<f64>;
}

impl<S: StepScorer + ?Sized> StepScorer for &S {
    fn score(&self, ctx: &StepContext<'_>, legal: &[Action]) -> Vec<f64> {
        (**self).score(ctx, legal)
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum BeamError {
    #[error("scorer returned {got} scores for {expected} legal actions at step {step}")]
    ScoreCount { step: usize, expected: usize, got: usize },
    #[error("scorer returned a non-finite or positive-infinite score at step {step}")]
    BadScore { step: usize },
    #[error("scorer log-probs sum to {total} (log-sum-exp) at step {step}")]
    Unnormalized { step: usize, total: f64 },
    #[error("no hypothesis completed within {0} steps")]
    NoCompletion(usize),
    #[error("beam size must be positive")]
    EmptyBeam,
}

pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Checks the scorer contract for one step.
pub fn check_scores(step: usize, legal: usize, scores: &[f64]) -> Result<(), BeamError> {
    if scores.len() != legal {
        return Err(BeamError::ScoreCount { step, expected: legal, got: scores.len() });
    }
    if scores.iter().any(|s| s.is_nan() || *s == f64::INFINITY) {
        return Err(BeamError::BadScore { step });
    }
    let total = log_sum_exp(scores);
    if total > NORMALIZATION_SLACK {
        return Err(BeamError::Unnormalized { step, total });
    }
    Ok(())
}

/// A complete action sequence with its scores.
#[derive(Clone, Debug, PartialEq)]
pub struct ScoredSequence {
    pub actions: Vec<Action>,
    pub step_logps: Vec<f64>,
    pub raw_score: f64,
    pub weighted_score: f64,
}

#[derive(Clone)]
struct Partial<'g> {
    actions: Vec<Action>,
    logps: Vec<f64>,
    raw: f64,
    weighted: f64,
    automaton: Automaton<'g>,
}

fn serialization_cmp(a: &[Action], b: &[Action]) -> Ordering {
    let tags = |xs: &[Action]| xs.iter().map(|x| x.to_tag(None)).collect::<Vec<_>>();
    tags(a).cmp(&tags(b))
}

/// Descending by `primary`, then raw score, then ascending serialization.
fn rank(pa: f64, ra: f64, aa: &[Action], pb: f64, rb: f64, ab: &[Action]) -> Ordering {
    pb.total_cmp(&pa).then(rb.total_cmp(&ra)).then_with(|| serialization_cmp(aa, ab))
}

/// Beam search over any grammar. `columns` and `tokens` bound the
/// SelectColumn and CopyToken arguments.
#[allow(clippy::too_many_arguments)]
pub fn search_sequences(
    grammar: &Grammar,
    columns: usize,
    question: &TokenizedQuestion,
    catalog: Option<&SchemaCatalog>,
    scorer: &dyn StepScorer,
    config: &BeamConfig,
) -> Result<Vec<ScoredSequence>, BeamError> {
    if config.beam_size == 0 {
        return Err(BeamError::EmptyBeam);
    }
    let start = Partial {
        actions: Vec::new(),
        logps: Vec::new(),
        raw: 0.0,
        weighted: 0.0,
        automaton: Automaton::new(grammar, columns, question.len()),
    };
    let search_key = |p: &Partial| if config.rerank_only { p.raw } else { p.weighted };
    let mut live = vec![start];
    let mut done: Vec<Partial> = Vec::new();
    for step in 0..config.max_steps {
        if live.is_empty() || done.len() >= config.beam_size {
            break;
        }
        let mut candidates = Vec::new();
        for p in &live {
            let legal = p.automaton.legal_actions();
            let ctx = StepContext {
                question,
                catalog,
                grammar,
                prefix: &p.actions,
                slot: p.automaton.slot().expect("live hypotheses are incomplete"),
                ancestors: p.automaton.ancestors(),
            };
            let scores = scorer.score(&ctx, &legal);
            check_scores(step, legal.len(), &scores)?;
            for (a, lp) in legal.into_iter().zip(scores) {
                if lp == f64::NEG_INFINITY {
                    continue;
                }
                let mut next = p.clone();
                next.automaton.apply(&a).expect("legal action");
                next.weighted += config.weight(a.kind()) * lp;
                next.raw += lp;
                next.actions.push(a);
                next.logps.push(lp);
                candidates.push(next);
            }
        }
        candidates.sort_by(|a, b| rank(search_key(a), a.raw, &a.actions, search_key(b), b.raw, &b.actions));
        candidates.truncate(config.beam_size - done.len());
        live.clear();
        for c in candidates {
            if c.automaton.is_complete() {
                done.push(c);
            } else {
                live.push(c);
            }
        }
    }
    if done.is_empty() {
        return Err(BeamError::NoCompletion(config.max_steps));
    }
    done.sort_by(|a, b| rank(a.weighted, a.raw, &a.actions, b.weighted, b.raw, &b.actions));
    Ok(done
        .into_iter()
        .map(|p| ScoredSequence { actions: p.actions, step_logps: p.logps, raw_score: p.raw, weighted_score: p.weighted })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hypothesis {
    #[serde(serialize_with = "ser_actions")]
    pub actions: Vec<Action>,
    pub step_logps: Vec<f64>,
    pub raw_score: f64,
    pub weighted_score: f64,
    #[serde(skip)]
    pub ast: Option<Query>,
    pub sql: String,
    pub resolved_values: Vec<ValueResolution>,
    pub valid: bool,
    pub validity_reason: Option<String>,
}

fn ser_actions<S: serde::Serializer>(a: &[Action], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(a.iter().map(|x| x.to_tag(None)))
}

impl Hypothesis {
    /// Rebuilds AST and SQL from an action sequence. Sequences the automaton
    /// rejects, or that do not yield a printable query, come back invalid.
    pub fn from_actions(
        actions: Vec<Action>,
        step_logps: Vec<f64>,
        catalog: &SchemaCatalog,
        question: &TokenizedQuestion,
        config: &BeamConfig,
    ) -> Hypothesis {
        let raw_score = step_logps.iter().sum();
        let weighted_score = config.weighted(&actions, &step_logps);
        let mut h = Hypothesis {
            actions,
            step_logps,
            raw_score,
            weighted_score,
            ast: None,
            sql: String::new(),
            resolved_values: Vec::new(),
            valid: true,
            validity_reason: None,
        };
        if h.actions.len() != h.step_logps.len() {
            h.invalidate(format!("{} actions but {} log-probs", h.actions.len(), h.step_logps.len()));
            return h;
        }
        if h.actions.iter().any(|a| matches!(a, Action::SelectColumn(c) if c.0 >= catalog.column_count())) {
            h.invalidate("illegal column index");
            return h;
        }
        match SqlGrammar::shipped().actions_to_ast(&h.actions, catalog, question) {
            Ok(ast) => match print_sql(&ast, catalog) {
                Ok(sql) => {
                    h.sql = sql;
                    h.ast = Some(ast);
                }
                Err(e) => h.invalidate(e.to_string()),
            },
            Err(e) => h.invalidate(e.to_string()),
        }
        h
    }

    pub fn invalidate(&mut self, reason: impl Into<String>) {
        self.valid = false;
        self.validity_reason = Some(reason.into());
    }

    /// Resolves copied literals and reprints the SQL.
    pub fn resolve(&mut self, resolver: &ValueResolver<'_>, catalog: &SchemaCatalog) {
        let Some(ast) = self.ast.as_mut() else { return };
        match resolver.resolve(ast) {
            Ok(res) => {
                self.resolved_values = res;
                match print_sql(ast, catalog) {
                    Ok(sql) => self.sql = sql,
                    Err(e) => self.invalidate(e.to_string()),
                }
            }
            Err(e) => self.invalidate(format!("value resolution: {e}")),
        }
    }
}

/// Sorts by weighted score, then raw score, then action serialization.
pub fn sort_hypotheses(hyps: &mut [Hypothesis]) {
    hyps.sort_by(|a, b| rank(a.weighted_score, a.raw_score, &a.actions, b.weighted_score, b.raw_score, &b.actions));
}

/// Weighted beam search with the shipped transition grammar.
pub fn beam_search(
    question: &TokenizedQuestion,
    catalog: &SchemaCatalog,
    scorer: &dyn StepScorer,
    config: &BeamConfig,
) -> Result<Vec<Hypothesis>, BeamError> {
    let g = SqlGrammar::shipped();
    let seqs = search_sequences(g.grammar(), catalog.column_count(), question, Some(catalog), scorer, config)?;
    Ok(seqs
        .into_iter()
        .map(|s| {
            let mut h = Hypothesis::from_actions(s.actions, s.step_logps, catalog, question, config);
            h.weighted_score = s.weighted_score;
            h
        })
        .collect())
}

#[derive(Clone, Debug, Default)]
pub struct FilterOutcome {
    pub kept: Vec<Hypothesis>,
    /// Invalid, failing or duplicate hypotheses, each with a reason.
    pub rejected: Vec<Hypothesis>,
}

/// Drops invalid hypotheses and those that fail to execute, then keeps the
/// best-ranked hypothesis per SQL string. Input order is taken as the ranking.
pub fn filter_and_dedupe(hyps: Vec<Hypothesis>, db: &Executor) -> FilterOutcome {
    let mut out = FilterOutcome::default();
    let mut seen = HashSet::new();
    for mut h in hyps {
        if !h.valid {
            out.rejected.push(h);
            continue;
        }
        if seen.contains(&h.sql) {
            h.invalidate("duplicate SQL");
            out.rejected.push(h);
            continue;
        }
        if let Err(e) = db.execute(&h.sql, 1) {
            h.invalidate(format!("execution error: {e}"));
            out.rejected.push(h);
            continue;
        }
        seen.insert(h.sql.clone());
        out.kept.push(h);
    }
    out
}

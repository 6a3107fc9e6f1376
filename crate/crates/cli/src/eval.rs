//! Execution accuracy at several beam cut-offs.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use nldb_core::corpus::{DatabaseDir, GoldExample};
use nldb_core::exec::{exec_match_with, ExecutionResult, Executor};
use nldb_core::hypothesis::{filter_and_dedupe, parse_beam_rows, BeamConfig, BeamRow};
use nldb_core::pipeline::{resolved_hypotheses, HypothesisSource};
use rayon::prelude::*;
use serde::Serialize;

const ROW_CAP: usize = 100_000;

/// Predictions per gold example, in file order.
pub enum Predictions {
    /// Scored action sequences carrying an `example` index.
    Beams(BTreeMap<usize, Vec<BeamRow>>),
    /// One line per example, hypotheses separated by tabs, best first.
    Sql(Vec<Vec<String>>),
}

impl Predictions {
    pub fn beams(text: &str, examples: usize) -> Result<Predictions> {
        let mut by_example: BTreeMap<usize, Vec<BeamRow>> = BTreeMap::new();
        for (i, row) in parse_beam_rows(text)?.into_iter().enumerate() {
            let Some(e) = row.example else { bail!("beam row {} has no example index", i + 1) };
            if e >= examples {
                bail!("beam row {} refers to example {e}, but the gold file has {examples}", i + 1);
            }
            by_example.entry(e).or_default().push(row);
        }
        if let Some(missing) = (0..examples).find(|e| !by_example.contains_key(e)) {
            bail!("no predictions for example {missing}");
        }
        Ok(Predictions::Beams(by_example))
    }

    pub fn sql(text: &str, examples: usize) -> Result<Predictions> {
        let lines: Vec<Vec<String>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split('\t').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
            .collect();
        if lines.len() != examples {
            bail!("{} prediction lines for {examples} gold examples", lines.len());
        }
        Ok(Predictions::Sql(lines))
    }

    pub fn load(path: &Path, examples: usize) -> Result<Predictions> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
        if first.trim_start().starts_with('{') {
            Predictions::beams(&text, examples)
        } else {
            Predictions::sql(&text, examples)
        }
    }
}

#[derive(Clone, Debug)]
pub struct EvalOptions {
    pub ks: Vec<usize>,
    /// Exact cell comparison instead of the numeric tolerance.
    pub strict: bool,
    /// Drop failing and duplicate hypotheses before cutting at k.
    pub dedupe: bool,
    pub beam: BeamConfig,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { ks: vec![1, 3, 5], strict: false, dedupe: false, beam: BeamConfig::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleOutcome {
    pub index: usize,
    pub db_id: String,
    /// 1-based rank of the first hypothesis matching gold.
    pub first_correct: Option<usize>,
    pub hypotheses: usize,
    pub invalid: usize,
    pub gold_error: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct TopK {
    pub k: usize,
    pub correct: usize,
    pub accuracy: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EvalReport {
    pub examples: usize,
    pub top_k: Vec<TopK>,
    pub invalid_hypotheses: usize,
    pub gold_errors: usize,
    pub monotone: bool,
    pub outcomes: Vec<ExampleOutcome>,
}

impl EvalReport {
    pub fn passed(&self) -> bool {
        self.monotone
    }

    pub fn human(&self) -> String {
        let mut out = format!("examples: {}\n", self.examples);
        for t in &self.top_k {
            out.push_str(&format!("exec top-{}: {:.4} ({}/{})\n", t.k, t.accuracy, t.correct, self.examples));
        }
        out.push_str(&format!("invalid hypotheses: {}\n", self.invalid_hypotheses));
        if self.gold_errors > 0 {
            out.push_str(&format!("gold queries that failed to execute: {}\n", self.gold_errors));
        }
        if !self.monotone {
            out.push_str("top-k accuracy is not monotone in k\n");
        }
        out
    }
}

fn ordered(sql: &str) -> bool {
    sql.to_ascii_lowercase().split_whitespace().collect::<Vec<_>>().windows(2).any(|w| w == ["order", "by"])
}

fn eval_one(
    index: usize,
    ex: &GoldExample,
    preds: &Predictions,
    dbs: &DatabaseDir,
    opts: &EvalOptions,
) -> Result<ExampleOutcome> {
    let catalog = dbs.catalog(&ex.db_id).with_context(|| format!("example {index}: unknown database {}", ex.db_id))?;
    let db = Executor::open(&dbs.path(&ex.db_id))?;
    let mut outcome = ExampleOutcome {
        index,
        db_id: ex.db_id.clone(),
        first_correct: None,
        hypotheses: 0,
        invalid: 0,
        gold_error: None,
    };
    let gold = match db.execute(&ex.query, ROW_CAP) {
        Ok(r) => r,
        Err(e) => {
            outcome.gold_error = Some(e.to_string());
            return Ok(outcome);
        }
    };
    let is_ordered = ordered(&ex.query);
    let matches = |got: &ExecutionResult| exec_match_with(&gold, got, is_ordered, !opts.strict);
    let limit = opts.ks.iter().copied().max().unwrap_or(1);
    // None marks an invalid hypothesis, which still takes up its rank.
    let ranked: Vec<Option<String>> = match preds {
        Predictions::Sql(lines) => lines[index].iter().map(|s| Some(s.clone())).collect(),
        Predictions::Beams(rows) => {
            let hyps = resolved_hypotheses(
                &ex.question,
                catalog,
                HypothesisSource::Rows(rows[&index].clone()),
                &opts.beam,
                None,
            )?;
            if opts.dedupe {
                let out = filter_and_dedupe(hyps, &db);
                outcome.invalid += out.rejected.len();
                out.kept.into_iter().map(|h| Some(h.sql)).collect()
            } else {
                hyps.into_iter().map(|h| h.valid.then_some(h.sql)).collect()
            }
        }
    };
    outcome.hypotheses = ranked.len();
    for (rank, sql) in ranked.iter().enumerate() {
        let result = sql.as_ref().map(|s| db.execute(s, ROW_CAP));
        match result {
            Some(Ok(r)) => {
                if rank < limit && outcome.first_correct.is_none() && matches(&r) {
                    outcome.first_correct = Some(rank + 1);
                }
            }
            _ => outcome.invalid += 1,
        }
    }
    Ok(outcome)
}

pub fn evaluate(gold: &[GoldExample], preds: &Predictions, dbs: &DatabaseDir, opts: &EvalOptions) -> Result<EvalReport> {
    if gold.is_empty() {
        bail!("the gold file has no examples");
    }
    let outcomes: Vec<ExampleOutcome> = gold
        .par_iter()
        .enumerate()
        .map(|(i, ex)| eval_one(i, ex, preds, dbs, opts))
        .collect::<Result<_>>()?;
    let mut ks = opts.ks.clone();
    ks.sort_unstable();
    ks.dedup();
    let n = gold.len();
    let top_k: Vec<TopK> = ks
        .iter()
        .map(|&k| {
            let correct = outcomes.iter().filter(|o| o.first_correct.is_some_and(|r| r <= k)).count();
            TopK { k, correct, accuracy: correct as f64 / n as f64 }
        })
        .collect();
    let monotone = top_k.windows(2).all(|w| w[0].correct <= w[1].correct);
    Ok(EvalReport {
        examples: n,
        invalid_hypotheses: outcomes.iter().map(|o| o.invalid).sum(),
        gold_errors: outcomes.iter().filter(|o| o.gold_error.is_some()).count(),
        top_k,
        monotone,
        outcomes,
    })
}

//! Oracle pipeline check: gold SQL through actions and back, compared by
//! execution.

use std::time::Instant;

use anyhow::{bail, Result};
use nldb_core::corpus::{DatabaseDir, GoldExample};
use nldb_core::exec::{exec_match_with, Executor};
use nldb_core::sql::{parse_sql, print_sql};
use nldb_core::transition::{tokenize_question, SqlGrammar};
use nldb_core::values::ValueResolver;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Parse,
    Actions,
    Resolve,
    Execute,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub index: usize,
    pub db_id: String,
    pub stage: Stage,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTripReport {
    pub examples: usize,
    pub matched: usize,
    pub share: f64,
    pub elapsed_ms: f64,
    pub failures: Vec<Failure>,
}

impl RoundTripReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn human(&self) -> String {
        let mut out = format!(
            "round trip: {}/{} ({:.2}%) in {:.1}s\n",
            self.matched,
            self.examples,
            100.0 * self.share,
            self.elapsed_ms / 1000.0
        );
        for f in &self.failures {
            out.push_str(&format!("  #{} {} [{:?}] {}\n", f.index, f.db_id, f.stage, f.detail));
        }
        out
    }
}

fn check(index: usize, ex: &GoldExample, dbs: &DatabaseDir, strict: bool) -> Option<Failure> {
    let fail = |stage, detail: String| Some(Failure { index, db_id: ex.db_id.clone(), stage, detail });
    let Some(cat) = dbs.catalog(&ex.db_id) else { return fail(Stage::Parse, format!("unknown database {}", ex.db_id)) };
    let ast = match parse_sql(&ex.query, cat) {
        Ok(a) => a,
        Err(e) => return fail(Stage::Parse, e.to_string()),
    };
    let g = SqlGrammar::shipped();
    let q = tokenize_question(&ex.question);
    let back = g.ast_to_actions(&ast, cat, &q, None).and_then(|acts| g.actions_to_ast(&acts, cat, &q));
    let mut back = match back {
        Ok(b) => b,
        Err(e) => return fail(Stage::Actions, e.to_string()),
    };
    if let Err(e) = ValueResolver::new(cat).resolve(&mut back) {
        return fail(Stage::Resolve, e.to_string());
    }
    let sql = match print_sql(&back, cat) {
        Ok(s) => s,
        Err(e) => return fail(Stage::Resolve, e.to_string()),
    };
    let db = match Executor::open(&dbs.path(&ex.db_id)) {
        Ok(d) => d,
        Err(e) => return fail(Stage::Execute, e.to_string()),
    };
    let (want, got) = match (db.execute(&ex.query, 100_000), db.execute(&sql, 100_000)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return fail(Stage::Execute, e.to_string()),
    };
    let ordered = ast.order_limit.as_ref().is_some_and(|o| !o.keys.is_empty());
    if exec_match_with(&want, &got, ordered, !strict) {
        None
    } else {
        fail(Stage::Execute, format!("results differ: {sql}"))
    }
}

pub fn round_trip(gold: &[GoldExample], dbs: &DatabaseDir, strict: bool) -> Result<RoundTripReport> {
    if gold.is_empty() {
        bail!("the corpus has no examples");
    }
    let started = Instant::now();
    let mut failures: Vec<Failure> =
        gold.par_iter().enumerate().filter_map(|(i, ex)| check(i, ex, dbs, strict)).collect();
    failures.sort_by_key(|f| f.index);
    let matched = gold.len() - failures.len();
    Ok(RoundTripReport {
        examples: gold.len(),
        matched,
        share: matched as f64 / gold.len() as f64,
        elapsed_ms: started.elapsed().as_secs_f64() * 1000.0,
        failures,
    })
}

//! Evaluation and tooling commands behind the `nldb` binary.

pub mod coverage;
pub mod eval;
pub mod roundtrip;

use anyhow::{Context, Result};
use nldb_core::catalog::SchemaCatalog;
use nldb_core::explain::{Explainer, Explanation, Tier};
use nldb_core::hypothesis::BeamRow;
use nldb_core::sql::parse_sql;
use nldb_core::transition::{tokenize_question, SqlGrammar};
use nldb_core::values::ValueResolver;

pub use coverage::{coverage, CoverageReport};
pub use eval::{evaluate, EvalOptions, EvalReport, Predictions};
pub use roundtrip::{round_trip, RoundTripReport};

/// Explains `sql`. With a question, literals are first encoded as question
/// spans and resolved again, so value notes appear as they would for a
/// parser hypothesis.
pub fn explain_sql(catalog: &SchemaCatalog, sql: &str, question: Option<&str>, tier: Option<Tier>) -> Result<Explanation> {
    let mut ast = parse_sql(sql, catalog)?;
    let mut resolutions = Vec::new();
    if let Some(text) = question {
        let g = SqlGrammar::shipped();
        let q = tokenize_question(text);
        let actions = g.ast_to_actions(&ast, catalog, &q, None)?;
        ast = g.actions_to_ast(&actions, catalog, &q)?;
        resolutions = ValueResolver::new(catalog).resolve(&mut ast)?;
    }
    let e = Explainer::shipped();
    let doc = match tier {
        Some(t) => e.explain_tier(&ast, catalog, &resolutions, t)?,
        None => e.explain(&ast, catalog, &resolutions)?,
    };
    Ok(doc)
}

/// Gold SQL as a beam row: the whole `logp` sits on the first action.
pub fn encode(catalog: &SchemaCatalog, question: &str, sql: &str, logp: f64, example: Option<usize>) -> Result<BeamRow> {
    let ast = parse_sql(sql, catalog)?;
    let q = tokenize_question(question);
    let actions = SqlGrammar::shipped().ast_to_actions(&ast, catalog, &q, None).context("encoding actions")?;
    let mut logps = vec![0.0; actions.len()];
    if let Some(first) = logps.first_mut() {
        *first = logp;
    }
    Ok(BeamRow { example, actions: actions.iter().map(|a| a.to_tag(Some(catalog))).collect(), logps })
}

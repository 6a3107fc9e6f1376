mod common;

use common::{dbs, gold_rows};
use nldb_core::exec::Executor;
use nldb_core::hypothesis::BeamConfig;
use nldb_core::pipeline::{interpret, HypothesisSource};
use nldb_core::transition::tokenize_question;

#[test]
fn heuristic_question_to_explained_hypotheses() {
    let cat = dbs().catalog("dog_kennels").unwrap();
    let db = Executor::open(&dbs().path("dog_kennels")).unwrap();
    let out = interpret("How many dogs are there?", cat, &db, HypothesisSource::Heuristic, &BeamConfig::default(), None).unwrap();
    assert_eq!(out.candidates[0].sql, "SELECT count(*) FROM dogs");
    assert_eq!(out.candidates[0].text, "step 1: find the number of entries in the dogs table");
    let mut seen = std::collections::HashSet::new();
    for (i, c) in out.candidates.iter().enumerate() {
        assert_eq!(c.rank, i + 1);
        assert!(seen.insert(c.sql.clone()), "duplicate {}", c.sql);
    }
    assert_eq!(out.tokens, ["How", "many", "dogs", "are", "there", "?"]);
}

#[test]
fn beam_rows_are_resolved_filtered_and_diffed() {
    let cat = dbs().catalog("dog_kennels").unwrap();
    let db = Executor::open(&dbs().path("dog_kennels")).unwrap();
    let question = "What are the names of dogs older than 5?";
    let q = tokenize_question(question);
    let mut rows = gold_rows(cat, &q, &["SELECT name FROM dogs WHERE age > 5", "SELECT name FROM dogs WHERE weight > 5", "SELECT name FROM dogs WHERE age > 5"]);
    rows[1].actions.iter_mut().filter(|t| t.starts_with("SC:")).for_each(|t| *t = "SC:9999".into());
    rows.push(gold_rows(cat, &q, &["SELECT name FROM dogs WHERE weight > 5"]).remove(0));
    rows[3].logps.iter_mut().for_each(|l| *l -= 1.0);
    let out = interpret(question, cat, &db, HypothesisSource::Rows(rows), &BeamConfig::default(), None).unwrap();
    assert_eq!(out.candidates.len(), 2, "{:?}", out.rejected);
    assert_eq!(out.candidates[0].sql, "SELECT name FROM dogs WHERE age > 5.0");
    assert!(out.rejected.iter().any(|r| r.reason == "illegal column index"));
    assert!(out.candidates[0].explanation.steps[0].changes.iter().any(|c| !c.absent_in.is_empty()));
}

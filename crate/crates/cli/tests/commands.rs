use std::path::{Path, PathBuf};
use std::process::Command;

use nldb_cli::{coverage, evaluate, explain_sql, round_trip, EvalOptions, Predictions};
use nldb_core::corpus::{load_gold, DatabaseDir, GoldExample};
use nldb_core::explain::Tier;
use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn dbs() -> DatabaseDir {
    DatabaseDir::open(&fixtures().join("databases")).unwrap()
}

fn eval_gold() -> Vec<GoldExample> {
    load_gold(&fixtures().join("eval/gold.json")).unwrap()
}

fn oracle() -> Value {
    serde_json::from_str(&std::fs::read_to_string(fixtures().join("eval/oracle.json")).unwrap()).unwrap()
}

fn example(db: &str, query: &str) -> GoldExample {
    GoldExample { db_id: db.into(), question: "list them".into(), query: query.into() }
}

#[test]
fn eval_matches_the_sqlite_oracle() {
    let gold = eval_gold();
    let preds = Predictions::load(&fixtures().join("eval/pred.jsonl"), gold.len()).unwrap();
    let report = evaluate(&gold, &preds, &dbs(), &EvalOptions::default()).unwrap();
    let o = oracle();
    let got: Vec<usize> = report.top_k.iter().map(|t| t.correct).collect();
    assert_eq!(got, [o["top1"].as_u64().unwrap() as usize, o["top3"].as_u64().unwrap() as usize, o["top5"].as_u64().unwrap() as usize]);
    assert!(got.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(report.invalid_hypotheses, o["invalid"].as_u64().unwrap() as usize);
    let ranks: Vec<Value> = report.outcomes.iter().map(|x| x.first_correct.map_or(Value::Null, Value::from)).collect();
    assert_eq!(Value::from(ranks), o["first_correct"]);
}

#[test]
fn eval_is_order_independent() {
    let gold = eval_gold();
    let text = std::fs::read_to_string(fixtures().join("eval/pred.jsonl")).unwrap();
    let reversed: Vec<GoldExample> = gold.iter().rev().cloned().collect();
    let n = gold.len();
    let remapped: Vec<String> = text
        .lines()
        .rev()
        .map(|l| {
            let mut v: Value = serde_json::from_str(l).unwrap();
            v["example"] = Value::from(n - 1 - v["example"].as_u64().unwrap() as usize);
            v.to_string()
        })
        .collect();
    let a = evaluate(&gold, &Predictions::beams(&text, n).unwrap(), &dbs(), &EvalOptions::default()).unwrap();
    let b = evaluate(&reversed, &Predictions::beams(&remapped.join("\n"), n).unwrap(), &dbs(), &EvalOptions::default())
        .unwrap();
    assert_eq!(a.top_k, b.top_k);
    assert_eq!(a.invalid_hypotheses, b.invalid_hypotheses);
    let again = evaluate(&gold, &Predictions::beams(&text, n).unwrap(), &dbs(), &EvalOptions::default()).unwrap();
    assert_eq!(a.top_k, again.top_k);
}

#[test]
fn gold_as_prediction_is_perfect_at_every_k() {
    let gold = load_gold(&fixtures().join("corpus/dev.json")).unwrap();
    let text: Vec<String> = gold.iter().map(|g| g.query.clone()).collect();
    let preds = Predictions::sql(&text.join("\n"), gold.len()).unwrap();
    let opts = EvalOptions { strict: true, ..EvalOptions::default() };
    let report = evaluate(&gold, &preds, &dbs(), &opts).unwrap();
    assert!(report.top_k.iter().all(|t| t.correct == gold.len()), "{}", report.human());
}

#[test]
fn dedupe_only_moves_correct_answers_up() {
    let gold = eval_gold();
    let preds = Predictions::load(&fixtures().join("eval/pred.jsonl"), gold.len()).unwrap();
    let plain = evaluate(&gold, &preds, &dbs(), &EvalOptions::default()).unwrap();
    let deduped = evaluate(&gold, &preds, &dbs(), &EvalOptions { dedupe: true, ..EvalOptions::default() }).unwrap();
    for (p, d) in plain.top_k.iter().zip(&deduped.top_k) {
        assert!(d.correct >= p.correct);
    }
}

#[test]
fn eval_rejects_mismatched_predictions() {
    let gold = eval_gold();
    assert!(Predictions::sql("SELECT 1\n", gold.len()).is_err());
    let row = r#"{"example": 40, "actions": ["AR:0"], "logps": [0.0]}"#;
    assert!(Predictions::beams(row, gold.len()).is_err());
    let row = r#"{"actions": ["AR:0"], "logps": [0.0]}"#;
    assert!(Predictions::beams(row, 1).is_err());
    let row = r#"{"example": 0, "actions": ["AR:0"], "logps": [0.0]}"#;
    assert!(Predictions::beams(row, 2).is_err());
    let missing = vec![example("no_such_db", "SELECT 1")];
    assert!(evaluate(&missing, &Predictions::sql("SELECT 1", 1).unwrap(), &dbs(), &EvalOptions::default()).is_err());
}

#[test]
fn round_trip_attributes_failures_to_stages() {
    let report = round_trip(&load_gold(&fixtures().join("corpus/dev.json")).unwrap(), &dbs(), false).unwrap();
    assert!(report.passed(), "{}", report.human());
    assert_eq!(report.share, 1.0);

    let bad = vec![example("pets_1", "SELECT name FROM pets_1_missing"), example("dog_kennels", "SELECT name FROM dogs WINDOW w AS ()")];
    let report = round_trip(&bad, &dbs(), false).unwrap();
    assert_eq!(report.failures.len(), 2);
    assert!(report.failures.iter().all(|f| f.stage == nldb_cli::roundtrip::Stage::Parse));
    assert!(round_trip(&[], &dbs(), false).is_err());
}

#[test]
fn coverage_shares() {
    let bare = vec![example("pets_1", "SELECT * FROM pets"), example("dog_kennels", "SELECT name FROM dogs")];
    let r = coverage(&bare, &dbs()).unwrap();
    assert_eq!((r.shallow_share, r.deep_share), (1.0, 0.0));

    let nested = vec![example(
        "employee_hire_evaluation",
        "SELECT city FROM employee WHERE age < 30 GROUP BY city HAVING count(*) > 1",
    )];
    let r = coverage(&nested, &dbs()).unwrap();
    assert!(r.deep_share > 0.0);
    assert!(r.rule_hits.keys().all(|k| k.starts_with("deep:")));

    let r = coverage(&load_gold(&fixtures().join("corpus/dev.json")).unwrap(), &dbs()).unwrap();
    assert!((r.shallow_share + r.deep_share - 1.0).abs() < 1e-12);
    assert!(r.passed());
}

#[test]
fn explain_forces_a_tier() {
    let d = dbs();
    let cat = d.catalog("pets_1").unwrap();
    let doc = explain_sql(cat, "SELECT count(*) FROM pets", None, Some(Tier::Deep)).unwrap();
    assert_eq!(doc.tier, Tier::Deep);
    assert!(doc.render().starts_with("Step 1:"));
    let err = explain_sql(cat, "SELECT FROM pets", None, None).unwrap_err();
    assert!(err.to_string().contains("at byte"), "{err}");
}

fn nldb(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nldb")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn binary_reports_and_exit_codes() {
    let f = fixtures();
    let db = f.join("databases/product_catalog/product_catalog.sqlite");
    let (code, text) = nldb(&["explain", "--db", db.to_str().unwrap(), "SELECT count(*) FROM products"]);
    assert_eq!(code, 0);
    assert_eq!(text, "step 1: find the number of entries in the products table\n");

    let (code, _) = nldb(&["explain", "--db", db.to_str().unwrap(), "SELECT nope FROM products"]);
    assert_eq!(code, 2);

    let (gold, pred, dir) = (f.join("eval/gold.json"), f.join("eval/pred.jsonl"), f.join("databases"));
    let (code, text) = nldb(&[
        "--jobs", "2", "eval", "--machine", "--gold", gold.to_str().unwrap(), "--pred", pred.to_str().unwrap(), "--db-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["top_k"][0]["correct"], oracle()["top1"]);

    let gold = f.join("corpus/dev.json");
    let (code, text) = nldb(&["coverage", "--gold", gold.to_str().unwrap(), "--db-dir", dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(text.contains("shallow: 198"), "{text}");
}

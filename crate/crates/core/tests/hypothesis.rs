mod common;

use std::io::Write;

use common::{dbs, gold_rows, log_softmax, reference_beam, smoothing_oracle, tags, RandomScorer};
use nldb_core::exec::Executor;
use nldb_core::hypothesis::*;
use nldb_core::transition::{tokenize_question, Action, Automaton, Grammar, SqlGrammar, TokenizedQuestion};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn unit_weights_match_reference_beam_on_seeded_scorers() {
    let cat = dbs().catalog("dog_kennels").unwrap();
    let q = tokenize_question("How many dogs older than 5 have the name Bessie?");
    let g = SqlGrammar::shipped().grammar();
    let mut completed = 0;
    for seed in 0..100u64 {
        let scorer = RandomScorer { seed, bias: true };
        for rerank_only in [false, true] {
            let cfg = BeamConfig { alpha: 1.0, beta: 1.0, beam_size: 5, max_steps: 120, rerank_only };
            let ours = search_sequences(g, cat.column_count(), &q, None, &scorer, &cfg);
            let theirs = reference_beam(g, cat.column_count(), &q, &scorer, 5, 120);
            match (ours, theirs) {
                (Ok(a), Some(b)) => {
                    assert_eq!(a.len(), b.len(), "seed {seed}");
                    for (x, (acts, score)) in a.iter().zip(&b) {
                        assert_eq!(&x.actions, acts, "seed {seed}");
                        assert_eq!(x.weighted_score, *score);
                        assert_eq!(x.raw_score, *score);
                    }
                    completed += !rerank_only as usize;
                }
                (Err(BeamError::NoCompletion(_)), None) => {}
                (a, b) => panic!("seed {seed}: {a:?} vs {b:?}"),
            }
        }
    }
    assert!(completed >= 90, "only {completed} seeds completed");
}

const TOY: &str = "0\ts -> x <col> x\n1\tx -> A\n2\tx -> B\n";

fn enumerate(g: &Grammar, columns: usize, q: &TokenizedQuestion, scorer: &dyn StepScorer) -> Vec<(Vec<Action>, f64)> {
    let mut out = Vec::new();
    let mut stack = vec![(Vec::new(), 0.0, Automaton::new(g, columns, q.len()))];
    while let Some((acts, score, auto)) = stack.pop() {
        if auto.is_complete() {
            out.push((acts, score));
            continue;
        }
        let legal = auto.legal_actions();
        let ctx = StepContext { question: q, catalog: None, grammar: g, prefix: &acts, slot: auto.slot().unwrap(), ancestors: auto.ancestors() };
        for (a, lp) in legal.iter().zip(scorer.score(&ctx, &legal)) {
            let mut au = auto.clone();
            au.apply(a).unwrap();
            let mut ac = acts.clone();
            ac.push(a.clone());
            stack.push((ac, score + lp, au));
        }
    }
    out.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| tags(&a.0).cmp(&tags(&b.0))));
    out
}

#[test]
fn toy_grammar_wide_beam_is_exhaustive_and_narrow_beam_is_greedy() {
    let g = Grammar::parse(TOY).unwrap();
    let q = tokenize_question("a b");
    for seed in 0..50u64 {
        let scorer = RandomScorer { seed, bias: false };
        let all = enumerate(&g, 3, &q, &scorer);
        assert_eq!(all.len(), 12);
        let cfg = BeamConfig { alpha: 1.0, beta: 1.0, beam_size: 12, ..Default::default() };
        let wide = search_sequences(&g, 3, &q, None, &scorer, &cfg).unwrap();
        let got: Vec<_> = wide.iter().map(|s| (s.actions.clone(), s.raw_score)).collect();
        assert_eq!(got, all);

        let cfg = BeamConfig { beam_size: 1, ..cfg };
        let one = search_sequences(&g, 3, &q, None, &scorer, &cfg).unwrap();
        let mut auto = Automaton::new(&g, 3, q.len());
        let mut greedy = Vec::new();
        while !auto.is_complete() {
            let legal = auto.legal_actions();
            let ctx = StepContext { question: &q, catalog: None, grammar: &g, prefix: &greedy, slot: auto.slot().unwrap(), ancestors: auto.ancestors() };
            let s = scorer.score(&ctx, &legal);
            let best = (0..legal.len()).max_by(|&i, &j| s[i].total_cmp(&s[j]).then(j.cmp(&i))).unwrap();
            auto.apply(&legal[best]).unwrap();
            greedy.push(legal[best].clone());
        }
        assert_eq!(one[0].actions, greedy);
    }
}

/// Scores that ignore the prefix.
struct Stationary(Vec<f64>);

impl StepScorer for Stationary {
    fn score(&self, _: &StepContext<'_>, legal: &[Action]) -> Vec<f64> {
        log_softmax(&self.0[..legal.len()])
    }
}

#[test]
fn wider_beams_contain_the_narrow_best_with_stationary_scores() {
    let g = Grammar::parse(TOY).unwrap();
    let q = tokenize_question("x");
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let scorer = Stationary((0..3).map(|_| rng.random_range(-2.0..2.0)).collect());
        let cfg = |b| BeamConfig { beam_size: b, ..Default::default() };
        let best = search_sequences(&g, 3, &q, None, &scorer, &cfg(1)).unwrap()[0].actions.clone();
        for k in [3, 5] {
            let wide = search_sequences(&g, 3, &q, None, &scorer, &cfg(k)).unwrap();
            assert!(wide.iter().any(|s| s.actions == best));
            assert_eq!(wide[0].actions, best);
        }
    }
}

struct Broken(fn(usize) -> Vec<f64>);

impl StepScorer for Broken {
    fn score(&self, _: &StepContext<'_>, legal: &[Action]) -> Vec<f64> {
        (self.0)(legal.len())
    }
}

#[test]
fn scorer_contract_violations_are_errors() {
    let g = Grammar::parse(TOY).unwrap();
    let q = tokenize_question("x");
    let run = |s: &dyn StepScorer, beam| search_sequences(&g, 3, &q, None, s, &BeamConfig { beam_size: beam, ..Default::default() });
    assert!(matches!(run(&Broken(|n| vec![0.0; n + 1]), 5), Err(BeamError::ScoreCount { step: 0, expected: 1, got: 2 })));
    assert!(matches!(run(&Broken(|n| vec![f64::NAN; n]), 5), Err(BeamError::BadScore { step: 0 })));
    assert!(matches!(run(&Broken(|n| vec![f64::INFINITY; n]), 5), Err(BeamError::BadScore { .. })));
    assert!(matches!(run(&Broken(|n| vec![0.0; n]), 5), Err(BeamError::Unnormalized { .. })));
    assert!(matches!(run(&Broken(|n| vec![f64::NEG_INFINITY; n]), 5), Err(BeamError::NoCompletion(_))));
    assert!(matches!(run(&Broken(|n| vec![-(n as f64).ln(); n]), 0), Err(BeamError::EmptyBeam)));
    // Mass below one is allowed.
    assert!(run(&Broken(|n| vec![-(n as f64).ln() - 1.0; n]), 5).is_ok());
}

#[test]
fn label_smoothing_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let k = rng.random_range(1..40);
        let logits: Vec<f64> = (0..k).map(|_| rng.random_range(-8.0..8.0)).collect();
        let lp = log_softmax(&logits);
        let gold = rng.random_range(0..k);
        let eps = rng.random_range(0.0..0.5);
        let got = column_label_smoothing_loss(&lp, gold, eps).unwrap();
        assert!((got - smoothing_oracle(&lp, gold, eps)).abs() <= 1e-9);
        let ce = column_label_smoothing_loss(&lp, gold, 0.0).unwrap();
        assert!((ce - -lp[gold]).abs() <= 1e-12);
    }
}

#[test]
fn label_smoothing_uniform_distribution() {
    for k in [1usize, 2, 7, 64, 500] {
        let lp = vec![-(k as f64).ln(); k];
        for eps in [0.0, 0.1, 0.5, 0.9] {
            let got = column_label_smoothing_loss(&lp, k / 2, eps).unwrap();
            assert!((got - -(1.0 / k as f64).ln()).abs() <= 1e-9);
        }
    }
}

proptest! {
    #[test]
    fn heavier_column_weight_never_hurts_the_better_column_sequence(
        col_a in -6.0f64..0.0, col_b in -6.0f64..0.0, rest_a in -6.0f64..0.0, rest_b in -6.0f64..0.0,
        lo in 0.0f64..5.0, step in 0.0f64..5.0,
    ) {
        let (col_a, col_b) = if col_a >= col_b { (col_a, col_b) } else { (col_b, col_a) };
        let a = [Action::ApplyRule(0), Action::SelectColumn(nldb_core::catalog::ColumnId(1))];
        let gap = |alpha| {
            let cfg = BeamConfig { alpha, ..Default::default() };
            cfg.weighted(&a, &[rest_a, col_a]) - cfg.weighted(&a, &[rest_b, col_b])
        };
        prop_assert!(gap(lo + step) >= gap(lo) - 1e-12);
    }
}

#[test]
fn heuristic_counts_dogs() {
    let cat = dbs().catalog("dog_kennels").unwrap();
    let q = tokenize_question("How many dogs are there?");
    let hyps = beam_search(&q, cat, &HeuristicScorer::new(), &BeamConfig::default()).unwrap();
    assert_eq!(hyps[0].sql, "SELECT count(*) FROM dogs");
    assert!(hyps.len() <= 5);
    for w in hyps.windows(2) {
        assert!(w[0].weighted_score >= w[1].weighted_score);
    }
}

#[test]
fn heuristic_prefers_average_for_average_questions() {
    let cat = dbs().catalog("dog_kennels").unwrap();
    let q = tokenize_question("What is the average age of all dogs?");
    let hyps = beam_search(&q, cat, &HeuristicScorer::new(), &BeamConfig::default()).unwrap();
    assert_eq!(hyps[0].sql, "SELECT avg(age) FROM dogs");
}

#[test]
fn heuristic_is_uniform_without_evidence() {
    let cat = dbs().catalog("dog_kennels").unwrap();
    let q = tokenize_question("asdf qwerty");
    let g = SqlGrammar::shipped().grammar();
    let auto = Automaton::new(g, cat.column_count(), q.len());
    let legal = auto.legal_actions();
    let ctx = StepContext { question: &q, catalog: Some(cat), grammar: g, prefix: &[], slot: auto.slot().unwrap(), ancestors: &[] };
    let s = HeuristicScorer::new().score(&ctx, &legal);
    for x in &s {
        assert!((x - -(legal.len() as f64).ln()).abs() < 1e-12);
    }
}

#[test]
fn beam_file_round_trip_and_invalid_rows() {
    let cat = dbs().catalog("dog_kennels").unwrap();
    let q = tokenize_question("What are the names of dogs older than 5?");
    let mut rows = gold_rows(
        cat,
        &q,
        &[
            "SELECT name FROM dogs WHERE age > 5",
            "SELECT name FROM dogs WHERE weight > 5",
            "SELECT name FROM dogs",
            "SELECT count(*) FROM dogs WHERE age > 5",
        ],
    );
    let mut bad = rows[2].clone();
    let i = bad.actions.iter().position(|t| t.starts_with("SC:")).unwrap();
    bad.actions[i] = "SC:9999".into();
    rows.push(bad);
    let mut file = tempfile::NamedTempFile::new().unwrap();
    for r in &rows {
        writeln!(file, "{}", serde_json::to_string(r).unwrap()).unwrap();
    }
    let hyps = load_beam_file(file.path(), cat, &q, &BeamConfig::default()).unwrap();
    assert_eq!(hyps.len(), 5);
    assert_eq!(hyps[0].sql, "SELECT name FROM dogs WHERE age > '5'");
    let invalid: Vec<_> = hyps.iter().filter(|h| !h.valid).collect();
    assert_eq!(invalid.len(), 1);
    assert_eq!(invalid[0].validity_reason.as_deref(), Some("illegal column index"));

    let text = format!("{}\n\n{{\"actions\": [\"RD\"]\n", serde_json::to_string(&rows[0]).unwrap());
    match parse_beam_rows(&text) {
        Err(SourceError::Malformed { row, .. }) => assert_eq!(row, 3),
        other => panic!("{other:?}"),
    }
    let unknown = BeamRow { example: None, actions: vec!["XX:1".into()], logps: vec![-1.0] };
    let h = unknown.to_hypothesis(cat, &q, &BeamConfig::default());
    assert!(!h.valid);
}

#[test]
fn filter_drops_failures_and_duplicates_in_rank_order() {
    let cat = dbs().catalog("dog_kennels").unwrap();
    let db = Executor::open(&dbs().path("dog_kennels")).unwrap();
    let q = tokenize_question("What are the names of dogs older than 5?");
    let rows = gold_rows(cat, &q, &["SELECT name FROM dogs WHERE age > 5", "SELECT name FROM dogs", "SELECT name FROM dogs WHERE age > 5"]);
    let mut hyps = rows_to_hypotheses(&rows, cat, &q, &BeamConfig::default());
    let resolver = nldb_core::values::ValueResolver::new(cat);
    for h in &mut hyps {
        h.resolve(&resolver, cat);
    }
    let mut broken = hyps[1].clone();
    broken.sql = "SELECT missing FROM dogs".into();
    hyps.insert(1, broken);
    let mut invalid = hyps[0].clone();
    invalid.invalidate("test");
    hyps.push(invalid);
    let out = filter_and_dedupe(hyps, &db);
    let kept: Vec<_> = out.kept.iter().map(|h| h.sql.as_str()).collect();
    assert_eq!(kept, ["SELECT name FROM dogs WHERE age > 5.0", "SELECT name FROM dogs"]);
    let reasons: Vec<_> = out.rejected.iter().map(|h| h.validity_reason.clone().unwrap()).collect();
    assert_eq!(reasons.len(), 3);
    assert!(reasons[0].starts_with("execution error"));
    assert_eq!(reasons[1], "duplicate SQL");
    assert_eq!(reasons[2], "test");
}

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::{dbs, gold};
use nldb_core::catalog::{ColumnId, SchemaCatalog, TableId};
use nldb_core::exec::{exec_match, Executor};
use nldb_core::fuzz::{fuzz_corpus, FUZZ_QUESTION};
use nldb_core::sql::{parse_sql, print_sql};
use nldb_core::transition::{infer_tables, tokenize_question, Automaton, SqlGrammar};
use nldb_core::values::ValueResolver;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn corpus_round_trips_through_actions_with_matching_execution() {
    let started = Instant::now();
    let g = SqlGrammar::shipped();
    let mut failures = Vec::new();
    let schemas: BTreeSet<&str> = gold().iter().map(|e| e.db_id.as_str()).collect();
    assert!(gold().len() >= 200 && schemas.len() >= 10);
    for ex in gold() {
        let cat = dbs().catalog(&ex.db_id).unwrap();
        let q = tokenize_question(&ex.question);
        let ast = parse_sql(&ex.query, cat).unwrap();
        let actions = g.ast_to_actions(&ast, cat, &q, None).unwrap();
        let mut auto = Automaton::new(g.grammar(), cat.column_count(), q.len());
        for a in &actions {
            assert!(auto.is_legal(a));
            auto.apply(a).unwrap();
        }
        assert!(auto.is_complete());
        let mut back = g.actions_to_ast(&actions, cat, &q).unwrap();
        ValueResolver::new(cat).resolve(&mut back).unwrap();
        let sql = print_sql(&back, cat).unwrap();
        let db = Executor::open(&dbs().path(&ex.db_id)).unwrap();
        let want = db.execute(&ex.query, 100_000).unwrap();
        let got = db.execute(&sql, 100_000).unwrap();
        let ordered = ast.order_limit.as_ref().is_some_and(|o| !o.keys.is_empty());
        if !exec_match(&want, &got, ordered) {
            failures.push(format!("{} :: {}", ex.query, sql));
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
    assert!(started.elapsed().as_secs() < 60);
}

#[test]
fn printing_is_a_fixed_point_of_parsing() {
    let cats: Vec<&SchemaCatalog> = dbs().ids().map(|id| dbs().catalog(id).unwrap()).collect();
    let g = SqlGrammar::shipped();
    let q = tokenize_question(FUZZ_QUESTION);
    for (c, ast) in fuzz_corpus(&cats, 300, 17) {
        let cat = cats[c];
        let sql = print_sql(&ast, cat).unwrap();
        let reparsed = parse_sql(&sql, cat).unwrap_or_else(|e| panic!("{sql}: {e}"));
        assert_eq!(print_sql(&reparsed, cat).unwrap(), sql);
        assert_eq!(reparsed.body.from, ast.body.from);
        let actions = g.ast_to_actions(&ast, cat, &q, None).unwrap();
        let back = g.actions_to_ast(&actions, cat, &q).unwrap();
        assert_eq!(print_sql(&back, cat).unwrap(), sql);
    }
}

fn fk_connected(set: &BTreeSet<TableId>, cat: &SchemaCatalog) -> bool {
    let Some(&first) = set.iter().next() else { return false };
    let mut seen = BTreeSet::from([first]);
    let mut changed = true;
    while changed {
        changed = false;
        for fk in &cat.foreign_keys {
            let (a, b) = (cat.table_of(fk.from_id).unwrap(), cat.table_of(fk.to_id).unwrap());
            if set.contains(&a) && set.contains(&b) && (seen.contains(&a) != seen.contains(&b)) {
                seen.insert(a);
                seen.insert(b);
                changed = true;
            }
        }
    }
    seen.len() == set.len()
}

/// Smallest connected superset by brute force, ties by sorted names.
fn oracle_tables(terminals: &BTreeSet<TableId>, cat: &SchemaCatalog) -> Option<BTreeSet<TableId>> {
    let n = cat.tables.len();
    let mut best: Option<(usize, Vec<String>, BTreeSet<TableId>)> = None;
    for mask in 0u32..(1 << n) {
        let set: BTreeSet<TableId> = (0..n).filter(|i| mask & (1 << i) != 0).map(TableId).collect();
        if !terminals.is_subset(&set) || !fk_connected(&set, cat) {
            continue;
        }
        let mut names: Vec<String> = set.iter().map(|t| cat.table(*t).name.to_lowercase()).collect();
        names.sort();
        let key = (set.len(), names);
        if best.as_ref().is_none_or(|(l, ns, _)| (key.0, &key.1) < (*l, ns)) {
            best = Some((key.0, key.1, set));
        }
    }
    best.map(|b| b.2)
}

#[test]
fn table_inference_matches_brute_force_and_ignores_column_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for id in dbs().ids() {
        let cat = dbs().catalog(id).unwrap();
        for _ in 0..40 {
            let k = 1 + rand::Rng::random_range(&mut rng, 0..3);
            let mut cols: Vec<ColumnId> = (0..k).map(|_| ColumnId(rand::Rng::random_range(&mut rng, 1..cat.column_count()))).collect();
            let terminals: BTreeSet<TableId> = cols.iter().filter_map(|c| cat.table_of(*c)).collect();
            let got = infer_tables(cols.clone(), cat);
            match oracle_tables(&terminals, cat) {
                Some(want) => {
                    let from = got.unwrap();
                    assert_eq!(from.tables.iter().copied().collect::<BTreeSet<_>>(), want, "{id}");
                    assert_eq!(from.joins.len(), from.tables.len() - 1);
                    cols.shuffle(&mut rng);
                    assert_eq!(infer_tables(cols, cat).unwrap(), from);
                }
                None => assert!(got.is_err()),
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn random_walks_stay_inside_the_automaton(seed in any::<u64>()) {
        let cats: Vec<&SchemaCatalog> = dbs().ids().map(|id| dbs().catalog(id).unwrap()).collect();
        let g = SqlGrammar::shipped();
        let q = tokenize_question(FUZZ_QUESTION);
        let (c, ast) = fuzz_corpus(&cats, 1, seed).pop().unwrap();
        let actions = g.ast_to_actions(&ast, cats[c], &q, None).unwrap();
        let mut auto = Automaton::new(g.grammar(), cats[c].column_count(), q.len());
        for (i, a) in actions.iter().enumerate() {
            prop_assert!(!auto.is_complete());
            prop_assert!(auto.legal_actions().contains(a), "step {}", i);
            auto.apply(a).unwrap();
        }
        prop_assert!(auto.is_complete());
    }
}

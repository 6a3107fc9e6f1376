//! Random queries inside the transition grammar, for totality and round-trip
//! testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{ColumnId, SchemaCatalog};
use crate::sql::{Query, MAX_DEPTH};
use crate::transition::{tokenize_question, Action, Automaton, Item, SqlGrammar, TokenizedQuestion};

/// Question whose tokens fuzzed literals are copied from.
pub const FUZZ_QUESTION: &str = "show 30 items named Bessie or 2 and 5 since 2019 with code M";

const MAX_ACTIONS: usize = 160;

/// Draws one query. Rules are weighted towards short derivations; walks that
/// run long, nest too deep or cannot be joined are retried.
pub fn random_query(catalog: &SchemaCatalog, question: &TokenizedQuestion, rng: &mut ChaCha8Rng) -> Query {
    let g = SqlGrammar::shipped();
    loop {
        let Some(actions) = walk(g, catalog, question, rng) else { continue };
        if let Ok(q) = g.actions_to_ast(&actions, catalog, question) {
            if q.depth() <= MAX_DEPTH {
                return q;
            }
        }
    }
}

/// `n` queries from a fixed seed, spread evenly over `catalogs`.
pub fn fuzz_corpus(catalogs: &[&SchemaCatalog], n: usize, seed: u64) -> Vec<(usize, Query)> {
    let q = tokenize_question(FUZZ_QUESTION);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let c = i % catalogs.len();
            (c, random_query(catalogs[c], &q, &mut rng))
        })
        .collect()
}

fn walk(g: &SqlGrammar, catalog: &SchemaCatalog, question: &TokenizedQuestion, rng: &mut ChaCha8Rng) -> Option<Vec<Action>> {
    let grammar = g.grammar();
    let mut auto = Automaton::new(grammar, catalog.column_count(), question.len());
    let mut out = Vec::new();
    while !auto.is_complete() {
        if out.len() >= MAX_ACTIONS {
            return None;
        }
        let legal = auto.legal_actions();
        let depth = auto.ancestors().len();
        let weights: Vec<f64> = legal
            .iter()
            .map(|a| match a {
                Action::ApplyRule(r) => {
                    let rule = grammar.rule(*r).expect("legal rule");
                    let nts = rule.items.iter().filter(|i| matches!(i, Item::Nt(_) | Item::List { .. })).count();
                    0.45f64.powi(nts as i32) / (1.0 + depth as f64 / 8.0)
                }
                Action::Reduce => 1.5,
                Action::CopyStop => 1.2,
                Action::CopyToken(_) => 1.0,
                // All columns together weigh about as much as one rule.
                Action::SelectColumn(c) if *c == ColumnId::STAR => 0.3,
                Action::SelectColumn(_) => 1.0 / catalog.column_count() as f64,
            })
            .collect();
        let total: f64 = weights.iter().sum();
        let mut x = rng.random_range(0.0..total);
        let mut pick = legal.len() - 1;
        for (i, w) in weights.iter().enumerate() {
            if x < *w {
                pick = i;
                break;
            }
            x -= w;
        }
        auto.apply(&legal[pick]).expect("legal action");
        out.push(legal[pick].clone());
    }
    Some(out)
}

#![allow(dead_code)]

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::path::PathBuf;
use std::sync::OnceLock;

use nldb_core::corpus::{load_gold, DatabaseDir, GoldExample};
use nldb_core::hypothesis::{StepContext, StepScorer};
use nldb_core::transition::{Automaton, Grammar, TokenizedQuestion};
use nldb_core::sql::{parse_sql, CopiedSpan, Literal, Query};
use nldb_core::transition::{tokenize_question, Action};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn dbs() -> &'static DatabaseDir {
    static DBS: OnceLock<DatabaseDir> = OnceLock::new();
    DBS.get_or_init(|| DatabaseDir::open(&fixtures().join("databases")).expect("fixture databases"))
}

pub fn gold() -> &'static [GoldExample] {
    static GOLD: OnceLock<Vec<GoldExample>> = OnceLock::new();
    GOLD.get_or_init(|| load_gold(&fixtures().join("corpus/dev.json")).expect("fixture corpus"))
}

pub fn log_softmax(xs: &[f64]) -> Vec<f64> {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let z = m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln();
    xs.iter().map(|x| x - z).collect()
}

/// Deterministic pseudo-random scorer. Logits depend on the seed, the prefix
/// and the action; `bias` favours short derivations so random walks finish.
pub struct RandomScorer {
    pub seed: u64,
    pub bias: bool,
}

impl RandomScorer {
    fn logit(&self, prefix: &[Action], a: &Action, g: &nldb_core::transition::Grammar) -> f64 {
        let mut h = DefaultHasher::new();
        self.seed.hash(&mut h);
        prefix.hash(&mut h);
        a.hash(&mut h);
        let u = (h.finish() >> 11) as f64 / (1u64 << 53) as f64;
        let mut x = 6.0 * u - 3.0;
        if self.bias {
            x += match a {
                Action::Reduce | Action::CopyStop => 2.0,
                Action::ApplyRule(r) => {
                    let rule = g.rule(*r).unwrap();
                    let nts = rule
                        .items
                        .iter()
                        .filter(|i| !matches!(i, nldb_core::transition::Item::Column | nldb_core::transition::Item::Copy))
                        .count();
                    -1.5 * nts as f64
                }
                _ => 0.0,
            };
        }
        x
    }
}

impl StepScorer for RandomScorer {
    fn score(&self, ctx: &StepContext<'_>, legal: &[Action]) -> Vec<f64> {
        let logits: Vec<f64> = legal.iter().map(|a| self.logit(ctx.prefix, a, ctx.grammar)).collect();
        log_softmax(&logits)
    }
}

/// Parses `sql` and replaces its literals, in order, with copies of the given
/// question spans (`None` for a value the question does not mention).
pub fn with_spans(db: &str, sql: &str, question: &str, spans: &[Option<&str>]) -> Query {
    let cat = dbs().catalog(db).unwrap();
    let q = tokenize_question(question);
    let mut ast = parse_sql(sql, cat).unwrap();
    let lits = ast.literals_mut();
    assert_eq!(lits.len(), spans.len());
    for (lit, span) in lits.into_iter().zip(spans) {
        *lit = Literal::Copied(match span {
            Some(text) => {
                let words: Vec<String> = text.split(' ').map(str::to_lowercase).collect();
                let start = (0..q.len()).find(|&i| (0..words.len()).all(|k| q.tokens.get(i + k).is_some_and(|t| t.lower() == words[k]))).unwrap();
                CopiedSpan { text: q.span_text(start, start + words.len()).to_string(), tokens: Some((start, start + words.len())) }
            }
            None => CopiedSpan { text: String::new(), tokens: None },
        });
    }
    ast
}


/// Encodes gold SQL strings as beam rows with decreasing scores.
pub fn gold_rows(cat: &nldb_core::catalog::SchemaCatalog, q: &nldb_core::transition::TokenizedQuestion, sqls: &[&str]) -> Vec<nldb_core::hypothesis::BeamRow> {
    let g = nldb_core::transition::SqlGrammar::shipped();
    sqls.iter()
        .enumerate()
        .map(|(i, sql)| {
            let ast = parse_sql(sql, cat).unwrap();
            let acts = g.ast_to_actions(&ast, cat, q, None).unwrap();
            let n = acts.len();
            nldb_core::hypothesis::BeamRow { example: None, actions: acts.iter().map(|a| a.to_tag(Some(cat))).collect(), logps: vec![-0.1 * (i + 1) as f64; n] }
        })
        .collect()
}

pub fn tags(xs: &[Action]) -> Vec<String> {
    xs.iter().map(|a| a.to_tag(None)).collect()
}

/// Plain unweighted beam: keep the best `beam - finished` extensions per
/// step by summed log-prob, ties by tag order.
pub fn reference_beam(
    grammar: &Grammar,
    columns: usize,
    question: &TokenizedQuestion,
    scorer: &dyn StepScorer,
    beam: usize,
    max_steps: usize,
) -> Option<Vec<(Vec<Action>, f64)>> {
    type State<'g> = (Vec<Action>, Vec<f64>, f64, Automaton<'g>);
    let mut live: Vec<State> = vec![(Vec::new(), Vec::new(), 0.0, Automaton::new(grammar, columns, question.len()))];
    let mut finished: Vec<(Vec<Action>, f64)> = Vec::new();
    let mut steps = 0;
    while !live.is_empty() && finished.len() < beam && steps < max_steps {
        let mut next: Vec<State> = Vec::new();
        for (acts, lps, score, auto) in &live {
            let legal = auto.legal_actions();
            let ctx = StepContext {
                question,
                catalog: None,
                grammar,
                prefix: acts,
                slot: auto.slot().unwrap(),
                ancestors: auto.ancestors(),
            };
            let s = scorer.score(&ctx, &legal);
            for (a, lp) in legal.into_iter().zip(s) {
                let mut au = auto.clone();
                au.apply(&a).unwrap();
                let mut ac = acts.clone();
                ac.push(a);
                let mut l = lps.clone();
                l.push(lp);
                next.push((ac, l, score + lp, au));
            }
        }
        next.sort_by(|a, b| b.2.total_cmp(&a.2).then_with(|| tags(&a.0).cmp(&tags(&b.0))));
        next.truncate(beam - finished.len());
        live = Vec::new();
        for st in next {
            if st.3.is_complete() {
                finished.push((st.0, st.2));
            } else {
                live.push(st);
            }
        }
        steps += 1;
    }
    if finished.is_empty() {
        return None;
    }
    finished.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| tags(&a.0).cmp(&tags(&b.0))));
    Some(finished)
}

/// Smoothed cross-entropy written out term by term.
pub fn smoothing_oracle(logp: &[f64], gold: usize, eps: f64) -> f64 {
    let k = logp.len() as f64;
    logp.iter()
        .enumerate()
        .map(|(c, lp)| {
            let q = if c == gold { 1.0 - eps + eps / k } else { eps / k };
            -q * lp
        })
        .sum()
}

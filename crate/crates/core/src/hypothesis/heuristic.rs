//! Keyword and schema-overlap scorer used when no trained parser is
//! configured. Preferences are plain scores turned into log-probs with a
//! softmax over the legal actions.

use std::sync::{Arc, Mutex};

use super::{StepContext, StepScorer};
use crate::catalog::{Affinity, ColumnId, SchemaCatalog, TableId};
use crate::sql::{Aggregate, CompareOp, Direction};
use crate::transition::{Action, Elem, Production, Slot, SqlGrammar, TokenizedQuestion};
use crate::values::{fuzzy, numbers, time};

const STOP: [&str; 40] = [
    "a", "an", "the", "of", "in", "on", "at", "to", "for", "by", "with", "and", "or", "is", "are", "was", "were", "what",
    "which", "who", "whose", "how", "find", "show", "list", "give", "return", "all", "that", "than", "from", "as",
    "their", "there", "do", "does", "have", "has", "me", "each",
];

fn stem(w: &str) -> String {
    let w = w.to_lowercase();
    if let Some(b) = w.strip_suffix("ies") {
        return format!("{b}y");
    }
    if w.len() > 3 && (w.ends_with("ses") || w.ends_with("xes") || w.ends_with("ches")) {
        return w[..w.len() - 2].to_string();
    }
    if w.len() > 3 && w.ends_with('s') && !w.ends_with("ss") {
        return w[..w.len() - 1].to_string();
    }
    w
}

fn word_match(a: &str, b: &str) -> f64 {
    if a == b {
        return 1.0;
    }
    if a.len() >= 4 && b.len() >= 4 && (a.starts_with(b) || b.starts_with(a)) {
        return 0.8;
    }
    let s = strsim::normalized_levenshtein(a, b);
    if s >= 0.8 && a.len() >= 5 {
        s * 0.9
    } else {
        0.0
    }
}

/// Per-question facts, computed once per question.
struct Analysis {
    raw: String,
    lower: Vec<String>,
    text: String,
    column_rel: Vec<f64>,
    table_rel: Vec<f64>,
    /// Best content-match score per column with its window.
    value_hit: Vec<Option<(f64, usize, usize)>>,
    /// Token positions holding numbers (digits or number words).
    numbers: Vec<usize>,
    /// Primary or foreign key columns.
    is_key: Vec<bool>,
    /// Content-match score of window `[s, s + len)` per column, at
    /// `s * 3 + len - 1`; empty for columns without searchable text.
    windows: Vec<Vec<f64>>,
    signal: bool,
}

impl Analysis {
    fn has(&self, phrase: &str) -> bool {
        let padded = format!(" {} ", self.text);
        padded.contains(&format!(" {phrase} "))
    }

    fn any(&self, phrases: &[&str]) -> bool {
        phrases.iter().any(|p| self.has(p))
    }

    fn count(&self, phrases: &[&str]) -> usize {
        let padded = format!(" {} ", self.text);
        phrases.iter().map(|p| padded.matches(&format!(" {p} ")).count()).sum()
    }
}

const COUNT_WORDS: [&str; 4] = ["how many", "number of", "count", "many"];
const AVG_WORDS: [&str; 2] = ["average", "mean"];
const SUM_WORDS: [&str; 2] = ["total", "sum"];
const MAX_WORDS: [&str; 6] = ["maximum", "max", "highest", "largest", "biggest", "most expensive"];
const MIN_WORDS: [&str; 5] = ["minimum", "min", "lowest", "smallest", "cheapest"];
const SUPERLATIVE: [&str; 20] = [
    "most", "least", "highest", "lowest", "largest", "smallest", "oldest", "youngest", "heaviest", "lightest", "top",
    "sorted", "order", "ordered", "ascending", "descending", "alphabetical", "alphabetically", "cheapest", "biggest",
];
/// Words that plausibly abbreviate to one-letter codes.
const CODE_WORDS: [&str; 8] = ["female", "male", "yes", "no", "true", "false", "women", "men"];
/// Preference scale before the softmax; higher is more peaked.
const SHARPNESS: f64 = 2.0;
const DESC_WORDS: [&str; 9] = ["most", "highest", "largest", "oldest", "heaviest", "descending", "top", "biggest", "latest"];
const ASC_WORDS: [&str; 9] = ["least", "lowest", "smallest", "youngest", "lightest", "ascending", "alphabetical", "cheapest", "earliest"];
const GT_WORDS: [&str; 11] = ["more than", "greater than", "older than", "larger than", "higher than", "above", "over", "after", "bigger than", "exceeds", "longer than"];
const LT_WORDS: [&str; 10] = ["less than", "fewer than", "younger than", "smaller than", "lower than", "below", "under", "before", "shorter than", "cheaper than"];
/// Question words that point at a column name they do not contain.
const SYNONYMS: [(&str, &str); 14] = [
    ("older", "age"),
    ("oldest", "age"),
    ("younger", "age"),
    ("youngest", "age"),
    ("old", "age"),
    ("heaviest", "weight"),
    ("heavier", "weight"),
    ("lightest", "weight"),
    ("born", "birth"),
    ("expensive", "price"),
    ("cheapest", "price"),
    ("cheaper", "price"),
    ("costing", "cost"),
    ("earn", "salary"),
];
const NOT_WORDS: [&str; 7] = ["not", "never", "without", "don't", "doesn't", "no", "other than"];

#[derive(Default)]
pub struct HeuristicScorer {
    cache: Mutex<Option<Arc<Analysis>>>,
}

impl HeuristicScorer {
    pub fn new() -> HeuristicScorer {
        HeuristicScorer::default()
    }

    fn analysis(&self, q: &TokenizedQuestion, catalog: &SchemaCatalog) -> Arc<Analysis> {
        let mut guard = self.cache.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(a) = guard.as_ref().filter(|a| a.raw == q.raw) {
            return a.clone();
        }
        let a = Arc::new(analyze(q, catalog));
        *guard = Some(a.clone());
        a
    }
}

/// Fuzzy content score, with initialism hits on short codes discounted unless
/// the span is a word that usually stands for such a code.
fn content_score(span: &str, values: &[String]) -> f64 {
    match fuzzy::fuzzy_match(span, values) {
        Some((best, s)) if best.chars().count() <= 2 && !span.eq_ignore_ascii_case(&best) => {
            if CODE_WORDS.contains(&span.to_lowercase().as_str()) {
                s
            } else {
                0.3
            }
        }
        Some((_, s)) => s,
        None => 0.0,
    }
}

fn name_relevance(display: &str, stems: &[String]) -> f64 {
    let words: Vec<String> = display.split_whitespace().map(stem).collect();
    if words.is_empty() {
        return 0.0;
    }
    let hits: f64 = words.iter().map(|w| stems.iter().map(|s| word_match(w, s)).fold(0.0, f64::max)).sum();
    hits / words.len() as f64
}

fn analyze(q: &TokenizedQuestion, catalog: &SchemaCatalog) -> Analysis {
    let lower: Vec<String> = q.tokens.iter().map(|t| t.lower()).collect();
    let mut stems: Vec<String> = lower.iter().filter(|w| !STOP.contains(&w.as_str())).map(|w| stem(w)).collect();
    for w in &lower {
        if let Some((_, target)) = SYNONYMS.iter().find(|(k, _)| k == w) {
            stems.push(target.to_string());
        }
    }
    let text = lower.join(" ");
    let mut column_rel = vec![0.0; catalog.column_count()];
    let mut value_hit = vec![None; catalog.column_count()];
    let mut windows = vec![Vec::new(); catalog.column_count()];
    let mut is_key = vec![false; catalog.column_count()];
    for fk in &catalog.foreign_keys {
        is_key[fk.from_id.0] = true;
        is_key[fk.to_id.0] = true;
    }
    for (i, rel) in column_rel.iter_mut().enumerate().skip(1) {
        let c = catalog.column(ColumnId(i)).unwrap();
        is_key[i] |= c.is_primary_key;
        *rel = name_relevance(&c.display, &stems);
        let values = c.searchable_values();
        if c.affinity == Affinity::Number || values.len() > 2000 || values.is_empty() {
            continue;
        }
        let mut best: Option<(f64, usize, usize)> = None;
        let mut table = vec![0.0; q.len() * 3];
        for s in 0..q.len() {
            if STOP.contains(&lower[s].as_str()) || !q.tokens[s].is_word() {
                continue;
            }
            for e in (s + 1)..=(s + 3).min(q.len()) {
                let w = q.span_text(s, e);
                let score = if c.affinity == Affinity::Time {
                    time::parse_date(w, false).map(|_| 1.0).unwrap_or(0.0)
                } else {
                    content_score(w, values)
                };
                table[s * 3 + e - s - 1] = score;
                if score > 0.0 && best.is_none_or(|(b, _, _)| score > b) {
                    best = Some((score, s, e));
                }
            }
        }
        value_hit[i] = best;
        windows[i] = table;
    }
    let table_rel: Vec<f64> = catalog.table_ids().map(|t| name_relevance(&catalog.table(t).display, &stems)).collect();
    let numbers: Vec<usize> = (0..q.len()).filter(|i| numbers::parse_number(&q.tokens[*i].text).is_some()).collect();
    let keywords: Vec<&str> = COUNT_WORDS
        .iter()
        .chain(&AVG_WORDS)
        .chain(&SUM_WORDS)
        .chain(&MAX_WORDS)
        .chain(&MIN_WORDS)
        .chain(&SUPERLATIVE)
        .chain(&GT_WORDS)
        .chain(&LT_WORDS)
        .copied()
        .collect();
    let mut a = Analysis {
        raw: q.raw.clone(),
        lower,
        text,
        column_rel,
        table_rel,
        value_hit,
        numbers,
        is_key,
        windows,
        signal: false,
    };
    a.signal = a.any(&keywords)
        || a.column_rel.iter().any(|r| *r >= 0.5)
        || a.table_rel.iter().any(|r| *r >= 0.5)
        || a.value_hit.iter().flatten().any(|(s, _, _)| *s >= 0.75)
        || !a.numbers.is_empty();
    a
}

/// Where in the query the frontier sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Region {
    Projection,
    Anchors,
    Predicate { having: bool },
    OrderKey,
    GroupBy,
    OperandColumn,
    Other,
}

struct View<'a> {
    ctx: &'a StepContext<'a>,
    g: &'static SqlGrammar,
    catalog: &'a SchemaCatalog,
    a: &'a Analysis,
}

impl View<'_> {
    fn prod(&self, r: usize) -> Option<Production> {
        self.g.production(r)
    }

    fn ancestor_prods(&self) -> Vec<Production> {
        self.ctx.ancestors.iter().filter_map(|r| self.prod(*r)).collect()
    }

    fn region(&self) -> Region {
        let anc = self.ancestor_prods();
        let mut having = false;
        for p in anc.iter().rev() {
            match p {
                Production::Having => having = true,
                Production::FilterWhere => {}
                Production::OperandColumn => return Region::OperandColumn,
                Production::PredCompare | Production::PredBetween => {
                    let inner_having = anc.iter().rev().take_while(|x| !matches!(x, Production::Select { .. })).any(|x| *x == Production::Having);
                    return Region::Predicate { having: having || inner_having };
                }
                Production::Key(_) => return Region::OrderKey,
                Production::GroupBy => return Region::GroupBy,
                Production::Select { .. } => {
                    return match self.ctx.slot {
                        Slot::List { elem: Elem::Column, .. } => Region::Anchors,
                        _ => Region::Projection,
                    }
                }
                _ => {}
            }
        }
        Region::Other
    }

    /// Position in the prefix where the current select block started.
    fn block_start(&self) -> usize {
        self.ctx
            .prefix
            .iter()
            .rposition(|x| matches!(x, Action::ApplyRule(r) if matches!(self.prod(*r), Some(Production::Select { .. }))))
            .unwrap_or(0)
    }

    fn block_columns(&self) -> Vec<ColumnId> {
        self.ctx.prefix[self.block_start()..]
            .iter()
            .filter_map(|x| match x {
                Action::SelectColumn(c) => Some(*c),
                _ => None,
            })
            .collect()
    }

    fn last_agg(&self) -> Option<Aggregate> {
        self.ctx.prefix.iter().rev().find_map(|x| match x {
            Action::ApplyRule(r) => match self.prod(*r) {
                Some(Production::Agg(a)) => Some(a),
                _ => None,
            },
            _ => None,
        })?
    }

    fn last_cmp(&self) -> Option<CompareOp> {
        self.ctx.prefix.iter().rev().find_map(|x| match x {
            Action::ApplyRule(r) => match self.prod(*r) {
                Some(Production::Cmp(op)) => Some(op),
                _ => None,
            },
            _ => None,
        })
    }

    fn used(&self, p: Production) -> usize {
        let id = self.g.rule_id(p);
        self.ctx.prefix.iter().filter(|x| **x == Action::ApplyRule(id)).count()
    }

    fn in_subquery(&self) -> bool {
        self.ancestor_prods().contains(&Production::OperandQuery)
    }

    fn in_arm(&self) -> bool {
        self.ancestor_prods().contains(&Production::Arm)
    }

    /// Column whose values the current copy run fills.
    fn value_column(&self) -> Option<ColumnId> {
        self.ctx.prefix.iter().rev().find_map(|x| match x {
            Action::SelectColumn(c) => Some(*c),
            _ => None,
        })
    }

    /// Token ranges already copied.
    fn copied(&self) -> Vec<usize> {
        self.ctx
            .prefix
            .iter()
            .filter_map(|x| match x {
                Action::CopyToken(i) => Some(*i),
                _ => None,
            })
            .collect()
    }
}

fn softmax_log(scores: &[f64]) -> Vec<f64> {
    let total = super::log_sum_exp(scores);
    scores.iter().map(|s| s - total).collect()
}

impl StepScorer for HeuristicScorer {
    fn score(&self, ctx: &StepContext<'_>, legal: &[Action]) -> Vec<f64> {
        let uniform = || vec![-(legal.len() as f64).ln(); legal.len()];
        let Some(catalog) = ctx.catalog else { return uniform() };
        let a = self.analysis(ctx.question, catalog);
        if !a.signal {
            return uniform();
        }
        let v = View { ctx, g: SqlGrammar::shipped(), catalog, a: &a };
        let prefs: Vec<f64> = legal.iter().map(|act| SHARPNESS * prefer(&v, act)).collect();
        softmax_log(&prefs)
    }
}

fn prefer(v: &View<'_>, act: &Action) -> f64 {
    match act {
        Action::ApplyRule(r) => v.prod(*r).map(|p| prefer_rule(v, p)).unwrap_or(0.0),
        Action::Reduce => prefer_reduce(v),
        Action::SelectColumn(c) => prefer_column(v, *c),
        Action::CopyToken(i) => prefer_copy(v, *i),
        Action::CopyStop => prefer_stop(v),
    }
}

fn prefer_rule(v: &View<'_>, p: Production) -> f64 {
    let a = v.a;
    let region = v.region();
    let superlative = a.any(&SUPERLATIVE);
    match p {
        Production::SetNone => {
            if v.in_arm() || v.in_subquery() {
                4.0
            } else {
                3.0
            }
        }
        Production::SetOp(op) => {
            if v.in_arm() || v.in_subquery() {
                return -2.0;
            }
            match op {
                crate::sql::SetOp::Intersect if a.has("both") => 3.5,
                crate::sql::SetOp::Except if a.any(&["but not", "except", "but no"]) => 3.5,
                crate::sql::SetOp::Union if a.has("either") => 3.5,
                _ => 0.0,
            }
        }
        Production::OrderNone => {
            if superlative && !v.in_subquery() {
                0.5
            } else {
                3.0
            }
        }
        Production::OrderBy => {
            if superlative && !v.in_subquery() {
                3.0
            } else {
                -1.0
            }
        }
        Production::LimitOnly => -2.0,
        Production::Key(d) => {
            let desc = a.any(&DESC_WORDS);
            let asc = a.any(&ASC_WORDS);
            match (d, desc, asc) {
                (Direction::Desc, true, false) | (Direction::Asc, false, true) => 3.0,
                (Direction::Asc, false, false) => 1.0,
                _ => 0.0,
            }
        }
        Production::LimitNone => {
            if a.any(&["sorted", "order", "ordered", "ascending", "descending", "alphabetical", "alphabetically"]) {
                3.0
            } else {
                0.5
            }
        }
        Production::LimitSome => {
            if a.any(&["sorted", "order", "ordered", "alphabetical", "alphabetically"]) {
                0.0
            } else {
                2.5
            }
        }
        Production::LimitN(n) => {
            let wanted = a
                .lower
                .windows(2)
                .find(|w| matches!(w[0].as_str(), "top" | "first"))
                .and_then(|w| numbers::parse_number(&w[1]).map(|(x, _)| x as u64))
                .unwrap_or(1);
            if n == wanted {
                4.0
            } else {
                0.0
            }
        }
        Production::Select { distinct } => {
            let want = a.any(&["different", "distinct", "unique"]);
            if distinct == want {
                2.5
            } else {
                0.0
            }
        }
        Production::AggUnit { distinct } => {
            let want = region == Region::Projection && a.any(&["different", "distinct"]) && a.any(&COUNT_WORDS);
            match (distinct, want) {
                (false, _) => 2.0,
                (true, true) => 2.5,
                (true, false) => -1.0,
            }
        }
        Production::Agg(agg) => prefer_agg(v, region, agg),
        Production::UnitColumn => 3.0,
        Production::UnitArith(_) => {
            if a.any(&["difference", "minus", "plus", "ratio", "product of"]) {
                2.5
            } else {
                -1.0
            }
        }
        Production::FilterNone => {
            if has_filter_evidence(v) {
                0.0
            } else {
                2.5
            }
        }
        Production::FilterWhere => {
            if has_filter_evidence(v) {
                2.5
            } else {
                -0.5
            }
        }
        Production::GroupNone => {
            if a.any(&["each", "per", "every", "for each", "by each"]) && !v.in_subquery() {
                0.0
            } else {
                3.0
            }
        }
        Production::GroupBy => {
            if a.any(&["each", "per", "every"]) && !v.in_subquery() {
                3.0
            } else if a.any(&COUNT_WORDS) && (a.any(&GT_WORDS) || a.any(&LT_WORDS) || a.has("most")) {
                1.0
            } else {
                -1.0
            }
        }
        Production::HavingNone => 2.0,
        Production::Having => {
            if (a.any(&GT_WORDS) || a.any(&LT_WORDS) || a.has("at least")) && !a.numbers.is_empty() {
                1.5
            } else {
                -1.0
            }
        }
        Production::CondPred => 3.0,
        Production::CondAnd => {
            let evidence = a.numbers.len() + a.value_hit.iter().flatten().filter(|(s, _, _)| *s >= 0.75).count();
            if a.has("and") && evidence >= 2 && v.used(Production::CondAnd) == 0 {
                2.5
            } else {
                -1.0
            }
        }
        Production::CondOr => {
            if a.has("or") && v.used(Production::CondOr) == 0 {
                2.0
            } else {
                -1.0
            }
        }
        Production::PredCompare => 3.0,
        Production::PredBetween => {
            if a.has("between") {
                4.0
            } else {
                -1.0
            }
        }
        Production::Cmp(op) => prefer_cmp(v, op),
        Production::OperandValue => {
            if matches!(v.last_cmp(), Some(CompareOp::In | CompareOp::NotIn)) {
                -2.0
            } else {
                3.0
            }
        }
        Production::OperandQuery => {
            if v.in_subquery() {
                -4.0
            } else if matches!(v.last_cmp(), Some(CompareOp::In | CompareOp::NotIn)) {
                4.0
            } else if a.any(&["the average", "average"]) && (a.any(&GT_WORDS) || a.any(&LT_WORDS)) && v.used(Production::OperandQuery) == 0 {
                2.5
            } else {
                -1.5
            }
        }
        Production::OperandColumn => -1.5,
        Production::Query | Production::Arm | Production::Value => 0.0,
    }
}

fn has_filter_evidence(v: &View<'_>) -> bool {
    let a = v.a;
    if v.in_subquery() {
        return false;
    }
    let strong_value = a.value_hit.iter().flatten().any(|(s, _, _)| *s >= 0.9);
    (!a.numbers.is_empty() && !a.numbers.iter().all(|i| i > &0 && matches!(a.lower[i - 1].as_str(), "top" | "first")))
        || strong_value
        || a.any(&NOT_WORDS)
        || a.any(&["contain", "containing", "contains", "like", "between"])
        || (1..v.catalog.column_count()).any(|c| a.column_rel[c] >= 0.5 && is_yes_no(v.catalog, ColumnId(c)))
}

fn is_yes_no(catalog: &SchemaCatalog, c: ColumnId) -> bool {
    catalog
        .column(c)
        .is_some_and(|c| c.distinct_values.len() == 2 && c.distinct_values.iter().any(|x| x.eq_ignore_ascii_case("yes")))
}

fn prefer_agg(v: &View<'_>, region: Region, agg: Option<Aggregate>) -> f64 {
    let a = v.a;
    let occurrences = |words: &[&str]| a.count(words);
    let used = |x: Aggregate| v.used(Production::Agg(Some(x)));
    let avail = |x: Aggregate, words: &[&str]| occurrences(words) > used(x);
    match region {
        Region::Predicate { having: false } => return if agg.is_none() { 4.0 } else { -1.0 },
        Region::Predicate { having: true } => {
            return match agg {
                Some(Aggregate::Count) => 3.0,
                Some(Aggregate::Avg) if a.any(&AVG_WORDS) => 3.0,
                None => 0.5,
                _ => 0.0,
            }
        }
        Region::OrderKey => {
            return match agg {
                None => 2.5,
                Some(Aggregate::Count) if a.any(&["most", "least", "fewest", "number of"]) => 2.5,
                _ => -1.0,
            }
        }
        _ => {}
    }
    match agg {
        None => 1.5,
        Some(Aggregate::Count) if avail(Aggregate::Count, &COUNT_WORDS[..3]) => 3.5,
        Some(Aggregate::Avg) if avail(Aggregate::Avg, &AVG_WORDS) => 3.5,
        Some(Aggregate::Sum) if avail(Aggregate::Sum, &SUM_WORDS) => 3.5,
        Some(Aggregate::Max) if avail(Aggregate::Max, &MAX_WORDS) && !a.any(&["what is the name", "which"]) => 3.0,
        Some(Aggregate::Min) if avail(Aggregate::Min, &MIN_WORDS) && !a.any(&["what is the name", "which"]) => 3.0,
        Some(Aggregate::Max) if avail(Aggregate::Max, &MAX_WORDS) => 1.0,
        Some(Aggregate::Min) if avail(Aggregate::Min, &MIN_WORDS) => 1.0,
        _ => -1.0,
    }
}

fn prefer_cmp(v: &View<'_>, op: CompareOp) -> f64 {
    let a = v.a;
    let gt = a.any(&GT_WORDS);
    let lt = a.any(&LT_WORDS);
    let not = a.any(&NOT_WORDS);
    let like = a.any(&["contain", "containing", "contains", "like", "includes", "including"]);
    match op {
        CompareOp::Gt if gt => 3.0,
        CompareOp::Lt if lt => 3.0,
        CompareOp::Ge if a.has("at least") => 3.5,
        CompareOp::Le if a.has("at most") => 3.5,
        CompareOp::Like if like => 3.5,
        CompareOp::NotIn if not && v.region() == (Region::Predicate { having: false }) => 2.5,
        CompareOp::Ne if not => 2.0,
        CompareOp::In if a.any(&["who have", "that have", "which have", "any"]) => 1.5,
        CompareOp::Eq => 2.0,
        _ => -1.0,
    }
}

fn prefer_reduce(v: &View<'_>) -> f64 {
    let a = v.a;
    match (v.region(), v.ctx.slot) {
        (Region::Anchors, Slot::List { count, .. }) => {
            let cols = v.block_columns();
            let grounded = cols.iter().any(|c| !c.is_star());
            if !grounded && count == 0 {
                return -4.0;
            }
            let covered: Vec<TableId> = cols.iter().filter_map(|c| v.catalog.table_of(*c)).collect();
            let uncovered = v.catalog.table_ids().filter(|t| a.table_rel[t.0] >= 0.8 && !covered.contains(t)).count();
            if uncovered > count {
                1.0
            } else {
                3.0
            }
        }
        (Region::GroupBy, _) => 5.0,
        (Region::OrderKey, _) => 3.0,
        (_, Slot::List { count, .. }) => {
            let used = v.block_columns();
            let more = (1..v.catalog.column_count())
                .filter(|c| !used.contains(&ColumnId(*c)))
                .any(|c| a.column_rel[c] >= 0.75 && a.value_hit[c].is_none_or(|(s, _, _)| s < 0.75));
            let listy = a.has("and") || a.text.contains(',');
            if listy && more && count < 3 {
                1.0
            } else {
                3.0
            }
        }
        _ => 0.0,
    }
}

fn prefer_column(v: &View<'_>, c: ColumnId) -> f64 {
    let a = v.a;
    let region = v.region();
    let block = v.block_columns();
    if c.is_star() {
        let agg = v.last_agg();
        return match region {
            Region::Projection if agg == Some(Aggregate::Count) => 4.0,
            Region::Projection if a.any(&["all information", "all details", "everything", "all the information"]) => 3.0,
            Region::Predicate { having: true } | Region::OrderKey if agg == Some(Aggregate::Count) => 4.0,
            _ => -4.0,
        };
    }
    let rel = a.column_rel[c.0];
    let hit = a.value_hit[c.0].map(|(s, _, _)| s).unwrap_or(0.0);
    let col = v.catalog.column(c).unwrap();
    let table = v.catalog.table_of(c).unwrap();
    let trel = a.table_rel[table.0];
    let repeat = if block.contains(&c) { 1.5 } else { 0.0 };
    match region {
        Region::Projection => {
            let agg = v.last_agg();
            let numeric = col.affinity == Affinity::Number;
            let agg_fit = match agg {
                Some(Aggregate::Avg | Aggregate::Sum) if !numeric => -2.0,
                Some(Aggregate::Count) => -1.5,
                _ => 0.0,
            };
            4.0 * rel + 0.5 * trel - 2.0 * hit.min(1.0) * (1.0 - rel) + agg_fit - repeat
        }
        Region::Anchors => {
            let covered: Vec<TableId> = block.iter().filter_map(|x| v.catalog.table_of(*x)).collect();
            if c == v.catalog.anchor_column(table) && !covered.contains(&table) {
                4.0 * trel
            } else {
                -3.0
            }
        }
        Region::Predicate { having } => {
            let numeric = col.affinity == Affinity::Number;
            let key = a.is_key[c.0];
            let numbers = !a.numbers.is_empty();
            let number_fit = match (numeric, key) {
                (true, false) if numbers => 1.0 + if a.any(&GT_WORDS) || a.any(&LT_WORDS) { 0.5 } else { 0.0 },
                (_, true) if numbers => -1.5,
                _ => 0.0,
            };
            let text_without_value = col.affinity == Affinity::Text && numbers && hit < 0.75;
            let grouped = a.lower.windows(2).any(|w| matches!(w[0].as_str(), "each" | "per" | "every") && word_match(&stem(&w[1]), &stem(col.display.split_whitespace().last().unwrap_or(""))) > 0.0);
            let base = 3.0 * rel + 4.0 * hit + number_fit + 0.3 * trel
                - if text_without_value { 1.0 } else { 0.0 }
                - if grouped && !having { 2.0 } else { 0.0 };
            if having {
                base - 1.0
            } else {
                base - repeat * 0.5
            }
        }
        Region::OrderKey => 3.0 * rel + if col.affinity == Affinity::Number { 0.5 } else { 0.0 },
        Region::GroupBy => {
            let after_each = a.lower.windows(2).any(|w| matches!(w[0].as_str(), "each" | "per" | "every") && word_match(&stem(&w[1]), &stem(col.display.split_whitespace().last().unwrap_or(""))) > 0.0);
            let listed = group_columns(v);
            if listed.contains(&c) {
                return -6.0;
            }
            let in_proj = if block.contains(&c) { 1.5 } else { 0.0 };
            3.0 * rel + if after_each { 2.0 } else { 0.0 } + in_proj
        }
        Region::OperandColumn | Region::Other => 2.0 * rel,
    }
}

fn group_columns(v: &View<'_>) -> Vec<ColumnId> {
    let g = v.g.rule_id(Production::GroupBy);
    let Some(start) = v.ctx.prefix.iter().rposition(|x| *x == Action::ApplyRule(g)) else { return Vec::new() };
    v.ctx.prefix[start..]
        .iter()
        .filter_map(|x| match x {
            Action::SelectColumn(c) => Some(*c),
            _ => None,
        })
        .collect()
}

fn window_score(v: &View<'_>, start: usize, end: usize, column: Option<ColumnId>, numeric: bool) -> f64 {
    let q = v.ctx.question;
    let text = q.span_text(start, end);
    if numeric {
        return if end == start + 1 && numbers::parse_number(text).is_some() { 1.0 } else { 0.0 };
    }
    let Some(c) = column else { return 0.0 };
    if end - start <= 3 {
        if let Some(score) = v.a.windows[c.0].get(start * 3 + end - start - 1) {
            return *score;
        }
    }
    let Some(col) = v.catalog.column(c) else { return 0.0 };
    if col.affinity == Affinity::Time {
        return time::parse_date(text, false).map(|_| 1.0).unwrap_or(0.0);
    }
    if col.affinity == Affinity::Number || col.searchable_values().len() > 2000 {
        return 0.0;
    }
    content_score(text, col.searchable_values())
}

fn copy_context(v: &View<'_>) -> (Option<ColumnId>, bool) {
    let column = v.value_column().filter(|c| !c.is_star());
    let agg = v.last_agg();
    let like = matches!(v.last_cmp(), Some(CompareOp::Like | CompareOp::NotLike));
    let numeric = !like
        && (matches!(agg, Some(Aggregate::Count | Aggregate::Sum | Aggregate::Avg))
            || column.is_none()
            || column.and_then(|c| v.catalog.column(c)).is_some_and(|c| c.affinity == Affinity::Number));
    (column, numeric)
}

fn run_start(v: &View<'_>) -> Option<usize> {
    let mut start = None;
    for x in v.ctx.prefix.iter().rev() {
        match x {
            Action::CopyToken(i) => start = Some(*i),
            _ => break,
        }
    }
    start
}

fn prefer_copy(v: &View<'_>, i: usize) -> f64 {
    let (column, numeric) = copy_context(v);
    let q = v.ctx.question;
    match v.ctx.slot {
        Slot::Copy { last: None } => {
            if v.copied().contains(&i) {
                return -3.0;
            }
            let tok = &v.a.lower[i];
            if STOP.contains(&tok.as_str()) || !q.tokens[i].is_word() {
                return -2.0;
            }
            let best = (i + 1..=(i + 3).min(q.len())).map(|e| window_score(v, i, e, column, numeric)).fold(0.0, f64::max);
            let quoted = i > 0 && matches!(q.tokens[i - 1].text.as_str(), "'" | "\"");
            let capital = !numeric && q.tokens[i].text.chars().next().is_some_and(|c| c.is_uppercase()) && i > 0;
            4.0 * best + if quoted { 2.0 } else { 0.0 } + if capital { 0.5 } else { 0.0 }
        }
        Slot::Copy { last: Some(l) } => {
            let start = run_start(v).unwrap_or(l);
            if numeric || v.a.lower.get(i).is_none_or(|t| !q.tokens[i].is_word() && t != "-") {
                return -2.0;
            }
            let now = window_score(v, start, l + 1, column, numeric);
            let next = window_score(v, start, i + 1, column, numeric);
            if next > now + 1e-9 {
                3.0
            } else {
                -1.0
            }
        }
        _ => 0.0,
    }
}

fn prefer_stop(v: &View<'_>) -> f64 {
    match v.ctx.slot {
        Slot::Copy { last: None } => {
            let (column, _) = copy_context(v);
            let binary = column.is_some_and(|c| is_yes_no(v.catalog, c));
            if binary && v.a.value_hit[column.unwrap().0].is_none_or(|(s, _, _)| s < 0.75) {
                3.0
            } else {
                0.0
            }
        }
        _ => 1.0,
    }
}

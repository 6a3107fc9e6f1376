//! Oracle that points a gold literal at the question span that mentions it.
//!
//! Best-effort: windows are scored with the content similarity of the value
//! resolver, numbers match by value (including number words) and dates match
//! after normalization.

use super::TokenizedQuestion;
use crate::catalog::{Affinity, ColumnDef};
use crate::values::{fuzzy, numbers, time};

/// Minimum similarity for a window to be tagged.
pub const TAG_THRESHOLD: f64 = 0.60;

const STOPWORDS: [&str; 44] = [
    "a", "an", "the", "of", "in", "on", "at", "to", "for", "by", "with", "and", "or", "is", "are", "was", "were", "be",
    "what", "which", "who", "whom", "whose", "how", "many", "much", "find", "show", "list", "give", "return", "all",
    "that", "than", "from", "as", "their", "there", "do", "does", "did", "have", "has", "me",
];

fn is_edge_ok(tok: &str) -> bool {
    tok.chars().any(|c| c.is_alphanumeric()) && !STOPWORDS.contains(&tok.to_lowercase().as_str())
}

/// Token range `[start, end)` best matching `gold`, or `None` when nothing
/// reaches [`TAG_THRESHOLD`].
pub fn tag_value_span(question: &TokenizedQuestion, gold: &str, column: Option<&ColumnDef>) -> Option<(usize, usize)> {
    let gold = gold.trim();
    let stripped = gold.trim_matches('%');
    if stripped.is_empty() {
        return None;
    }
    if let Some(v) = numbers::parse_numeral(stripped) {
        return tag_number(question, v);
    }
    let is_time = column.is_some_and(|c| c.affinity == Affinity::Time);
    let gold_date = if is_time { time::parse_date(stripped, false) } else { None };
    let gold_tokens = super::tokenize_question(stripped).len().max(1);
    let max_len = gold_tokens + 2;
    let mut best: Option<(f64, usize, usize)> = None;
    for i in 0..question.len() {
        if !is_edge_ok(&question.tokens[i].text) {
            continue;
        }
        for j in (i + 1)..=(i + max_len).min(question.len()) {
            if !is_edge_ok(&question.tokens[j - 1].text) {
                continue;
            }
            let window = question.span_text(i, j);
            let mut score = fuzzy::similarity(window, stripped);
            if let (Some(g), Some(w)) = (gold_date, time::parse_date(window, false)) {
                if g.year == w.year && g.month == w.month && g.day == w.day {
                    score = 1.0;
                }
            }
            if best.is_none_or(|(b, _, _)| score > b) {
                best = Some((score, i, j));
            }
        }
    }
    best.filter(|(s, _, _)| *s >= TAG_THRESHOLD).map(|(_, i, j)| (i, j))
}

fn tag_number(question: &TokenizedQuestion, v: f64) -> Option<(usize, usize)> {
    let n = question.len();
    for i in 0..n {
        // Longest numeric window first so "30.5" beats "30".
        for len in (1..=3).rev() {
            if i + len > n {
                continue;
            }
            let text = question.span_text(i, i + len);
            if let Some((w, _)) = numbers::parse_number(text) {
                if (w - v).abs() < 1e-9 {
                    return Some((i, i + len));
                }
            }
        }
    }
    None
}

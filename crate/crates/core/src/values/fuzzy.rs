use serde::{Deserialize, Serialize};

/// Similarity constants for content matching.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzyConfig {
    /// Minimum similarity for a content match to be accepted.
    pub threshold: f64,
    /// Added when one normalized string is a prefix of the other.
    pub prefix_bonus: f64,
    /// Score assigned when the candidate spells the initials of the span.
    pub initialism: f64,
}

impl Default for FuzzyConfig {
    fn default() -> Self {
        FuzzyConfig { threshold: 0.75, prefix_bonus: 0.1, initialism: 0.9 }
    }
}

/// Casefolds, drops punctuation and collapses whitespace.
pub fn normalize(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for word in s.split_whitespace() {
        let w: String = word.chars().filter(|c| c.is_alphanumeric()).flat_map(char::to_lowercase).collect();
        if w.is_empty() {
            continue;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(&w);
    }
    out
}

pub fn similarity(span: &str, candidate: &str) -> f64 {
    similarity_with(span, candidate, &FuzzyConfig::default())
}

pub fn similarity_with(span: &str, candidate: &str, cfg: &FuzzyConfig) -> f64 {
    let a = normalize(span);
    let b = normalize(candidate);
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    if a == b {
        return 1.0;
    }
    let mut score = strsim::normalized_levenshtein(&a, &b);
    if a.starts_with(&b) || b.starts_with(&a) {
        score = (score + cfg.prefix_bonus).min(1.0);
    }
    let initials: String = a.split(' ').filter_map(|w| w.chars().next()).collect();
    let compact: String = b.chars().filter(|c| *c != ' ').collect();
    if initials == compact {
        score = score.max(cfg.initialism);
    }
    score
}

/// Best candidate for `span`. Ties keep the earliest candidate, so callers
/// pass values most-frequent first.
pub fn fuzzy_match(span: &str, candidates: &[String]) -> Option<(String, f64)> {
    fuzzy_match_with(span, candidates, &FuzzyConfig::default())
}

pub fn fuzzy_match_with(span: &str, candidates: &[String], cfg: &FuzzyConfig) -> Option<(String, f64)> {
    let mut best: Option<(&String, f64)> = None;
    for c in candidates {
        let s = similarity_with(span, c, cfg);
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((c, s));
        }
    }
    best.filter(|(_, s)| *s >= cfg.threshold).map(|(c, s)| (c.clone(), s))
}

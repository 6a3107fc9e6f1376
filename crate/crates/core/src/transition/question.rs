use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuestionToken {
    /// Surface text with original casing.
    pub text: String,
    /// Byte range in the raw question.
    pub start: usize,
    pub end: usize,
}

impl QuestionToken {
    pub fn lower(&self) -> String {
        self.text.to_lowercase()
    }

    pub fn is_word(&self) -> bool {
        self.text.chars().all(|c| c.is_alphanumeric())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TokenizedQuestion {
    pub raw: String,
    pub tokens: Vec<QuestionToken>,
}

impl TokenizedQuestion {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Raw text covered by tokens `[start, end)`, inner whitespace included.
    pub fn span_text(&self, start: usize, end: usize) -> &str {
        if start >= end || end > self.tokens.len() {
            return "";
        }
        &self.raw[self.tokens[start].start..self.tokens[end - 1].end]
    }
}

/// Splits on whitespace and punctuation: alphanumeric runs form one token,
/// every other non-space character stands alone.
pub fn tokenize_question(raw: &str) -> TokenizedQuestion {
    let mut tokens = Vec::new();
    let mut run: Option<usize> = None;
    for (i, ch) in raw.char_indices() {
        if ch.is_alphanumeric() {
            run.get_or_insert(i);
            continue;
        }
        if let Some(s) = run.take() {
            tokens.push(QuestionToken { text: raw[s..i].to_string(), start: s, end: i });
        }
        if !ch.is_whitespace() {
            let e = i + ch.len_utf8();
            tokens.push(QuestionToken { text: raw[i..e].to_string(), start: i, end: e });
        }
    }
    if let Some(s) = run {
        tokens.push(QuestionToken { text: raw[s..].to_string(), start: s, end: raw.len() });
    }
    TokenizedQuestion { raw: raw.to_string(), tokens }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn splits_punctuation() {
        let q = tokenize_question("Who's older than 30.5, in 2010-05-01?");
        let texts: Vec<&str> = q.tokens.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(texts, ["Who", "'", "s", "older", "than", "30", ".", "5", ",", "in", "2010", "-", "05", "-", "01", "?"]);
        assert_eq!(q.span_text(5, 8), "30.5");
        assert_eq!(q.span_text(10, 15), "2010-05-01");
    }

    proptest! {
        #[test]
        fn spans_cover_non_whitespace(raw in "[a-zA-Z0-9 ,.?'é-]{0,40}") {
            let q = tokenize_question(&raw);
            let mut prev = 0;
            let mut covered = String::new();
            for t in &q.tokens {
                prop_assert!(t.start >= prev && t.start < t.end);
                prop_assert!(raw[prev..t.start].chars().all(char::is_whitespace));
                prop_assert_eq!(&raw[t.start..t.end], t.text.as_str());
                covered.push_str(&t.text);
                prev = t.end;
            }
            prop_assert!(raw[prev..].chars().all(char::is_whitespace));
            let expected: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            prop_assert_eq!(covered, expected);
        }
    }
}

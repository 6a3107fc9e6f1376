//! Step-by-step English explanations of queries.
//!
//! A query is flattened into anonymized token streams and matched against a
//! synchronous grammar. The shallow grammar gives compact wording for common
//! shapes; the deep grammar covers every query the transition system emits.

pub mod diff;
mod matcher;
mod realize;
pub mod scfg;
pub mod stream;

use std::sync::OnceLock;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::catalog::{ColumnId, SchemaCatalog, TableId};
use crate::sql::{Literal, LiteralKind, Query};
use crate::values::ValueResolution;
pub use diff::diff_explanations;
pub use scfg::{Scfg, ScfgError};

pub const SHALLOW_GRAMMAR: &str = include_str!("../../data/shallow.scfg");
pub const DEEP_GRAMMAR: &str = include_str!("../../data/deep.scfg");
pub const NOTE_SEPARATOR: &str = "---------------";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Shallow,
    Deep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "type", content = "id", rename_all = "snake_case")]
pub enum SpanKind {
    Table(TableId),
    Column(ColumnId),
    /// Literal site in [`Query::literals_mut`] order.
    Value(usize),
    /// Zero-based index of the referenced step.
    StepRef(usize),
}

/// Byte range into the step text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub kind: SpanKind,
}

/// Words of a step missing from the aligned step of the listed siblings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Change {
    pub start: usize,
    pub end: usize,
    pub absent_in: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "type", content = "id", rename_all = "snake_case")]
pub enum SchemaRef {
    Table(usize),
    Column(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StepSignature {
    pub tier: Tier,
    pub rule: usize,
    pub segment: usize,
    pub schema: Vec<SchemaRef>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    pub text: String,
    pub spans: Vec<Span>,
    pub changes: Vec<Change>,
    pub signature: StepSignature,
    /// FROM tables of the query block the step describes.
    pub scope: Vec<TableId>,
}

impl Step {
    fn chars(&self, byte: usize) -> usize {
        self.text[..byte].chars().count()
    }
}

#[derive(Serialize)]
struct CharSpan {
    start: usize,
    end: usize,
    #[serde(flatten)]
    kind: SpanKind,
}

#[derive(Serialize)]
struct CharChange<'a> {
    start: usize,
    end: usize,
    absent_in: &'a [usize],
}

/// Offsets are serialized as character positions for client-side highlighting.
impl Serialize for Step {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let spans: Vec<CharSpan> =
            self.spans.iter().map(|sp| CharSpan { start: self.chars(sp.start), end: self.chars(sp.end), kind: sp.kind }).collect();
        let changes: Vec<CharChange> = self
            .changes
            .iter()
            .map(|c| CharChange { start: self.chars(c.start), end: self.chars(c.end), absent_in: &c.absent_in })
            .collect();
        let mut st = s.serialize_struct("Step", 4)?;
        st.serialize_field("text", &self.text)?;
        st.serialize_field("spans", &spans)?;
        st.serialize_field("changes", &changes)?;
        st.serialize_field("signature", &self.signature)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Explanation {
    pub tier: Tier,
    pub steps: Vec<Step>,
    pub value_notes: Vec<String>,
}

impl Explanation {
    pub fn step_line(&self, i: usize) -> String {
        let prefix = match self.tier {
            Tier::Shallow => "step",
            Tier::Deep => "Step",
        };
        format!("{prefix} {}: {}", i + 1, self.steps[i].text)
    }

    pub fn render(&self) -> String {
        let mut lines: Vec<String> = (0..self.steps.len()).map(|i| self.step_line(i)).collect();
        if !self.value_notes.is_empty() {
            lines.push(NOTE_SEPARATOR.to_string());
            lines.extend(self.value_notes.iter().cloned());
        }
        lines.join("\n")
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ExplainError {
    #[error("no {tier:?} derivation for stream {stream}")]
    Uncovered { tier: Tier, stream: usize },
}

pub struct Explainer {
    shallow: Scfg,
    deep: Scfg,
}

fn literal_display(l: &Literal) -> String {
    match l {
        Literal::Value { raw, kind: LiteralKind::Number } => raw.clone(),
        other => format!("\"{}\"", other.raw()),
    }
}

impl Explainer {
    pub fn new(shallow: Scfg, deep: Scfg) -> Explainer {
        Explainer { shallow, deep }
    }

    /// The grammars compiled into the crate.
    pub fn shipped() -> &'static Explainer {
        static E: OnceLock<Explainer> = OnceLock::new();
        E.get_or_init(|| {
            let shallow = Scfg::parse(SHALLOW_GRAMMAR).expect("shipped shallow grammar");
            let deep = Scfg::parse(DEEP_GRAMMAR).expect("shipped deep grammar");
            Explainer::new(shallow, deep)
        })
    }

    pub fn grammar(&self, tier: Tier) -> &Scfg {
        match tier {
            Tier::Shallow => &self.shallow,
            Tier::Deep => &self.deep,
        }
    }

    /// Shallow wording when every nesting level is covered, deep otherwise.
    pub fn explain(&self, q: &Query, catalog: &SchemaCatalog, resolutions: &[ValueResolution]) -> Result<Explanation, ExplainError> {
        self.explain_tier(q, catalog, resolutions, Tier::Shallow).or_else(|_| self.explain_tier(q, catalog, resolutions, Tier::Deep))
    }

    pub fn explain_tier(
        &self,
        q: &Query,
        catalog: &SchemaCatalog,
        resolutions: &[ValueResolution],
        tier: Tier,
    ) -> Result<Explanation, ExplainError> {
        let g = self.grammar(tier);
        let streams = stream::build(q, catalog);
        let derivs = streams
            .tokens
            .iter()
            .enumerate()
            .map(|(i, toks)| matcher::derive(g, toks).ok_or(ExplainError::Uncovered { tier, stream: i }))
            .collect::<Result<Vec<_>, _>>()?;
        let mut copy = q.clone();
        let literals: Vec<String> = copy.literals_mut().into_iter().map(|l| literal_display(l)).collect();
        let steps = realize::Realizer::new(g, catalog, &streams, &derivs, &literals).run();
        let mut sorted: Vec<&ValueResolution> = resolutions.iter().collect();
        sorted.sort_by_key(|r| r.literal_site);
        let value_notes = sorted.iter().filter_map(|r| r.note(catalog)).collect();
        let mut doc = Explanation { tier, steps, value_notes };
        if tier == Tier::Shallow {
            compress_mentions(&mut doc, catalog);
        }
        Ok(doc)
    }

    /// Whether the stream of every nesting level has a derivation in `tier`.
    pub fn covers(&self, q: &Query, catalog: &SchemaCatalog, tier: Tier) -> bool {
        let g = self.grammar(tier);
        stream::build(q, catalog).tokens.iter().all(|t| matcher::derive(g, t).is_some())
    }
}

/// Drops repeated " of the X table" qualifiers in steps that mention a single
/// table, unless a column name is shared with another table in scope.
pub fn compress_mentions(doc: &mut Explanation, catalog: &SchemaCatalog) {
    for step in &mut doc.steps {
        let mut tables: Vec<TableId> = Vec::new();
        for sp in &step.spans {
            let t = match sp.kind {
                SpanKind::Table(t) => Some(t),
                SpanKind::Column(c) => catalog.table_of(c),
                _ => None,
            };
            if let Some(t) = t {
                if !tables.contains(&t) {
                    tables.push(t);
                }
            }
        }
        if tables.len() != 1 {
            continue;
        }
        let shared = step.spans.iter().any(|sp| {
            let SpanKind::Column(c) = sp.kind else { return false };
            let Some(name) = catalog.column(c).map(|d| d.name.to_lowercase()) else { return false };
            step.scope
                .iter()
                .filter(|t| **t != tables[0])
                .any(|t| catalog.columns_of(*t).any(|o| catalog.column(o).is_some_and(|d| d.name.to_lowercase() == name)))
        });
        if shared {
            continue;
        }
        let mut remove: Vec<(usize, usize)> = Vec::new();
        let mut seen_qualified = false;
        for w in step.spans.windows(2) {
            let (a, b) = (w[0], w[1]);
            if matches!(a.kind, SpanKind::Column(_)) && matches!(b.kind, SpanKind::Table(_)) && &step.text[a.end..b.start] == " of the " {
                if seen_qualified {
                    remove.push((a.end, b.end));
                }
                seen_qualified = true;
            }
        }
        for &(start, end) in remove.iter().rev() {
            let len = end - start;
            step.text.replace_range(start..end, "");
            step.spans.retain(|s| !(s.start >= start && s.end <= end));
            for s in &mut step.spans {
                if s.start >= end {
                    s.start -= len;
                    s.end -= len;
                }
            }
        }
    }
}

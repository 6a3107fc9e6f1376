use std::collections::HashMap;
use std::rc::Rc;

use super::matcher::Deriv;
use super::scfg::{Mention, Part, PhKind, Scfg};
use super::stream::{Streams, Tok};
use super::{SchemaRef, Span, SpanKind, Step, StepSignature, Tier};
use crate::catalog::{ColumnId, SchemaCatalog};
use crate::sql::{Aggregate, ArithOp, CompareOp};

/// Text under construction with whitespace collapsed as it is appended.
#[derive(Clone, Debug, Default)]
pub struct Piece {
    pub text: String,
    pub spans: Vec<Span>,
}

fn tight(c: char) -> bool {
    matches!(c, '.' | ',' | ';' | ':' | ')')
}

impl Piece {
    pub fn push_text(&mut self, s: &str) {
        for c in s.chars() {
            if c.is_whitespace() {
                if !self.text.is_empty() && !self.text.ends_with([' ', '(']) {
                    self.text.push(' ');
                }
            } else {
                if tight(c) && self.text.ends_with(' ') {
                    self.text.pop();
                }
                self.text.push(c);
            }
        }
    }

    pub fn push_span(&mut self, s: &str, kind: SpanKind) {
        let start = self.text.len();
        self.text.push_str(s);
        self.spans.push(Span { start, end: self.text.len(), kind });
    }

    pub fn append(&mut self, other: Piece) {
        let mut body = other.text.as_str();
        let mut shift = 0;
        if body.starts_with(' ') && (self.text.is_empty() || self.text.ends_with([' ', '('])) {
            body = &body[1..];
            shift = 1;
        }
        if body.starts_with(tight) && self.text.ends_with(' ') {
            self.text.pop();
        }
        let base = self.text.len();
        self.text.push_str(body);
        for s in other.spans {
            self.spans.push(Span { start: s.start + base - shift, end: s.end + base - shift, kind: s.kind });
        }
    }

    pub fn trimmed(mut self) -> Piece {
        while self.text.ends_with(' ') {
            self.text.pop();
        }
        let lead = self.text.len() - self.text.trim_start().len();
        if lead > 0 {
            self.text.drain(..lead);
            for s in &mut self.spans {
                s.start -= lead;
                s.end -= lead;
            }
        }
        self
    }
}

/// "a", "a and b", "a, b and c".
pub fn join_list(items: Vec<Piece>) -> Piece {
    let n = items.len();
    let mut out = Piece::default();
    for (i, item) in items.into_iter().enumerate() {
        if i > 0 {
            out.push_text(if i + 1 == n { " and " } else { ", " });
        }
        out.append(item.trimmed());
    }
    out
}

fn agg_words(a: Aggregate) -> &'static str {
    match a {
        Aggregate::Count => "number of",
        Aggregate::Max => "maximum",
        Aggregate::Min => "minimum",
        Aggregate::Sum => "total",
        Aggregate::Avg => "average of",
    }
}

fn cmp_words(op: CompareOp, tier: Tier) -> &'static str {
    match op {
        CompareOp::Eq => "is",
        CompareOp::Ne => "is not",
        CompareOp::Lt => "is less than",
        CompareOp::Le => "is at most",
        CompareOp::Gt if tier == Tier::Shallow => "is greater than",
        CompareOp::Gt => "is more than",
        CompareOp::Ge => "is at least",
        CompareOp::Like => "matches",
        CompareOp::NotLike => "does not match",
        CompareOp::In => "is among",
        CompareOp::NotIn => "is not among",
    }
}

fn arith_words(op: ArithOp) -> &'static str {
    match op {
        ArithOp::Plus => "plus",
        ArithOp::Minus => "minus",
        ArithOp::Times => "times",
        ArithOp::Divide => "divided by",
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Step,
    Inline,
}

pub struct Realizer<'a> {
    pub g: &'a Scfg,
    pub catalog: &'a SchemaCatalog,
    pub streams: &'a Streams,
    pub derivs: &'a [Rc<Deriv>],
    pub literals: &'a [String],
    pub steps: Vec<Step>,
    sub_steps: HashMap<usize, usize>,
    stream: usize,
}

impl<'a> Realizer<'a> {
    pub fn new(
        g: &'a Scfg,
        catalog: &'a SchemaCatalog,
        streams: &'a Streams,
        derivs: &'a [Rc<Deriv>],
        literals: &'a [String],
    ) -> Realizer<'a> {
        Realizer { g, catalog, streams, derivs, literals, steps: Vec::new(), sub_steps: HashMap::new(), stream: 0 }
    }

    pub fn run(mut self) -> Vec<Step> {
        self.stream_steps(0);
        self.steps
    }

    fn long_default(&self) -> bool {
        self.g.tier == Tier::Deep
    }

    fn stream_steps(&mut self, id: usize) -> usize {
        if let Some(s) = self.sub_steps.get(&id) {
            return *s;
        }
        let saved = self.stream;
        self.stream = id;
        let d = self.derivs[id].clone();
        let (_, last) = self.realize(&d, Mode::Step, self.long_default());
        self.stream = saved;
        let last = last.unwrap_or(self.steps.len().saturating_sub(1));
        self.sub_steps.insert(id, last);
        last
    }

    fn realize(&mut self, d: &Deriv, mode: Mode, long: bool) -> (Vec<Piece>, Option<usize>) {
        let g = self.g;
        let rule = &g.rules[d.rule];
        let n = rule.nl.len();
        let mut child_step: HashMap<usize, usize> = HashMap::new();
        let mut prev: Option<usize> = None;
        for (si, seg) in rule.nl.iter().enumerate() {
            let to_step = si + 1 < n || mode == Mode::Step;
            if let Some((ci, m)) = delegate(seg) {
                let child_mode = if to_step { Mode::Step } else { Mode::Inline };
                let (items, st) = self.realize(&d.children[ci], child_mode, mention(m, long));
                if let Some(s) = st {
                    child_step.insert(ci, s);
                    prev = Some(s);
                }
                if !to_step {
                    return (items, prev);
                }
                continue;
            }
            let mut inline: HashMap<usize, Vec<Piece>> = HashMap::new();
            for part in seg.iter().flatten() {
                match part {
                    Part::Child(ci, m) if !inline.contains_key(ci) => {
                        let (items, _) = self.realize(&d.children[*ci], Mode::Inline, mention(*m, long));
                        inline.insert(*ci, items);
                    }
                    Part::Ph(p) if p.0 == PhKind::Lit => {
                        if let Some(Tok::Sub(id)) = d.bound(*p) {
                            self.stream_steps(id);
                        }
                    }
                    _ => {}
                }
            }
            let mut items: Vec<Piece> = Vec::new();
            for item in seg {
                // A list item that is only a child splices the child's items.
                match delegate(std::slice::from_ref(item)) {
                    Some((ci, _)) if seg.len() > 1 => items.extend(inline.get(&ci).cloned().unwrap_or_default()),
                    _ => items.push(self.assemble(item, d, long, &inline, &child_step, prev)),
                }
            }
            if !to_step {
                return (items, prev);
            }
            let piece = join_list(items).trimmed();
            let idx = self.push_step(piece, d.rule, si);
            prev = Some(idx);
        }
        (Vec::new(), prev)
    }

    fn push_step(&mut self, piece: Piece, rule: usize, segment: usize) -> usize {
        let mut schema: Vec<SchemaRef> = piece
            .spans
            .iter()
            .filter_map(|s| match s.kind {
                SpanKind::Table(t) => Some(SchemaRef::Table(t.0)),
                SpanKind::Column(c) => Some(SchemaRef::Column(c.0)),
                _ => None,
            })
            .collect();
        schema.sort();
        schema.dedup();
        self.steps.push(Step {
            text: piece.text,
            spans: piece.spans,
            changes: Vec::new(),
            signature: StepSignature { tier: self.g.tier, rule, segment, schema },
            scope: self.streams.scope[self.stream].clone(),
        });
        self.steps.len() - 1
    }

    fn step_ref(&self, piece: &mut Piece, step: usize) {
        if step + 1 == self.steps.len() {
            piece.push_span("these results", SpanKind::StepRef(step));
        } else {
            piece.push_span(&format!("the results of step {}", step + 1), SpanKind::StepRef(step));
        }
    }

    fn assemble(
        &self,
        item: &[Part],
        d: &Deriv,
        long: bool,
        inline: &HashMap<usize, Vec<Piece>>,
        child_step: &HashMap<usize, usize>,
        prev: Option<usize>,
    ) -> Piece {
        let mut out = Piece::default();
        for part in item {
            match part {
                Part::Text(t) => out.push_text(t),
                Part::Child(ci, _) => out.append(join_list(inline.get(ci).cloned().unwrap_or_default())),
                Part::ChildStep(ci) => {
                    let s = child_step.get(ci).copied().unwrap_or(0);
                    out.push_span(&(s + 1).to_string(), SpanKind::StepRef(s));
                }
                Part::Prev => match prev {
                    Some(p) => self.step_ref(&mut out, p),
                    None => out.push_text("the entries"),
                },
                Part::Ph(p) => match d.bound(*p) {
                    Some(tok) => self.token(&mut out, tok, long),
                    None => {}
                },
            }
        }
        out
    }

    fn column(&self, out: &mut Piece, c: ColumnId, long: bool) {
        let Some(def) = self.catalog.column(c) else { return };
        out.push_span(&def.display, SpanKind::Column(c));
        if long {
            if let Some(t) = self.catalog.table_of(c) {
                out.push_text(" of the ");
                out.push_span(&format!("{} table", self.catalog.table(t).display), SpanKind::Table(t));
            }
        }
    }

    fn token(&self, out: &mut Piece, tok: Tok, long: bool) {
        match tok {
            Tok::Table(t) => out.push_span(&format!("{} table", self.catalog.table(t).display), SpanKind::Table(t)),
            Tok::Column(c) => self.column(out, c, long),
            Tok::Agg(a) => out.push_text(agg_words(a)),
            Tok::Cmp(op) => out.push_text(cmp_words(op, self.g.tier)),
            Tok::Arith(op) => out.push_text(arith_words(op)),
            Tok::Lit(site) => {
                let shown = self.literals.get(site).map(String::as_str).unwrap_or("");
                out.push_span(shown, SpanKind::Value(site));
            }
            Tok::Sub(id) => {
                let s = self.sub_steps.get(&id).copied().unwrap_or(0);
                out.push_span(&format!("the results of step {}", s + 1), SpanKind::StepRef(s));
            }
            Tok::Num(n) => out.push_text(&n.to_string()),
            Tok::Kw(_) | Tok::Star => {}
        }
    }
}

fn mention(m: Option<Mention>, long: bool) -> bool {
    match m {
        Some(Mention::Short) => false,
        Some(Mention::Long) => true,
        None => long,
    }
}

/// A segment that is nothing but one child reference.
fn delegate(seg: &[Vec<Part>]) -> Option<(usize, Option<Mention>)> {
    if seg.len() != 1 {
        return None;
    }
    let mut found = None;
    for part in &seg[0] {
        match part {
            Part::Child(ci, m) if found.is_none() => found = Some((*ci, *m)),
            Part::Text(t) if t.trim().is_empty() => {}
            _ => return None,
        }
    }
    found
}

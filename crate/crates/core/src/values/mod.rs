//! Turns copied question spans into executable literals.

pub mod fuzzy;
pub mod numbers;
pub mod time;

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::catalog::{Affinity, ColumnDef, ColumnId, SchemaCatalog};
use crate::sql::*;
use numbers::NumberSource;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResolutionMethod {
    Verbatim,
    NumericNormalization,
    NumberWord,
    TimeNormalization,
    ContentFuzzyMatch,
    DefaultBinaryYes,
    DefaultMostFrequent,
    LikePattern,
}

impl ResolutionMethod {
    pub fn is_default(self) -> bool {
        matches!(self, ResolutionMethod::DefaultBinaryYes | ResolutionMethod::DefaultMostFrequent)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValueResolution {
    /// Position of the literal in [`Query::literals_mut`] order.
    pub literal_site: usize,
    pub copied_text: Option<String>,
    pub copied_tokens: Option<(usize, usize)>,
    pub resolved: String,
    pub kind: LiteralKind,
    pub method: ResolutionMethod,
    pub matched_column: Option<ColumnId>,
    pub via_term_map: bool,
}

impl ValueResolution {
    /// Sentence describing the change, or `None` when the literal is the
    /// copied text unchanged.
    pub fn note(&self, catalog: &SchemaCatalog) -> Option<String> {
        let column = || self.matched_column.and_then(|c| catalog.column(c)).map(|c| c.name.clone()).unwrap_or_default();
        let shown = match self.kind {
            LiteralKind::Number => self.resolved.parse::<f64>().map(numbers::format_short).unwrap_or(self.resolved.clone()),
            _ => format!("\"{}\"", self.resolved),
        };
        match (&self.copied_text, self.method) {
            (_, m) if m.is_default() => {
                Some(format!("\"{}\" is assumed for the column {} because the question does not mention a value.", self.resolved, column()))
            }
            (Some(span), _) if *span == self.resolved => None,
            (Some(span), ResolutionMethod::ContentFuzzyMatch) => {
                Some(format!("\"{span}\" in the question is matched to \"{}\" which appears in the column {}.", self.resolved, column()))
            }
            (Some(span), _) => Some(format!("\"{span}\" in the question is converted to {shown}.")),
            (None, _) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ValueError {
    #[error("no value mentioned for {column} and the column has no content to default to")]
    NoDefault { column: String },
    #[error("\"{span}\" is not a number")]
    NotNumeric { span: String },
    #[error("term map line {line}: {message}")]
    TermMap { line: usize, message: String },
}

/// Domain terms mapped to stored values, one `table.column<TAB>term<TAB>value`
/// per line.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TermMap {
    entries: HashMap<(ColumnId, String), String>,
}

impl TermMap {
    pub fn parse(text: &str, catalog: &SchemaCatalog) -> Result<TermMap, ValueError> {
        let mut entries = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split('\t').collect();
            let [col, term, value] = parts.as_slice() else {
                return Err(ValueError::TermMap { line: line_no, message: "expected column, term and value separated by tabs".into() });
            };
            let id = col
                .split_once('.')
                .and_then(|(t, c)| catalog.column_by_name(t.trim(), c.trim()))
                .ok_or_else(|| ValueError::TermMap { line: line_no, message: format!("unknown column `{col}`") })?;
            entries.insert((id, fuzzy::normalize(term)), value.trim().to_string());
        }
        Ok(TermMap { entries })
    }

    pub fn insert(&mut self, column: ColumnId, term: &str, value: &str) {
        self.entries.insert((column, fuzzy::normalize(term)), value.to_string());
    }

    pub fn lookup(&self, column: ColumnId, span: &str) -> Option<&str> {
        self.entries.get(&(column, fuzzy::normalize(span))).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum SiteOp {
    Compare(CompareOp),
    Between,
}

#[derive(Clone, Debug)]
struct Site {
    lhs: AggUnit,
    op: SiteOp,
}

fn collect_sites(q: &Query, out: &mut Vec<Site>) {
    for cond in [&q.body.filter, &q.body.having].into_iter().flatten() {
        collect_cond_sites(cond, out);
    }
    if let Some((_, right)) = &q.set_op {
        collect_sites(right, out);
    }
}

fn collect_cond_sites(c: &Condition, out: &mut Vec<Site>) {
    match c {
        Condition::And(a, b) | Condition::Or(a, b) => {
            collect_cond_sites(a, out);
            collect_cond_sites(b, out);
        }
        Condition::Predicate(Predicate::Compare { lhs, op, rhs }) => match rhs {
            Operand::Literal(_) => out.push(Site { lhs: lhs.clone(), op: SiteOp::Compare(*op) }),
            Operand::Query(q) => collect_sites(q, out),
            Operand::Column(_) => {}
        },
        Condition::Predicate(Predicate::Between { lhs, .. }) => {
            for _ in 0..2 {
                out.push(Site { lhs: lhs.clone(), op: SiteOp::Between });
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Context {
    Count,
    Number,
    Time,
    Text,
}

fn is_binary_yes_no(values: &[String]) -> Option<&String> {
    if values.len() != 2 {
        return None;
    }
    let yes = values.iter().find(|v| v.eq_ignore_ascii_case("yes"))?;
    values.iter().any(|v| v.eq_ignore_ascii_case("no")).then_some(yes)
}

pub struct ValueResolver<'a> {
    catalog: &'a SchemaCatalog,
    terms: Option<&'a TermMap>,
    fuzzy: fuzzy::FuzzyConfig,
}

impl<'a> ValueResolver<'a> {
    pub fn new(catalog: &'a SchemaCatalog) -> ValueResolver<'a> {
        ValueResolver { catalog, terms: None, fuzzy: fuzzy::FuzzyConfig::default() }
    }

    pub fn with_terms(mut self, terms: &'a TermMap) -> ValueResolver<'a> {
        self.terms = Some(terms);
        self
    }

    pub fn with_fuzzy(mut self, cfg: fuzzy::FuzzyConfig) -> ValueResolver<'a> {
        self.fuzzy = cfg;
        self
    }

    /// Replaces every copied literal in `query` with an executable value.
    /// Literals that already carry values are left alone.
    pub fn resolve(&self, query: &mut Query) -> Result<Vec<ValueResolution>, ValueError> {
        let mut sites = Vec::new();
        collect_sites(query, &mut sites);
        let mut out = Vec::new();
        for (i, (lit, site)) in query.literals_mut().into_iter().zip(sites).enumerate() {
            let Literal::Copied(span) = lit else { continue };
            let r = self.resolve_site(i, span, &site)?;
            *lit = Literal::Value { raw: r.resolved.clone(), kind: r.kind };
            out.push(r);
        }
        Ok(out)
    }

    fn resolve_site(&self, index: usize, span: &CopiedSpan, site: &Site) -> Result<ValueResolution, ValueError> {
        let column_id = match site.lhs.agg {
            Some(Aggregate::Count) => None,
            _ => Some(site.lhs.unit.primary_column()).filter(|c| !c.is_star()),
        };
        let column = column_id.and_then(|c| self.catalog.column(c));
        let context = match (site.lhs.agg, column) {
            (Some(Aggregate::Count), _) | (_, None) => Context::Count,
            (Some(Aggregate::Sum | Aggregate::Avg), _) => Context::Number,
            (_, Some(c)) => match c.affinity {
                Affinity::Number => Context::Number,
                Affinity::Time => Context::Time,
                Affinity::Text => Context::Text,
            },
        };
        let text = span.text.trim().to_string();
        let mut res = ValueResolution {
            literal_site: index,
            copied_text: span.tokens.map(|_| span.text.clone()),
            copied_tokens: span.tokens,
            resolved: String::new(),
            kind: LiteralKind::Text,
            method: ResolutionMethod::Verbatim,
            matched_column: column_id,
            via_term_map: false,
        };
        if span.tokens.is_none() || text.is_empty() {
            return self.default_value(res, column, context);
        }
        if let (Some(id), Some(terms)) = (column_id, self.terms) {
            if let Some(v) = terms.lookup(id, &text) {
                res.resolved = v.to_string();
                res.kind = kind_for(context);
                res.method = ResolutionMethod::ContentFuzzyMatch;
                res.via_term_map = true;
                return Ok(res);
            }
        }
        let like = matches!(site.op, SiteOp::Compare(op) if op.is_like());
        if like {
            res.resolved = if text.contains('%') || text.contains('_') { text } else { format!("%{text}%") };
            res.method = ResolutionMethod::LikePattern;
            return Ok(res);
        }
        match context {
            Context::Count | Context::Number => {
                res.kind = LiteralKind::Number;
                let fmt = if context == Context::Count { numbers::format_short } else { numbers::format_column_value };
                if let Some((v, source)) = numbers::parse_number(&text) {
                    res.resolved = fmt(v);
                    res.method = match source {
                        NumberSource::Numeral => ResolutionMethod::NumericNormalization,
                        NumberSource::Word => ResolutionMethod::NumberWord,
                    };
                    return Ok(res);
                }
                let numeric: Vec<String> = column
                    .map(|c| c.searchable_values().iter().filter(|v| numbers::parse_numeral(v).is_some()).cloned().collect())
                    .unwrap_or_default();
                match fuzzy::fuzzy_match_with(&text, &numeric, &self.fuzzy) {
                    Some((m, _)) => {
                        res.resolved = m;
                        res.method = ResolutionMethod::ContentFuzzyMatch;
                        Ok(res)
                    }
                    None => Err(ValueError::NotNumeric { span: text }),
                }
            }
            Context::Time => {
                res.kind = LiteralKind::Time;
                let values = column.map(ColumnDef::searchable_values).unwrap_or_default();
                match time::parse_date(&text, false) {
                    Some(p) => {
                        let format = time::modal_format(values).unwrap_or(time::TimeFormat::IsoDate);
                        res.resolved = time::format_date(&p, format);
                        res.method = ResolutionMethod::TimeNormalization;
                    }
                    None => res.resolved = text,
                }
                Ok(res)
            }
            Context::Text => {
                let equality = matches!(site.op, SiteOp::Compare(CompareOp::Eq | CompareOp::Ne | CompareOp::In | CompareOp::NotIn));
                let values = if equality { column.map(ColumnDef::searchable_values).unwrap_or_default() } else { &[] };
                if let Some(v) = values.iter().find(|v| v.to_lowercase() == text.to_lowercase()) {
                    res.method = if *v == text { ResolutionMethod::Verbatim } else { ResolutionMethod::ContentFuzzyMatch };
                    res.resolved = v.clone();
                } else if let Some((m, _)) = fuzzy::fuzzy_match_with(&text, values, &self.fuzzy) {
                    res.resolved = m;
                    res.method = ResolutionMethod::ContentFuzzyMatch;
                } else {
                    res.resolved = text;
                }
                Ok(res)
            }
        }
    }

    fn default_value(&self, mut res: ValueResolution, column: Option<&ColumnDef>, context: Context) -> Result<ValueResolution, ValueError> {
        let name = res.matched_column.map(|c| self.catalog.qualified_name(c)).unwrap_or_else(|| "count(*)".into());
        let column = column.ok_or(ValueError::NoDefault { column: name.clone() })?;
        res.kind = kind_for(context);
        if let Some(yes) = is_binary_yes_no(column.searchable_values()) {
            res.resolved = yes.clone();
            res.method = ResolutionMethod::DefaultBinaryYes;
        } else if let Some(v) = column.most_frequent.clone().or_else(|| column.searchable_values().first().cloned()) {
            res.resolved = v;
            res.method = ResolutionMethod::DefaultMostFrequent;
        } else {
            return Err(ValueError::NoDefault { column: name });
        }
        Ok(res)
    }
}

fn kind_for(context: Context) -> LiteralKind {
    match context {
        Context::Count | Context::Number => LiteralKind::Number,
        Context::Time => LiteralKind::Time,
        Context::Text => LiteralKind::Text,
    }
}

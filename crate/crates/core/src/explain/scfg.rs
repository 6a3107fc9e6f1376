//! Loader for the synchronous grammars that pair SQL token patterns with
//! English templates.
//!
//! One rule per line: `id TAB tier TAB lhs TAB sql TAB nl`. The first rule's
//! left side is the start symbol. `ε` marks an empty SQL side.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use super::Tier;
use crate::sql::Aggregate;

#[derive(Debug, Error, PartialEq)]
#[error("grammar line {line}: {message}")]
pub struct ScfgError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhKind {
    Table,
    Column,
    Agg,
    Cmp,
    Lit,
    Arith,
}

impl PhKind {
    fn parse(s: &str) -> Option<PhKind> {
        Some(match s {
            "T" => PhKind::Table,
            "C" => PhKind::Column,
            "AOps" => PhKind::Agg,
            "WOps" => PhKind::Cmp,
            "L" => PhKind::Lit,
            "ArOps" => PhKind::Arith,
            _ => return None,
        })
    }
}

pub type Placeholder = (PhKind, u8);

#[derive(Clone, Debug, PartialEq)]
pub enum Sym {
    Kw(String),
    Agg(Aggregate),
    Star,
    Num(u64),
    Ph(Placeholder),
    Nt(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mention {
    Short,
    Long,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Part {
    Text(String),
    Ph(Placeholder),
    /// Index into the rule's nonterminal children.
    Child(usize, Option<Mention>),
    ChildStep(usize),
    Prev,
}

/// A segment is one list item or, with `++`, several items joined as a list.
pub type Segment = Vec<Vec<Part>>;

#[derive(Clone, Debug)]
pub struct ScfgRule {
    pub id: usize,
    pub lhs: usize,
    pub sql: Vec<Sym>,
    pub nl: Vec<Segment>,
    /// Nonterminal of each child, in SQL order.
    pub children: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Scfg {
    pub tier: Tier,
    pub nonterminals: Vec<String>,
    pub rules: Vec<ScfgRule>,
    pub by_lhs: Vec<Vec<usize>>,
}

fn err(line: usize, message: impl Into<String>) -> ScfgError {
    ScfgError { line, message: message.into() }
}

fn is_nt_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_uppercase())
        && s.chars().all(|c| c.is_ascii_alphanumeric())
        && (s.len() == 1 || s.chars().any(|c| c.is_ascii_lowercase()))
}

fn parse_placeholder(s: &str) -> Option<Placeholder> {
    let inner = s.strip_prefix('<')?.strip_suffix('>')?;
    let (kind, idx) = inner.split_once('_')?;
    Some((PhKind::parse(kind)?, idx.parse().ok()?))
}

impl Scfg {
    pub fn parse(text: &str) -> Result<Scfg, ScfgError> {
        let mut raw = Vec::new();
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut tier = None;
        for (i, line) in text.lines().enumerate() {
            let n = i + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 5 {
                return Err(err(n, format!("expected 5 fields, found {}", fields.len())));
            }
            let id: usize = fields[0].trim().parse().map_err(|_| err(n, "bad rule id"))?;
            if id != raw.len() {
                return Err(err(n, format!("rule ids must be dense, expected {}", raw.len())));
            }
            let t = match fields[1].trim() {
                "shallow" => Tier::Shallow,
                "deep" => Tier::Deep,
                other => return Err(err(n, format!("unknown tier {other}"))),
            };
            if *tier.get_or_insert(t) != t {
                return Err(err(n, "mixed tiers in one grammar"));
            }
            let lhs = fields[2].trim();
            if !is_nt_name(lhs) {
                return Err(err(n, format!("bad nonterminal {lhs}")));
            }
            if !index.contains_key(lhs) {
                index.insert(lhs.to_string(), names.len());
                names.push(lhs.to_string());
            }
            raw.push((n, id, lhs.to_string(), fields[3].to_string(), fields[4].to_string()));
        }
        let tier = tier.ok_or_else(|| err(0, "empty grammar"))?;

        let mut rules = Vec::new();
        for (n, id, lhs, sql_text, nl_text) in raw {
            let mut sql = Vec::new();
            let mut children = Vec::new();
            let sql_trim = sql_text.trim();
            if sql_trim != "ε" {
                for tok in sql_trim.split_whitespace() {
                    sql.extend(parse_sql_token(tok, &index, &mut children).map_err(|m| err(n, m))?);
                }
            }
            let nl = parse_nl(&nl_text, &names, &children).map_err(|m| err(n, m))?;
            let bound: HashSet<Placeholder> =
                sql.iter().filter_map(|s| if let Sym::Ph(p) = s { Some(*p) } else { None }).collect();
            for seg in &nl {
                for item in seg {
                    for part in item {
                        if let Part::Ph(p) = part {
                            if !bound.contains(p) {
                                return Err(err(n, format!("placeholder {p:?} is not on the SQL side")));
                            }
                        }
                    }
                }
            }
            rules.push(ScfgRule { id, lhs: index[&lhs], sql, nl, children });
        }
        let mut by_lhs = vec![Vec::new(); names.len()];
        for r in &rules {
            by_lhs[r.lhs].push(r.id);
        }
        for (nt, list) in by_lhs.iter().enumerate() {
            if list.is_empty() {
                return Err(err(0, format!("nonterminal {} has no rules", names[nt])));
            }
        }
        let g = Scfg { tier, nonterminals: names, rules, by_lhs };
        g.check_left_recursion()?;
        Ok(g)
    }

    pub fn start(&self) -> usize {
        self.rules[0].lhs
    }

    fn nullable(&self) -> Vec<bool> {
        let mut null = vec![false; self.nonterminals.len()];
        loop {
            let mut changed = false;
            for r in &self.rules {
                if !null[r.lhs] && r.sql.iter().all(|s| matches!(s, Sym::Nt(c) if null[*c])) {
                    null[r.lhs] = true;
                    changed = true;
                }
            }
            if !changed {
                return null;
            }
        }
    }

    fn check_left_recursion(&self) -> Result<(), ScfgError> {
        let null = self.nullable();
        let n = self.nonterminals.len();
        let mut left = vec![HashSet::new(); n];
        for r in &self.rules {
            for s in &r.sql {
                match s {
                    Sym::Nt(c) => {
                        left[r.lhs].insert(*c);
                        if !null[*c] {
                            break;
                        }
                    }
                    _ => break,
                }
            }
        }
        for start in 0..n {
            let mut seen = HashSet::new();
            let mut stack: Vec<usize> = left[start].iter().copied().collect();
            while let Some(x) = stack.pop() {
                if x == start {
                    return Err(err(0, format!("left recursion through {}", self.nonterminals[start])));
                }
                if seen.insert(x) {
                    stack.extend(left[x].iter().copied());
                }
            }
        }
        Ok(())
    }
}

fn parse_sql_token(tok: &str, index: &HashMap<String, usize>, children: &mut Vec<usize>) -> Result<Vec<Sym>, String> {
    // `<T_0>.<C_0>` is written without spaces but streams as three tokens.
    if let Some((a, b)) = tok.split_once(">.<") {
        let t = parse_placeholder(&format!("{a}>")).ok_or(format!("bad placeholder {tok}"))?;
        let c = parse_placeholder(&format!("<{b}")).ok_or(format!("bad placeholder {tok}"))?;
        return Ok(vec![Sym::Ph(t), Sym::Kw(".".into()), Sym::Ph(c)]);
    }
    if tok.starts_with('<') {
        return parse_placeholder(tok).map(|p| vec![Sym::Ph(p)]).ok_or(format!("bad placeholder {tok}"));
    }
    if tok == "*" {
        return Ok(vec![Sym::Star]);
    }
    if let Some(agg) = Aggregate::from_name(tok).filter(|_| tok.chars().all(|c| c.is_ascii_lowercase())) {
        return Ok(vec![Sym::Agg(agg)]);
    }
    if let Ok(n) = tok.parse::<u64>() {
        return Ok(vec![Sym::Num(n)]);
    }
    if is_nt_name(tok) {
        let nt = *index.get(tok).ok_or(format!("undefined nonterminal {tok}"))?;
        children.push(nt);
        return Ok(vec![Sym::Nt(nt)]);
    }
    if tok.chars().all(|c| c.is_ascii_uppercase() || c == '_') || matches!(tok, "(" | ")" | "," | "." | "=") {
        return Ok(vec![Sym::Kw(tok.to_string())]);
    }
    Err(format!("unrecognized token {tok}"))
}

fn parse_nl(text: &str, names: &[String], children: &[usize]) -> Result<Vec<Segment>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(" || ")
        .map(|seg| seg.split(" ++ ").map(|item| parse_item(item, names, children)).collect())
        .collect()
}

fn child_index(name: &str, names: &[String], children: &[usize]) -> Result<usize, String> {
    let (nt, k) = name.rsplit_once('_').ok_or(format!("bad reference {name}"))?;
    let k: usize = k.parse().map_err(|_| format!("bad reference {name}"))?;
    let nt = names.iter().position(|n| n == nt).ok_or(format!("unknown nonterminal {nt}"))?;
    children
        .iter()
        .enumerate()
        .filter(|(_, c)| **c == nt)
        .nth(k)
        .map(|(i, _)| i)
        .ok_or(format!("{name} has no matching child"))
}

fn parse_item(item: &str, names: &[String], children: &[usize]) -> Result<Vec<Part>, String> {
    let mut parts = Vec::new();
    let mut rest = item;
    while let Some(open) = rest.find('{') {
        if open > 0 {
            parts.push(Part::Text(rest[..open].to_string()));
        }
        let close = rest[open..].find('}').ok_or("unclosed brace")? + open;
        let inner = &rest[open + 1..close];
        let part = if inner == "@prev" {
            Part::Prev
        } else if let Some(name) = inner.strip_prefix('#') {
            Part::ChildStep(child_index(name, names, children)?)
        } else if inner.starts_with('<') {
            Part::Ph(parse_placeholder(inner).ok_or(format!("bad placeholder {inner}"))?)
        } else {
            let (name, mention) = match inner.split_once(':') {
                Some((n, "short")) => (n, Some(Mention::Short)),
                Some((n, "long")) => (n, Some(Mention::Long)),
                Some((_, m)) => return Err(format!("unknown modifier {m}")),
                None => (inner, None),
            };
            Part::Child(child_index(name, names, children)?, mention)
        };
        parts.push(part);
        rest = &rest[close + 1..];
    }
    if !rest.is_empty() {
        parts.push(Part::Text(rest.to_string()));
    }
    Ok(parts)
}

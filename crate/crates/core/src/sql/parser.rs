//! Two-phase parser: tokens to a name-based syntax tree, then binding
//! against a catalog.

use super::ast::*;
use super::lexer::{tokenize, Tok, Token};
use super::{canonical_from, SqlError, MAX_DEPTH};
use crate::catalog::{Affinity, ColumnId, SchemaCatalog, TableId};

const RESERVED: [&str; 27] = [
    "select", "from", "where", "group", "by", "having", "order", "limit", "join", "on", "as", "and", "or", "not",
    "in", "like", "between", "union", "intersect", "except", "distinct", "asc", "desc", "inner", "left", "is", "offset",
];

pub(crate) fn is_reserved(word: &str) -> bool {
    RESERVED.iter().any(|k| k.eq_ignore_ascii_case(word))
}

/// Parses `sql` and binds every reference against `catalog`.
pub fn parse_sql(sql: &str, catalog: &SchemaCatalog) -> Result<Query, SqlError> {
    let tokens = tokenize(sql)?;
    let mut p = Parser { toks: tokens, i: 0, end: sql.len() };
    let raw = p.query(1)?;
    p.eat_sym(";");
    if let Some(t) = p.peek() {
        return Err(p.unexpected(t.clone()));
    }
    bind_query(&raw, catalog)
}

/// Join conditions that do not follow a declared foreign key.
pub fn non_foreign_key_joins(query: &Query, catalog: &SchemaCatalog) -> Vec<JoinCondition> {
    let mut out = Vec::new();
    collect_non_fk(query, catalog, &mut out);
    out
}

fn collect_non_fk(query: &Query, catalog: &SchemaCatalog, out: &mut Vec<JoinCondition>) {
    for block in query.blocks() {
        out.extend(block.from.joins.iter().filter(|j| !catalog.is_foreign_key_pair(j.left, j.right)).copied());
    }
    query.visit_subqueries(&mut |q| collect_non_fk(q, catalog, out));
}

// ---- syntax tree ----

#[derive(Debug)]
struct RawCol {
    qual: Option<String>,
    name: String,
    pos: usize,
}

#[derive(Debug)]
enum RawUnit {
    Star(usize),
    Col(RawCol),
    Arith(ArithOp, RawCol, RawCol),
}

#[derive(Debug)]
struct RawAgg {
    agg: Option<Aggregate>,
    distinct: bool,
    unit: RawUnit,
}

#[derive(Debug)]
struct RawLit {
    raw: String,
    quoted: bool,
}

#[derive(Debug)]
enum RawOperand {
    Lit(RawLit),
    Col(RawCol),
    Query(Box<RawQuery>),
}

#[derive(Debug)]
enum RawCond {
    And(Box<RawCond>, Box<RawCond>),
    Or(Box<RawCond>, Box<RawCond>),
    Cmp(RawAgg, CompareOp, RawOperand),
    Between(RawAgg, RawLit, RawLit),
}

#[derive(Debug)]
struct RawTable {
    name: String,
    alias: Option<String>,
    pos: usize,
}

#[derive(Debug)]
struct RawSelect {
    distinct: bool,
    projections: Vec<RawAgg>,
    tables: Vec<RawTable>,
    ons: Vec<(RawCol, RawCol)>,
    filter: Option<RawCond>,
    group_by: Vec<RawCol>,
    having: Option<RawCond>,
}

#[derive(Debug)]
struct RawQuery {
    body: RawSelect,
    set_op: Option<(SetOp, Box<RawQuery>)>,
    order: Vec<(RawAgg, Direction)>,
    limit: Option<u64>,
    has_order: bool,
}

// ---- parsing ----

struct Parser {
    toks: Vec<Token>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.i)
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn is_kw(&self, kw: &str) -> bool {
        self.is_kw_at(self.i, kw)
    }

    fn is_kw_at(&self, i: usize, kw: &str) -> bool {
        matches!(self.toks.get(i), Some(Token { tok: Tok::Word(w), .. }) if w.eq_ignore_ascii_case(kw))
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.is_kw(kw) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect_kw(&mut self, kw: &str) -> Result<(), SqlError> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            Err(self.expected(kw))
        }
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Sym(x), .. }) if *x == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), SqlError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.expected(&format!("`{s}`")))
        }
    }

    fn expected(&self, what: &str) -> SqlError {
        match self.peek() {
            Some(t) => SqlError::Syntax { pos: t.pos, message: format!("expected {what}, found {}", show(&t.tok)) },
            None => SqlError::Syntax { pos: self.end, message: format!("expected {what}, found end of input") },
        }
    }

    fn unexpected(&self, t: Token) -> SqlError {
        match &t.tok {
            Tok::Word(w) if is_reserved(w) => SqlError::Unsupported { token: w.clone(), pos: t.pos },
            _ => SqlError::Syntax { pos: t.pos, message: format!("unexpected {}", show(&t.tok)) },
        }
    }

    fn unsupported_here(&self) -> SqlError {
        match self.peek() {
            Some(t) => SqlError::Unsupported { token: show_bare(&t.tok), pos: t.pos },
            None => self.expected("more input"),
        }
    }

    fn ident(&mut self) -> Result<(String, usize), SqlError> {
        match self.peek().cloned() {
            Some(Token { tok: Tok::Word(w), pos }) if !is_reserved(&w) => {
                self.i += 1;
                Ok((w, pos))
            }
            Some(Token { tok: Tok::Quoted(w), pos }) => {
                self.i += 1;
                Ok((w, pos))
            }
            _ => Err(self.expected("identifier")),
        }
    }

    fn is_ident(&self) -> bool {
        match self.peek() {
            Some(Token { tok: Tok::Word(w), .. }) => !is_reserved(w),
            Some(Token { tok: Tok::Quoted(_), .. }) => true,
            _ => false,
        }
    }

    fn query(&mut self, depth: usize) -> Result<RawQuery, SqlError> {
        if depth > MAX_DEPTH {
            return Err(SqlError::Unsupported { token: "SELECT".into(), pos: self.pos() });
        }
        let mut q = self.compound(depth)?;
        if self.eat_kw("order") {
            self.expect_kw("by")?;
            q.has_order = true;
            loop {
                let key = self.agg_unit()?;
                let dir = if self.eat_kw("desc") {
                    Direction::Desc
                } else {
                    self.eat_kw("asc");
                    Direction::Asc
                };
                q.order.push((key, dir));
                if !self.eat_sym(",") {
                    break;
                }
            }
        }
        if self.eat_kw("limit") {
            let pos = self.pos();
            match self.peek().map(|t| t.tok.clone()) {
                Some(Tok::Num(n)) => {
                    self.i += 1;
                    match n.parse::<u64>() {
                        Ok(v) if v > 0 => q.limit = Some(v),
                        _ => return Err(SqlError::Syntax { pos, message: format!("LIMIT needs a positive integer, found {n}") }),
                    }
                }
                _ => return Err(self.expected("LIMIT count")),
            }
            if self.is_kw("offset") || self.is_sym(",") {
                return Err(self.unsupported_here());
            }
        }
        Ok(q)
    }

    fn compound(&mut self, depth: usize) -> Result<RawQuery, SqlError> {
        let body = self.select(depth)?;
        let op = if self.eat_kw("union") {
            Some(SetOp::Union)
        } else if self.eat_kw("intersect") {
            Some(SetOp::Intersect)
        } else if self.eat_kw("except") {
            Some(SetOp::Except)
        } else {
            None
        };
        let set_op = match op {
            Some(op) => {
                if self.is_kw("all") {
                    return Err(self.unsupported_here());
                }
                Some((op, Box::new(self.compound(depth)?)))
            }
            None => None,
        };
        Ok(RawQuery { body, set_op, order: Vec::new(), limit: None, has_order: false })
    }

    fn select(&mut self, depth: usize) -> Result<RawSelect, SqlError> {
        self.expect_kw("select")?;
        let distinct = self.eat_kw("distinct");
        let mut projections = vec![self.agg_unit()?];
        while self.eat_sym(",") {
            projections.push(self.agg_unit()?);
        }
        if self.is_kw("as") {
            return Err(self.unsupported_here());
        }
        self.expect_kw("from")?;
        let mut tables = vec![self.table_ref()?];
        let mut ons = Vec::new();
        loop {
            if self.eat_sym(",") {
                tables.push(self.table_ref()?);
            } else if self.is_kw("join") || self.is_kw("inner") {
                if self.eat_kw("inner") && !self.is_kw("join") {
                    return Err(self.expected("JOIN"));
                }
                self.expect_kw("join")?;
                tables.push(self.table_ref()?);
                if self.eat_kw("on") {
                    loop {
                        let a = self.column_ref()?;
                        self.expect_sym("=")?;
                        let b = self.column_ref()?;
                        ons.push((a, b));
                        if !(self.is_kw("and") && self.looks_like_join_cond(self.i + 1)) {
                            break;
                        }
                        self.i += 1;
                    }
                }
            } else if self.is_kw("left") || self.is_sym("(") {
                return Err(self.unsupported_here());
            } else {
                break;
            }
        }
        let filter = if self.eat_kw("where") { Some(self.or_cond(depth)?) } else { None };
        let mut group_by = Vec::new();
        if self.eat_kw("group") {
            self.expect_kw("by")?;
            group_by.push(self.column_ref()?);
            while self.eat_sym(",") {
                group_by.push(self.column_ref()?);
            }
        }
        let having = if self.eat_kw("having") { Some(self.or_cond(depth)?) } else { None };
        Ok(RawSelect { distinct, projections, tables, ons, filter, group_by, having })
    }

    /// `col = col` starting at token `i`, used to keep ON chains apart from
    /// a following WHERE-less AND.
    fn looks_like_join_cond(&self, i: usize) -> bool {
        let mut j = i;
        let ident_at = |j: usize| match self.toks.get(j) {
            Some(Token { tok: Tok::Word(w), .. }) => !is_reserved(w),
            Some(Token { tok: Tok::Quoted(_), .. }) => true,
            _ => false,
        };
        let sym_at = |j: usize, s: &str| matches!(self.toks.get(j), Some(Token { tok: Tok::Sym(x), .. }) if *x == s);
        for side in 0..2 {
            if !ident_at(j) {
                return false;
            }
            j += 1;
            if sym_at(j, ".") {
                j += 1;
                if !ident_at(j) {
                    return false;
                }
                j += 1;
            }
            if side == 0 {
                if !sym_at(j, "=") {
                    return false;
                }
                j += 1;
            }
        }
        true
    }

    fn table_ref(&mut self) -> Result<RawTable, SqlError> {
        if self.is_sym("(") {
            return Err(self.unsupported_here());
        }
        let (name, pos) = self.ident()?;
        let alias = if self.eat_kw("as") {
            Some(self.ident()?.0)
        } else if self.is_ident() {
            Some(self.ident()?.0)
        } else {
            None
        };
        Ok(RawTable { name, alias, pos })
    }

    fn column_ref(&mut self) -> Result<RawCol, SqlError> {
        let (first, pos) = self.ident()?;
        if self.eat_sym(".") {
            if self.is_sym("*") {
                return Err(self.unsupported_here());
            }
            let (name, _) = self.ident()?;
            Ok(RawCol { qual: Some(first), name, pos })
        } else {
            Ok(RawCol { qual: None, name: first, pos })
        }
    }

    fn unit(&mut self) -> Result<RawUnit, SqlError> {
        if self.eat_sym("*") {
            return Ok(RawUnit::Star(self.toks[self.i - 1].pos));
        }
        if !self.is_ident() {
            return Err(match self.peek() {
                Some(Token { tok: Tok::Num(_) | Tok::Str(_), .. }) => self.unsupported_here(),
                _ => self.expected("column"),
            });
        }
        let a = self.column_ref()?;
        let op = if self.is_sym("+") {
            Some(ArithOp::Plus)
        } else if self.is_sym("-") {
            Some(ArithOp::Minus)
        } else if self.is_sym("*") {
            Some(ArithOp::Times)
        } else if self.is_sym("/") {
            Some(ArithOp::Divide)
        } else {
            None
        };
        match op {
            Some(op) => {
                self.i += 1;
                if !self.is_ident() {
                    return Err(self.unsupported_here());
                }
                let b = self.column_ref()?;
                if self.is_sym("+") || self.is_sym("-") || self.is_sym("*") || self.is_sym("/") {
                    return Err(self.unsupported_here());
                }
                Ok(RawUnit::Arith(op, a, b))
            }
            None => Ok(RawUnit::Col(a)),
        }
    }

    fn agg_unit(&mut self) -> Result<RawAgg, SqlError> {
        let agg = match self.peek() {
            Some(Token { tok: Tok::Word(w), .. })
                if matches!(self.toks.get(self.i + 1), Some(Token { tok: Tok::Sym("("), .. })) =>
            {
                match Aggregate::from_name(w) {
                    Some(a) => Some(a),
                    None => return Err(self.unsupported_here()),
                }
            }
            _ => None,
        };
        match agg {
            Some(agg) => {
                self.i += 2;
                let distinct = self.eat_kw("distinct");
                let unit = self.unit()?;
                self.expect_sym(")")?;
                Ok(RawAgg { agg: Some(agg), distinct, unit })
            }
            None => {
                if self.is_sym("(") {
                    return Err(self.unsupported_here());
                }
                Ok(RawAgg { agg: None, distinct: false, unit: self.unit()? })
            }
        }
    }

    fn or_cond(&mut self, depth: usize) -> Result<RawCond, SqlError> {
        let mut left = self.and_cond(depth)?;
        while self.eat_kw("or") {
            let right = self.and_cond(depth)?;
            left = RawCond::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn and_cond(&mut self, depth: usize) -> Result<RawCond, SqlError> {
        let mut left = self.atom_cond(depth)?;
        while self.eat_kw("and") {
            let right = self.atom_cond(depth)?;
            left = RawCond::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn atom_cond(&mut self, depth: usize) -> Result<RawCond, SqlError> {
        if self.is_sym("(") && !self.is_kw_at(self.i + 1, "select") {
            self.i += 1;
            let c = self.or_cond(depth)?;
            self.expect_sym(")")?;
            return Ok(c);
        }
        if self.is_kw("not") || self.is_kw("exists") {
            return Err(self.unsupported_here());
        }
        let lhs = self.agg_unit()?;
        let negated = self.eat_kw("not");
        if self.eat_kw("between") {
            if negated {
                return Err(SqlError::Unsupported { token: "NOT BETWEEN".into(), pos: self.toks[self.i - 1].pos });
            }
            let low = self.literal()?;
            self.expect_kw("and")?;
            let high = self.literal()?;
            return Ok(RawCond::Between(lhs, low, high));
        }
        let op = if self.eat_kw("like") {
            if negated { CompareOp::NotLike } else { CompareOp::Like }
        } else if self.eat_kw("in") {
            if negated { CompareOp::NotIn } else { CompareOp::In }
        } else if negated {
            return Err(self.expected("LIKE, IN or BETWEEN after NOT"));
        } else {
            let op = match self.peek() {
                Some(Token { tok: Tok::Sym(s), .. }) => match *s {
                    "=" => CompareOp::Eq,
                    "!=" => CompareOp::Ne,
                    "<" => CompareOp::Lt,
                    "<=" => CompareOp::Le,
                    ">" => CompareOp::Gt,
                    ">=" => CompareOp::Ge,
                    _ => return Err(self.expected("comparison operator")),
                },
                Some(Token { tok: Tok::Word(w), .. }) if w.eq_ignore_ascii_case("is") => {
                    return Err(self.unsupported_here())
                }
                _ => return Err(self.expected("comparison operator")),
            };
            self.i += 1;
            op
        };
        let rhs = if self.is_sym("(") && self.is_kw_at(self.i + 1, "select") {
            self.i += 1;
            let q = self.query(depth + 1)?;
            self.expect_sym(")")?;
            RawOperand::Query(Box::new(q))
        } else if matches!(op, CompareOp::In | CompareOp::NotIn) {
            return Err(self.unsupported_here());
        } else if self.is_ident() {
            RawOperand::Col(self.column_ref()?)
        } else {
            RawOperand::Lit(self.literal()?)
        };
        Ok(RawCond::Cmp(lhs, op, rhs))
    }

    fn literal(&mut self) -> Result<RawLit, SqlError> {
        let negative = self.is_sym("-")
            && matches!(self.toks.get(self.i + 1), Some(Token { tok: Tok::Num(_), .. }));
        if negative {
            self.i += 1;
        }
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(RawLit { raw: if negative { format!("-{n}") } else { n }, quoted: false })
            }
            Some(Tok::Str(s)) => {
                self.i += 1;
                Ok(RawLit { raw: s, quoted: true })
            }
            _ => Err(self.expected("literal")),
        }
    }
}

fn show(t: &Tok) -> String {
    match t {
        Tok::Word(w) => format!("`{w}`"),
        Tok::Quoted(w) => format!("`{w}`"),
        Tok::Str(s) => format!("'{s}'"),
        Tok::Num(n) => n.clone(),
        Tok::Sym(s) => format!("`{s}`"),
    }
}

fn show_bare(t: &Tok) -> String {
    match t {
        Tok::Word(w) | Tok::Quoted(w) | Tok::Num(w) => w.clone(),
        Tok::Str(s) => format!("'{s}'"),
        Tok::Sym(s) => s.to_string(),
    }
}

// ---- binding ----

struct Scope {
    /// (table, alias) per FROM entry.
    entries: Vec<(TableId, Option<String>)>,
}

fn bind_query(raw: &RawQuery, catalog: &SchemaCatalog) -> Result<Query, SqlError> {
    let body = bind_select(&raw.body, catalog)?;
    let set_op = match &raw.set_op {
        Some((op, right)) => Some((*op, Box::new(bind_query(right, catalog)?))),
        None => None,
    };
    let order_limit = if raw.has_order || raw.limit.is_some() {
        // ORDER BY keys resolve against the leftmost block.
        let scope = scope_of(&raw.body, catalog)?;
        let keys = raw
            .order
            .iter()
            .map(|(k, d)| Ok((bind_agg(k, &scope, catalog)?, *d)))
            .collect::<Result<Vec<_>, SqlError>>()?;
        Some(OrderLimit { keys, limit: raw.limit })
    } else {
        None
    };
    Ok(Query { body, set_op, order_limit })
}

fn scope_of(sel: &RawSelect, catalog: &SchemaCatalog) -> Result<Scope, SqlError> {
    let mut entries: Vec<(TableId, Option<String>)> = Vec::new();
    for t in &sel.tables {
        let id = catalog
            .table_by_name(&t.name)
            .ok_or_else(|| SqlError::Unresolved { name: t.name.clone(), pos: t.pos })?;
        if entries.iter().any(|(e, _)| *e == id) {
            return Err(SqlError::Unsupported { token: format!("self-join of {}", t.name), pos: t.pos });
        }
        entries.push((id, t.alias.clone()));
    }
    Ok(Scope { entries })
}

fn bind_select(sel: &RawSelect, catalog: &SchemaCatalog) -> Result<SelectBlock, SqlError> {
    let scope = scope_of(sel, catalog)?;
    let projections = sel.projections.iter().map(|p| bind_agg(p, &scope, catalog)).collect::<Result<Vec<_>, _>>()?;
    let mut conds = Vec::new();
    for (a, b) in &sel.ons {
        let left = bind_col(a, &scope, catalog)?;
        let right = bind_col(b, &scope, catalog)?;
        if catalog.table_of(left) == catalog.table_of(right) {
            return Err(SqlError::Unsupported { token: "join condition within one table".into(), pos: a.pos });
        }
        conds.push(JoinCondition { left, right });
    }
    let from = canonical_from(scope.entries.iter().map(|(t, _)| *t), &conds, catalog);
    let filter = sel.filter.as_ref().map(|c| bind_cond(c, &scope, catalog)).transpose()?;
    let group_by = sel.group_by.iter().map(|c| bind_col(c, &scope, catalog)).collect::<Result<Vec<_>, _>>()?;
    let having = sel.having.as_ref().map(|c| bind_cond(c, &scope, catalog)).transpose()?;
    Ok(SelectBlock { distinct: sel.distinct, projections, from, filter, group_by, having })
}

fn bind_col(c: &RawCol, scope: &Scope, catalog: &SchemaCatalog) -> Result<ColumnId, SqlError> {
    let unresolved = || SqlError::Unresolved {
        name: match &c.qual {
            Some(q) => format!("{q}.{}", c.name),
            None => c.name.clone(),
        },
        pos: c.pos,
    };
    match &c.qual {
        Some(q) => {
            let table = scope
                .entries
                .iter()
                .find(|(_, alias)| alias.as_deref().is_some_and(|a| a.eq_ignore_ascii_case(q)))
                .or_else(|| scope.entries.iter().find(|(t, _)| catalog.table(*t).name.eq_ignore_ascii_case(q)))
                .map(|(t, _)| *t)
                .ok_or_else(unresolved)?;
            catalog.column_in_table(table, &c.name).ok_or_else(unresolved)
        }
        None => {
            let hits: Vec<ColumnId> =
                scope.entries.iter().filter_map(|(t, _)| catalog.column_in_table(*t, &c.name)).collect();
            match hits.as_slice() {
                [one] => Ok(*one),
                [] => Err(unresolved()),
                _ => Err(SqlError::Ambiguous { name: c.name.clone(), pos: c.pos }),
            }
        }
    }
}

fn bind_agg(a: &RawAgg, scope: &Scope, catalog: &SchemaCatalog) -> Result<AggUnit, SqlError> {
    let unit = match &a.unit {
        RawUnit::Star(pos) => {
            if a.agg.is_some_and(|g| g != Aggregate::Count) || a.distinct {
                return Err(SqlError::Unsupported { token: "*".into(), pos: *pos });
            }
            ValueUnit::Column(ColumnId::STAR)
        }
        RawUnit::Col(c) => ValueUnit::Column(bind_col(c, scope, catalog)?),
        RawUnit::Arith(op, x, y) => ValueUnit::Arith(*op, bind_col(x, scope, catalog)?, bind_col(y, scope, catalog)?),
    };
    Ok(AggUnit { agg: a.agg, distinct: a.distinct, unit })
}

fn literal_kind(lit: &RawLit, context: &ValueUnit, catalog: &SchemaCatalog) -> LiteralKind {
    if !lit.quoted {
        return LiteralKind::Number;
    }
    match catalog.column(context.primary_column()).map(|c| c.affinity) {
        Some(Affinity::Time) => LiteralKind::Time,
        _ => LiteralKind::Text,
    }
}

fn bind_cond(c: &RawCond, scope: &Scope, catalog: &SchemaCatalog) -> Result<Condition, SqlError> {
    Ok(match c {
        RawCond::And(a, b) => {
            Condition::And(Box::new(bind_cond(a, scope, catalog)?), Box::new(bind_cond(b, scope, catalog)?))
        }
        RawCond::Or(a, b) => {
            Condition::Or(Box::new(bind_cond(a, scope, catalog)?), Box::new(bind_cond(b, scope, catalog)?))
        }
        RawCond::Cmp(lhs, op, rhs) => {
            let lhs = bind_agg(lhs, scope, catalog)?;
            let rhs = match rhs {
                RawOperand::Lit(l) => {
                    Operand::Literal(Literal::Value { raw: l.raw.clone(), kind: literal_kind(l, &lhs.unit, catalog) })
                }
                RawOperand::Col(col) => Operand::Column(bind_col(col, scope, catalog)?),
                RawOperand::Query(q) => Operand::Query(Box::new(bind_query(q, catalog)?)),
            };
            Condition::Predicate(Predicate::Compare { lhs, op: *op, rhs })
        }
        RawCond::Between(lhs, low, high) => {
            let lhs = bind_agg(lhs, scope, catalog)?;
            let low = Literal::Value { raw: low.raw.clone(), kind: literal_kind(low, &lhs.unit, catalog) };
            let high = Literal::Value { raw: high.raw.clone(), kind: literal_kind(high, &lhs.unit, catalog) };
            Condition::Predicate(Predicate::Between { lhs, low, high })
        }
    })
}

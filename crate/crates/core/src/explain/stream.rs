//! Anonymized token streams of a query, one per nesting level.

use crate::catalog::{ColumnId, SchemaCatalog, TableId};
use crate::sql::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tok {
    Kw(&'static str),
    Agg(Aggregate),
    Star,
    Table(TableId),
    Column(ColumnId),
    Cmp(CompareOp),
    Arith(ArithOp),
    /// Literal site in [`Query::literals_mut`] order.
    Lit(usize),
    /// Index of a nested query's stream.
    Sub(usize),
    Num(u64),
}

#[derive(Clone, Debug)]
pub struct Streams {
    pub tokens: Vec<Vec<Tok>>,
    /// FROM tables of each stream's blocks.
    pub scope: Vec<Vec<TableId>>,
}

pub fn build(q: &Query, catalog: &SchemaCatalog) -> Streams {
    let mut b = Builder { catalog, streams: Streams { tokens: Vec::new(), scope: Vec::new() }, literal: 0 };
    b.query(q);
    b.streams
}

struct Builder<'a> {
    catalog: &'a SchemaCatalog,
    streams: Streams,
    literal: usize,
}

impl Builder<'_> {
    fn query(&mut self, q: &Query) -> usize {
        let id = self.streams.tokens.len();
        self.streams.tokens.push(Vec::new());
        self.streams.scope.push(Vec::new());
        let mut out = Vec::new();
        let mut cur = Some(q);
        while let Some(part) = cur {
            self.block(&part.body, &mut out, id);
            cur = part.set_op.as_ref().map(|(op, right)| {
                out.push(Tok::Kw(op.keyword()));
                right.as_ref()
            });
        }
        if let Some(ol) = &q.order_limit {
            if !ol.keys.is_empty() {
                out.push(Tok::Kw("ORDER"));
                out.push(Tok::Kw("BY"));
                for (i, (key, dir)) in ol.keys.iter().enumerate() {
                    if i > 0 {
                        out.push(Tok::Kw(","));
                    }
                    self.agg_unit(key, &mut out);
                    out.push(Tok::Kw(if *dir == Direction::Asc { "ASC" } else { "DESC" }));
                }
            }
            if let Some(n) = ol.limit {
                out.push(Tok::Kw("LIMIT"));
                out.push(Tok::Num(n));
            }
        }
        self.streams.tokens[id] = out;
        id
    }

    fn column(&self, c: ColumnId, out: &mut Vec<Tok>) {
        if c.is_star() {
            out.push(Tok::Star);
            return;
        }
        if let Some(t) = self.catalog.table_of(c) {
            out.push(Tok::Table(t));
            out.push(Tok::Kw("."));
        }
        out.push(Tok::Column(c));
    }

    fn unit(&self, u: &ValueUnit, out: &mut Vec<Tok>) {
        match u {
            ValueUnit::Column(c) => self.column(*c, out),
            ValueUnit::Arith(op, a, b) => {
                self.column(*a, out);
                out.push(Tok::Arith(*op));
                self.column(*b, out);
            }
        }
    }

    fn agg_unit(&self, a: &AggUnit, out: &mut Vec<Tok>) {
        if let Some(agg) = a.agg {
            out.push(Tok::Agg(agg));
            out.push(Tok::Kw("("));
        }
        if a.distinct {
            out.push(Tok::Kw("DISTINCT"));
        }
        self.unit(&a.unit, out);
        if a.agg.is_some() {
            out.push(Tok::Kw(")"));
        }
    }

    fn block(&mut self, b: &SelectBlock, out: &mut Vec<Tok>, id: usize) {
        for t in &b.from.tables {
            if !self.streams.scope[id].contains(t) {
                self.streams.scope[id].push(*t);
            }
        }
        out.push(Tok::Kw("SELECT"));
        if b.distinct {
            out.push(Tok::Kw("DISTINCT"));
        }
        for (i, p) in b.projections.iter().enumerate() {
            if i > 0 {
                out.push(Tok::Kw(","));
            }
            self.agg_unit(p, out);
        }
        out.push(Tok::Kw("FROM"));
        for (i, t) in b.from.tables.iter().enumerate() {
            if i > 0 {
                out.push(Tok::Kw("JOIN"));
            }
            out.push(Tok::Table(*t));
        }
        for (i, j) in b.from.joins.iter().enumerate() {
            out.push(Tok::Kw(if i == 0 { "ON" } else { "AND" }));
            self.column(j.left, out);
            out.push(Tok::Kw("="));
            self.column(j.right, out);
        }
        if let Some(c) = &b.filter {
            out.push(Tok::Kw("WHERE"));
            self.condition(c, out, false);
        }
        if !b.group_by.is_empty() {
            out.push(Tok::Kw("GROUP"));
            out.push(Tok::Kw("BY"));
            for (i, c) in b.group_by.iter().enumerate() {
                if i > 0 {
                    out.push(Tok::Kw(","));
                }
                self.column(*c, out);
            }
        }
        if let Some(c) = &b.having {
            out.push(Tok::Kw("HAVING"));
            self.condition(c, out, false);
        }
    }

    fn condition(&mut self, c: &Condition, out: &mut Vec<Tok>, in_and: bool) {
        match c {
            Condition::Or(a, b) => {
                if in_and {
                    out.push(Tok::Kw("("));
                }
                self.condition(a, out, false);
                out.push(Tok::Kw("OR"));
                self.condition(b, out, false);
                if in_and {
                    out.push(Tok::Kw(")"));
                }
            }
            Condition::And(a, b) => {
                self.condition(a, out, true);
                out.push(Tok::Kw("AND"));
                self.condition(b, out, true);
            }
            Condition::Predicate(Predicate::Compare { lhs, op, rhs }) => {
                self.agg_unit(lhs, out);
                out.push(Tok::Cmp(*op));
                match rhs {
                    Operand::Literal(_) => {
                        out.push(Tok::Lit(self.literal));
                        self.literal += 1;
                    }
                    Operand::Column(col) => self.column(*col, out),
                    Operand::Query(sub) => {
                        let id = self.query(sub);
                        out.push(Tok::Sub(id));
                    }
                }
            }
            Condition::Predicate(Predicate::Between { lhs, .. }) => {
                self.agg_unit(lhs, out);
                out.push(Tok::Kw("BETWEEN"));
                out.push(Tok::Lit(self.literal));
                out.push(Tok::Kw("AND"));
                out.push(Tok::Lit(self.literal + 1));
                self.literal += 2;
            }
        }
    }
}

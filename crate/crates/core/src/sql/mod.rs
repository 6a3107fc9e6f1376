//! Typed AST for the supported SQL subset, with parser and canonical printer.

mod ast;
mod lexer;
mod parser;
mod printer;

use std::collections::BTreeSet;

use thiserror::Error;

pub use ast::*;
pub use parser::{non_foreign_key_joins, parse_sql};
pub use printer::print_sql;

use crate::catalog::{SchemaCatalog, TableId};

/// Maximum subquery nesting depth accepted.
pub const MAX_DEPTH: usize = 3;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SqlError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("cannot resolve `{name}` at byte {pos}")]
    Unresolved { name: String, pos: usize },
    #[error("ambiguous column `{name}` at byte {pos}")]
    Ambiguous { name: String, pos: usize },
    #[error("unsupported construct `{token}` at byte {pos}")]
    Unsupported { token: String, pos: usize },
    #[error("unbound reference: {0}")]
    Unbound(String),
}

impl SqlError {
    pub fn position(&self) -> Option<usize> {
        match self {
            SqlError::Syntax { pos, .. }
            | SqlError::Unresolved { pos, .. }
            | SqlError::Ambiguous { pos, .. }
            | SqlError::Unsupported { pos, .. } => Some(*pos),
            SqlError::Unbound(_) => None,
        }
    }
}

fn table_key(catalog: &SchemaCatalog, t: TableId) -> (String, usize) {
    (catalog.table(t).name.to_lowercase(), t.0)
}

/// Orders a FROM clause canonically. Tables are visited Prim-style: start at
/// the smallest table name, then repeatedly add the smallest-named table
/// joined to the visited set. Each condition is attached to the later of its
/// two tables and oriented so `left` lies in the earlier one.
pub fn canonical_from(
    tables: impl IntoIterator<Item = TableId>,
    conds: &[JoinCondition],
    catalog: &SchemaCatalog,
) -> FromClause {
    let mut remaining: BTreeSet<(String, usize)> = tables.into_iter().map(|t| table_key(catalog, t)).collect();
    let mut order: Vec<TableId> = Vec::with_capacity(remaining.len());
    let owner = |c: crate::catalog::ColumnId| catalog.table_of(c).expect("join on *");
    let mut joins = Vec::new();
    while let Some(first) = remaining.pop_first() {
        order.push(TableId(first.1));
        loop {
            let next = remaining.iter().find(|(_, t)| {
                conds.iter().any(|c| {
                    let (a, b) = (owner(c.left), owner(c.right));
                    (a.0 == *t && order.contains(&b)) || (b.0 == *t && order.contains(&a))
                })
            });
            let Some(next) = next.cloned() else { break };
            remaining.remove(&next);
            let nt = TableId(next.1);
            let mut attached: Vec<(usize, JoinCondition)> = conds
                .iter()
                .filter_map(|c| {
                    let (a, b) = (owner(c.left), owner(c.right));
                    if b == nt && order.contains(&a) {
                        Some((order.iter().position(|x| *x == a).unwrap(), *c))
                    } else if a == nt && order.contains(&b) {
                        Some((order.iter().position(|x| *x == b).unwrap(), JoinCondition { left: c.right, right: c.left }))
                    } else {
                        None
                    }
                })
                .collect();
            attached.sort_by_key(|(i, c)| (*i, c.left, c.right));
            attached.dedup();
            order.push(nt);
            joins.extend(attached.into_iter().map(|(_, c)| c));
        }
    }
    FromClause { tables: order, joins }
}

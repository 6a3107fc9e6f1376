use super::ast::*;
use super::parser::is_reserved;
use super::SqlError;
use crate::catalog::{ColumnId, SchemaCatalog};

/// Prints `query` in canonical form: uppercase keywords, explicit
/// `JOIN … ON`, aliases `T1..Tn` in FROM order for multi-table blocks and bare
/// column names for single-table blocks.
pub fn print_sql(query: &Query, catalog: &SchemaCatalog) -> Result<String, SqlError> {
    let mut out = String::new();
    Printer { catalog }.query(query, &mut out)?;
    Ok(out)
}

struct Printer<'a> {
    catalog: &'a SchemaCatalog,
}

fn ident(name: &str) -> String {
    let simple = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if simple && !is_reserved(name) {
        name.to_string()
    } else {
        format!("`{}`", name.replace('`', "``"))
    }
}

fn quote(text: &str) -> String {
    format!("'{}'", text.replace('\'', "''"))
}

impl Printer<'_> {
    fn query(&self, q: &Query, out: &mut String) -> Result<(), SqlError> {
        self.block(&q.body, out)?;
        let mut cur = q;
        while let Some((op, right)) = &cur.set_op {
            out.push(' ');
            out.push_str(op.keyword());
            out.push(' ');
            self.block(&right.body, out)?;
            if right.order_limit.is_some() {
                return Err(SqlError::Unbound("ORDER BY on the right arm of a compound".into()));
            }
            cur = right;
        }
        if let Some(ol) = &q.order_limit {
            if !ol.keys.is_empty() {
                out.push_str(" ORDER BY ");
                let keys: Result<Vec<String>, SqlError> = ol
                    .keys
                    .iter()
                    .map(|(k, d)| {
                        let dir = match d {
                            Direction::Asc => "ASC",
                            Direction::Desc => "DESC",
                        };
                        Ok(format!("{} {dir}", self.agg(k, &q.body.from)?))
                    })
                    .collect();
                out.push_str(&keys?.join(", "));
            }
            if let Some(n) = ol.limit {
                out.push_str(&format!(" LIMIT {n}"));
            }
        }
        Ok(())
    }

    fn block(&self, b: &SelectBlock, out: &mut String) -> Result<(), SqlError> {
        out.push_str("SELECT ");
        if b.distinct {
            out.push_str("DISTINCT ");
        }
        let projs: Result<Vec<String>, SqlError> = b.projections.iter().map(|p| self.agg(p, &b.from)).collect();
        out.push_str(&projs?.join(", "));
        out.push_str(" FROM ");
        self.from(&b.from, out)?;
        if let Some(c) = &b.filter {
            out.push_str(" WHERE ");
            self.cond(c, &b.from, out)?;
        }
        if !b.group_by.is_empty() {
            out.push_str(" GROUP BY ");
            let cols: Result<Vec<String>, SqlError> = b.group_by.iter().map(|c| self.col(*c, &b.from)).collect();
            out.push_str(&cols?.join(", "));
        }
        if let Some(c) = &b.having {
            out.push_str(" HAVING ");
            self.cond(c, &b.from, out)?;
        }
        Ok(())
    }

    fn from(&self, f: &FromClause, out: &mut String) -> Result<(), SqlError> {
        if f.tables.is_empty() {
            return Err(SqlError::Unbound("empty FROM clause".into()));
        }
        if f.tables.len() == 1 {
            out.push_str(&ident(&self.catalog.table(f.tables[0]).name));
            return Ok(());
        }
        for (i, t) in f.tables.iter().enumerate() {
            if i > 0 {
                out.push_str(" JOIN ");
            }
            out.push_str(&format!("{} AS T{}", ident(&self.catalog.table(*t).name), i + 1));
            let attached: Vec<&JoinCondition> =
                f.joins.iter().filter(|j| self.catalog.table_of(j.right) == Some(*t)).collect();
            for (k, j) in attached.iter().enumerate() {
                out.push_str(if k == 0 { " ON " } else { " AND " });
                out.push_str(&format!("{} = {}", self.col(j.left, f)?, self.col(j.right, f)?));
            }
        }
        Ok(())
    }

    fn col(&self, c: ColumnId, f: &FromClause) -> Result<String, SqlError> {
        if c.is_star() {
            return Ok("*".into());
        }
        let def = self.catalog.column(c).ok_or_else(|| SqlError::Unbound(format!("column index {}", c.0)))?;
        let t = self.catalog.table_of(c).unwrap();
        let pos = f
            .tables
            .iter()
            .position(|x| *x == t)
            .ok_or_else(|| SqlError::Unbound(format!("{} is not in the FROM clause", self.catalog.qualified_name(c))))?;
        if f.tables.len() == 1 {
            Ok(ident(&def.name))
        } else {
            Ok(format!("T{}.{}", pos + 1, ident(&def.name)))
        }
    }

    fn unit(&self, u: &ValueUnit, f: &FromClause) -> Result<String, SqlError> {
        match u {
            ValueUnit::Column(c) => self.col(*c, f),
            ValueUnit::Arith(op, a, b) => Ok(format!("{} {} {}", self.col(*a, f)?, op.symbol(), self.col(*b, f)?)),
        }
    }

    fn agg(&self, a: &AggUnit, f: &FromClause) -> Result<String, SqlError> {
        let inner = self.unit(&a.unit, f)?;
        Ok(match a.agg {
            Some(g) if a.distinct => format!("{}(DISTINCT {inner})", g.name()),
            Some(g) => format!("{}({inner})", g.name()),
            None => inner,
        })
    }

    fn literal(&self, l: &Literal) -> String {
        match l {
            Literal::Value { raw, kind: LiteralKind::Number } => raw.clone(),
            Literal::Value { raw, .. } => quote(raw),
            Literal::Copied(span) => quote(&span.text),
        }
    }

    fn cond(&self, c: &Condition, f: &FromClause, out: &mut String) -> Result<(), SqlError> {
        match c {
            Condition::And(a, b) => {
                self.wrapped(a, matches!(**a, Condition::Or(..)), f, out)?;
                out.push_str(" AND ");
                self.wrapped(b, !matches!(**b, Condition::Predicate(_)), f, out)
            }
            Condition::Or(a, b) => {
                self.cond(a, f, out)?;
                out.push_str(" OR ");
                self.wrapped(b, matches!(**b, Condition::Or(..)), f, out)
            }
            Condition::Predicate(p) => self.predicate(p, f, out),
        }
    }

    fn wrapped(&self, c: &Condition, parens: bool, f: &FromClause, out: &mut String) -> Result<(), SqlError> {
        if parens {
            out.push('(');
        }
        self.cond(c, f, out)?;
        if parens {
            out.push(')');
        }
        Ok(())
    }

    fn predicate(&self, p: &Predicate, f: &FromClause, out: &mut String) -> Result<(), SqlError> {
        match p {
            Predicate::Compare { lhs, op, rhs } => {
                out.push_str(&self.agg(lhs, f)?);
                out.push(' ');
                out.push_str(op.symbol());
                out.push(' ');
                match rhs {
                    Operand::Literal(l) => out.push_str(&self.literal(l)),
                    Operand::Column(c) => out.push_str(&self.col(*c, f)?),
                    Operand::Query(q) => {
                        out.push('(');
                        self.query(q, out)?;
                        out.push(')');
                    }
                }
            }
            Predicate::Between { lhs, low, high } => {
                out.push_str(&format!(
                    "{} BETWEEN {} AND {}",
                    self.agg(lhs, f)?,
                    self.literal(low),
                    self.literal(high)
                ));
            }
        }
        Ok(())
    }
}

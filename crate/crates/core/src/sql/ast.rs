use serde::Serialize;

use crate::catalog::{ColumnId, TableId};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Query {
    pub body: SelectBlock,
    /// Right arm of a compound query. The arm never carries its own ORDER BY.
    pub set_op: Option<(SetOp, Box<Query>)>,
    /// Applies to the whole compound.
    pub order_limit: Option<OrderLimit>,
}

impl Query {
    pub fn simple(body: SelectBlock) -> Query {
        Query { body, set_op: None, order_limit: None }
    }

    /// Select blocks of this compound, left to right.
    pub fn blocks(&self) -> Vec<&SelectBlock> {
        let mut out = vec![&self.body];
        let mut cur = self;
        while let Some((_, right)) = &cur.set_op {
            out.push(&right.body);
            cur = right;
        }
        out
    }

    /// Subquery nesting depth; a query without subqueries has depth 1.
    pub fn depth(&self) -> usize {
        let mut max = 0;
        self.visit_subqueries(&mut |q| max = max.max(q.depth()));
        1 + max
    }

    /// Calls `f` on every directly nested subquery (not compound arms).
    pub fn visit_subqueries<'a>(&'a self, f: &mut dyn FnMut(&'a Query)) {
        let mut cur = Some(self);
        while let Some(q) = cur {
            for cond in [&q.body.filter, &q.body.having].into_iter().flatten() {
                cond.visit_predicates(&mut |p| {
                    if let Predicate::Compare { rhs: Operand::Query(sub), .. } = p {
                        f(sub);
                    }
                });
            }
            cur = q.set_op.as_ref().map(|(_, r)| r.as_ref());
        }
    }

    /// Every literal in pre-order: WHERE, HAVING, then the compound's right arm; subqueries inline.
    pub fn literals_mut(&mut self) -> Vec<&mut Literal> {
        let mut out = Vec::new();
        collect_literals(self, &mut out);
        out
    }
}

fn collect_literals<'a>(q: &'a mut Query, out: &mut Vec<&'a mut Literal>) {
    let Query { body, set_op, .. } = q;
    for cond in [&mut body.filter, &mut body.having].into_iter().flatten() {
        collect_cond_literals(cond, out);
    }
    if let Some((_, right)) = set_op {
        collect_literals(right, out);
    }
}

fn collect_cond_literals<'a>(c: &'a mut Condition, out: &mut Vec<&'a mut Literal>) {
    match c {
        Condition::And(a, b) | Condition::Or(a, b) => {
            collect_cond_literals(a, out);
            collect_cond_literals(b, out);
        }
        Condition::Predicate(Predicate::Compare { rhs, .. }) => match rhs {
            Operand::Literal(l) => out.push(l),
            Operand::Query(q) => collect_literals(q, out),
            Operand::Column(_) => {}
        },
        Condition::Predicate(Predicate::Between { low, high, .. }) => {
            out.push(low);
            out.push(high);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SetOp {
    Union,
    Intersect,
    Except,
}

impl SetOp {
    pub fn keyword(self) -> &'static str {
        match self {
            SetOp::Union => "UNION",
            SetOp::Intersect => "INTERSECT",
            SetOp::Except => "EXCEPT",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    Asc,
    Desc,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderLimit {
    pub keys: Vec<(AggUnit, Direction)>,
    pub limit: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelectBlock {
    pub distinct: bool,
    pub projections: Vec<AggUnit>,
    pub from: FromClause,
    pub filter: Option<Condition>,
    pub group_by: Vec<ColumnId>,
    pub having: Option<Condition>,
}

impl SelectBlock {
    /// Column references of this block outside the FROM clause and outside
    /// nested subqueries.
    pub fn mentioned_columns(&self) -> Vec<ColumnId> {
        let mut out = Vec::new();
        for p in &self.projections {
            p.unit.columns(&mut out);
        }
        for cond in [&self.filter, &self.having].into_iter().flatten() {
            cond.visit_predicates(&mut |p| match p {
                Predicate::Compare { lhs, rhs, .. } => {
                    lhs.unit.columns(&mut out);
                    if let Operand::Column(c) = rhs {
                        out.push(*c);
                    }
                }
                Predicate::Between { lhs, .. } => lhs.unit.columns(&mut out),
            });
        }
        out.extend(self.group_by.iter().copied());
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Aggregate {
    Count,
    Max,
    Min,
    Sum,
    Avg,
}

impl Aggregate {
    pub const ALL: [Aggregate; 5] = [Aggregate::Count, Aggregate::Max, Aggregate::Min, Aggregate::Sum, Aggregate::Avg];

    pub fn name(self) -> &'static str {
        match self {
            Aggregate::Count => "count",
            Aggregate::Max => "max",
            Aggregate::Min => "min",
            Aggregate::Sum => "sum",
            Aggregate::Avg => "avg",
        }
    }

    pub fn from_name(s: &str) -> Option<Aggregate> {
        Aggregate::ALL.into_iter().find(|a| a.name().eq_ignore_ascii_case(s))
    }
}

/// A projection, ordering key or predicate left side: `agg(DISTINCT unit)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AggUnit {
    pub agg: Option<Aggregate>,
    pub distinct: bool,
    pub unit: ValueUnit,
}

impl AggUnit {
    pub fn column(c: ColumnId) -> AggUnit {
        AggUnit { agg: None, distinct: false, unit: ValueUnit::Column(c) }
    }

    pub fn aggregated(agg: Aggregate, c: ColumnId) -> AggUnit {
        AggUnit { agg: Some(agg), distinct: false, unit: ValueUnit::Column(c) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ArithOp {
    Plus,
    Minus,
    Times,
    Divide,
}

impl ArithOp {
    pub const ALL: [ArithOp; 4] = [ArithOp::Plus, ArithOp::Minus, ArithOp::Times, ArithOp::Divide];

    pub fn symbol(self) -> &'static str {
        match self {
            ArithOp::Plus => "+",
            ArithOp::Minus => "-",
            ArithOp::Times => "*",
            ArithOp::Divide => "/",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum ValueUnit {
    /// `ColumnId::STAR` for `*`.
    Column(ColumnId),
    Arith(ArithOp, ColumnId, ColumnId),
}

impl ValueUnit {
    fn columns(&self, out: &mut Vec<ColumnId>) {
        match self {
            ValueUnit::Column(c) => out.push(*c),
            ValueUnit::Arith(_, a, b) => {
                out.push(*a);
                out.push(*b);
            }
        }
    }

    /// Column that gives a literal compared against this unit its type.
    pub fn primary_column(&self) -> ColumnId {
        match self {
            ValueUnit::Column(c) | ValueUnit::Arith(_, c, _) => *c,
        }
    }
}

/// Tables in canonical order plus join conditions. `joins[i]` always has its
/// `left` column in an earlier table than its `right` column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FromClause {
    pub tables: Vec<TableId>,
    pub joins: Vec<JoinCondition>,
}

impl FromClause {
    pub fn single(t: TableId) -> FromClause {
        FromClause { tables: vec![t], joins: Vec::new() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct JoinCondition {
    pub left: ColumnId,
    pub right: ColumnId,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Condition {
    And(Box<Condition>, Box<Condition>),
    Or(Box<Condition>, Box<Condition>),
    Predicate(Predicate),
}

impl Condition {
    pub fn visit_predicates<'a>(&'a self, f: &mut dyn FnMut(&'a Predicate)) {
        match self {
            Condition::And(a, b) | Condition::Or(a, b) => {
                a.visit_predicates(f);
                b.visit_predicates(f);
            }
            Condition::Predicate(p) => f(p),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CompareOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Like,
    NotLike,
    In,
    NotIn,
}

impl CompareOp {
    pub const ALL: [CompareOp; 10] = [
        CompareOp::Eq,
        CompareOp::Ne,
        CompareOp::Lt,
        CompareOp::Le,
        CompareOp::Gt,
        CompareOp::Ge,
        CompareOp::Like,
        CompareOp::NotLike,
        CompareOp::In,
        CompareOp::NotIn,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            CompareOp::Eq => "=",
            CompareOp::Ne => "!=",
            CompareOp::Lt => "<",
            CompareOp::Le => "<=",
            CompareOp::Gt => ">",
            CompareOp::Ge => ">=",
            CompareOp::Like => "LIKE",
            CompareOp::NotLike => "NOT LIKE",
            CompareOp::In => "IN",
            CompareOp::NotIn => "NOT IN",
        }
    }

    pub fn is_like(self) -> bool {
        matches!(self, CompareOp::Like | CompareOp::NotLike)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Predicate {
    Compare { lhs: AggUnit, op: CompareOp, rhs: Operand },
    /// Kept intact rather than desugared into two comparisons.
    Between { lhs: AggUnit, low: Literal, high: Literal },
}

impl Predicate {
    pub fn lhs(&self) -> &AggUnit {
        match self {
            Predicate::Compare { lhs, .. } | Predicate::Between { lhs, .. } => lhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Operand {
    Literal(Literal),
    Column(ColumnId),
    Query(Box<Query>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LiteralKind {
    Number,
    Text,
    Time,
}

/// Value slot of a predicate: either an executable value or the question span
/// copied by the decoder, awaiting resolution.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Literal {
    Value { raw: String, kind: LiteralKind },
    Copied(CopiedSpan),
}

impl Literal {
    pub fn number(raw: impl Into<String>) -> Literal {
        Literal::Value { raw: raw.into(), kind: LiteralKind::Number }
    }

    pub fn text(raw: impl Into<String>) -> Literal {
        Literal::Value { raw: raw.into(), kind: LiteralKind::Text }
    }

    /// The value text (resolved raw, or copied surface).
    pub fn raw(&self) -> &str {
        match self {
            Literal::Value { raw, .. } => raw,
            Literal::Copied(span) => &span.text,
        }
    }
}

/// Question tokens `[start, end)` and their surface text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CopiedSpan {
    pub text: String,
    pub tokens: Option<(usize, usize)>,
}

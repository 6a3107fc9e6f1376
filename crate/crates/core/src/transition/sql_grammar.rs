//! The SQL reading of the transition grammar: which rule builds which AST
//! node, the linearization oracle and its inverse.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use super::grammar::{read_tree, Grammar, Node, RuleId};
use super::tables::infer_tables;
use super::tagger::tag_value_span;
use super::{Action, TokenizedQuestion, TransitionError, TRANSITION_GRAMMAR};
use crate::catalog::{ColumnId, SchemaCatalog, TableId};
use crate::sql::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Production {
    Query,
    SetNone,
    SetOp(SetOp),
    Arm,
    OrderNone,
    OrderBy,
    LimitOnly,
    Key(Direction),
    LimitNone,
    LimitSome,
    LimitN(u64),
    Select { distinct: bool },
    AggUnit { distinct: bool },
    Agg(Option<Aggregate>),
    UnitColumn,
    UnitArith(ArithOp),
    FilterNone,
    FilterWhere,
    GroupNone,
    GroupBy,
    HavingNone,
    Having,
    CondAnd,
    CondOr,
    CondPred,
    PredCompare,
    PredBetween,
    Cmp(CompareOp),
    OperandValue,
    OperandColumn,
    OperandQuery,
    Value,
}

/// Largest LIMIT count the grammar can express.
pub const MAX_LIMIT: u64 = 10;

impl Production {
    pub fn all() -> Vec<Production> {
        use Production::*;
        let mut v = vec![Query, SetNone];
        v.extend([crate::sql::SetOp::Union, crate::sql::SetOp::Intersect, crate::sql::SetOp::Except].map(Production::SetOp));
        v.extend([Arm, OrderNone, OrderBy, LimitOnly, Key(Direction::Asc), Key(Direction::Desc), LimitNone, LimitSome]);
        v.extend((1..=MAX_LIMIT).map(LimitN));
        v.extend([Select { distinct: false }, Select { distinct: true }, AggUnit { distinct: false }, AggUnit { distinct: true }]);
        v.push(Agg(None));
        v.extend(Aggregate::ALL.map(|a| Agg(Some(a))));
        v.push(UnitColumn);
        v.extend(ArithOp::ALL.map(UnitArith));
        v.extend([FilterNone, FilterWhere, GroupNone, GroupBy, HavingNone, Having, CondAnd, CondOr, CondPred]);
        v.extend([PredCompare, PredBetween]);
        v.extend(CompareOp::ALL.map(Cmp));
        v.extend([OperandValue, OperandColumn, OperandQuery, Value]);
        v
    }

    /// `head -> rhs` this production expects in the grammar file.
    pub fn signature(&self) -> String {
        use Production::*;
        match self {
            Query => "query -> select set_op order".into(),
            SetNone => "set_op -> NONE".into(),
            SetOp(op) => format!("set_op -> {} arm", op.keyword()),
            Arm => "arm -> select set_op".into(),
            OrderNone => "order -> NONE".into(),
            OrderBy => "order -> ORDER_BY order_key+ limit".into(),
            LimitOnly => "order -> LIMIT limit_n".into(),
            Key(Direction::Asc) => "order_key -> agg_unit ASC".into(),
            Key(Direction::Desc) => "order_key -> agg_unit DESC".into(),
            LimitNone => "limit -> NONE".into(),
            LimitSome => "limit -> LIMIT limit_n".into(),
            LimitN(n) => format!("limit_n -> {n}"),
            Select { distinct: false } => "select -> ALL agg_unit+ <col>* filter group".into(),
            Select { distinct: true } => "select -> DISTINCT agg_unit+ <col>* filter group".into(),
            AggUnit { distinct: false } => "agg_unit -> agg unit".into(),
            AggUnit { distinct: true } => "agg_unit -> agg DISTINCT unit".into(),
            Agg(None) => "agg -> NONE".into(),
            Agg(Some(a)) => format!("agg -> {}", a.name().to_uppercase()),
            UnitColumn => "unit -> <col>".into(),
            UnitArith(op) => format!(
                "unit -> <col> {} <col>",
                match op {
                    ArithOp::Plus => "PLUS",
                    ArithOp::Minus => "MINUS",
                    ArithOp::Times => "TIMES",
                    ArithOp::Divide => "DIVIDE",
                }
            ),
            FilterNone => "filter -> NONE".into(),
            FilterWhere => "filter -> WHERE cond".into(),
            GroupNone => "group -> NONE".into(),
            GroupBy => "group -> GROUP_BY <col>+ having".into(),
            HavingNone => "having -> NONE".into(),
            Having => "having -> HAVING cond".into(),
            CondAnd => "cond -> AND cond cond".into(),
            CondOr => "cond -> OR cond cond".into(),
            CondPred => "cond -> pred".into(),
            PredCompare => "pred -> agg_unit cmp operand".into(),
            PredBetween => "pred -> agg_unit BETWEEN value value".into(),
            Cmp(op) => format!(
                "cmp -> {}",
                match op {
                    CompareOp::Eq => "EQ",
                    CompareOp::Ne => "NE",
                    CompareOp::Lt => "LT",
                    CompareOp::Le => "LE",
                    CompareOp::Gt => "GT",
                    CompareOp::Ge => "GE",
                    CompareOp::Like => "LIKE",
                    CompareOp::NotLike => "NOT_LIKE",
                    CompareOp::In => "IN",
                    CompareOp::NotIn => "NOT_IN",
                }
            ),
            OperandValue => "operand -> value".into(),
            OperandColumn => "operand -> <col>".into(),
            OperandQuery => "operand -> query".into(),
            Value => "value -> <copy>".into(),
        }
    }
}

/// Transition grammar plus the production behind every rule id.
#[derive(Clone, Debug)]
pub struct SqlGrammar {
    grammar: Grammar,
    productions: Vec<Production>,
    ids: HashMap<Production, RuleId>,
}

impl SqlGrammar {
    /// Loads a grammar file; every rule must be a known production and every
    /// production must appear exactly once.
    pub fn parse(text: &str) -> Result<SqlGrammar, TransitionError> {
        let grammar = Grammar::parse(text)?;
        let by_sig: HashMap<String, Production> = Production::all().into_iter().map(|p| (p.signature(), p)).collect();
        let mut productions = Vec::new();
        let mut ids = HashMap::new();
        for r in grammar.rules() {
            let sig = grammar.signature(r.id);
            let p = *by_sig
                .get(&sig)
                .ok_or_else(|| TransitionError::Grammar(format!("rule {}: unknown production `{sig}`", r.id)))?;
            if ids.insert(p, r.id).is_some() {
                return Err(TransitionError::Grammar(format!("rule {}: duplicate production `{sig}`", r.id)));
            }
            productions.push(p);
        }
        if let Some(missing) = by_sig.values().find(|p| !ids.contains_key(p)) {
            return Err(TransitionError::Grammar(format!("missing production `{}`", missing.signature())));
        }
        Ok(SqlGrammar { grammar, productions, ids })
    }

    /// The shipped grammar, parsed once.
    pub fn shipped() -> &'static SqlGrammar {
        static G: OnceLock<SqlGrammar> = OnceLock::new();
        G.get_or_init(|| SqlGrammar::parse(TRANSITION_GRAMMAR).expect("shipped transition grammar is valid"))
    }

    pub fn grammar(&self) -> &Grammar {
        &self.grammar
    }

    pub fn production(&self, rule: RuleId) -> Option<Production> {
        self.productions.get(rule).copied()
    }

    pub fn rule_id(&self, p: Production) -> RuleId {
        self.ids[&p]
    }

    /// Pre-order linearization of `ast`. Literal values come from the AST
    /// unless `gold_values` overrides them (same order as
    /// [`Query::literals_mut`]); each is tagged onto the question.
    pub fn ast_to_actions(
        &self,
        ast: &Query,
        catalog: &SchemaCatalog,
        question: &TokenizedQuestion,
        gold_values: Option<&[String]>,
    ) -> Result<Vec<Action>, TransitionError> {
        let mut e = Emitter { g: self, catalog, question, gold: gold_values, literal: 0, out: Vec::new() };
        e.query(ast)?;
        Ok(e.out)
    }

    /// Rebuilds the AST; literals carry the copied question text.
    pub fn actions_to_ast(
        &self,
        actions: &[Action],
        catalog: &SchemaCatalog,
        question: &TokenizedQuestion,
    ) -> Result<Query, TransitionError> {
        let tree = read_tree(&self.grammar, actions, catalog.column_count(), question.len())?;
        let q = Builder { g: self, catalog, question }.query(&tree)?;
        check_query(&q)?;
        Ok(q)
    }
}

fn star_problem(u: &AggUnit) -> Option<&'static str> {
    if u.distinct && u.agg.is_none() {
        return Some("DISTINCT without an aggregate");
    }
    match u.unit {
        ValueUnit::Arith(_, a, b) if a.is_star() || b.is_star() => Some("`*` inside arithmetic"),
        ValueUnit::Column(c) if c.is_star() && (u.distinct || u.agg.is_some_and(|g| g != Aggregate::Count)) => {
            Some("`*` under an aggregate other than count")
        }
        _ => None,
    }
}

/// Rejects derivations the grammar admits but SQL does not: misplaced `*`,
/// DISTINCT with no aggregate, and IN without a subquery.
fn check_query(q: &Query) -> Result<(), TransitionError> {
    let mut bad = None;
    for block in q.blocks() {
        bad = bad.or_else(|| block.projections.iter().find_map(star_problem));
        if block.group_by.iter().any(|c| c.is_star()) {
            bad = bad.or(Some("GROUP BY `*`"));
        }
        for cond in [&block.filter, &block.having].into_iter().flatten() {
            cond.visit_predicates(&mut |p| {
                bad = bad.or_else(|| star_problem(p.lhs()));
                if let Predicate::Compare { op, rhs, .. } = p {
                    match rhs {
                        Operand::Column(c) if c.is_star() => bad = bad.or(Some("`*` as a comparison operand")),
                        Operand::Query(_) => {}
                        _ if matches!(op, CompareOp::In | CompareOp::NotIn) => bad = bad.or(Some("IN without a subquery")),
                        _ => {}
                    }
                }
            });
        }
    }
    if let Some(ol) = &q.order_limit {
        bad = bad.or_else(|| ol.keys.iter().find_map(|(k, _)| star_problem(k)));
    }
    if let Some(m) = bad {
        return Err(outside(m));
    }
    let mut sub = Ok(());
    q.visit_subqueries(&mut |s| {
        if sub.is_ok() {
            sub = check_query(s);
        }
    });
    sub
}

struct Emitter<'a> {
    g: &'a SqlGrammar,
    catalog: &'a SchemaCatalog,
    question: &'a TokenizedQuestion,
    gold: Option<&'a [String]>,
    literal: usize,
    out: Vec<Action>,
}

fn outside(msg: impl Into<String>) -> TransitionError {
    TransitionError::OutsideGrammar(msg.into())
}

impl Emitter<'_> {
    fn rule(&mut self, p: Production) {
        self.out.push(Action::ApplyRule(self.g.rule_id(p)));
    }

    fn col(&mut self, c: ColumnId) {
        self.out.push(Action::SelectColumn(c));
    }

    fn query(&mut self, q: &Query) -> Result<(), TransitionError> {
        self.rule(Production::Query);
        let extra: Vec<ColumnId> = match &q.order_limit {
            Some(ol) => ol.keys.iter().flat_map(|(k, _)| unit_columns(&k.unit)).collect(),
            None => Vec::new(),
        };
        self.select(&q.body, &extra)?;
        self.set_op(q)?;
        match &q.order_limit {
            None => self.rule(Production::OrderNone),
            Some(ol) if ol.keys.is_empty() => {
                let n = ol.limit.ok_or_else(|| outside("ORDER BY without keys or LIMIT"))?;
                self.rule(Production::LimitOnly);
                self.limit_n(n)?;
            }
            Some(ol) => {
                self.rule(Production::OrderBy);
                for (k, d) in &ol.keys {
                    self.rule(Production::Key(*d));
                    self.agg_unit(k);
                }
                self.out.push(Action::Reduce);
                match ol.limit {
                    None => self.rule(Production::LimitNone),
                    Some(n) => {
                        self.rule(Production::LimitSome);
                        self.limit_n(n)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn limit_n(&mut self, n: u64) -> Result<(), TransitionError> {
        if !(1..=MAX_LIMIT).contains(&n) {
            return Err(outside(format!("LIMIT {n} (supported: 1 to {MAX_LIMIT})")));
        }
        self.rule(Production::LimitN(n));
        Ok(())
    }

    fn set_op(&mut self, q: &Query) -> Result<(), TransitionError> {
        match &q.set_op {
            None => self.rule(Production::SetNone),
            Some((op, right)) => {
                if right.order_limit.is_some() {
                    return Err(outside("ORDER BY inside a compound arm"));
                }
                self.rule(Production::SetOp(*op));
                self.rule(Production::Arm);
                self.select(&right.body, &[])?;
                self.set_op(right)?;
            }
        }
        Ok(())
    }

    fn select(&mut self, b: &SelectBlock, extra: &[ColumnId]) -> Result<(), TransitionError> {
        self.rule(Production::Select { distinct: b.distinct });
        for p in &b.projections {
            self.agg_unit(p);
        }
        self.out.push(Action::Reduce);
        let mut mentioned = b.mentioned_columns();
        mentioned.extend_from_slice(extra);
        let owned: BTreeSet<TableId> = mentioned.iter().filter_map(|c| self.catalog.table_of(*c)).collect();
        let anchors: Vec<ColumnId> = b
            .from
            .tables
            .iter()
            .filter(|t| !owned.contains(t))
            .map(|t| self.catalog.anchor_column(*t))
            .collect();
        for a in &anchors {
            self.col(*a);
        }
        self.out.push(Action::Reduce);
        mentioned.extend(anchors);
        let inferred = infer_tables(mentioned, self.catalog)?;
        if inferred != b.from {
            return Err(outside("FROM clause is not the foreign-key join tree of its columns"));
        }
        match &b.filter {
            None => self.rule(Production::FilterNone),
            Some(c) => {
                self.rule(Production::FilterWhere);
                self.cond(c)?;
            }
        }
        if b.group_by.is_empty() {
            if b.having.is_some() {
                return Err(outside("HAVING without GROUP BY"));
            }
            self.rule(Production::GroupNone);
        } else {
            self.rule(Production::GroupBy);
            for c in &b.group_by {
                self.col(*c);
            }
            self.out.push(Action::Reduce);
            match &b.having {
                None => self.rule(Production::HavingNone),
                Some(c) => {
                    self.rule(Production::Having);
                    self.cond(c)?;
                }
            }
        }
        Ok(())
    }

    fn agg_unit(&mut self, a: &AggUnit) {
        self.rule(Production::AggUnit { distinct: a.distinct });
        self.rule(Production::Agg(a.agg));
        match &a.unit {
            ValueUnit::Column(c) => {
                self.rule(Production::UnitColumn);
                self.col(*c);
            }
            ValueUnit::Arith(op, x, y) => {
                self.rule(Production::UnitArith(*op));
                self.col(*x);
                self.col(*y);
            }
        }
    }

    fn cond(&mut self, c: &Condition) -> Result<(), TransitionError> {
        match c {
            Condition::And(a, b) | Condition::Or(a, b) => {
                self.rule(if matches!(c, Condition::And(..)) { Production::CondAnd } else { Production::CondOr });
                self.cond(a)?;
                self.cond(b)
            }
            Condition::Predicate(p) => {
                self.rule(Production::CondPred);
                match p {
                    Predicate::Compare { lhs, op, rhs } => {
                        self.rule(Production::PredCompare);
                        self.agg_unit(lhs);
                        self.rule(Production::Cmp(*op));
                        match rhs {
                            Operand::Literal(l) => {
                                self.rule(Production::OperandValue);
                                self.value(l, lhs);
                            }
                            Operand::Column(c) => {
                                self.rule(Production::OperandColumn);
                                self.col(*c);
                            }
                            Operand::Query(q) => {
                                self.rule(Production::OperandQuery);
                                self.query(q)?;
                            }
                        }
                        Ok(())
                    }
                    Predicate::Between { lhs, low, high } => {
                        self.rule(Production::PredBetween);
                        self.agg_unit(lhs);
                        self.value(low, lhs);
                        self.value(high, lhs);
                        Ok(())
                    }
                }
            }
        }
    }

    fn value(&mut self, l: &Literal, lhs: &AggUnit) {
        self.rule(Production::Value);
        let idx = self.literal;
        self.literal += 1;
        let span = match l {
            Literal::Copied(span) => span.tokens,
            Literal::Value { raw, .. } => {
                let gold = self.gold.and_then(|g| g.get(idx)).map(String::as_str).unwrap_or(raw);
                let column = match lhs.agg {
                    Some(Aggregate::Count) => None,
                    _ => self.catalog.column(lhs.unit.primary_column()),
                };
                tag_value_span(self.question, gold, column)
            }
        };
        if let Some((s, e)) = span {
            self.out.extend((s..e).map(Action::CopyToken));
        }
        self.out.push(Action::CopyStop);
    }
}

fn unit_columns(u: &ValueUnit) -> Vec<ColumnId> {
    match u {
        ValueUnit::Column(c) => vec![*c],
        ValueUnit::Arith(_, a, b) => vec![*a, *b],
    }
}

struct Builder<'a> {
    g: &'a SqlGrammar,
    catalog: &'a SchemaCatalog,
    question: &'a TokenizedQuestion,
}

fn children(n: &Node) -> &[Node] {
    match n {
        Node::Rule { children, .. } => children,
        _ => &[],
    }
}

fn list(n: &Node) -> &[Node] {
    match n {
        Node::List(items) => items,
        _ => &[],
    }
}

fn column(n: &Node) -> ColumnId {
    match n {
        Node::Column(c) => *c,
        _ => unreachable!("grammar places a column here"),
    }
}

impl Builder<'_> {
    fn prod(&self, n: &Node) -> Production {
        self.g.production(n.rule_id().expect("rule node")).expect("known rule")
    }

    fn query(&self, n: &Node) -> Result<Query, TransitionError> {
        let [select, set_op, order] = children(n) else { unreachable!() };
        let order_limit = self.order(order);
        let extra: Vec<ColumnId> = match &order_limit {
            Some(ol) => ol.keys.iter().flat_map(|(k, _)| unit_columns(&k.unit)).collect(),
            None => Vec::new(),
        };
        let body = self.select(select, &extra)?;
        let set_op = self.set_op(set_op)?;
        Ok(Query { body, set_op, order_limit })
    }

    fn set_op(&self, n: &Node) -> Result<Option<(SetOp, Box<Query>)>, TransitionError> {
        match self.prod(n) {
            Production::SetOp(op) => {
                let [arm] = children(n) else { unreachable!() };
                let [select, rest] = children(arm) else { unreachable!() };
                let body = self.select(select, &[])?;
                let right = Query { body, set_op: self.set_op(rest)?, order_limit: None };
                Ok(Some((op, Box::new(right))))
            }
            _ => Ok(None),
        }
    }

    fn limit_n(&self, n: &Node) -> u64 {
        match self.prod(n) {
            Production::LimitN(v) => v,
            _ => unreachable!(),
        }
    }

    fn order(&self, n: &Node) -> Option<OrderLimit> {
        match self.prod(n) {
            Production::OrderBy => {
                let [keys, limit] = children(n) else { unreachable!() };
                let keys = list(keys)
                    .iter()
                    .map(|k| {
                        let Production::Key(d) = self.prod(k) else { unreachable!() };
                        (self.agg_unit(&children(k)[0]), d)
                    })
                    .collect();
                let limit = match self.prod(limit) {
                    Production::LimitSome => Some(self.limit_n(&children(limit)[0])),
                    _ => None,
                };
                Some(OrderLimit { keys, limit })
            }
            Production::LimitOnly => Some(OrderLimit { keys: Vec::new(), limit: Some(self.limit_n(&children(n)[0])) }),
            _ => None,
        }
    }

    fn select(&self, n: &Node, extra: &[ColumnId]) -> Result<SelectBlock, TransitionError> {
        let Production::Select { distinct } = self.prod(n) else { unreachable!() };
        let [projs, anchors, filter, group] = children(n) else { unreachable!() };
        let projections: Vec<AggUnit> = list(projs).iter().map(|p| self.agg_unit(p)).collect();
        let anchors: Vec<ColumnId> = list(anchors).iter().map(column).collect();
        let filter = match self.prod(filter) {
            Production::FilterWhere => Some(self.cond(&children(filter)[0])?),
            _ => None,
        };
        let (group_by, having) = match self.prod(group) {
            Production::GroupBy => {
                let [cols, having] = children(group) else { unreachable!() };
                let cols: Vec<ColumnId> = list(cols).iter().map(column).collect();
                let having = match self.prod(having) {
                    Production::Having => Some(self.cond(&children(having)[0])?),
                    _ => None,
                };
                (cols, having)
            }
            _ => (Vec::new(), None),
        };
        let mut block = SelectBlock {
            distinct,
            projections,
            from: FromClause { tables: Vec::new(), joins: Vec::new() },
            filter,
            group_by,
            having,
        };
        let mut cols = block.mentioned_columns();
        cols.extend_from_slice(extra);
        cols.extend(anchors);
        block.from = infer_tables(cols, self.catalog)?;
        Ok(block)
    }

    fn agg_unit(&self, n: &Node) -> AggUnit {
        let Production::AggUnit { distinct } = self.prod(n) else { unreachable!() };
        let [agg, unit] = children(n) else { unreachable!() };
        let Production::Agg(agg) = self.prod(agg) else { unreachable!() };
        let unit = match (self.prod(unit), children(unit)) {
            (Production::UnitArith(op), [a, b]) => ValueUnit::Arith(op, column(a), column(b)),
            (_, [c]) => ValueUnit::Column(column(c)),
            _ => unreachable!(),
        };
        AggUnit { agg, distinct, unit }
    }

    fn cond(&self, n: &Node) -> Result<Condition, TransitionError> {
        match self.prod(n) {
            p @ (Production::CondAnd | Production::CondOr) => {
                let [a, b] = children(n) else { unreachable!() };
                let (a, b) = (Box::new(self.cond(a)?), Box::new(self.cond(b)?));
                Ok(if p == Production::CondAnd { Condition::And(a, b) } else { Condition::Or(a, b) })
            }
            _ => {
                let pred = &children(n)[0];
                match self.prod(pred) {
                    Production::PredBetween => {
                        let [lhs, low, high] = children(pred) else { unreachable!() };
                        Ok(Condition::Predicate(Predicate::Between {
                            lhs: self.agg_unit(lhs),
                            low: self.value(low),
                            high: self.value(high),
                        }))
                    }
                    _ => {
                        let [lhs, cmp, operand] = children(pred) else { unreachable!() };
                        let Production::Cmp(op) = self.prod(cmp) else { unreachable!() };
                        let rhs = match self.prod(operand) {
                            Production::OperandValue => Operand::Literal(self.value(&children(operand)[0])),
                            Production::OperandColumn => Operand::Column(column(&children(operand)[0])),
                            _ => Operand::Query(Box::new(self.query(&children(operand)[0])?)),
                        };
                        Ok(Condition::Predicate(Predicate::Compare { lhs: self.agg_unit(lhs), op, rhs }))
                    }
                }
            }
        }
    }

    fn value(&self, n: &Node) -> Literal {
        let [Node::Copy(span)] = children(n) else { unreachable!() };
        Literal::Copied(CopiedSpan {
            text: span.map(|(s, e)| self.question.span_text(s, e).to_string()).unwrap_or_default(),
            tokens: *span,
        })
    }
}

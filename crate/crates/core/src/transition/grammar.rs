//! Grammar files, the left-to-right action automaton and derivation trees.
//!
//! Nothing here knows about SQL: the same machinery drives toy grammars in
//! tests.

use std::fmt;

use serde::Serialize;

use super::{Action, TransitionError};
use crate::catalog::ColumnId;

pub type RuleId = usize;
pub type NtId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elem {
    Nt(NtId),
    Column,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Item {
    Nt(NtId),
    Column,
    Copy,
    List { elem: Elem, nonempty: bool },
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub id: RuleId,
    pub head: NtId,
    /// Action-bearing items only.
    pub items: Vec<Item>,
    /// Full right-hand side as written, labels included.
    pub rhs_text: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Grammar {
    nonterminals: Vec<String>,
    rules: Vec<Rule>,
    by_head: Vec<Vec<RuleId>>,
}

impl Grammar {
    /// Parses `rule_id<TAB>head -> rhs` lines; `#` starts a comment. Rule ids
    /// must be dense from 0 and the head of rule 0 is the start symbol.
    pub fn parse(text: &str) -> Result<Grammar, TransitionError> {
        let mut raw: Vec<(usize, String, Vec<String>)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim_end();
            if line.trim().is_empty() {
                continue;
            }
            let bad = |m: &str| TransitionError::Grammar(format!("line {}: {m}", lineno + 1));
            let (id, rule) = line.split_once('\t').ok_or_else(|| bad("expected `rule_id<TAB>rule`"))?;
            let id: usize = id.trim().parse().map_err(|_| bad("rule id is not an integer"))?;
            if id != raw.len() {
                return Err(bad(&format!("rule ids must be dense, expected {}", raw.len())));
            }
            let (head, rhs) = rule.split_once("->").ok_or_else(|| bad("missing `->`"))?;
            let head = head.trim();
            if !is_nonterminal(head) {
                return Err(bad("head must be a lowercase name"));
            }
            raw.push((id, head.to_string(), rhs.split_whitespace().map(String::from).collect()));
        }
        if raw.is_empty() {
            return Err(TransitionError::Grammar("grammar has no rules".into()));
        }
        let mut nonterminals: Vec<String> = Vec::new();
        for (_, head, _) in &raw {
            if !nonterminals.contains(head) {
                nonterminals.push(head.clone());
            }
        }
        let nt = |name: &str| nonterminals.iter().position(|n| n == name);
        let mut rules = Vec::with_capacity(raw.len());
        let mut by_head = vec![Vec::new(); nonterminals.len()];
        for (id, head, rhs) in &raw {
            let mut items = Vec::new();
            for sym in rhs {
                let (base, list) = match sym.strip_suffix('*') {
                    Some(b) => (b, Some(false)),
                    None => match sym.strip_suffix('+') {
                        Some(b) => (b, Some(true)),
                        None => (sym.as_str(), None),
                    },
                };
                let item = if base == "<col>" {
                    match list {
                        Some(nonempty) => Some(Item::List { elem: Elem::Column, nonempty }),
                        None => Some(Item::Column),
                    }
                } else if base == "<copy>" {
                    if list.is_some() {
                        return Err(TransitionError::Grammar(format!("rule {id}: <copy> cannot be a list")));
                    }
                    Some(Item::Copy)
                } else if is_nonterminal(base) {
                    let n = nt(base).ok_or_else(|| {
                        TransitionError::Grammar(format!("rule {id}: nonterminal `{base}` has no rules"))
                    })?;
                    match list {
                        Some(nonempty) => Some(Item::List { elem: Elem::Nt(n), nonempty }),
                        None => Some(Item::Nt(n)),
                    }
                } else {
                    if list.is_some() {
                        return Err(TransitionError::Grammar(format!("rule {id}: label `{sym}` cannot be a list")));
                    }
                    None
                };
                items.extend(item);
            }
            let head_id = nt(head).unwrap();
            by_head[head_id].push(*id);
            rules.push(Rule { id: *id, head: head_id, items, rhs_text: rhs.clone() });
        }
        Ok(Grammar { nonterminals, rules, by_head })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, id: RuleId) -> Option<&Rule> {
        self.rules.get(id)
    }

    pub fn start(&self) -> NtId {
        self.rules[0].head
    }

    pub fn nonterminal(&self, id: NtId) -> &str {
        &self.nonterminals[id]
    }

    pub fn nonterminal_id(&self, name: &str) -> Option<NtId> {
        self.nonterminals.iter().position(|n| n == name)
    }

    pub fn rules_for(&self, nt: NtId) -> &[RuleId] {
        &self.by_head[nt]
    }

    /// `head -> rhs` with single spaces.
    pub fn signature(&self, id: RuleId) -> String {
        let r = &self.rules[id];
        format!("{} -> {}", self.nonterminals[r.head], r.rhs_text.join(" "))
    }
}

fn is_nonterminal(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_lowercase())
        && s.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

/// What the automaton expects next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ActionKind {
    ApplyRule,
    Reduce,
    SelectColumn,
    CopyToken,
    CopyStop,
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ActionKind::ApplyRule => "ApplyRule",
            ActionKind::Reduce => "Reduce",
            ActionKind::SelectColumn => "SelectColumn",
            ActionKind::CopyToken => "CopyToken",
            ActionKind::CopyStop => "CopyStop",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Frame {
    Nt(NtId),
    Column,
    Copy { last: Option<usize> },
    List { elem: Elem, nonempty: bool, count: usize },
}

/// Frontier description handed to step scorers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// Choose a rule for this nonterminal.
    Rule(NtId),
    /// Continue or close a list; `count` elements so far.
    List { elem: Elem, count: usize },
    Column,
    /// Inside a copy run; `last` is the previously copied token.
    Copy { last: Option<usize> },
}

/// Pushdown automaton over actions for one grammar, column count `K` and
/// question length.
#[derive(Clone, Debug)]
pub struct Automaton<'g> {
    grammar: &'g Grammar,
    stack: Vec<Frame>,
    /// Rules enclosing each stack frame, outermost first.
    paths: Vec<Vec<RuleId>>,
    columns: usize,
    tokens: usize,
}

impl<'g> Automaton<'g> {
    pub fn new(grammar: &'g Grammar, columns: usize, tokens: usize) -> Automaton<'g> {
        Automaton { grammar, stack: vec![Frame::Nt(grammar.start())], paths: vec![Vec::new()], columns, tokens }
    }

    /// Rules enclosing the current frontier, outermost first.
    pub fn ancestors(&self) -> &[RuleId] {
        self.paths.last().map(|p| p.as_slice()).unwrap_or(&[])
    }

    pub fn is_complete(&self) -> bool {
        self.stack.is_empty()
    }

    pub fn slot(&self) -> Option<Slot> {
        self.stack.last().map(|f| match f {
            Frame::Nt(n) => Slot::Rule(*n),
            Frame::Column => Slot::Column,
            Frame::Copy { last } => Slot::Copy { last: *last },
            Frame::List { elem, count, .. } => Slot::List { elem: *elem, count: *count },
        })
    }

    pub fn expected_kinds(&self) -> Vec<ActionKind> {
        match self.stack.last() {
            None => Vec::new(),
            Some(Frame::Nt(_)) => vec![ActionKind::ApplyRule],
            Some(Frame::Column) => vec![ActionKind::SelectColumn],
            Some(Frame::Copy { last }) => {
                let more = match last {
                    None => self.tokens > 0,
                    Some(l) => l + 1 < self.tokens,
                };
                if more {
                    vec![ActionKind::CopyToken, ActionKind::CopyStop]
                } else {
                    vec![ActionKind::CopyStop]
                }
            }
            Some(Frame::List { elem, nonempty, count }) => {
                let mut v = vec![match elem {
                    Elem::Nt(_) => ActionKind::ApplyRule,
                    Elem::Column => ActionKind::SelectColumn,
                }];
                if !*nonempty || *count > 0 {
                    v.push(ActionKind::Reduce);
                }
                v
            }
        }
    }

    /// Every legal next action, in a fixed order.
    pub fn legal_actions(&self) -> Vec<Action> {
        let mut out = Vec::new();
        let columns = |out: &mut Vec<Action>| out.extend((0..self.columns).map(|c| Action::SelectColumn(ColumnId(c))));
        match self.stack.last() {
            None => {}
            Some(Frame::Nt(n)) => out.extend(self.grammar.rules_for(*n).iter().map(|r| Action::ApplyRule(*r))),
            Some(Frame::Column) => columns(&mut out),
            Some(Frame::Copy { last }) => {
                match last {
                    None => out.extend((0..self.tokens).map(Action::CopyToken)),
                    Some(l) if l + 1 < self.tokens => out.push(Action::CopyToken(l + 1)),
                    Some(_) => {}
                }
                out.push(Action::CopyStop);
            }
            Some(Frame::List { elem, nonempty, count }) => {
                match elem {
                    Elem::Nt(n) => out.extend(self.grammar.rules_for(*n).iter().map(|r| Action::ApplyRule(*r))),
                    Elem::Column => columns(&mut out),
                }
                if !*nonempty || *count > 0 {
                    out.push(Action::Reduce);
                }
            }
        }
        out
    }

    pub fn is_legal(&self, action: &Action) -> bool {
        let mut probe = self.clone();
        probe.apply(action).is_ok()
    }

    pub fn apply(&mut self, action: &Action) -> Result<(), StepError> {
        let err = |a: &Automaton| StepError { expected: a.expected_kinds(), found: action.clone() };
        let Some(top) = self.stack.last().cloned() else {
            return Err(err(self));
        };
        match (top, action) {
            (Frame::Nt(n), Action::ApplyRule(r)) => {
                let rule = self.grammar.rule(*r).filter(|rule| rule.head == n).ok_or_else(|| err(self))?;
                self.stack.pop();
                let mut path = self.paths.pop().unwrap_or_default();
                path.push(*r);
                for item in rule.items.iter().rev() {
                    self.paths.push(path.clone());
                    self.stack.push(match *item {
                        Item::Nt(n) => Frame::Nt(n),
                        Item::Column => Frame::Column,
                        Item::Copy => Frame::Copy { last: None },
                        Item::List { elem, nonempty } => Frame::List { elem, nonempty, count: 0 },
                    });
                }
                Ok(())
            }
            (Frame::Column, Action::SelectColumn(c)) if c.0 < self.columns => {
                self.stack.pop();
                self.paths.pop();
                Ok(())
            }
            (Frame::Copy { last }, Action::CopyToken(i)) => {
                let ok = match last {
                    None => *i < self.tokens,
                    Some(l) => *i == l + 1 && *i < self.tokens,
                };
                if !ok {
                    return Err(err(self));
                }
                *self.stack.last_mut().unwrap() = Frame::Copy { last: Some(*i) };
                Ok(())
            }
            (Frame::Copy { .. }, Action::CopyStop) => {
                self.stack.pop();
                self.paths.pop();
                Ok(())
            }
            (Frame::List { nonempty, count, .. }, Action::Reduce) => {
                if nonempty && count == 0 {
                    return Err(err(self));
                }
                self.stack.pop();
                self.paths.pop();
                Ok(())
            }
            (Frame::List { elem, nonempty, count }, a @ (Action::ApplyRule(_) | Action::SelectColumn(_))) => {
                let elem_frame = match elem {
                    Elem::Nt(n) => Frame::Nt(n),
                    Elem::Column => Frame::Column,
                };
                let mut probe = self.clone();
                *probe.stack.last_mut().unwrap() = Frame::List { elem, nonempty, count: count + 1 };
                probe.stack.push(elem_frame);
                probe.paths.push(probe.paths.last().cloned().unwrap_or_default());
                probe.apply(a).map_err(|_| err(self))?;
                *self = probe;
                Ok(())
            }
            _ => Err(err(self)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepError {
    pub expected: Vec<ActionKind>,
    pub found: Action,
}

/// Derivation tree read back from an action sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Rule { rule: RuleId, children: Vec<Node> },
    List(Vec<Node>),
    Column(ColumnId),
    /// Copied token range `[start, end)`, or `None` for an empty copy.
    Copy(Option<(usize, usize)>),
}

impl Node {
    pub fn rule_id(&self) -> Option<RuleId> {
        match self {
            Node::Rule { rule, .. } => Some(*rule),
            _ => None,
        }
    }
}

/// Replays `actions` through the automaton and returns the derivation tree.
pub fn read_tree(
    grammar: &Grammar,
    actions: &[Action],
    columns: usize,
    tokens: usize,
) -> Result<Node, TransitionError> {
    let mut automaton = Automaton::new(grammar, columns, tokens);
    for (step, a) in actions.iter().enumerate() {
        if automaton.is_complete() {
            return Err(TransitionError::TrailingActions { step });
        }
        automaton.apply(a).map_err(|e| TransitionError::IllegalAction {
            step,
            found: a.clone(),
            expected: e.expected,
        })?;
    }
    if !automaton.is_complete() {
        return Err(TransitionError::PrematureEnd { step: actions.len(), expected: automaton.expected_kinds() });
    }
    let mut pos = 0;
    Ok(read_item(grammar, actions, &mut pos, Item::Nt(grammar.start())))
}

/// Builds the tree for a sequence already accepted by the automaton.
fn read_item(grammar: &Grammar, actions: &[Action], pos: &mut usize, item: Item) -> Node {
    match item {
        Item::Nt(_) => {
            let Action::ApplyRule(r) = actions[*pos] else { unreachable!("validated sequence") };
            *pos += 1;
            let children =
                grammar.rules[r].items.iter().map(|it| read_item(grammar, actions, pos, *it)).collect();
            Node::Rule { rule: r, children }
        }
        Item::Column => {
            let Action::SelectColumn(c) = actions[*pos] else { unreachable!("validated sequence") };
            *pos += 1;
            Node::Column(c)
        }
        Item::Copy => {
            let start = *pos;
            while let Action::CopyToken(_) = actions[*pos] {
                *pos += 1;
            }
            let span = match (&actions[start], *pos > start) {
                (Action::CopyToken(first), true) => Some((*first, *first + (*pos - start))),
                _ => None,
            };
            *pos += 1;
            Node::Copy(span)
        }
        Item::List { elem, .. } => {
            let mut out = Vec::new();
            while actions[*pos] != Action::Reduce {
                out.push(read_item(
                    grammar,
                    actions,
                    pos,
                    match elem {
                        Elem::Nt(n) => Item::Nt(n),
                        Elem::Column => Item::Column,
                    },
                ));
            }
            *pos += 1;
            Node::List(out)
        }
    }
}

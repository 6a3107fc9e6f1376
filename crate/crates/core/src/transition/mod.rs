//! Bridge between query ASTs and transition action sequences.

mod grammar;
mod question;
mod sql_grammar;
mod tables;
mod tagger;

use std::fmt;

use thiserror::Error;

pub use grammar::{read_tree, ActionKind, Automaton, Elem, Grammar, Item, Node, NtId, Rule, RuleId, Slot, StepError};
pub use question::{tokenize_question, QuestionToken, TokenizedQuestion};
pub use sql_grammar::{Production, SqlGrammar};
pub use tables::{infer_tables, InferError};
pub use tagger::{tag_value_span, TAG_THRESHOLD};

use crate::catalog::{ColumnId, SchemaCatalog};

/// The shipped transition grammar.
pub const TRANSITION_GRAMMAR: &str = include_str!("../../data/transition.grammar");

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    ApplyRule(RuleId),
    Reduce,
    SelectColumn(ColumnId),
    CopyToken(usize),
    CopyStop,
}

impl Action {
    pub fn kind(&self) -> ActionKind {
        match self {
            Action::ApplyRule(_) => ActionKind::ApplyRule,
            Action::Reduce => ActionKind::Reduce,
            Action::SelectColumn(_) => ActionKind::SelectColumn,
            Action::CopyToken(_) => ActionKind::CopyToken,
            Action::CopyStop => ActionKind::CopyStop,
        }
    }

    /// Serialized tag: `AR:12`, `RD`, `SC:dogs.age` (or `SC:*`, or `SC:<index>`
    /// without a catalog), `CT:7`, `CS`.
    pub fn to_tag(&self, catalog: Option<&SchemaCatalog>) -> String {
        match self {
            Action::ApplyRule(r) => format!("AR:{r}"),
            Action::Reduce => "RD".into(),
            Action::SelectColumn(c) => match catalog {
                Some(_) if c.is_star() => "SC:*".into(),
                Some(cat) if cat.column(*c).is_some() => format!("SC:{}", cat.qualified_name(*c)),
                _ => format!("SC:{}", c.0),
            },
            Action::CopyToken(i) => format!("CT:{i}"),
            Action::CopyStop => "CS".into(),
        }
    }

    /// Inverse of [`Action::to_tag`]. Column names are matched exactly first,
    /// then case-insensitively; numeric column tags are accepted as is.
    pub fn parse_tag(tag: &str, catalog: Option<&SchemaCatalog>) -> Result<Action, TransitionError> {
        let bad = || TransitionError::BadTag(tag.to_string());
        let (kind, arg) = match tag.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (tag, None),
        };
        match (kind, arg) {
            ("RD", None) => Ok(Action::Reduce),
            ("CS", None) => Ok(Action::CopyStop),
            ("AR", Some(a)) => a.parse().map(Action::ApplyRule).map_err(|_| bad()),
            ("CT", Some(a)) => a.parse().map(Action::CopyToken).map_err(|_| bad()),
            ("SC", Some("*")) => Ok(Action::SelectColumn(ColumnId::STAR)),
            ("SC", Some(a)) => {
                if let Ok(n) = a.parse::<usize>() {
                    return Ok(Action::SelectColumn(ColumnId(n)));
                }
                let cat = catalog.ok_or_else(bad)?;
                let (t, c) = a.split_once('.').ok_or_else(bad)?;
                let exact = cat.table_ids().find(|id| cat.table(*id).name == t).and_then(|id| {
                    cat.columns_of(id).find(|col| cat.column(*col).is_some_and(|d| d.name == c))
                });
                exact
                    .or_else(|| cat.column_by_name(t, c))
                    .map(Action::SelectColumn)
                    .ok_or_else(|| TransitionError::UnknownColumn(a.to_string()))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tag(None))
    }
}

pub fn actions_to_tags(actions: &[Action], catalog: &SchemaCatalog) -> Vec<String> {
    actions.iter().map(|a| a.to_tag(Some(catalog))).collect()
}

fn kinds(k: &[ActionKind]) -> String {
    k.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" | ")
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum TransitionError {
    #[error("grammar file: {0}")]
    Grammar(String),
    #[error("malformed action tag `{0}`")]
    BadTag(String),
    #[error("unknown column `{0}` in action tag")]
    UnknownColumn(String),
    #[error("sequence ended at step {step}, expected {}", kinds(.expected))]
    PrematureEnd { step: usize, expected: Vec<ActionKind> },
    #[error("illegal action {found} at step {step}, expected {}", kinds(.expected))]
    IllegalAction { step: usize, found: Action, expected: Vec<ActionKind> },
    #[error("actions continue after the derivation is complete (step {step})")]
    TrailingActions { step: usize },
    #[error("query outside the transition grammar: {0}")]
    OutsideGrammar(String),
    #[error(transparent)]
    Tables(#[from] InferError),
}

use std::collections::BTreeSet;

use thiserror::Error;

use crate::catalog::{ColumnId, SchemaCatalog, TableId};
use crate::sql::{canonical_from, FromClause, JoinCondition};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum InferError {
    #[error("no table-owning column selected")]
    NoTables,
    #[error("tables are not connected by foreign keys: {}", fmt_components(.0))]
    Disconnected(Vec<Vec<String>>),
}

fn fmt_components(c: &[Vec<String>]) -> String {
    c.iter().map(|g| format!("{{{}}}", g.join(", "))).collect::<Vec<_>>().join(" / ")
}

fn name_key(catalog: &SchemaCatalog, t: TableId) -> (String, usize) {
    (catalog.table(t).name.to_lowercase(), t.0)
}

/// Undirected FK edges between distinct tables, one per column pair.
fn fk_edges(catalog: &SchemaCatalog) -> Vec<(TableId, TableId, JoinCondition)> {
    let mut out = Vec::new();
    for fk in &catalog.foreign_keys {
        let (a, b) = (catalog.table_of(fk.from_id).unwrap(), catalog.table_of(fk.to_id).unwrap());
        if a != b {
            out.push((a, b, JoinCondition { left: fk.from_id, right: fk.to_id }));
        }
    }
    out.sort_by_key(|(_, _, j)| (j.left, j.right));
    out
}

fn connected(set: &BTreeSet<TableId>, edges: &[(TableId, TableId, JoinCondition)]) -> bool {
    let Some(&first) = set.iter().next() else { return true };
    let mut seen = BTreeSet::from([first]);
    let mut frontier = vec![first];
    while let Some(t) = frontier.pop() {
        for (a, b, _) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if *x == t && set.contains(y) && seen.insert(*y) {
                    frontier.push(*y);
                }
            }
        }
    }
    seen.len() == set.len()
}

fn components(terminals: &BTreeSet<TableId>, catalog: &SchemaCatalog, edges: &[(TableId, TableId, JoinCondition)]) -> Vec<Vec<String>> {
    let all: BTreeSet<TableId> = catalog.table_ids().collect();
    let mut left: BTreeSet<TableId> = terminals.clone();
    let mut out = Vec::new();
    while let Some(&t) = left.iter().next() {
        let mut seen = BTreeSet::from([t]);
        let mut frontier = vec![t];
        while let Some(x) = frontier.pop() {
            for (a, b, _) in edges {
                for (p, q) in [(a, b), (b, a)] {
                    if *p == x && all.contains(q) && seen.insert(*q) {
                        frontier.push(*q);
                    }
                }
            }
        }
        let mut group: Vec<TableId> = seen.intersection(&left).copied().collect();
        group.sort_by_key(|t| name_key(catalog, *t));
        for g in &group {
            left.remove(g);
        }
        out.push(group.iter().map(|g| catalog.table(*g).name.clone()).collect());
    }
    out
}

fn combinations(pool: &[TableId], k: usize, start: usize, cur: &mut Vec<TableId>, out: &mut Vec<Vec<TableId>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..pool.len() {
        cur.push(pool[i]);
        combinations(pool, k, i + 1, cur, out);
        cur.pop();
    }
}

/// Rebuilds a FROM clause from the selected columns: the smallest set of
/// tables connected by foreign keys that covers every owning table (ties go
/// to the lexicographically smallest sorted name sequence), joined along a
/// spanning tree grown Prim-style from the smallest table name.
pub fn infer_tables(
    columns: impl IntoIterator<Item = ColumnId>,
    catalog: &SchemaCatalog,
) -> Result<FromClause, InferError> {
    let terminals: BTreeSet<TableId> = columns.into_iter().filter_map(|c| catalog.table_of(c)).collect();
    if terminals.is_empty() {
        return Err(InferError::NoTables);
    }
    if terminals.len() == 1 {
        return Ok(FromClause::single(*terminals.iter().next().unwrap()));
    }
    let edges = fk_edges(catalog);
    let all: BTreeSet<TableId> = catalog.table_ids().collect();
    if !connected_within(&terminals, &all, &edges) {
        return Err(InferError::Disconnected(components(&terminals, catalog, &edges)));
    }
    let pool: Vec<TableId> = catalog.table_ids().filter(|t| !terminals.contains(t)).collect();
    for extra in 0..=pool.len() {
        let mut combos = Vec::new();
        combinations(&pool, extra, 0, &mut Vec::new(), &mut combos);
        let best = combos
            .into_iter()
            .map(|c| terminals.iter().copied().chain(c).collect::<BTreeSet<TableId>>())
            .filter(|set| connected(set, &edges))
            .min_by_key(|set| {
                let mut names: Vec<(String, usize)> = set.iter().map(|t| name_key(catalog, *t)).collect();
                names.sort();
                names
            });
        if let Some(set) = best {
            return Ok(spanning_tree(&set, &edges, catalog));
        }
    }
    unreachable!("terminals are connected in the full graph")
}

fn connected_within(terminals: &BTreeSet<TableId>, all: &BTreeSet<TableId>, edges: &[(TableId, TableId, JoinCondition)]) -> bool {
    let first = *terminals.iter().next().unwrap();
    let mut seen = BTreeSet::from([first]);
    let mut frontier = vec![first];
    while let Some(t) = frontier.pop() {
        for (a, b, _) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if *x == t && all.contains(y) && seen.insert(*y) {
                    frontier.push(*y);
                }
            }
        }
    }
    terminals.is_subset(&seen)
}

fn spanning_tree(set: &BTreeSet<TableId>, edges: &[(TableId, TableId, JoinCondition)], catalog: &SchemaCatalog) -> FromClause {
    let mut order: Vec<TableId> = vec![*set.iter().min_by_key(|t| name_key(catalog, **t)).unwrap()];
    let mut tree = Vec::new();
    while order.len() < set.len() {
        let next = set
            .iter()
            .filter(|t| !order.contains(t))
            .filter(|t| edges.iter().any(|(a, b, _)| (a == *t && order.contains(b)) || (b == *t && order.contains(a))))
            .min_by_key(|t| name_key(catalog, **t))
            .copied()
            .expect("connected set");
        let edge = edges
            .iter()
            .filter_map(|(a, b, j)| {
                if *a == next && order.contains(b) {
                    Some((order.iter().position(|x| x == b).unwrap(), *j))
                } else if *b == next && order.contains(a) {
                    Some((order.iter().position(|x| x == a).unwrap(), *j))
                } else {
                    None
                }
            })
            .min_by_key(|(i, j)| (*i, j.left, j.right))
            .unwrap()
            .1;
        tree.push(edge);
        order.push(next);
    }
    canonical_from(set.iter().copied(), &tree, catalog)
}

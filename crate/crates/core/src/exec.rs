//! Read-only execution and result comparison.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rusqlite::{Connection, OpenFlags};
use serde::Serialize;
use thiserror::Error;

use crate::catalog::Cell;

pub const DEFAULT_ROW_CAP: usize = 10_000;
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(5);
/// Absolute/relative tolerance for numeric cells in [`exec_match`].
pub const NUMERIC_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum ExecError {
    #[error("cannot open {path}: {reason}")]
    Open { path: PathBuf, reason: String },
    #[error("read-only violation: only queries are allowed")]
    ReadOnly,
    #[error("query exceeded {0:?}")]
    Timeout(Duration),
    #[error("{0}")]
    Sql(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExecutionResult {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub truncated: bool,
    pub elapsed_ms: f64,
}

/// Read-only connection to one database file.
pub struct Executor {
    conn: Connection,
    timeout: Duration,
}

impl Executor {
    pub fn open(path: &Path) -> Result<Executor, ExecError> {
        if !path.is_file() {
            return Err(ExecError::Open { path: path.to_owned(), reason: "no such file".into() });
        }
        let conn = Connection::open_with_flags(path, OpenFlags::SQLITE_OPEN_READ_ONLY | OpenFlags::SQLITE_OPEN_NO_MUTEX)
            .map_err(|e| ExecError::Open { path: path.to_owned(), reason: e.to_string() })?;
        Ok(Executor { conn, timeout: DEFAULT_TIMEOUT })
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Executor {
        self.timeout = timeout;
        self
    }

    pub fn execute(&self, sql: &str, row_cap: usize) -> Result<ExecutionResult, ExecError> {
        let start = Instant::now();
        let mut stmt = self.conn.prepare(sql).map_err(|e| ExecError::Sql(e.to_string()))?;
        let lead = sql.trim_start().split(|c: char| !c.is_ascii_alphabetic()).next().unwrap_or("").to_ascii_lowercase();
        if !stmt.readonly() || !matches!(lead.as_str(), "select" | "with" | "values") {
            return Err(ExecError::ReadOnly);
        }
        let deadline = start + self.timeout;
        self.conn
            .progress_handler(1000, Some(move || Instant::now() > deadline))
            .map_err(|e| ExecError::Sql(e.to_string()))?;
        let columns: Vec<String> = stmt.column_names().into_iter().map(String::from).collect();
        let width = columns.len();
        let mut rows = Vec::new();
        let mut truncated = false;
        let result = (|| {
            let mut q = stmt.query([])?;
            while let Some(r) = q.next()? {
                if rows.len() == row_cap {
                    truncated = true;
                    break;
                }
                rows.push((0..width).map(|i| r.get_ref(i).map(Cell::from_sqlite)).collect::<Result<Vec<_>, _>>()?);
            }
            Ok::<(), rusqlite::Error>(())
        })();
        self.conn.progress_handler(0, None::<fn() -> bool>).ok();
        match result {
            Ok(()) => Ok(ExecutionResult { columns, rows, truncated, elapsed_ms: start.elapsed().as_secs_f64() * 1000.0 }),
            Err(rusqlite::Error::SqliteFailure(e, _)) if e.code == rusqlite::ErrorCode::OperationInterrupted => {
                Err(ExecError::Timeout(self.timeout))
            }
            Err(e) => Err(ExecError::Sql(e.to_string())),
        }
    }
}

fn cells_equal(a: &Cell, b: &Cell, tolerant: bool) -> bool {
    match (a.as_f64(), b.as_f64()) {
        (Some(x), Some(y)) if tolerant => {
            let diff = (x - y).abs();
            diff <= NUMERIC_TOLERANCE || diff <= NUMERIC_TOLERANCE * x.abs().max(y.abs())
        }
        (Some(x), Some(y)) => x == y,
        _ => a == b,
    }
}

/// Header without table qualifiers or quoting, for alignment.
fn header_key(h: &str) -> String {
    let mut s = h.to_lowercase().replace(['`', '"', '[', ']', ' '], "");
    while let Some(dot) = s.find('.') {
        let start = s[..dot].rfind(|c: char| !c.is_alphanumeric() && c != '_').map(|i| i + 1).unwrap_or(0);
        s.replace_range(start..=dot, "");
    }
    s
}

/// Column of `b` paired with each column of `a`: same header first, then
/// the leftmost unused column.
fn align(a: &[String], b: &[String]) -> Vec<usize> {
    let mut used = vec![false; b.len()];
    let mut out = vec![usize::MAX; a.len()];
    for (i, h) in a.iter().enumerate() {
        let key = header_key(h);
        if let Some(j) = (0..b.len()).find(|j| !used[*j] && header_key(&b[*j]) == key) {
            used[j] = true;
            out[i] = j;
        }
    }
    for slot in out.iter_mut().filter(|s| **s == usize::MAX) {
        let j = (0..b.len()).find(|j| !used[*j]).unwrap();
        used[j] = true;
        *slot = j;
    }
    out
}

fn sort_key(row: &[Cell]) -> Vec<(u8, i64, String)> {
    row.iter()
        .map(|c| match c {
            Cell::Null => (0, 0, String::new()),
            Cell::Int(_) | Cell::Real(_) => (1, (c.as_f64().unwrap() * 1e4).round() as i64, String::new()),
            Cell::Text(t) => (2, 0, t.clone()),
            Cell::Blob(b) => (3, 0, format!("{b:?}")),
        })
        .collect()
}

/// Execution match: equal row multisets (sequences when `ordered`), after
/// aligning columns by header and position.
pub fn exec_match(a: &ExecutionResult, b: &ExecutionResult, ordered: bool) -> bool {
    exec_match_with(a, b, ordered, true)
}

/// [`exec_match`] with the numeric tolerance optionally disabled.
pub fn exec_match_with(a: &ExecutionResult, b: &ExecutionResult, ordered: bool, tolerant: bool) -> bool {
    if a.columns.len() != b.columns.len() || a.rows.len() != b.rows.len() {
        return false;
    }
    let map = align(&a.columns, &b.columns);
    let b_rows: Vec<Vec<Cell>> = b.rows.iter().map(|r| map.iter().map(|j| r[*j].clone()).collect()).collect();
    let row_eq = |x: &[Cell], y: &[Cell]| x.iter().zip(y).all(|(p, q)| cells_equal(p, q, tolerant));
    if ordered {
        return a.rows.iter().zip(&b_rows).all(|(x, y)| row_eq(x, y));
    }
    let mut xs: Vec<&Vec<Cell>> = a.rows.iter().collect();
    let mut ys: Vec<&Vec<Cell>> = b_rows.iter().collect();
    xs.sort_by_key(|r| sort_key(r));
    ys.sort_by_key(|r| sort_key(r));
    if xs.iter().zip(&ys).all(|(x, y)| row_eq(x, y)) {
        return true;
    }
    // Rounding in the sort key can split near-equal numbers; fall back to
    // pairwise matching.
    let mut taken = vec![false; ys.len()];
    xs.iter().all(|x| match (0..ys.len()).find(|j| !taken[*j] && row_eq(x, ys[*j])) {
        Some(j) => {
            taken[j] = true;
            true
        }
        None => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn res(cols: &[&str], rows: Vec<Vec<Cell>>) -> ExecutionResult {
        ExecutionResult { columns: cols.iter().map(|s| s.to_string()).collect(), rows, truncated: false, elapsed_ms: 0.0 }
    }

    #[test]
    fn order_and_tolerance() {
        let a = res(&["x"], vec![vec![Cell::Int(1)], vec![Cell::Real(3.0)]]);
        let b = res(&["x"], vec![vec![Cell::Real(3.0000000001)], vec![Cell::Int(1)]]);
        assert!(exec_match(&a, &b, false));
        assert!(!exec_match(&a, &b, true));
        assert!(!exec_match_with(&a, &b, false, false));
    }

    #[test]
    fn columns_align_by_header() {
        let a = res(&["avg(T1.age)", "name"], vec![vec![Cell::Real(2.5), Cell::Text("a".into())]]);
        let b = res(&["name", "avg(age)"], vec![vec![Cell::Text("a".into()), Cell::Real(2.5)]]);
        assert!(exec_match(&a, &b, true));
        assert_eq!(header_key("avg(T1.age)"), "avg(age)");
    }
}

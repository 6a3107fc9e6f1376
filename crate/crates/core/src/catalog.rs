//! Database schemas and content summaries.
//!
//! A [`SchemaCatalog`] is built either from a live SQLite file
//! ([`load_from_database`]) or from a Spider `tables.json` document
//! ([`load_from_spider_tables`]). Columns are addressed by a flattened
//! [`ColumnId`] following the Spider convention: index 0 is `*`, then every
//! column of every table in declaration order.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};

use rusqlite::{Connection, OpenFlags};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Upper bound on the number of distinct values kept per column.
pub const DISTINCT_VALUE_CAP: usize = 10_000;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read database {path}: {reason}")]
    Unreadable { path: PathBuf, reason: String },
    #[error("corrupt database {path}: {reason}")]
    Corrupt { path: PathBuf, reason: String },
    #[error("database {0} has no user tables")]
    NoTables(String),
    #[error("duplicate table name `{0}` (names are compared case-insensitively)")]
    DuplicateTable(String),
    #[error("duplicate column `{column}` in table `{table}`")]
    DuplicateColumn { table: String, column: String },
    #[error("foreign key endpoint {0} does not name an existing column")]
    DanglingForeignKey(String),
    #[error("malformed tables document: {0}")]
    Malformed(String),
    #[error("unknown table `{0}`")]
    UnknownTable(String),
    #[error("unknown column `{0}`")]
    UnknownColumn(String),
    #[error("catalog `{0}` has no content source")]
    NoContent(String),
    #[error("sqlite error: {0}")]
    Sqlite(#[from] rusqlite::Error),
}

/// Flattened column index; `ColumnId::STAR` is `*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColumnId(pub usize);

impl ColumnId {
    pub const STAR: ColumnId = ColumnId(0);

    pub fn is_star(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TableId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Affinity {
    Number,
    Text,
    Time,
}

impl Affinity {
    /// Maps a declared SQL column type onto one of the three affinities.
    pub fn from_declared(declared: &str) -> Affinity {
        let t = declared.to_ascii_lowercase();
        if t.contains("bool") {
            return Affinity::Text;
        }
        const NUMERIC: [&str; 7] = ["int", "real", "floa", "doub", "num", "dec", "money"];
        if NUMERIC.iter().any(|n| t.contains(n)) {
            return Affinity::Number;
        }
        if t.contains("date") || t.contains("time") || t.contains("year") {
            return Affinity::Time;
        }
        Affinity::Text
    }

    /// Spider `column_types` strings.
    pub fn from_spider(kind: &str) -> Affinity {
        match kind {
            "number" => Affinity::Number,
            "time" => Affinity::Time,
            _ => Affinity::Text,
        }
    }

    fn declared_type(self) -> &'static str {
        match self {
            Affinity::Number => "NUMERIC",
            Affinity::Text => "TEXT",
            Affinity::Time => "DATETIME",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ColumnDef {
    pub name: String,
    /// Human-readable name used in explanations ("product type code").
    pub display: String,
    pub affinity: Affinity,
    pub is_primary_key: bool,
    /// Distinct non-null values as text, most frequent first, ties lexicographic.
    pub distinct_values: Vec<String>,
    pub most_frequent: Option<String>,
    /// Optional allowlist that replaces `distinct_values` for content search.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub picklist: Option<Vec<String>>,
}

impl ColumnDef {
    pub fn new(name: impl Into<String>, affinity: Affinity) -> ColumnDef {
        let name = name.into();
        ColumnDef {
            display: humanize(&name),
            name,
            affinity,
            is_primary_key: false,
            distinct_values: Vec::new(),
            most_frequent: None,
            picklist: None,
        }
    }

    /// Values visible to content search.
    pub fn searchable_values(&self) -> &[String] {
        self.picklist.as_deref().unwrap_or(&self.distinct_values)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableDef {
    pub name: String,
    pub display: String,
    pub columns: Vec<ColumnDef>,
    pub row_count: u64,
}

impl TableDef {
    pub fn new(name: impl Into<String>, columns: Vec<ColumnDef>) -> TableDef {
        let name = name.into();
        TableDef { display: humanize(&name), name, columns, row_count: 0 }
    }
}

/// Foreign-key endpoint by name, as serialized for the API.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnRef {
    pub table: String,
    pub column: String,
}

impl fmt::Display for ColumnRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.table, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForeignKey {
    pub from: ColumnRef,
    pub to: ColumnRef,
    #[serde(skip)]
    pub from_id: ColumnId,
    #[serde(skip)]
    pub to_id: ColumnId,
}

#[derive(Clone, Debug, Serialize)]
pub struct SchemaCatalog {
    pub db_id: String,
    pub tables: Vec<TableDef>,
    pub foreign_keys: Vec<ForeignKey>,
    #[serde(skip)]
    offsets: Vec<usize>,
    #[serde(skip)]
    source: Option<PathBuf>,
}

impl PartialEq for SchemaCatalog {
    fn eq(&self, other: &Self) -> bool {
        self.db_id == other.db_id && self.tables == other.tables && self.foreign_keys == other.foreign_keys
    }
}

impl SchemaCatalog {
    /// Validates and indexes a catalog. Foreign keys are given by name.
    pub fn new(
        db_id: impl Into<String>,
        tables: Vec<TableDef>,
        foreign_keys: Vec<(ColumnRef, ColumnRef)>,
    ) -> Result<SchemaCatalog, CatalogError> {
        let db_id = db_id.into();
        if tables.is_empty() {
            return Err(CatalogError::NoTables(db_id));
        }
        let mut seen = HashSet::new();
        for t in &tables {
            if !seen.insert(t.name.to_lowercase()) {
                return Err(CatalogError::DuplicateTable(t.name.clone()));
            }
            let mut cols = HashSet::new();
            for c in &t.columns {
                if !cols.insert(c.name.to_lowercase()) {
                    return Err(CatalogError::DuplicateColumn { table: t.name.clone(), column: c.name.clone() });
                }
            }
        }
        let mut offsets = Vec::with_capacity(tables.len());
        let mut next = 1;
        for t in &tables {
            offsets.push(next);
            next += t.columns.len();
        }
        if next == 1 {
            return Err(CatalogError::Malformed(format!("catalog {db_id} has no columns")));
        }
        let mut catalog = SchemaCatalog { db_id, tables, foreign_keys: Vec::new(), offsets, source: None };
        let mut fks = Vec::new();
        for (from, to) in foreign_keys {
            let from_id = catalog
                .column_by_name(&from.table, &from.column)
                .ok_or_else(|| CatalogError::DanglingForeignKey(from.to_string()))?;
            let to_id = catalog
                .column_by_name(&to.table, &to.column)
                .ok_or_else(|| CatalogError::DanglingForeignKey(to.to_string()))?;
            let fk = ForeignKey {
                from: catalog.column_ref(from_id),
                to: catalog.column_ref(to_id),
                from_id,
                to_id,
            };
            if !fks.contains(&fk) {
                fks.push(fk);
            }
        }
        catalog.foreign_keys = fks;
        Ok(catalog)
    }

    pub fn with_source(mut self, path: impl Into<PathBuf>) -> SchemaCatalog {
        self.source = Some(path.into());
        self
    }

    pub fn source(&self) -> Option<&Path> {
        self.source.as_deref()
    }

    /// Number of selectable columns K, counting `*`.
    pub fn column_count(&self) -> usize {
        1 + self.tables.iter().map(|t| t.columns.len()).sum::<usize>()
    }

    pub fn table(&self, id: TableId) -> &TableDef {
        &self.tables[id.0]
    }

    pub fn table_ids(&self) -> impl Iterator<Item = TableId> {
        (0..self.tables.len()).map(TableId)
    }

    pub fn table_by_name(&self, name: &str) -> Option<TableId> {
        self.tables.iter().position(|t| t.name.eq_ignore_ascii_case(name)).map(TableId)
    }

    /// Owning table of a column; `None` for `*`.
    pub fn table_of(&self, id: ColumnId) -> Option<TableId> {
        if id.is_star() {
            return None;
        }
        let pos = self.offsets.partition_point(|&o| o <= id.0);
        Some(TableId(pos - 1))
    }

    pub fn column(&self, id: ColumnId) -> Option<&ColumnDef> {
        let t = self.table_of(id)?;
        self.tables[t.0].columns.get(id.0 - self.offsets[t.0])
    }

    pub fn column_id(&self, table: TableId, index: usize) -> ColumnId {
        ColumnId(self.offsets[table.0] + index)
    }

    pub fn columns_of(&self, table: TableId) -> impl Iterator<Item = ColumnId> + '_ {
        let start = self.offsets[table.0];
        (start..start + self.tables[table.0].columns.len()).map(ColumnId)
    }

    pub fn column_by_name(&self, table: &str, column: &str) -> Option<ColumnId> {
        let t = self.table_by_name(table)?;
        self.column_in_table(t, column)
    }

    pub fn column_in_table(&self, table: TableId, column: &str) -> Option<ColumnId> {
        let idx = self.tables[table.0].columns.iter().position(|c| c.name.eq_ignore_ascii_case(column))?;
        Some(self.column_id(table, idx))
    }

    /// `table.column`, or `*`.
    pub fn qualified_name(&self, id: ColumnId) -> String {
        match (self.table_of(id), self.column(id)) {
            (Some(t), Some(c)) => format!("{}.{}", self.tables[t.0].name, c.name),
            _ => "*".to_string(),
        }
    }

    pub fn column_ref(&self, id: ColumnId) -> ColumnRef {
        let t = self.table_of(id).expect("column ref of *");
        ColumnRef { table: self.tables[t.0].name.clone(), column: self.column(id).unwrap().name.clone() }
    }

    /// Column used to ground a table in an action sequence: its first primary
    /// key column, or its first column.
    pub fn anchor_column(&self, table: TableId) -> ColumnId {
        let cols = &self.tables[table.0].columns;
        let idx = cols.iter().position(|c| c.is_primary_key).unwrap_or(0);
        self.column_id(table, idx)
    }

    /// True when a foreign key links the two columns in either direction.
    pub fn is_foreign_key_pair(&self, a: ColumnId, b: ColumnId) -> bool {
        self.foreign_keys
            .iter()
            .any(|fk| (fk.from_id == a && fk.to_id == b) || (fk.from_id == b && fk.to_id == a))
    }

    /// Replaces the searchable values of one column with an allowlist.
    pub fn set_picklist(&mut self, column: ColumnId, values: Vec<String>) -> Result<(), CatalogError> {
        let t = self.table_of(column).ok_or_else(|| CatalogError::UnknownColumn("*".into()))?;
        let idx = column.0 - self.offsets[t.0];
        self.tables[t.0].columns[idx].picklist = Some(values);
        Ok(())
    }

    /// DDL that recreates the schema (no content).
    pub fn to_ddl(&self) -> String {
        let mut out = String::new();
        for (ti, t) in self.tables.iter().enumerate() {
            let mut parts: Vec<String> = t
                .columns
                .iter()
                .map(|c| format!("{} {}", quote_ident(&c.name), c.affinity.declared_type()))
                .collect();
            let pk: Vec<String> =
                t.columns.iter().filter(|c| c.is_primary_key).map(|c| quote_ident(&c.name)).collect();
            if !pk.is_empty() {
                parts.push(format!("PRIMARY KEY ({})", pk.join(", ")));
            }
            for fk in self.foreign_keys.iter().filter(|fk| self.table_of(fk.from_id) == Some(TableId(ti))) {
                parts.push(format!(
                    "FOREIGN KEY ({}) REFERENCES {}({})",
                    quote_ident(&fk.from.column),
                    quote_ident(&fk.to.table),
                    quote_ident(&fk.to.column)
                ));
            }
            out.push_str(&format!("CREATE TABLE {} ({});\n", quote_ident(&t.name), parts.join(", ")));
        }
        out
    }

    /// Writes an empty database with this schema.
    pub fn create_database(&self, path: &Path) -> Result<(), CatalogError> {
        let conn = Connection::open(path)?;
        conn.execute_batch(&self.to_ddl())?;
        Ok(())
    }
}

pub(crate) fn quote_ident(name: &str) -> String {
    format!("\"{}\"", name.replace('"', "\"\""))
}

/// `product_type_code` → `product type code`.
pub fn humanize(name: &str) -> String {
    let mut out = String::with_capacity(name.len());
    let mut prev_lower = false;
    for ch in name.chars() {
        if ch == '_' || ch == '-' {
            if !out.ends_with(' ') && !out.is_empty() {
                out.push(' ');
            }
            prev_lower = false;
            continue;
        }
        if ch.is_uppercase() && prev_lower {
            out.push(' ');
        }
        prev_lower = ch.is_lowercase() || ch.is_ascii_digit();
        out.extend(ch.to_lowercase());
    }
    out.trim().to_string()
}

/// Loads schema and content summaries from a SQLite file.
pub fn load_from_database(path: &Path) -> Result<SchemaCatalog, CatalogError> {
    let db_id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    if let Err(e) = std::fs::metadata(path) {
        return Err(CatalogError::Unreadable { path: path.to_owned(), reason: e.to_string() });
    }
    let conn = Connection::open_with_flags(path, OpenFlags::SQLITE_OPEN_READ_ONLY | OpenFlags::SQLITE_OPEN_NO_MUTEX)
        .map_err(|e| CatalogError::Unreadable { path: path.to_owned(), reason: e.to_string() })?;
    let corrupt = |e: rusqlite::Error| CatalogError::Corrupt { path: path.to_owned(), reason: e.to_string() };

    let mut stmt = conn
        .prepare("SELECT name FROM sqlite_master WHERE type = 'table' AND name NOT LIKE 'sqlite_%' ORDER BY rowid")
        .map_err(corrupt)?;
    let names: Vec<String> =
        stmt.query_map([], |r| r.get(0)).map_err(corrupt)?.collect::<Result<_, _>>().map_err(corrupt)?;
    if names.is_empty() {
        return Err(CatalogError::NoTables(db_id));
    }

    let mut tables = Vec::new();
    let mut fks = Vec::new();
    for name in &names {
        let mut cols = Vec::new();
        let mut info = conn.prepare(&format!("PRAGMA table_info({})", quote_ident(name))).map_err(corrupt)?;
        let rows = info
            .query_map([], |r| Ok((r.get::<_, String>(1)?, r.get::<_, String>(2)?, r.get::<_, i64>(5)?)))
            .map_err(corrupt)?;
        let mut pk_cols = Vec::new();
        for row in rows {
            let (cname, declared, pk) = row.map_err(corrupt)?;
            let mut col = ColumnDef::new(cname.clone(), Affinity::from_declared(&declared));
            col.is_primary_key = pk > 0;
            if pk > 0 {
                pk_cols.push(cname);
            }
            cols.push(col);
        }
        let row_count: i64 = conn
            .query_row(&format!("SELECT count(*) FROM {}", quote_ident(name)), [], |r| r.get(0))
            .map_err(corrupt)?;
        for col in &mut cols {
            summarize_column(&conn, name, col).map_err(corrupt)?;
        }
        let mut table = TableDef::new(name.clone(), cols);
        table.row_count = row_count as u64;
        tables.push(table);

        let mut fk_stmt =
            conn.prepare(&format!("PRAGMA foreign_key_list({})", quote_ident(name))).map_err(corrupt)?;
        let fk_rows = fk_stmt
            .query_map([], |r| Ok((r.get::<_, String>(2)?, r.get::<_, String>(3)?, r.get::<_, Option<String>>(4)?)))
            .map_err(corrupt)?;
        for row in fk_rows {
            let (target, from_col, to_col) = row.map_err(corrupt)?;
            fks.push((name.clone(), from_col, target, to_col));
        }
    }

    let mut resolved = Vec::new();
    for (table, from_col, target, to_col) in fks {
        let to_col = match to_col {
            Some(c) => c,
            None => {
                // implicit reference to the target's primary key
                let t = tables
                    .iter()
                    .find(|t| t.name.eq_ignore_ascii_case(&target))
                    .ok_or_else(|| CatalogError::DanglingForeignKey(format!("{target}.?")))?;
                t.columns
                    .iter()
                    .find(|c| c.is_primary_key)
                    .map(|c| c.name.clone())
                    .ok_or_else(|| CatalogError::DanglingForeignKey(format!("{target}.?")))?
            }
        };
        resolved.push((
            ColumnRef { table, column: from_col },
            ColumnRef { table: canonical_table_name(&tables, &target), column: to_col },
        ));
    }
    Ok(SchemaCatalog::new(db_id, tables, resolved)?.with_source(path))
}

fn canonical_table_name(tables: &[TableDef], name: &str) -> String {
    tables.iter().find(|t| t.name.eq_ignore_ascii_case(name)).map(|t| t.name.clone()).unwrap_or_else(|| name.into())
}

fn summarize_column(conn: &Connection, table: &str, col: &mut ColumnDef) -> rusqlite::Result<()> {
    let c = quote_ident(&col.name);
    let sql = format!(
        "SELECT CAST({c} AS TEXT) AS v, count(*) AS n FROM {} WHERE {c} IS NOT NULL \
         GROUP BY v ORDER BY n DESC, v ASC LIMIT {DISTINCT_VALUE_CAP}",
        quote_ident(table)
    );
    let mut stmt = conn.prepare(&sql)?;
    let values = stmt.query_map([], |r| r.get::<_, String>(0))?.collect::<Result<Vec<_>, _>>()?;
    col.most_frequent = values.first().cloned();
    col.distinct_values = values;
    Ok(())
}

#[derive(Deserialize)]
struct SpiderEntry {
    db_id: String,
    table_names_original: Vec<String>,
    #[serde(default)]
    table_names: Vec<String>,
    column_names_original: Vec<(i64, String)>,
    #[serde(default)]
    column_names: Vec<(i64, String)>,
    column_types: Vec<String>,
    #[serde(default)]
    foreign_keys: Vec<(usize, usize)>,
    #[serde(default)]
    primary_keys: Vec<serde_json::Value>,
}

/// Parses a Spider `tables.json` document into one catalog per `db_id`.
pub fn load_from_spider_tables(doc: &str) -> Result<Vec<SchemaCatalog>, CatalogError> {
    let entries: Vec<SpiderEntry> =
        serde_json::from_str(doc).map_err(|e| CatalogError::Malformed(e.to_string()))?;
    entries.into_iter().map(spider_entry_to_catalog).collect()
}

fn spider_entry_to_catalog(e: SpiderEntry) -> Result<SchemaCatalog, CatalogError> {
    if e.table_names_original.is_empty() {
        return Err(CatalogError::NoTables(e.db_id));
    }
    if e.column_types.len() != e.column_names_original.len() {
        return Err(CatalogError::Malformed(format!("{}: column_types length mismatch", e.db_id)));
    }
    let mut pks = HashSet::new();
    for pk in &e.primary_keys {
        match pk {
            serde_json::Value::Number(n) => {
                pks.insert(n.as_u64().unwrap_or(0) as usize);
            }
            serde_json::Value::Array(items) => pks.extend(items.iter().filter_map(|v| v.as_u64()).map(|v| v as usize)),
            _ => return Err(CatalogError::Malformed(format!("{}: bad primary key entry", e.db_id))),
        }
    }
    let mut tables: Vec<TableDef> = e
        .table_names_original
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let mut t = TableDef::new(name.clone(), Vec::new());
            if let Some(display) = e.table_names.get(i) {
                t.display = display.clone();
            }
            t
        })
        .collect();
    // flat index -> (table, name)
    let mut flat: HashMap<usize, (usize, String)> = HashMap::new();
    for (i, (table, name)) in e.column_names_original.iter().enumerate() {
        if *table < 0 {
            continue;
        }
        let table = *table as usize;
        let t = tables
            .get_mut(table)
            .ok_or_else(|| CatalogError::Malformed(format!("{}: column {name} names table {table}", e.db_id)))?;
        let mut col = ColumnDef::new(name.clone(), Affinity::from_spider(&e.column_types[i]));
        if let Some((_, display)) = e.column_names.get(i) {
            col.display = display.clone();
        }
        col.is_primary_key = pks.contains(&i);
        t.columns.push(col);
        flat.insert(i, (table, name.clone()));
    }
    let mut fks = Vec::new();
    for (from, to) in &e.foreign_keys {
        let endpoint = |idx: &usize| {
            flat.get(idx)
                .map(|(t, c)| ColumnRef { table: e.table_names_original[*t].clone(), column: c.clone() })
                .ok_or_else(|| CatalogError::DanglingForeignKey(format!("{}: column index {idx}", e.db_id)))
        };
        fks.push((endpoint(from)?, endpoint(to)?));
    }
    SchemaCatalog::new(e.db_id, tables, fks)
}

/// Cell value as returned by the executor and content previews.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Null,
    Int(i64),
    Real(f64),
    Text(String),
    Blob(Vec<u8>),
}

impl Cell {
    pub fn from_sqlite(v: rusqlite::types::ValueRef<'_>) -> Cell {
        use rusqlite::types::ValueRef;
        match v {
            ValueRef::Null => Cell::Null,
            ValueRef::Integer(i) => Cell::Int(i),
            ValueRef::Real(f) => Cell::Real(f),
            ValueRef::Text(t) => Cell::Text(String::from_utf8_lossy(t).into_owned()),
            ValueRef::Blob(b) => Cell::Blob(b.to_vec()),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(i) => Some(*i as f64),
            Cell::Real(f) => Some(*f),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RowPage {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

/// First `limit` rows of a table in storage order.
pub fn content_preview(catalog: &SchemaCatalog, table: &str, limit: usize) -> Result<RowPage, CatalogError> {
    let tid = catalog.table_by_name(table).ok_or_else(|| CatalogError::UnknownTable(table.to_string()))?;
    let def = catalog.table(tid);
    let columns: Vec<String> = def.columns.iter().map(|c| c.name.clone()).collect();
    if limit == 0 {
        return Ok(RowPage { columns, rows: Vec::new() });
    }
    let path = catalog.source().ok_or_else(|| CatalogError::NoContent(catalog.db_id.clone()))?;
    let conn = Connection::open_with_flags(path, OpenFlags::SQLITE_OPEN_READ_ONLY | OpenFlags::SQLITE_OPEN_NO_MUTEX)?;
    let sql = format!("SELECT * FROM {} ORDER BY rowid LIMIT {limit}", quote_ident(&def.name));
    let mut stmt = match conn.prepare(&sql) {
        Ok(s) => s,
        // WITHOUT ROWID tables
        Err(_) => conn.prepare(&format!("SELECT * FROM {} LIMIT {limit}", quote_ident(&def.name)))?,
    };
    let width = stmt.column_count();
    let rows = stmt
        .query_map([], |r| (0..width).map(|i| r.get_ref(i).map(Cell::from_sqlite)).collect::<Result<Vec<_>, _>>())?
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RowPage { columns, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn db_with(sql: &str) -> (tempfile::TempDir, PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.sqlite");
        let conn = Connection::open(&path).unwrap();
        conn.execute_batch(sql).unwrap();
        (dir, path)
    }

    #[test]
    fn most_frequent_value() {
        let (_d, path) = db_with("CREATE TABLE t(a integer); INSERT INTO t VALUES (1),(1),(2);");
        let cat = load_from_database(&path).unwrap();
        let a = cat.column(ColumnId(1)).unwrap();
        assert_eq!(a.affinity, Affinity::Number);
        assert_eq!(a.most_frequent.as_deref(), Some("1"));
        assert_eq!(a.distinct_values, vec!["1", "2"]);
        assert_eq!(cat.tables[0].row_count, 3);
    }

    #[test]
    fn empty_table_has_no_most_frequent() {
        let (_d, path) = db_with("CREATE TABLE t(a text);");
        let cat = load_from_database(&path).unwrap();
        assert_eq!(cat.tables[0].row_count, 0);
        assert_eq!(cat.column(ColumnId(1)).unwrap().most_frequent, None);
    }

    #[test]
    fn zero_tables_is_an_error() {
        let (_d, path) = db_with("CREATE VIEW v AS SELECT 1;");
        assert!(matches!(load_from_database(&path), Err(CatalogError::NoTables(_))));
    }

    #[test]
    fn missing_file_is_unreadable() {
        let err = load_from_database(Path::new("/nonexistent/x.sqlite")).unwrap_err();
        assert!(matches!(err, CatalogError::Unreadable { .. }));
    }

    #[test]
    fn garbage_file_is_corrupt() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("junk.sqlite");
        std::fs::write(&path, vec![7u8; 4096]).unwrap();
        let err = load_from_database(&path).unwrap_err();
        assert!(matches!(err, CatalogError::Corrupt { .. } | CatalogError::Unreadable { .. }), "{err}");
    }

    #[test]
    fn affinity_mapping() {
        assert_eq!(Affinity::from_declared("INTEGER"), Affinity::Number);
        assert_eq!(Affinity::from_declared("decimal(10,2)"), Affinity::Number);
        assert_eq!(Affinity::from_declared("DATETIME"), Affinity::Time);
        assert_eq!(Affinity::from_declared("boolean"), Affinity::Text);
        assert_eq!(Affinity::from_declared("varchar(20)"), Affinity::Text);
        assert_eq!(Affinity::from_declared(""), Affinity::Text);
        assert_eq!(Affinity::from_spider("boolean"), Affinity::Text);
        assert_eq!(Affinity::from_spider("others"), Affinity::Text);
    }

    #[test]
    fn flattened_ids_follow_spider_layout() {
        let (_d, path) = db_with("CREATE TABLE a(x int, y int); CREATE TABLE b(z text, a_x int REFERENCES a(x));");
        let cat = load_from_database(&path).unwrap();
        assert_eq!(cat.column_count(), 5);
        assert_eq!(cat.qualified_name(ColumnId(3)), "b.z");
        assert_eq!(cat.table_of(ColumnId(2)), Some(TableId(0)));
        assert_eq!(cat.table_of(ColumnId::STAR), None);
        assert_eq!(cat.foreign_keys.len(), 1);
        assert_eq!(cat.foreign_keys[0].to_id, ColumnId(1));
    }

    #[test]
    fn case_insensitive_duplicates_rejected() {
        let t = TableDef::new("T", vec![ColumnDef::new("a", Affinity::Text), ColumnDef::new("A", Affinity::Text)]);
        assert!(matches!(SchemaCatalog::new("x", vec![t], vec![]), Err(CatalogError::DuplicateColumn { .. })));
        let t1 = TableDef::new("T", vec![ColumnDef::new("a", Affinity::Text)]);
        let t2 = TableDef::new("t", vec![ColumnDef::new("a", Affinity::Text)]);
        assert!(matches!(SchemaCatalog::new("x", vec![t1, t2], vec![]), Err(CatalogError::DuplicateTable(_))));
    }

    const SPIDER: &str = r#"[{
        "db_id": "concert_singer",
        "table_names_original": ["stadium", "singer"],
        "table_names": ["stadium", "singer"],
        "column_names_original": [[-1,"*"],[0,"Stadium_ID"],[0,"Name"],[1,"Singer_ID"],[1,"Stadium_ID"],[1,"Is_male"]],
        "column_names": [[-1,"*"],[0,"stadium id"],[0,"name"],[1,"singer id"],[1,"stadium id"],[1,"is male"]],
        "column_types": ["text","number","text","number","number","boolean"],
        "foreign_keys": [[4,1]],
        "primary_keys": [1,3]
    }]"#;

    #[test]
    fn spider_entry_loads() {
        let cats = load_from_spider_tables(SPIDER).unwrap();
        assert_eq!(cats.len(), 1);
        let c = &cats[0];
        assert_eq!(c.db_id, "concert_singer");
        assert_eq!(c.column_count(), 6);
        assert_eq!(c.column(ColumnId(5)).unwrap().affinity, Affinity::Text);
        assert!(c.column(ColumnId(1)).unwrap().is_primary_key);
        assert_eq!(c.foreign_keys[0].from.to_string(), "singer.Stadium_ID");
    }

    #[test]
    fn spider_dangling_fk_and_empty_entry() {
        let bad = SPIDER.replace("[[4,1]]", "[[4,99]]");
        assert!(matches!(load_from_spider_tables(&bad), Err(CatalogError::DanglingForeignKey(_))));
        let empty = r#"[{"db_id":"e","table_names_original":[],"column_names_original":[[-1,"*"]],"column_types":["text"]}]"#;
        assert!(matches!(load_from_spider_tables(empty), Err(CatalogError::NoTables(_))));
        assert!(matches!(load_from_spider_tables("{"), Err(CatalogError::Malformed(_))));
    }

    #[test]
    fn spider_catalog_round_trips_through_sqlite() {
        let cat = load_from_spider_tables(SPIDER).unwrap().remove(0);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("concert_singer.sqlite");
        cat.create_database(&path).unwrap();
        let back = load_from_database(&path).unwrap();
        assert_eq!(back.db_id, cat.db_id);
        for (a, b) in back.tables.iter().zip(&cat.tables) {
            assert_eq!(a.name, b.name);
            let sig = |t: &TableDef| t.columns.iter().map(|c| (c.name.clone(), c.affinity, c.is_primary_key)).collect::<Vec<_>>();
            assert_eq!(sig(a), sig(b));
        }
        assert_eq!(back.foreign_keys, cat.foreign_keys);
    }

    #[test]
    fn preview_limits_and_errors() {
        let (_d, path) = db_with("CREATE TABLE t(a int, b text); INSERT INTO t VALUES (1,'x'),(2,'y'),(3,'z');");
        let cat = load_from_database(&path).unwrap();
        let page = content_preview(&cat, "t", 2).unwrap();
        assert_eq!(page.columns, vec!["a", "b"]);
        assert_eq!(page.rows, vec![vec![Cell::Int(1), Cell::Text("x".into())], vec![Cell::Int(2), Cell::Text("y".into())]]);
        assert!(content_preview(&cat, "t", 0).unwrap().rows.is_empty());
        assert!(matches!(content_preview(&cat, "nope", 5), Err(CatalogError::UnknownTable(_))));
    }

    #[test]
    fn humanize_names() {
        assert_eq!(humanize("product_type_code"), "product type code");
        assert_eq!(humanize("Continent"), "continent");
        assert_eq!(humanize("SongName"), "song name");
        assert_eq!(humanize("employee_ID"), "employee id");
    }

    #[test]
    fn serialization_field_names() {
        let cat = load_from_spider_tables(SPIDER).unwrap().remove(0);
        let v = serde_json::to_value(&cat).unwrap();
        for key in ["db_id", "tables", "foreign_keys"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert!(v["tables"][0]["columns"][0].get("affinity").is_some());
        assert_eq!(v["tables"][1]["columns"][2]["affinity"], "text");
    }
}

//! Spider-layout database directories and gold files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::catalog::{load_from_database, CatalogError, SchemaCatalog};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoldExample {
    pub db_id: String,
    pub question: String,
    pub query: String,
}

pub fn load_gold(path: &Path) -> Result<Vec<GoldExample>, CatalogError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CatalogError::Unreadable { path: path.to_owned(), reason: e.to_string() })?;
    serde_json::from_str(&text).map_err(|e| CatalogError::Malformed(format!("{}: {e}", path.display())))
}

/// `<root>/<db_id>/<db_id>.sqlite` databases with their catalogs loaded
/// once.
#[derive(Debug)]
pub struct DatabaseDir {
    root: PathBuf,
    catalogs: BTreeMap<String, SchemaCatalog>,
}

impl DatabaseDir {
    pub fn open(root: &Path) -> Result<DatabaseDir, CatalogError> {
        let entries = std::fs::read_dir(root)
            .map_err(|e| CatalogError::Unreadable { path: root.to_owned(), reason: e.to_string() })?;
        let mut catalogs = BTreeMap::new();
        for entry in entries.flatten() {
            let dir = entry.path();
            let Some(name) = dir.file_name().map(|n| n.to_string_lossy().into_owned()) else { continue };
            let file = dir.join(format!("{name}.sqlite"));
            if file.is_file() {
                catalogs.insert(name, load_from_database(&file)?);
            }
        }
        Ok(DatabaseDir { root: root.to_owned(), catalogs })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.catalogs.keys().map(String::as_str)
    }

    pub fn catalog(&self, db_id: &str) -> Option<&SchemaCatalog> {
        self.catalogs.get(db_id)
    }

    pub fn catalog_mut(&mut self, db_id: &str) -> Option<&mut SchemaCatalog> {
        self.catalogs.get_mut(db_id)
    }

    pub fn path(&self, db_id: &str) -> PathBuf {
        self.root.join(db_id).join(format!("{db_id}.sqlite"))
    }
}

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Duration;

use nldb_core::hypothesis::BeamConfig;
use serde::Deserialize;

use crate::ServiceError;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ServiceConfig {
    pub database_dir: PathBuf,
    #[serde(default = "default_bind")]
    pub bind: String,
    #[serde(default = "default_port")]
    pub port: u16,
    #[serde(default)]
    pub beam: BeamSection,
    #[serde(default)]
    pub limits: Limits,
    /// Hypotheses shown before "show more".
    #[serde(default = "default_shown")]
    pub shown_by_default: usize,
    /// Per-database hypothesis source; the built-in scorer otherwise.
    #[serde(default)]
    pub sources: BTreeMap<String, SourceConfig>,
    /// Per-database term map files.
    #[serde(default)]
    pub term_maps: BTreeMap<String, PathBuf>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeamSection {
    #[serde(default = "default_beam_size")]
    pub size: usize,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default = "default_max_steps")]
    pub max_steps: usize,
    #[serde(default)]
    pub rerank_only: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Limits {
    #[serde(default = "default_row_cap")]
    pub row_cap: usize,
    #[serde(default = "default_timeout_ms")]
    pub timeout_ms: u64,
    #[serde(default = "default_preview")]
    pub preview_rows: usize,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SourceConfig {
    Heuristic,
    Remote {
        url: String,
        #[serde(default = "default_remote_timeout_ms")]
        timeout_ms: u64,
    },
    /// JSON-lines file of scored action sequences, re-read per request.
    #[serde(rename = "beam_file")]
    BeamFile { path: PathBuf },
}

fn default_bind() -> String {
    "127.0.0.1".into()
}
fn default_port() -> u16 {
    8080
}
fn default_shown() -> usize {
    3
}
fn default_beam_size() -> usize {
    5
}
fn default_alpha() -> f64 {
    3.0
}
fn default_beta() -> f64 {
    0.1
}
fn default_max_steps() -> usize {
    200
}
fn default_row_cap() -> usize {
    1000
}
fn default_timeout_ms() -> u64 {
    5000
}
fn default_preview() -> usize {
    20
}
fn default_remote_timeout_ms() -> u64 {
    5000
}

impl Default for BeamSection {
    fn default() -> Self {
        BeamSection {
            size: default_beam_size(),
            alpha: default_alpha(),
            beta: default_beta(),
            max_steps: default_max_steps(),
            rerank_only: false,
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits { row_cap: default_row_cap(), timeout_ms: default_timeout_ms(), preview_rows: default_preview() }
    }
}

impl BeamSection {
    pub fn to_config(&self) -> BeamConfig {
        BeamConfig {
            beam_size: self.size,
            alpha: self.alpha,
            beta: self.beta,
            max_steps: self.max_steps,
            rerank_only: self.rerank_only,
        }
    }
}

impl Limits {
    pub fn timeout(&self) -> Duration {
        Duration::from_millis(self.timeout_ms)
    }
}

impl ServiceConfig {
    pub fn for_directory(database_dir: impl Into<PathBuf>) -> ServiceConfig {
        ServiceConfig {
            database_dir: database_dir.into(),
            bind: default_bind(),
            port: default_port(),
            beam: BeamSection::default(),
            limits: Limits::default(),
            shown_by_default: default_shown(),
            sources: BTreeMap::new(),
            term_maps: BTreeMap::new(),
        }
    }

    /// Parses TOML; relative paths are taken from the file's directory.
    pub fn parse(text: &str, base: &Path) -> Result<ServiceConfig, ServiceError> {
        let mut cfg: ServiceConfig = toml::from_str(text).map_err(|e| ServiceError::Config(e.to_string()))?;
        if cfg.database_dir.is_relative() {
            cfg.database_dir = base.join(&cfg.database_dir);
        }
        for p in cfg.term_maps.values_mut() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        for s in cfg.sources.values_mut() {
            if let SourceConfig::BeamFile { path } = s {
                if path.is_relative() {
                    *path = base.join(&*path);
                }
            }
        }
        if cfg.beam.size == 0 {
            return Err(ServiceError::Config("beam.size must be positive".into()));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<ServiceConfig, ServiceError> {
        let text = std::fs::read_to_string(path).map_err(|e| ServiceError::Config(format!("{}: {e}", path.display())))?;
        let mut cfg = ServiceConfig::parse(&text, path.parent().unwrap_or(Path::new(".")))?;
        if let Ok(port) = std::env::var("NLDB_PORT") {
            cfg.port = port.parse().map_err(|_| ServiceError::Config(format!("NLDB_PORT={port} is not a port")))?;
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sources_and_defaults() {
        let cfg = ServiceConfig::parse(
            "database_dir = \"dbs\"\n[sources.pets_1]\nkind = \"remote\"\nurl = \"http://127.0.0.1:9/parse\"\n",
            Path::new("/srv"),
        )
        .unwrap();
        assert_eq!(cfg.database_dir, PathBuf::from("/srv/dbs"));
        assert_eq!(cfg.shown_by_default, 3);
        assert_eq!(cfg.beam.to_config(), BeamConfig::default());
        assert_eq!(cfg.sources["pets_1"], SourceConfig::Remote { url: "http://127.0.0.1:9/parse".into(), timeout_ms: 5000 });
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(ServiceConfig::parse("database_dir = \"x\"\nbeams = 3\n", Path::new(".")).is_err());
        assert!(ServiceConfig::parse("database_dir = \"x\"\n[beam]\nsize = 0\n", Path::new(".")).is_err());
    }
}

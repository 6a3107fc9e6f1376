//! Which explanation tier each corpus query lands in.

use std::collections::BTreeMap;

use anyhow::{bail, Result};
use nldb_core::corpus::{DatabaseDir, GoldExample};
use nldb_core::explain::{Explainer, Tier};
use nldb_core::sql::parse_sql;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Unexplained {
    pub index: usize,
    pub db_id: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverageReport {
    pub examples: usize,
    pub shallow: usize,
    pub deep: usize,
    pub shallow_share: f64,
    pub deep_share: f64,
    /// Steps produced per rule, keyed `tier:rule`.
    pub rule_hits: BTreeMap<String, usize>,
    pub unexplained: Vec<Unexplained>,
}

impl CoverageReport {
    pub fn passed(&self) -> bool {
        self.unexplained.is_empty()
    }

    pub fn human(&self) -> String {
        let mut out = format!(
            "explained: {} of {}\nshallow: {} ({:.3})\ndeep: {} ({:.3})\n",
            self.shallow + self.deep,
            self.examples,
            self.shallow,
            self.shallow_share,
            self.deep,
            self.deep_share
        );
        out.push_str("rule hits:\n");
        for (rule, n) in &self.rule_hits {
            out.push_str(&format!("  {rule} {n}\n"));
        }
        for u in &self.unexplained {
            out.push_str(&format!("  unexplained #{} {}: {}\n", u.index, u.db_id, u.reason));
        }
        out
    }
}

fn tier_name(t: Tier) -> &'static str {
    match t {
        Tier::Shallow => "shallow",
        Tier::Deep => "deep",
    }
}

pub fn coverage(gold: &[GoldExample], dbs: &DatabaseDir) -> Result<CoverageReport> {
    if gold.is_empty() {
        bail!("the corpus has no examples");
    }
    let results: Vec<Result<Vec<(Tier, usize)>, String>> = gold
        .par_iter()
        .map(|ex| {
            let cat = dbs.catalog(&ex.db_id).ok_or_else(|| format!("unknown database {}", ex.db_id))?;
            let q = parse_sql(&ex.query, cat).map_err(|e| e.to_string())?;
            let doc = Explainer::shipped().explain(&q, cat, &[]).map_err(|e| e.to_string())?;
            Ok(doc.steps.iter().map(|s| (s.signature.tier, s.signature.rule)).collect())
        })
        .collect();
    let (mut shallow, mut deep) = (0, 0);
    let mut rule_hits = BTreeMap::new();
    let mut unexplained = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(steps) => {
                match steps.first().map(|s| s.0) {
                    Some(Tier::Deep) => deep += 1,
                    _ => shallow += 1,
                }
                for (tier, rule) in steps {
                    *rule_hits.entry(format!("{}:{rule}", tier_name(tier))).or_insert(0) += 1;
                }
            }
            Err(reason) => unexplained.push(Unexplained { index: i, db_id: gold[i].db_id.clone(), reason }),
        }
    }
    let explained = (shallow + deep).max(1) as f64;
    Ok(CoverageReport {
        examples: gold.len(),
        shallow,
        deep,
        shallow_share: shallow as f64 / explained,
        deep_share: deep as f64 / explained,
        rule_hits,
        unexplained,
    })
}

//! Append-only JSON-lines store of embedding search outcomes, keyed by the
//! SHA-256 of the canonical form serialization.

use std::env;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use concordance_core::embed::verify_witness;
use concordance_core::{Form, Outcome, SearchStatus};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const ENV_VAR: &str = "CONCORDANCE_CACHE";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub form_hash: String,
    pub outcome: Outcome,
    /// Node budget of the run; `"unlimited"` when none was set.
    pub budget_used: String,
    pub tool_version: String,
}

pub fn form_hash(form: &Form) -> String {
    let digest = Sha256::digest(form.to_json().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Flag, then `CONCORDANCE_CACHE`, then the platform config directory.
pub fn resolve_path(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    if let Some(p) = env::var_os(ENV_VAR).filter(|p| !p.is_empty()) {
        return Some(PathBuf::from(p));
    }
    let base = env::var_os("XDG_CONFIG_HOME")
        .filter(|p| !p.is_empty())
        .map(PathBuf::from)
        .or_else(|| env::var_os("HOME").map(|h| PathBuf::from(h).join(".config")))?;
    Some(base.join("concordance").join("cache.jsonl"))
}

pub struct Cache {
    path: PathBuf,
}

fn budget_covers(cached: &str, requested: Option<u64>) -> bool {
    match (cached, requested) {
        ("unlimited", _) => true,
        (_, None) => false,
        (c, Some(r)) => c.parse::<u64>().is_ok_and(|c| c >= r),
    }
}

pub fn budget_label(budget: Option<u64>) -> String {
    budget.map_or_else(|| "unlimited".to_string(), |b| b.to_string())
}

impl Cache {
    pub fn new(path: PathBuf) -> Self {
        Cache { path }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn entries(&self) -> std::io::Result<Vec<CacheEntry>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e),
        };
        file.lock_shared()?;
        let mut out = Vec::new();
        for line in BufReader::new(&file).lines() {
            // unreadable lines, e.g. from an older format, are skipped
            if let Ok(entry) = serde_json::from_str::<CacheEntry>(&line?) {
                out.push(entry);
            }
        }
        Ok(out)
    }

    /// A conclusive entry for `form`, or an `Unknown` one whose budget is at
    /// least the requested one. Found witnesses are re-verified first.
    pub fn lookup(&self, form: &Form, budget: Option<u64>) -> std::io::Result<Option<Outcome>> {
        let hash = form_hash(form);
        let mut unknown = None;
        for entry in self.entries()?.into_iter().filter(|e| e.form_hash == hash) {
            match entry.outcome.status {
                SearchStatus::NoneExists => return Ok(Some(entry.outcome)),
                SearchStatus::Found => {
                    let valid = entry.outcome.witness.as_ref().is_some_and(|w| verify_witness(form, w).unwrap_or(false));
                    if valid {
                        return Ok(Some(entry.outcome));
                    }
                }
                SearchStatus::Unknown => {
                    if budget_covers(&entry.budget_used, budget) {
                        unknown = Some(entry.outcome);
                    }
                }
            }
        }
        Ok(unknown)
    }

    pub fn store(&self, form: &Form, outcome: &Outcome, budget: Option<u64>) -> std::io::Result<()> {
        if let Some(dir) = self.path.parent() {
            if !dir.as_os_str().is_empty() {
                fs::create_dir_all(dir)?;
            }
        }
        let entry = CacheEntry {
            form_hash: form_hash(form),
            outcome: outcome.clone(),
            budget_used: budget_label(budget),
            tool_version: TOOL_VERSION.to_string(),
        };
        let mut line = serde_json::to_string(&entry).map_err(std::io::Error::other)?;
        line.push('\n');
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        file.lock()?;
        file.write_all(line.as_bytes())?;
        file.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budgets() {
        assert!(budget_covers("unlimited", Some(5)));
        assert!(budget_covers("10", Some(5)));
        assert!(!budget_covers("4", Some(5)));
        assert!(!budget_covers("4", None));
    }

    #[test]
    fn hash_is_hex_sha256() {
        let f = Form::intersection_form(-1, 1, 3).unwrap();
        let h = form_hash(&f);
        assert_eq!(h.len(), 64);
        assert_eq!(h, form_hash(&f.clone()));
        assert_ne!(h, form_hash(&Form::intersection_form(-1, 2, 3).unwrap()));
    }
}

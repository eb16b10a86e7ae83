//! Corpus manifests.
//!
//! A manifest is a JSON document:
//!
//! ```json
//! {"project": "demo",
//!  "pairs": [{"id": "demo-1", "fixed": "1/fixed.mini", "buggy": "1/buggy.mini"}],
//!  "metadata": {"origin": "hand-written"}}
//! ```
//!
//! `metadata` is optional and holds free-form strings. Pair paths resolve
//! relative to the manifest's directory. A pair whose files cannot be read or
//! parsed is kept but marked excluded, so one bad file never aborts a load.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use mutapath_core::{parse, Ast};
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum ManifestError {
    #[error("cannot read manifest {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed manifest {path}: {source}")]
    Schema {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("duplicate pair id {0:?}")]
    DuplicateId(String),
    #[error("empty pair id")]
    EmptyId,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestFile {
    project: String,
    pairs: Vec<PairEntry>,
    #[serde(default)]
    metadata: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairEntry {
    id: String,
    fixed: PathBuf,
    buggy: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PairSource {
    Loaded { fixed: Ast, buggy: Ast },
    Excluded { reason: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusPair {
    pub id: String,
    pub project: String,
    /// As written in the manifest.
    pub fixed_path: PathBuf,
    pub buggy_path: PathBuf,
    pub source: PairSource,
}

impl CorpusPair {
    pub fn is_excluded(&self) -> bool {
        matches!(self.source, PairSource::Excluded { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CorpusManifest {
    pub project: String,
    pub metadata: BTreeMap<String, String>,
    pub pairs: Vec<CorpusPair>,
}

impl CorpusManifest {
    pub fn excluded_count(&self) -> usize {
        self.pairs.iter().filter(|p| p.is_excluded()).count()
    }
}

pub fn load_manifest(path: &Path) -> Result<CorpusManifest, ManifestError> {
    let text = fs::read_to_string(path).map_err(|source| ManifestError::Io {
        path: path.into(),
        source,
    })?;
    let file: ManifestFile =
        serde_json::from_str(&text).map_err(|source| ManifestError::Schema {
            path: path.into(),
            source,
        })?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut ids = BTreeSet::new();
    let mut pairs = Vec::with_capacity(file.pairs.len());
    for entry in file.pairs {
        if entry.id.is_empty() {
            return Err(ManifestError::EmptyId);
        }
        if !ids.insert(entry.id.clone()) {
            return Err(ManifestError::DuplicateId(entry.id));
        }
        let source = match (
            load_program(&base.join(&entry.fixed)),
            load_program(&base.join(&entry.buggy)),
        ) {
            (Ok(fixed), Ok(buggy)) => PairSource::Loaded { fixed, buggy },
            (Err(e), _) => PairSource::Excluded {
                reason: format!("fixed: {e}"),
            },
            (_, Err(e)) => PairSource::Excluded {
                reason: format!("buggy: {e}"),
            },
        };
        pairs.push(CorpusPair {
            id: entry.id,
            project: file.project.clone(),
            fixed_path: entry.fixed,
            buggy_path: entry.buggy,
            source,
        });
    }
    Ok(CorpusManifest {
        project: file.project,
        metadata: file.metadata,
        pairs,
    })
}

/// Reads and parses one MiniLang file.
pub fn load_program(path: &Path) -> Result<Ast, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

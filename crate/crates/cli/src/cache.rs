//! Optional on-disk store of previously computed sequence tables.
//!
//! The cache only saves recomputation; `verify` recomputes every stored value
//! and reports any that disagree.

use std::path::{Path, PathBuf};
use std::{fs, io};

use acyclic_census::counts::{SequenceKind, SequenceTable};
use serde::{Deserialize, Serialize};

#[derive(Debug, Default, Serialize, Deserialize)]
struct CacheFile {
    tables: Vec<SequenceTable>,
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    tables: Vec<SequenceTable>,
}

impl Cache {
    /// Reads `path`; a missing or unreadable file yields an empty cache.
    pub fn load(path: &Path) -> Cache {
        let tables = match fs::read_to_string(path) {
            Ok(text) => match serde_json::from_str::<CacheFile>(&text) {
                Ok(file) => file.tables,
                Err(e) => {
                    eprintln!("warning: ignoring malformed cache {}: {e}", path.display());
                    Vec::new()
                }
            },
            Err(e) if e.kind() == io::ErrorKind::NotFound => Vec::new(),
            Err(e) => {
                eprintln!("warning: cannot read cache {}: {e}", path.display());
                Vec::new()
            }
        };
        Cache {
            path: path.to_owned(),
            tables,
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn tables(&self) -> &[SequenceTable] {
        &self.tables
    }

    /// The stored values of `kind` from its first index through `n_max`, if all present.
    pub fn lookup(&self, kind: SequenceKind, n_max: usize) -> Option<SequenceTable> {
        let table = self.tables.iter().find(|t| t.kind == kind)?;
        let values = (kind.first_index()..=n_max)
            .map(|n| table.values.get(&n).map(|v| (n, v.clone())))
            .collect::<Option<_>>()?;
        Some(SequenceTable { kind, values })
    }

    /// Merges `table` into the stored table of the same kind.
    pub fn store(&mut self, table: &SequenceTable) {
        match self.tables.iter_mut().find(|t| t.kind == table.kind) {
            Some(existing) => existing
                .values
                .extend(table.values.iter().map(|(n, v)| (*n, v.clone()))),
            None => {
                self.tables.push(table.clone());
                self.tables.sort_by_key(|t| t.kind);
            }
        }
    }

    pub fn save(&self) -> io::Result<()> {
        let file = CacheFile {
            tables: self.tables.clone(),
        };
        let text = serde_json::to_string_pretty(&file).map_err(io::Error::other)?;
        fs::write(&self.path, text + "\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use acyclic_census::Census;

    #[test]
    fn store_lookup_and_reload() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        let mut cache = Cache::load(&path);
        assert!(cache.tables().is_empty());
        let census = Census::new();
        cache.store(&census.table(SequenceKind::A, 4).unwrap());
        cache.store(&census.table(SequenceKind::A, 6).unwrap());
        cache.store(&census.table(SequenceKind::H { r: 2 }, 3).unwrap());
        cache.save().unwrap();

        let reloaded = Cache::load(&path);
        assert_eq!(reloaded.tables().len(), 2);
        assert_eq!(
            reloaded.lookup(SequenceKind::A, 6).unwrap(),
            census.table(SequenceKind::A, 6).unwrap()
        );
        assert!(reloaded.lookup(SequenceKind::A, 7).is_none());
        assert!(reloaded.lookup(SequenceKind::B, 1).is_none());
        assert_eq!(
            reloaded
                .lookup(SequenceKind::H { r: 2 }, 3)
                .unwrap()
                .values
                .len(),
            3
        );
    }

    #[test]
    fn malformed_file_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        fs::write(&path, "not json").unwrap();
        assert!(Cache::load(&path).tables().is_empty());
    }
}

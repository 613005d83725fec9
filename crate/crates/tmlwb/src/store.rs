//! On-disk workspace holding imported corpora.
//!
//! Layout under the workspace root:
//!
//! ```text
//! catalog.json              names, document counts, notes, import times, active corpus
//! corpora/<name>/corpus.json
//! folds/<scheme>.fold       optional fold tables
//! lock                      present while a writer holds the workspace
//! ```

use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use tmlwb_core::Corpus;

pub const HOME_VAR: &str = "TMLWB_HOME";

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("{}: {source}", .path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", .path.display())]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("a corpus named `{0}` already exists")]
    Exists(String),
    #[error("no corpus named `{name}`; available: {}", if .available.is_empty() { "none".to_string() } else { .available.join(", ") })]
    Unknown { name: String, available: Vec<String> },
    #[error("no corpus selected")]
    NoActive,
    #[error("invalid corpus name `{0}`; use letters, digits, `_`, `-` and `.`")]
    InvalidName(String),
    #[error("workspace is locked by another process; remove {} if that process is gone", .0.display())]
    Locked(PathBuf),
    #[error("cannot find a home directory; set {HOME_VAR}")]
    NoHome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub documents: usize,
    pub note: String,
    /// RFC 3339, UTC.
    pub imported: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    pub active: Option<String>,
}

impl Catalog {
    pub fn entry(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    fn names(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }
}

pub struct Store {
    root: PathBuf,
}

/// Removes the lock file when dropped.
struct LockGuard(PathBuf);

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

fn io_at(path: &Path) -> impl FnOnce(io::Error) -> StoreError + '_ {
    move |source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name.starts_with('.')
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

/// Writes `bytes` next to `path` and renames over it.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), StoreError> {
    let tmp = path.with_extension("tmp");
    let mut f = File::create(&tmp).map_err(io_at(&tmp))?;
    f.write_all(bytes).map_err(io_at(&tmp))?;
    f.sync_all().map_err(io_at(&tmp))?;
    fs::rename(&tmp, path).map_err(io_at(path))
}

impl Store {
    pub fn open(root: impl Into<PathBuf>) -> Result<Store, StoreError> {
        let root = root.into();
        fs::create_dir_all(root.join("corpora")).map_err(io_at(&root))?;
        Ok(Store { root })
    }

    /// `$TMLWB_HOME`, or `~/.tml-workbench`.
    pub fn default_root() -> Result<PathBuf, StoreError> {
        if let Some(home) = std::env::var_os(HOME_VAR).filter(|v| !v.is_empty()) {
            return Ok(PathBuf::from(home));
        }
        std::env::var_os("HOME")
            .filter(|v| !v.is_empty())
            .map(|h| PathBuf::from(h).join(".tml-workbench"))
            .ok_or(StoreError::NoHome)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn folds_dir(&self) -> PathBuf {
        self.root.join("folds")
    }

    fn catalog_path(&self) -> PathBuf {
        self.root.join("catalog.json")
    }

    fn corpus_dir(&self, name: &str) -> PathBuf {
        self.root.join("corpora").join(name)
    }

    fn lock(&self) -> Result<LockGuard, StoreError> {
        let path = self.root.join("lock");
        match OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(mut f) => {
                let _ = writeln!(f, "{}", std::process::id());
                Ok(LockGuard(path))
            }
            Err(e) if e.kind() == io::ErrorKind::AlreadyExists => Err(StoreError::Locked(path)),
            Err(e) => Err(StoreError::Io { path, source: e }),
        }
    }

    pub fn catalog(&self) -> Result<Catalog, StoreError> {
        let path = self.catalog_path();
        match fs::read(&path) {
            Ok(bytes) => serde_json::from_slice(&bytes).map_err(|source| StoreError::Json { path, source }),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(Catalog::default()),
            Err(source) => Err(StoreError::Io { path, source }),
        }
    }

    fn write_catalog(&self, catalog: &Catalog) -> Result<(), StoreError> {
        let path = self.catalog_path();
        let mut bytes = serde_json::to_vec_pretty(catalog).map_err(|source| StoreError::Json {
            path: path.clone(),
            source,
        })?;
        bytes.push(b'\n');
        write_atomic(&path, &bytes)
    }

    /// Serialized corpus as stored on disk.
    pub fn encode(corpus: &Corpus) -> Result<Vec<u8>, serde_json::Error> {
        let mut bytes = serde_json::to_vec_pretty(corpus)?;
        bytes.push(b'\n');
        Ok(bytes)
    }

    /// Fails before touching disk if the name is taken or invalid.
    pub fn check_new_name(&self, name: &str) -> Result<(), StoreError> {
        if !valid_name(name) {
            return Err(StoreError::InvalidName(name.to_string()));
        }
        if self.catalog()?.entry(name).is_some() || self.corpus_dir(name).exists() {
            return Err(StoreError::Exists(name.to_string()));
        }
        Ok(())
    }

    /// Writes a new corpus. The corpus directory is written under a temporary
    /// name and renamed into place before the catalog is updated, so a failed
    /// save leaves neither.
    pub fn save_corpus(&self, corpus: &Corpus) -> Result<(), StoreError> {
        let _lock = self.lock()?;
        self.check_new_name(&corpus.name)?;
        let dir = self.corpus_dir(&corpus.name);
        let staging = self.root.join("corpora").join(format!(".{}.partial", corpus.name));
        let _ = fs::remove_dir_all(&staging);
        let result = (|| {
            fs::create_dir_all(&staging).map_err(io_at(&staging))?;
            let file = staging.join("corpus.json");
            let bytes = Store::encode(corpus).map_err(|source| StoreError::Json {
                path: file.clone(),
                source,
            })?;
            write_atomic(&file, &bytes)?;
            fs::rename(&staging, &dir).map_err(io_at(&dir))?;
            let mut catalog = self.catalog()?;
            catalog.entries.push(CatalogEntry {
                name: corpus.name.clone(),
                documents: corpus.documents.len(),
                note: corpus.note.clone(),
                imported: now_rfc3339(),
            });
            catalog.entries.sort_by(|a, b| a.name.cmp(&b.name));
            if let Err(e) = self.write_catalog(&catalog) {
                let _ = fs::remove_dir_all(&dir);
                return Err(e);
            }
            Ok(())
        })();
        if result.is_err() {
            let _ = fs::remove_dir_all(&staging);
        }
        result
    }

    fn unknown(&self, name: &str, catalog: &Catalog) -> StoreError {
        StoreError::Unknown {
            name: name.to_string(),
            available: catalog.names(),
        }
    }

    pub fn load_corpus(&self, name: &str) -> Result<Corpus, StoreError> {
        let catalog = self.catalog()?;
        if catalog.entry(name).is_none() {
            return Err(self.unknown(name, &catalog));
        }
        let path = self.corpus_dir(name).join("corpus.json");
        let bytes = fs::read(&path).map_err(io_at(&path))?;
        serde_json::from_slice(&bytes).map_err(|source| StoreError::Json { path, source })
    }

    /// Loads a corpus and records it as the active one.
    pub fn use_corpus(&self, name: &str) -> Result<Corpus, StoreError> {
        let corpus = self.load_corpus(name)?;
        let _lock = self.lock()?;
        let mut catalog = self.catalog()?;
        catalog.active = Some(name.to_string());
        self.write_catalog(&catalog)?;
        Ok(corpus)
    }

    pub fn active(&self) -> Result<Option<String>, StoreError> {
        Ok(self.catalog()?.active)
    }

    pub fn delete_corpus(&self, name: &str) -> Result<(), StoreError> {
        let _lock = self.lock()?;
        let mut catalog = self.catalog()?;
        if catalog.entry(name).is_none() {
            return Err(self.unknown(name, &catalog));
        }
        catalog.entries.retain(|e| e.name != name);
        if catalog.active.as_deref() == Some(name) {
            catalog.active = None;
        }
        self.write_catalog(&catalog)?;
        let dir = self.corpus_dir(name);
        fs::remove_dir_all(&dir).map_err(io_at(&dir))
    }
}

fn now_rfc3339() -> String {
    time::OffsetDateTime::now_utc()
        .replace_nanosecond(0)
        .ok()
        .and_then(|t| t.format(&time::format_description::well_known::Rfc3339).ok())
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use tmlwb_core::Document;

    fn corpus(name: &str) -> Corpus {
        Corpus {
            name: name.into(),
            note: "fold=none".into(),
            documents: vec![Document::new(1, "a.tml")],
        }
    }

    #[test]
    fn save_list_use_delete() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path()).unwrap();
        assert!(store.catalog().unwrap().entries.is_empty());
        store.save_corpus(&corpus("b")).unwrap();
        store.save_corpus(&corpus("a")).unwrap();
        let names: Vec<String> = store.catalog().unwrap().entries.into_iter().map(|e| e.name).collect();
        assert_eq!(names, vec!["a", "b"]);
        assert!(matches!(store.save_corpus(&corpus("a")), Err(StoreError::Exists(_))));
        assert_eq!(store.use_corpus("a").unwrap(), corpus("a"));
        assert_eq!(store.active().unwrap().as_deref(), Some("a"));
        store.delete_corpus("a").unwrap();
        assert_eq!(store.active().unwrap(), None);
        match store.use_corpus("a") {
            Err(StoreError::Unknown { available, .. }) => assert_eq!(available, vec!["b"]),
            other => panic!("{other:?}"),
        }
        assert!(!dir.path().join("lock").exists());
    }

    #[test]
    fn lock_blocks_writers() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path()).unwrap();
        fs::write(dir.path().join("lock"), "1\n").unwrap();
        assert!(matches!(store.save_corpus(&corpus("a")), Err(StoreError::Locked(_))));
        assert!(store.catalog().unwrap().entries.is_empty());
    }

    #[test]
    fn names_are_checked() {
        assert!(valid_name("timebank-1.2"));
        assert!(!valid_name("../x"));
        assert!(!valid_name(".hidden"));
        assert!(!valid_name(""));
    }
}

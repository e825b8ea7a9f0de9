//! Content-addressed document store.
//!
//! Layout: `objects/<sha256>.json` holds canonical document text and
//! `names/<name>` holds the digest it points to.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::doc::Document;
use crate::error::{Error, Result};

pub const STORE_ENV: &str = "COALG_STORE";

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoreEntry {
    pub name: String,
    pub digest: String,
}

#[derive(Clone, Debug)]
pub struct Store {
    root: PathBuf,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name.starts_with('.')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || "-_.+#".contains(c))
}

fn is_digest(s: &str) -> bool {
    s.len() == 64 && s.chars().all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase())
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().expect("store paths have a parent");
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

/// Exclusive lock held for the duration of a write.
struct WriteLock(PathBuf);

impl WriteLock {
    fn acquire(root: &Path) -> Result<WriteLock> {
        let path = root.join(".lock");
        for _ in 0..2000 {
            match fs::OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(_) => return Ok(WriteLock(path)),
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                    std::thread::sleep(std::time::Duration::from_millis(5))
                }
                Err(e) => return Err(e.into()),
            }
        }
        Err(Error::Io(format!("store is locked: {}", path.display())))
    }
}

impl Drop for WriteLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

impl Store {
    pub fn open(root: impl Into<PathBuf>) -> Result<Store> {
        let root = root.into();
        fs::create_dir_all(root.join("objects"))?;
        fs::create_dir_all(root.join("names"))?;
        Ok(Store { root })
    }

    /// Opens the directory named by `COALG_STORE`, if set.
    pub fn from_env() -> Result<Option<Store>> {
        match std::env::var_os(STORE_ENV) {
            Some(p) if !p.is_empty() => Store::open(PathBuf::from(p)).map(Some),
            _ => Ok(None),
        }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// Stores the canonical text of `doc` under `doc.name`. A different
    /// digest already bound to that name is a collision unless `force`.
    pub fn put(&self, doc: &Document, force: bool) -> Result<StoreEntry> {
        if !valid_name(&doc.name) {
            return Err(Error::InvalidStructure(format!("invalid store name {:?}", doc.name)));
        }
        let text = doc.to_text();
        let d = digest(&text);
        let _lock = WriteLock::acquire(&self.root)?;
        let name_path = self.root.join("names").join(&doc.name);
        if let Ok(existing) = fs::read_to_string(&name_path) {
            if existing.trim() != d && !force {
                return Err(Error::NameCollision(doc.name.clone()));
            }
        }
        let obj_path = self.root.join("objects").join(format!("{d}.json"));
        if !obj_path.exists() {
            write_atomic(&obj_path, text.as_bytes())?;
        }
        write_atomic(&name_path, format!("{d}\n").as_bytes())?;
        Ok(StoreEntry {
            name: doc.name.clone(),
            digest: d,
        })
    }

    /// Looks up by name first, then by digest.
    pub fn get_text(&self, key: &str) -> Result<String> {
        let d = self.resolve(key)?;
        Ok(fs::read_to_string(self.root.join("objects").join(format!("{d}.json")))?)
    }

    pub fn get(&self, key: &str) -> Result<Document> {
        Document::parse(&self.get_text(key)?)
    }

    pub fn resolve(&self, key: &str) -> Result<String> {
        if valid_name(key) {
            if let Ok(d) = fs::read_to_string(self.root.join("names").join(key)) {
                return Ok(d.trim().to_string());
            }
        }
        if is_digest(key) && self.root.join("objects").join(format!("{key}.json")).exists() {
            return Ok(key.to_string());
        }
        Err(Error::NotFound(key.to_string()))
    }

    /// Named entries in lexicographic order of name.
    pub fn list(&self) -> Result<Vec<StoreEntry>> {
        let mut out = Vec::new();
        for e in fs::read_dir(self.root.join("names"))? {
            let e = e?;
            let name = e.file_name().to_string_lossy().into_owned();
            if !valid_name(&name) {
                continue;
            }
            let digest = fs::read_to_string(e.path())?.trim().to_string();
            out.push(StoreEntry { name, digest });
        }
        out.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(out)
    }
}

//! Content-addressed on-disk cache.
//!
//! An entry lives at `<dir>/<sha256(version, key)>` and starts with a header
//! line naming the format version and the key, followed by the payload.
//! Writes go through a temporary file in the same directory and are renamed
//! into place, so concurrent writers never expose partial entries.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::Result;

pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct DiskCache {
    dir: PathBuf,
    version: u32,
}

impl DiskCache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        Self::with_version(dir, CACHE_FORMAT_VERSION)
    }

    pub fn with_version(dir: impl AsRef<Path>, version: u32) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(Self { dir: dir.as_ref().to_path_buf(), version })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn header(&self, key: &str) -> String {
        format!("slicescan-cache v{} {}\n", self.version, hex::encode(Sha256::digest(key.as_bytes())))
    }

    fn path(&self, key: &str) -> PathBuf {
        let mut h = Sha256::new();
        h.update(self.version.to_le_bytes());
        h.update(key.as_bytes());
        self.dir.join(hex::encode(h.finalize()))
    }

    /// The stored payload, or `None` on a miss. Unreadable or malformed
    /// entries count as misses.
    pub fn get(&self, key: &str) -> Option<Vec<u8>> {
        let path = self.path(key);
        let bytes = fs::read(&path).ok()?;
        let header = self.header(key);
        match bytes.strip_prefix(header.as_bytes()) {
            Some(payload) => Some(payload.to_vec()),
            None => {
                log::warn!("ignoring corrupt cache entry {}", path.display());
                None
            }
        }
    }

    pub fn put(&self, key: &str, payload: &[u8]) -> Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(self.header(key).as_bytes())?;
        tmp.write_all(payload)?;
        tmp.flush()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }

    /// Parses a cached JSON value, treating parse failures as misses.
    pub fn get_json<T: serde::de::DeserializeOwned>(&self, key: &str) -> Option<T> {
        let bytes = self.get(key)?;
        match serde_json::from_slice(&bytes) {
            Ok(v) => Some(v),
            Err(e) => {
                log::warn!("ignoring undecodable cache entry for {key:?}: {e}");
                None
            }
        }
    }

    pub fn put_json<T: serde::Serialize>(&self, key: &str, value: &T) -> Result<()> {
        let bytes = serde_json::to_vec(value).expect("cache values serialize");
        self.put(key, &bytes)
    }
}

//! On-disk store for Hilbert tables.
//!
//! One file per key: the first line is the sha256 of the rest, which is the
//! JSON serialization of the table.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use multimult_core::{HilbertTable, TableStore};
use sha2::{Digest, Sha256};

pub const CACHE_DIR_ENV: &str = "MULTIMULT_CACHE_DIR";

pub fn default_cache_dir() -> PathBuf {
    std::env::var_os(CACHE_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("multimult-cache"))
}

#[derive(Debug)]
pub struct DiskCache {
    dir: PathBuf,
    hits: AtomicUsize,
    misses: AtomicUsize,
    discarded: AtomicUsize,
    // serializes reads and writes so a reader never sees a partial file
    lock: Mutex<()>,
}

fn checksum(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

impl DiskCache {
    pub fn open(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self {
            dir,
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
            discarded: AtomicUsize::new(0),
            lock: Mutex::new(()),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.table"))
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }

    /// Entries rejected because of a bad checksum or body.
    pub fn discarded(&self) -> usize {
        self.discarded.load(Ordering::Relaxed)
    }

    fn read_entry(&self, path: &Path) -> Option<HilbertTable> {
        let text = fs::read_to_string(path).ok()?;
        let Some((sum, body)) = text.split_once('\n') else {
            log::warn!("cache entry {} is truncated; discarding", path.display());
            return None;
        };
        if checksum(body) != sum {
            log::warn!("cache entry {} fails its checksum; discarding", path.display());
            return None;
        }
        match serde_json::from_str(body) {
            Ok(t) => Some(t),
            Err(e) => {
                log::warn!("cache entry {} does not decode ({e}); discarding", path.display());
                None
            }
        }
    }
}

impl TableStore for DiskCache {
    fn load(&self, key: &str) -> Option<HilbertTable> {
        let _guard = self.lock.lock().unwrap_or_else(|p| p.into_inner());
        let path = self.path_for(key);
        if !path.exists() {
            self.misses.fetch_add(1, Ordering::Relaxed);
            return None;
        }
        match self.read_entry(&path) {
            Some(t) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(t)
            }
            None => {
                self.discarded.fetch_add(1, Ordering::Relaxed);
                self.misses.fetch_add(1, Ordering::Relaxed);
                let _ = fs::remove_file(&path);
                None
            }
        }
    }

    fn store(&self, key: &str, table: &HilbertTable) {
        let _guard = self.lock.lock().unwrap_or_else(|p| p.into_inner());
        let body = match serde_json::to_string(table) {
            Ok(b) => b,
            Err(e) => {
                log::warn!("cannot serialize table {key}: {e}");
                return;
            }
        };
        let path = self.path_for(key);
        let tmp = path.with_extension("tmp");
        let written = fs::File::create(&tmp)
            .and_then(|mut f| writeln!(f, "{}", checksum(&body)).and_then(|_| f.write_all(body.as_bytes())))
            .and_then(|_| fs::rename(&tmp, &path));
        if let Err(e) = written {
            log::warn!("cannot write cache entry {}: {e}", path.display());
        }
    }
}

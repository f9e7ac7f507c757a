//! Content-addressed cache of backend results.
//!
//! One JSON file per entry, named by the SHA-256 of the backend id, backend
//! version and text. A cached lookup always returns what the backend would
//! have returned: unreadable or inconsistent entries are recomputed and
//! overwritten, and I/O trouble falls back to calling the backend directly.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{analyze, BackendDescriptor, SentimentBackend, SentimentResult};
use crate::error::SentimentError;

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    backend_id: String,
    backend_version: String,
    result: SentimentResult,
}

#[derive(Debug, Default)]
struct Counters {
    hits: AtomicUsize,
    misses: AtomicUsize,
    repaired: AtomicUsize,
    io_failures: AtomicUsize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CacheStats {
    pub hits: usize,
    pub misses: usize,
    /// Corrupted entries that were recomputed.
    pub repaired: usize,
    pub io_failures: usize,
}

#[derive(Debug, Clone)]
pub struct ResultCache {
    dir: PathBuf,
    write_lock: Arc<Mutex<()>>,
    counters: Arc<Counters>,
    tmp_seq: Arc<AtomicU64>,
}

pub fn cache_key(backend: &BackendDescriptor, text: &str) -> String {
    let mut h = Sha256::new();
    for part in [backend.id.as_str(), backend.version.as_str(), text] {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part.as_bytes());
    }
    hex::encode(h.finalize())
}

impl ResultCache {
    /// Opens (creating if needed) a cache directory.
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(ResultCache {
            dir,
            write_lock: Arc::new(Mutex::new(())),
            counters: Arc::new(Counters::default()),
            tmp_seq: Arc::new(AtomicU64::new(0)),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.counters.hits.load(Ordering::SeqCst),
            misses: self.counters.misses.load(Ordering::SeqCst),
            repaired: self.counters.repaired.load(Ordering::SeqCst),
            io_failures: self.counters.io_failures.load(Ordering::SeqCst),
        }
    }

    fn entry_path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Cached equivalent of [`analyze`].
    pub fn analyze<B: SentimentBackend + ?Sized>(
        &self,
        backend: &B,
        text: &str,
    ) -> Result<SentimentResult, SentimentError> {
        if text.is_empty() {
            return analyze(backend, text);
        }
        let desc = backend.descriptor();
        let key = cache_key(desc, text);
        let path = self.entry_path(&key);

        match fs::read(&path) {
            Ok(bytes) => match decode_entry(&bytes, desc) {
                Some(result) => {
                    self.counters.hits.fetch_add(1, Ordering::SeqCst);
                    return Ok(result);
                }
                None => {
                    log::warn!("cache entry {} is corrupted; recomputing", path.display());
                    self.counters.repaired.fetch_add(1, Ordering::SeqCst);
                }
            },
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => {
                log::warn!("cache read {} failed ({e}); scoring without cache", path.display());
                self.counters.io_failures.fetch_add(1, Ordering::SeqCst);
                return analyze(backend, text);
            }
        }

        self.counters.misses.fetch_add(1, Ordering::SeqCst);
        let result = analyze(backend, text)?;
        if let Err(e) = self.store(&path, desc, result) {
            log::warn!("cache write {} failed ({e})", path.display());
            self.counters.io_failures.fetch_add(1, Ordering::SeqCst);
        }
        Ok(result)
    }

    fn store(&self, path: &Path, desc: &BackendDescriptor, result: SentimentResult) -> io::Result<()> {
        let entry = Entry {
            backend_id: desc.id.clone(),
            backend_version: desc.version.clone(),
            result,
        };
        let bytes = serde_json::to_vec(&entry)?;
        let _guard = self.write_lock.lock().unwrap_or_else(|p| p.into_inner());
        let tmp = self.dir.join(format!(
            ".tmp-{}-{}",
            std::process::id(),
            self.tmp_seq.fetch_add(1, Ordering::Relaxed)
        ));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&bytes)?;
        f.sync_all()?;
        drop(f);
        fs::rename(&tmp, path).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
    }
}

fn decode_entry(bytes: &[u8], desc: &BackendDescriptor) -> Option<SentimentResult> {
    let entry: Entry = serde_json::from_slice(bytes).ok()?;
    if entry.backend_id != desc.id || entry.backend_version != desc.version {
        return None;
    }
    SentimentResult::new(entry.result.label, entry.result.intensity)
}

/// A backend whose lookups go through a [`ResultCache`].
pub struct CachedBackend<B> {
    inner: B,
    cache: ResultCache,
}

impl<B: SentimentBackend> CachedBackend<B> {
    pub fn new(inner: B, cache: ResultCache) -> Self {
        CachedBackend { inner, cache }
    }

    pub fn cache(&self) -> &ResultCache {
        &self.cache
    }

    pub fn inner(&self) -> &B {
        &self.inner
    }
}

impl<B: SentimentBackend> SentimentBackend for CachedBackend<B> {
    fn descriptor(&self) -> &BackendDescriptor {
        self.inner.descriptor()
    }

    fn analyze_text(&self, text: &str) -> Result<SentimentResult, SentimentError> {
        self.cache.analyze(&self.inner, text)
    }
}

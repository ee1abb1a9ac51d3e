//! Memo store for semistable series, with optional one-file-per-entry disk
//! backing.
//!
//! Lookups are served from any stored entry with the same `(g, r, n)` and a
//! truncation at least as long. Writes are idempotent: storing a series that
//! agrees with what is already known is a no-op, storing one that disagrees is
//! a [`Error::MemoConflict`]. A corrupt cache file is a miss plus a warning.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Mutex, RwLock};

use crate::cli::document::{Metadata, OutputDocument, Payload};
use crate::error::{Error, Result};
use crate::exactalg::TruncatedSeries;

/// Environment variable naming the persistent cache directory.
pub const CACHE_DIR_ENV: &str = "HNBETTI_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MemoKey {
    pub genus: u32,
    pub rank: u32,
    pub degree: i64,
    pub truncation: u32,
}

impl MemoKey {
    pub fn file_name(&self) -> String {
        format!(
            "ss-g{}-r{}-n{}-T{}.json",
            self.genus, self.rank, self.degree, self.truncation
        )
    }

    fn file_prefix(&self) -> String {
        format!("ss-g{}-r{}-n{}-T", self.genus, self.rank, self.degree)
    }
}

type Family = (u32, u32, i64);

#[derive(Debug, Default)]
pub struct MemoStore {
    entries: RwLock<HashMap<Family, BTreeMap<u32, TruncatedSeries>>>,
    cache_dir: Option<PathBuf>,
    warnings: Mutex<Vec<String>>,
    disk_hits: AtomicU64,
    disk_writes: AtomicU64,
}

impl MemoStore {
    /// Memory-only store.
    pub fn new() -> Self {
        Self::default()
    }

    /// Store persisted under `dir`. The directory is created on first write.
    pub fn with_cache_dir(dir: impl Into<PathBuf>) -> Self {
        Self {
            cache_dir: Some(dir.into()),
            ..Self::default()
        }
    }

    /// Uses `HNBETTI_CACHE_DIR` when set and non-empty, memory-only otherwise.
    pub fn from_env() -> Self {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(dir) if !dir.is_empty() => Self::with_cache_dir(dir),
            _ => Self::new(),
        }
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    /// Warnings accumulated so far (corrupt files, failed writes).
    pub fn warnings(&self) -> Vec<String> {
        self.warnings.lock().unwrap().clone()
    }

    pub fn disk_hits(&self) -> u64 {
        self.disk_hits.load(Ordering::Relaxed)
    }

    pub fn disk_writes(&self) -> u64 {
        self.disk_writes.load(Ordering::Relaxed)
    }

    pub fn len(&self) -> usize {
        self.entries
            .read()
            .unwrap()
            .values()
            .map(BTreeMap::len)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn warn(&self, msg: String) {
        self.warnings.lock().unwrap().push(msg);
    }

    pub fn get(&self, key: &MemoKey) -> Option<TruncatedSeries> {
        if let Some(hit) = self.get_memory(key) {
            return Some(hit);
        }
        let loaded = self.load_from_disk(key)?;
        match self.insert_memory(key.family(), &loaded) {
            Ok(()) => {
                self.disk_hits.fetch_add(1, Ordering::Relaxed);
                Some(loaded.truncate(key.truncation))
            }
            Err(_) => {
                self.warn(format!(
                    "cache entry for {} disagrees with values already in memory; ignored",
                    key.file_name()
                ));
                None
            }
        }
    }

    fn get_memory(&self, key: &MemoKey) -> Option<TruncatedSeries> {
        let entries = self.entries.read().unwrap();
        let family = entries.get(&key.family())?;
        let (_, s) = family.range(key.truncation..).next()?;
        Some(s.truncate(key.truncation))
    }

    /// Records `series` under `key` and, for rank ≥ 2, writes it to disk.
    pub fn put(&self, key: MemoKey, series: &TruncatedSeries) -> Result<()> {
        assert_eq!(series.truncation_order(), key.truncation);
        self.insert_memory(key.family(), series)?;
        if key.rank >= 2 {
            self.store_to_disk(&key, series);
        }
        Ok(())
    }

    fn insert_memory(&self, family: Family, series: &TruncatedSeries) -> Result<()> {
        let mut entries = self.entries.write().unwrap();
        let slot = entries.entry(family).or_default();
        if slot.values().any(|s| !s.agrees_with(series)) {
            return Err(Error::MemoConflict {
                genus: family.0,
                rank: family.1,
                degree: family.2,
                truncation: series.truncation_order(),
            });
        }
        slot.entry(series.truncation_order())
            .or_insert_with(|| series.clone());
        Ok(())
    }

    fn load_from_disk(&self, key: &MemoKey) -> Option<TruncatedSeries> {
        let dir = self.cache_dir.as_ref()?;
        let exact = dir.join(key.file_name());
        let path = if exact.is_file() {
            exact
        } else {
            self.longer_candidate(dir, key)?
        };
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => {
                self.warn(format!("cannot read cache file {}: {e}", path.display()));
                return None;
            }
        };
        match decode_entry(&text, key) {
            Ok(s) => Some(s),
            Err(reason) => {
                self.warn(format!(
                    "ignoring corrupt cache file {}: {reason}",
                    path.display()
                ));
                None
            }
        }
    }

    fn longer_candidate(&self, dir: &Path, key: &MemoKey) -> Option<PathBuf> {
        let prefix = key.file_prefix();
        let read = fs::read_dir(dir).ok()?;
        read.filter_map(|e| e.ok())
            .filter_map(|e| {
                let name = e.file_name().into_string().ok()?;
                let t: u32 = name
                    .strip_prefix(&prefix)?
                    .strip_suffix(".json")?
                    .parse()
                    .ok()?;
                (t >= key.truncation).then_some((t, e.path()))
            })
            .min()
            .map(|(_, p)| p)
    }

    fn store_to_disk(&self, key: &MemoKey, series: &TruncatedSeries) {
        let Some(dir) = self.cache_dir.as_ref() else {
            return;
        };
        let path = dir.join(key.file_name());
        if path.is_file() {
            return;
        }
        if let Err(e) = write_atomic(dir, &path, &encode_entry(key, series)) {
            self.warn(e.to_string());
        } else {
            self.disk_writes.fetch_add(1, Ordering::Relaxed);
        }
    }
}

impl MemoKey {
    fn family(&self) -> Family {
        (self.genus, self.rank, self.degree)
    }
}

fn encode_entry(key: &MemoKey, series: &TruncatedSeries) -> String {
    OutputDocument {
        payload: Payload::Series(series.clone()),
        meta: Metadata {
            genus: key.genus,
            rank: Some(key.rank),
            degree: Some(key.degree),
            ..Metadata::default()
        },
    }
    .to_json()
}

fn decode_entry(text: &str, key: &MemoKey) -> Result<TruncatedSeries, String> {
    let doc = OutputDocument::from_json(text).map_err(|e| e.to_string())?;
    let Payload::Series(series) = doc.payload else {
        return Err("not a series document".into());
    };
    if doc.meta.genus != key.genus
        || doc.meta.rank != Some(key.rank)
        || doc.meta.degree != Some(key.degree)
    {
        return Err("metadata does not match the file name".into());
    }
    if series.truncation_order() < key.truncation {
        return Err(format!(
            "holds order {}, need {}",
            series.truncation_order(),
            key.truncation
        ));
    }
    if series.coeff(0) != &1.into() {
        return Err("constant term is not 1".into());
    }
    if !series.is_nonnegative() {
        return Err("negative Betti number".into());
    }
    Ok(series)
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

fn write_atomic(dir: &Path, path: &Path, contents: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::Cache {
        path: path.to_path_buf(),
        message: e.to_string(),
    };
    fs::create_dir_all(dir).map_err(io)?;
    let tmp = dir.join(format!(
        ".tmp-{}-{}-{}",
        std::process::id(),
        TMP_COUNTER.fetch_add(1, Ordering::Relaxed),
        path.file_name().and_then(|n| n.to_str()).unwrap_or("entry")
    ));
    fs::write(&tmp, contents).map_err(io)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io(e)
    })
}

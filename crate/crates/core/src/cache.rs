//! Content-addressed store of computed Betti vectors.
//!
//! A record lives at `<dir>/<sha256>.json`, keyed by the model version, the
//! canonical form of the atom, the prime and the truncation schedule.
//! `<dir>/index.tsv` lists one line per record for humans; it is never read
//! back. Values are deterministic, so concurrent writers of one key are
//! harmless (last writer wins).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cech::{BettiVector, Schedule};
use crate::error::Result;

/// Bumped whenever a change could alter computed values.
pub const MODEL_VERSION: &str = "flagcoh-model-3";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub model: String,
    pub expr: String,
    pub p: u32,
    pub schedule: Schedule,
}

impl CacheKey {
    pub fn new(expr: String, p: u32, schedule: Schedule) -> Self {
        CacheKey { model: MODEL_VERSION.to_string(), expr, p, schedule }
    }

    pub fn digest(&self) -> String {
        let s = &self.schedule;
        let mut h = Sha256::new();
        for part in [
            self.model.as_str(),
            self.expr.as_str(),
            &self.p.to_string(),
            &format!("{}/{}/{}", s.t0, s.step, s.t_max),
        ] {
            h.update((part.len() as u64).to_le_bytes());
            h.update(part.as_bytes());
        }
        hex::encode(h.finalize())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Record {
    key: CacheKey,
    value: BettiVector,
}

#[derive(Debug)]
pub struct Cache {
    dir: PathBuf,
    hits: AtomicU64,
    misses: AtomicU64,
    index: Mutex<()>,
}

impl Cache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir, hits: AtomicU64::new(0), misses: AtomicU64::new(0), index: Mutex::new(()) })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, digest: &str) -> PathBuf {
        self.dir.join(format!("{digest}.json"))
    }

    /// Looks a key up; a record whose stored key differs (hash collision or
    /// tampering) or that fails to parse counts as a miss.
    pub fn get(&self, key: &CacheKey) -> Option<BettiVector> {
        let found = fs::read(self.path(&key.digest()))
            .ok()
            .and_then(|bytes| serde_json::from_slice::<Record>(&bytes).ok())
            .filter(|r| &r.key == key && r.value.stabilized)
            .map(|r| r.value);
        let counter = if found.is_some() { &self.hits } else { &self.misses };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    pub fn put(&self, key: &CacheKey, value: &BettiVector) -> Result<()> {
        let digest = key.digest();
        let record = Record { key: key.clone(), value: *value };
        let tmp = self.dir.join(format!(".{digest}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_vec_pretty(&record)?)?;
        fs::rename(&tmp, self.path(&digest))?;
        let _guard = self.index.lock().unwrap_or_else(|e| e.into_inner());
        let mut f = fs::OpenOptions::new().create(true).append(true).open(self.dir.join("index.tsv"))?;
        writeln!(f, "{digest}\tp={}\t{}\t{value}", key.p, key.expr)?;
        Ok(())
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn betti(h: [u64; 5]) -> BettiVector {
        BettiVector { h, chi: BettiVector::alternating_sum(&h), p: 3, t_used: 1, stabilized: true }
    }

    #[test]
    fn round_trip_and_counters() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let key = CacheKey::new("O(1,0)".into(), 3, Schedule::default());
        assert_eq!(cache.get(&key), None);
        cache.put(&key, &betti([4, 0, 0, 0, 0])).unwrap();
        assert_eq!(cache.get(&key), Some(betti([4, 0, 0, 0, 0])));
        assert_eq!((cache.hits(), cache.misses()), (1, 1));
        let index = fs::read_to_string(dir.path().join("index.tsv")).unwrap();
        assert!(index.contains("O(1,0)"));
    }

    #[test]
    fn keys_separate_every_field() {
        let base = CacheKey::new("O(1,0)".into(), 3, Schedule::default());
        let mut other = vec![
            CacheKey::new("O(0,1)".into(), 3, Schedule::default()),
            CacheKey::new("O(1,0)".into(), 5, Schedule::default()),
            CacheKey::new("O(1,0)".into(), 3, Schedule { t0: 2, ..Schedule::default() }),
        ];
        let mut m = base.clone();
        m.model = "older".into();
        other.push(m);
        for k in other {
            assert_ne!(k.digest(), base.digest());
        }
    }

    #[test]
    fn corrupt_records_are_misses() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let key = CacheKey::new("O(0,0)".into(), 3, Schedule::default());
        fs::write(dir.path().join(format!("{}.json", key.digest())), b"{not json").unwrap();
        assert_eq!(cache.get(&key), None);
    }
}

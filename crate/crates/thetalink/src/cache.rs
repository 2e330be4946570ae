//! Content-addressed result cache: a pure memo from computation requests to
//! serialized values. A hit must equal a fresh computation; the key digest
//! includes an artifact version stamp so normalization changes invalidate
//! cleanly.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::scalar::ScalarValue;

/// Stamp folded into every cache key.
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Digest of one computation request.
pub fn cache_key(braid_text: &str, invariant_id: &str, engine_id: &str) -> String {
    let mut h = Sha256::new();
    for part in [braid_text, invariant_id, engine_id, ARTIFACT_VERSION] {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part.as_bytes());
    }
    let out = h.finalize();
    out.iter().map(|b| format!("{:02x}", b)).collect()
}

/// A directory of per-key JSON values.
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Cache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", key))
    }

    pub fn get(&self, key: &str) -> Option<ScalarValue> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Write-temp-then-rename so concurrent runs never observe a torn file.
    pub fn put(&self, key: &str, value: &ScalarValue) -> io::Result<()> {
        let body = serde_json::to_string(value).expect("scalar serializes");
        let tmp = self.dir.join(format!(".{}.{}.tmp", key, std::process::id()));
        fs::write(&tmp, body)?;
        fs::rename(&tmp, self.path(key))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

//! Distance-result cache: one JSON file per key under a cache directory.
//!
//! The key is the hex SHA-256 of a canonical description of the inputs
//! (field, generator rows, excluded rows, method and its knobs), so a hit
//! can only replay the exact same computation. Each file also embeds that
//! description's digest; an entry whose embedded digest disagrees with its
//! filename, or that fails to parse, is ignored and recomputed. Writes go
//! through a temporary file and an atomic rename, so readers never observe
//! a partial entry even with concurrent processes.

use jaffine::code::LinearCode;
use jaffine::weight::{DistanceOpts, WeightReport};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

pub struct Cache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    /// Digest of the canonical input description, re-checked on read.
    key: String,
    report: WeightReport,
}

/// Canonical description of one weight computation.
#[derive(Serialize)]
struct KeyMaterial<'a> {
    p: u32,
    e: u32,
    n: usize,
    kind: &'a str,
    rows: Vec<Vec<u32>>,
    excl_rows: Option<Vec<Vec<u32>>>,
    method: jaffine::weight::WeightMethod,
    budget: Option<u64>,
    exhaustive_cap: u64,
    mc_samples: u64,
    seed: u64,
    target_upper: Option<u64>,
}

/// The cache key for a (possibly relative) Hamming-weight computation.
pub fn weight_key(c: &LinearCode, excl: Option<&LinearCode>, opts: &DistanceOpts) -> String {
    let mat = KeyMaterial {
        p: c.field.p,
        e: c.field.e,
        n: c.n,
        kind: "hamming",
        rows: c.gen_matrix().to_index_rows(),
        excl_rows: excl.map(|e| e.gen_matrix().to_index_rows()),
        method: opts.method,
        budget: opts.budget,
        exhaustive_cap: opts.exhaustive_cap,
        mc_samples: opts.mc_samples,
        seed: opts.seed,
        target_upper: opts.target_upper,
    };
    let canon = serde_json::to_string(&mat).expect("key material serializes");
    let mut h = Sha256::new();
    h.update(canon.as_bytes());
    format!("{:x}", h.finalize())
}

impl Cache {
    pub fn open(dir: &Path) -> std::io::Result<Cache> {
        std::fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<WeightReport> {
        let text = std::fs::read_to_string(self.path(key)).ok()?;
        match serde_json::from_str::<Entry>(&text) {
            Ok(e) if e.key == key => Some(e.report),
            Ok(_) => {
                eprintln!("warning: cache entry {key} has a mismatched digest; recomputing");
                None
            }
            Err(err) => {
                eprintln!("warning: cache entry {key} is corrupt ({err}); recomputing");
                None
            }
        }
    }

    pub fn put(&self, key: &str, report: &WeightReport) {
        let entry = Entry { key: key.to_string(), report: report.clone() };
        let Ok(text) = serde_json::to_string_pretty(&entry) else { return };
        let tmp = match tempfile::NamedTempFile::new_in(&self.dir) {
            Ok(t) => t,
            Err(err) => {
                eprintln!("warning: cannot stage cache entry {key}: {err}");
                return;
            }
        };
        if let Err(err) = std::fs::write(tmp.path(), text) {
            eprintln!("warning: cannot write cache entry {key}: {err}");
            return;
        }
        if let Err(err) = tmp.persist(self.path(key)) {
            eprintln!("warning: cannot publish cache entry {key}: {err}");
        }
    }
}

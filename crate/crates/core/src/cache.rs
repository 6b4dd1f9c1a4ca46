//! On-disk cache for A matrices: `a-matrix-<n>.json` with a SHA-256 checksum.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::combinat::Partition;
use crate::error::{Error, Result};
use crate::solver::AMatrix;

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    n: usize,
    order: Vec<Vec<usize>>,
    entries: Vec<Vec<u64>>,
    checksum: String,
}

pub fn cache_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("a-matrix-{n}.json"))
}

/// SHA-256 over the compact JSON of `{"entries", "n", "order"}`.
pub fn checksum(a: &AMatrix) -> String {
    let body = serde_json::json!({
        "n": a.n,
        "order": a.order,
        "entries": a.entries,
    });
    let digest = Sha256::digest(body.to_string().as_bytes());
    format!("{digest:x}")
}

pub fn write(dir: &Path, a: &AMatrix) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let file = CacheFile {
        n: a.n,
        order: a.order.iter().map(|p| p.parts().to_vec()).collect(),
        entries: a.entries.clone(),
        checksum: checksum(a),
    };
    let path = cache_path(dir, a.n);
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_string(&file)?)?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// `Ok(None)` when no cache file exists; an error when one exists but fails validation.
pub fn load(dir: &Path, n: usize) -> Result<Option<AMatrix>> {
    let path = cache_path(dir, n);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let bad = |reason: String| Error::Cache {
        path: path.display().to_string(),
        reason,
    };
    let file: CacheFile = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    if file.n != n {
        return Err(bad(format!("holds n = {}, expected {n}", file.n)));
    }
    let order = file
        .order
        .into_iter()
        .map(Partition::new)
        .collect::<Result<Vec<_>>>()
        .map_err(|e| bad(e.to_string()))?;
    let a = AMatrix {
        n,
        order,
        entries: file.entries,
    };
    if checksum(&a) != file.checksum {
        return Err(bad("checksum mismatch".into()));
    }
    a.validate()?;
    Ok(Some(a))
}

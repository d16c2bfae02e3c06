//! Copies of a template in the complete host, as sorted rank lists.
//!
//! Each `(N, k, template)` is enumerated once per process. When
//! `RAMSEY_LAB_CACHE` names a directory, copies are also stored there as
//! JSON and reused across runs. Memory is `copies x template edges` ranks
//! of 4 bytes each.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::combinat::edge_count;
use crate::embed::enumerate_copies;
use crate::error::Result;
use crate::template::LooseTemplate;

pub const CACHE_ENV: &str = "RAMSEY_LAB_CACHE";

pub type Copies = Arc<Vec<Vec<u32>>>;

type Key = (u32, LooseTemplate);

fn memory() -> &'static Mutex<HashMap<Key, Copies>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Copies>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    k: usize,
    n_vertices: u32,
    template: String,
    copies: Vec<Vec<u32>>,
}

fn cache_dir() -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    (!dir.is_empty()).then(|| PathBuf::from(dir))
}

pub(crate) fn cache_file(dir: &Path, n_vertices: u32, t: &LooseTemplate) -> PathBuf {
    dir.join(format!("copies-k{}-N{}-{}{}.json", t.k, n_vertices, t.kind, t.n))
}

fn load(path: &PathBuf, n_vertices: u32, t: &LooseTemplate) -> Option<Vec<Vec<u32>>> {
    let text = std::fs::read_to_string(path).ok()?;
    let f: CacheFile = serde_json::from_str(&text).ok()?;
    let e = edge_count(n_vertices, t.k) as u32;
    let sane = f.k == t.k
        && f.n_vertices == n_vertices
        && f.template == t.to_string()
        && f
            .copies
            .iter()
            .all(|c| c.len() == t.n && c.windows(2).all(|w| w[0] < w[1]) && c.iter().all(|&r| r < e));
    sane.then_some(f.copies)
}

fn store(path: &PathBuf, n_vertices: u32, t: &LooseTemplate, copies: &[Vec<u32>]) {
    let f = CacheFile {
        k: t.k,
        n_vertices,
        template: t.to_string(),
        copies: copies.to_vec(),
    };
    if let Some(dir) = path.parent() {
        let _ = std::fs::create_dir_all(dir);
    }
    let tmp = path.with_extension("json.tmp");
    if let Ok(text) = serde_json::to_string(&f) {
        if std::fs::write(&tmp, text).is_ok() {
            let _ = std::fs::rename(&tmp, path);
        }
    }
}

/// All copies of `t` in `K^k_N`, cached.
pub fn copies(n_vertices: u32, t: &LooseTemplate) -> Result<Copies> {
    let key = (n_vertices, *t);
    if let Some(c) = memory().lock().expect("copies cache").get(&key) {
        return Ok(c.clone());
    }
    let list = Arc::new(load_or_enumerate(cache_dir().as_deref(), n_vertices, t)?);
    memory().lock().expect("copies cache").insert(key, list.clone());
    Ok(list)
}

/// Reads copies from `dir` if a sane cache file is there, otherwise
/// enumerates them and writes the file.
pub(crate) fn load_or_enumerate(dir: Option<&Path>, n_vertices: u32, t: &LooseTemplate) -> Result<Vec<Vec<u32>>> {
    let path = dir.map(|d| cache_file(d, n_vertices, t));
    if let Some(list) = path.as_ref().and_then(|p| load(p, n_vertices, t)) {
        return Ok(list);
    }
    let list = enumerate_copies(n_vertices, t.k, t)?;
    if let Some(p) = &path {
        store(p, n_vertices, t, &list);
    }
    Ok(list)
}

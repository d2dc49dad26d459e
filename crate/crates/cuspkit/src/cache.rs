//! On-disk store for enumerated toric models.
//!
//! One file per length, `toric-v1-n{n}.jsonl`. The first line is a header
//! `{"schema":"cuspkit-toric-v1","n":n,"count":k}`, followed by `k` records
//! `{"n":n,"cycle":[...],"axis":s}` in canonical order. Files are replaced
//! atomically. A file that fails to parse, has the wrong schema tag, or holds
//! a cycle the seed cannot reach by corner pairs is ignored and rebuilt.

use std::cell::RefCell;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use cuspkit_core::pair::{corner_schedule_for, ToricCache};
use cuspkit_core::PairCycle;
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "cuspkit-toric-v1";
pub const ENV_VAR: &str = "CUSPKIT_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Header {
    schema: String,
    n: usize,
    count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricRecord {
    pub n: usize,
    pub cycle: Vec<i64>,
    pub axis: usize,
}

impl ToricRecord {
    pub fn of(p: &PairCycle) -> Self {
        ToricRecord {
            n: p.len(),
            cycle: p.cycle().entries().to_vec(),
            axis: p.axis().axis(),
        }
    }

    pub fn to_pair(&self) -> Option<PairCycle> {
        if self.cycle.len() != self.n {
            return None;
        }
        PairCycle::from_parts(self.cycle.clone(), self.axis).ok()
    }
}

/// What the cache did during one run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub dir: Option<String>,
    pub hits: Vec<usize>,
    pub stored: Vec<usize>,
    /// files present but unusable
    pub discarded: Vec<usize>,
    /// writes that failed; the run continues without them
    pub errors: Vec<String>,
}

/// `--cache-dir`, then `CUSPKIT_CACHE_DIR`, then the per-user data directory.
pub fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    if let Some(p) = std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()) {
        return Some(PathBuf::from(p));
    }
    dirs::data_dir().map(|d| d.join("cuspkit"))
}

pub struct FileCache {
    dir: Option<PathBuf>,
    log: RefCell<Provenance>,
}

impl FileCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        let log = Provenance {
            dir: dir.as_ref().map(|d| d.display().to_string()),
            ..Provenance::default()
        };
        FileCache {
            dir,
            log: RefCell::new(log),
        }
    }

    pub fn disabled() -> Self {
        FileCache::new(None)
    }

    pub fn file_for(dir: &Path, n: usize) -> PathBuf {
        dir.join(format!("toric-v1-n{n}.jsonl"))
    }

    pub fn provenance(&self) -> Provenance {
        self.log.borrow().clone()
    }

    fn load(path: &Path, n: usize) -> Option<Vec<PairCycle>> {
        let file = fs::File::open(path).ok()?;
        let mut lines = BufReader::new(file).lines();
        let header: Header = serde_json::from_str(&lines.next()?.ok()?).ok()?;
        if header.schema != SCHEMA || header.n != n {
            return None;
        }
        let mut out = Vec::with_capacity(header.count);
        for line in lines {
            let line = line.ok()?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: ToricRecord = serde_json::from_str(&line).ok()?;
            if rec.n != n {
                return None;
            }
            let p = rec.to_pair()?;
            corner_schedule_for(&p).ok()?;
            out.push(p);
        }
        (out.len() == header.count).then_some(out)
    }

    fn store(dir: &Path, n: usize, pairs: &[PairCycle]) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        let header = Header {
            schema: SCHEMA.to_string(),
            n,
            count: pairs.len(),
        };
        writeln!(tmp, "{}", serde_json::to_string(&header)?)?;
        for p in pairs {
            writeln!(tmp, "{}", serde_json::to_string(&ToricRecord::of(p))?)?;
        }
        tmp.as_file().sync_all()?;
        tmp.persist(Self::file_for(dir, n)).map_err(|e| e.error)?;
        Ok(())
    }
}

impl ToricCache for FileCache {
    fn get(&self, n: usize) -> Option<Vec<PairCycle>> {
        let dir = self.dir.as_ref()?;
        let path = Self::file_for(dir, n);
        if !path.exists() {
            return None;
        }
        let mut log = self.log.borrow_mut();
        match Self::load(&path, n) {
            Some(v) => {
                log.hits.push(n);
                Some(v)
            }
            None => {
                log.discarded.push(n);
                None
            }
        }
    }

    fn put(&mut self, n: usize, pairs: &[PairCycle]) {
        let Some(dir) = self.dir.clone() else {
            return;
        };
        let log = self.log.get_mut();
        match Self::store(&dir, n, pairs) {
            Ok(()) => log.stored.push(n),
            Err(e) => log.errors.push(format!("n = {n}: {e}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cuspkit_core::pair::{enumerate_equivariant_toric, MemoryCache};

    #[test]
    fn round_trip_and_reuse() {
        let dir = tempfile::tempdir().unwrap();
        let mut cache = FileCache::new(Some(dir.path().to_path_buf()));
        let cold = enumerate_equivariant_toric(10, &mut cache).unwrap();
        assert_eq!(cache.provenance().stored, vec![4, 6, 8, 10]);
        let mut warm_cache = FileCache::new(Some(dir.path().to_path_buf()));
        let warm = enumerate_equivariant_toric(10, &mut warm_cache).unwrap();
        assert_eq!(cold, warm);
        assert_eq!(warm_cache.provenance().hits, vec![10]);
        let fresh = enumerate_equivariant_toric(10, &mut MemoryCache::new()).unwrap();
        assert_eq!(fresh, warm);
    }

    #[test]
    fn bad_files_are_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let path = FileCache::file_for(dir.path(), 6);
        fs::write(&path, "{\"schema\":\"other\",\"n\":6,\"count\":0}\n").unwrap();
        let mut cache = FileCache::new(Some(dir.path().to_path_buf()));
        let v = enumerate_equivariant_toric(6, &mut cache).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(cache.provenance().discarded, vec![6]);

        // a symmetric cycle that is not toric
        let forged = format!(
            "{{\"schema\":\"{SCHEMA}\",\"n\":4,\"count\":1}}\n{{\"n\":4,\"cycle\":[2,2,2,2],\"axis\":0}}\n"
        );
        fs::write(FileCache::file_for(dir.path(), 4), forged).unwrap();
        assert!(cache.get(4).is_none());
    }

    #[test]
    fn disabled_cache_stores_nothing() {
        let mut cache = FileCache::disabled();
        enumerate_equivariant_toric(6, &mut cache).unwrap();
        assert_eq!(cache.provenance(), Provenance::default());
    }
}

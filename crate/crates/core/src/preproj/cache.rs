//! Write-once on-disk cache of the reduced relation spaces of a build.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{GradedAlgebra, PreprojError};
use crate::exactfield::Field;
use crate::exactlinalg::{rref_rows, RrefOptions, Subspace};
use crate::frobalg::{AlgebraFile, FrobeniusPair};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cache {
    dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit,
    /// Computed fresh; `true` if this run wrote the cache file.
    Miss(bool),
    /// A cache file existed but failed validation; computed fresh.
    Invalid,
}

#[derive(Serialize, Deserialize)]
struct DegreeDump {
    pivots: Vec<usize>,
    rows: Vec<Vec<(usize, String)>>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    key: String,
    field: String,
    max_degree: usize,
    content_hash: String,
    degrees: Vec<DegreeDump>,
}

fn sha_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn content_hash(degrees: &[DegreeDump]) -> String {
    sha_hex(serde_json::to_string(degrees).expect("plain data").as_bytes())
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Hash of the pair's canonical text, its field and the build degree.
    pub fn key<F: Field>(pair: &FrobeniusPair<F>, max_degree: usize) -> String {
        let text = AlgebraFile::from_pair(pair).to_json_string();
        sha_hex(format!("{text}\n{}\n{max_degree}", pair.field().descriptor()).as_bytes())
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("frobpi-{key}.json"))
    }

    /// `None` if no file exists, `Some(None)` if it exists but does not parse.
    fn load(&self, key: &str) -> Option<Option<CacheFile>> {
        let text = fs::read_to_string(self.path_for(key)).ok()?;
        Some(serde_json::from_str(&text).ok())
    }

    /// Create the file only if absent: write a temporary file, then
    /// hard-link it into place (fails atomically if another writer won).
    fn store(&self, key: &str, file: &CacheFile) -> Result<bool, PreprojError> {
        let io = |e: std::io::Error| PreprojError::Cache(e.to_string());
        fs::create_dir_all(&self.dir).map_err(io)?;
        let target = self.path_for(key);
        if target.exists() {
            return Ok(false);
        }
        let tmp = self.dir.join(format!(".frobpi-{key}.{}.tmp", std::process::id()));
        {
            let mut out = fs::File::create(&tmp).map_err(io)?;
            out.write_all(serde_json::to_string(file).expect("plain data").as_bytes()).map_err(io)?;
            out.sync_all().map_err(io)?;
        }
        let linked = fs::hard_link(&tmp, &target);
        let _ = fs::remove_file(&tmp);
        match linked {
            Ok(()) => Ok(true),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => Ok(false),
            Err(e) => Err(io(e)),
        }
    }
}

impl<F: Field> GradedAlgebra<F> {
    /// Build, reusing (or creating) a cache entry when `cache` is given.
    pub fn build_cached(
        pair: &FrobeniusPair<F>,
        max_degree: usize,
        cache: Option<&Cache>,
    ) -> Result<(Self, CacheStatus), PreprojError> {
        let Some(cache) = cache else {
            return Ok((Self::build(pair, max_degree), CacheStatus::Disabled));
        };
        let key = Cache::key(pair, max_degree);
        let mut status = CacheStatus::Miss(false);
        if let Some(file) = cache.load(&key) {
            match file.and_then(|file| Self::from_cache_file(pair, max_degree, &key, &file)) {
                Some(g) => return Ok((g, CacheStatus::Hit)),
                None => status = CacheStatus::Invalid,
            }
        }
        let g = Self::build(pair, max_degree);
        let degrees = (1..=max_degree)
            .map(|d| {
                let rel = &g.levels[d].relations;
                DegreeDump {
                    pivots: rel.pivots().to_vec(),
                    rows: rel.rows().iter().map(|r| r.iter().map(|(c, v)| (*c, g.field().format(v))).collect()).collect(),
                }
            })
            .collect::<Vec<_>>();
        let file = CacheFile {
            key: key.clone(),
            field: g.field().descriptor().to_string(),
            max_degree,
            content_hash: content_hash(&degrees),
            degrees,
        };
        let written = cache.store(&key, &file)?;
        if status == CacheStatus::Miss(false) {
            status = CacheStatus::Miss(written);
        }
        Ok((g, status))
    }

    fn from_cache_file(pair: &FrobeniusPair<F>, max_degree: usize, key: &str, file: &CacheFile) -> Option<Self> {
        let valid_header = file.key == key
            && file.field == pair.field().descriptor().to_string()
            && file.max_degree == max_degree
            && file.degrees.len() == max_degree
            && file.content_hash == content_hash(&file.degrees);
        if !valid_header {
            return None;
        }
        let f = pair.field();
        let mut spaces = Vec::with_capacity(max_degree);
        for dump in &file.degrees {
            let mut rows = Vec::with_capacity(dump.rows.len());
            for r in &dump.rows {
                let row = r.iter().map(|(c, v)| Ok((*c, f.parse(v)?))).collect::<Result<Vec<_>, crate::exactfield::FieldError>>();
                rows.push(row.ok()?);
            }
            spaces.push((dump.pivots.clone(), rows));
        }
        let mut spaces = spaces.into_iter();
        let mut failed = false;
        let g = Self::build_from(pair, max_degree, |g, _d, ncols, _rows| {
            let (pivots, rows) = spaces.next().expect("one dump per degree");
            match Subspace::from_rref(g.field().clone(), ncols, pivots, rows) {
                Ok(s) => s,
                Err(_) => {
                    failed = true;
                    rref_rows(g.field(), ncols, Vec::new(), &RrefOptions::default())
                }
            }
        })
        .ok()?;
        (!failed).then_some(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rationals;
    use crate::frobalg::catalog;

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let p = catalog(&Rationals, "t3-plus-k").unwrap().into_pair("t3-plus-k").unwrap();
        let (fresh, s1) = GradedAlgebra::build_cached(&p, 6, Some(&cache)).unwrap();
        assert_eq!(s1, CacheStatus::Miss(true));
        let (cached, s2) = GradedAlgebra::build_cached(&p, 6, Some(&cache)).unwrap();
        assert_eq!(s2, CacheStatus::Hit);
        for d in 0..=6 {
            assert_eq!(fresh.dim(d), cached.dim(d));
            assert_eq!(fresh.relations(d).unwrap(), cached.relations(d).unwrap());
        }
        let x = fresh.parse_element("fte + et3f").unwrap();
        assert_eq!(x, cached.parse_element("fte + et3f").unwrap());
    }

    #[test]
    fn corrupt_cache_is_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let p = catalog(&Rationals, "t4").unwrap().into_pair("t4").unwrap();
        let key = Cache::key(&p, 4);
        fs::write(cache.path_for(&key), "{\"key\": \"nope\"}").unwrap();
        let (g, status) = GradedAlgebra::build_cached(&p, 4, Some(&cache)).unwrap();
        assert_eq!(status, CacheStatus::Invalid);
        assert_eq!(g.dim(4).unwrap(), 25);
    }
}

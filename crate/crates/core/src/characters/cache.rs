//! Memo table for character values, optionally persisted as one JSON file
//! per degree.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::partitions::IntPartition;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "STRATAVOL_CACHE";
pub const CACHE_FORMAT_VERSION: u32 = 1;
const CACHE_FORMAT_NAME: &str = "stratavol-character-table";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacterKey {
    pub lambda: IntPartition,
    pub rho: IntPartition,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    lambda: Vec<u32>,
    rho: Vec<u32>,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: String,
    version: u32,
    degree: u32,
    entries: Vec<CacheEntry>,
}

#[derive(Default)]
struct Inner {
    by_degree: HashMap<u32, HashMap<CharacterKey, BigInt>>,
    dir: Option<PathBuf>,
    loaded: HashSet<u32>,
    dirty: HashSet<u32>,
}

/// Character values keyed by degree. Reads are shared; inserts take a
/// short exclusive lock and are idempotent, so racing writers are harmless.
#[derive(Default)]
pub struct CharTableCache {
    inner: RwLock<Inner>,
}

static GLOBAL: OnceLock<CharTableCache> = OnceLock::new();

impl CharTableCache {
    pub fn global() -> &'static CharTableCache {
        GLOBAL.get_or_init(CharTableCache::default)
    }

    /// Backs the cache with files in `dir`. Degrees already in memory are
    /// merged with their files on the next access.
    pub fn attach_dir(&self, dir: impl Into<PathBuf>) {
        let mut inner = self.inner.write().unwrap();
        inner.dir = Some(dir.into());
        inner.loaded.clear();
    }

    pub fn get(&self, key: &CharacterKey) -> Option<BigInt> {
        let degree = key.lambda.size();
        let dir = {
            let inner = self.inner.read().unwrap();
            match &inner.dir {
                Some(dir) if !inner.loaded.contains(&degree) => dir.clone(),
                _ => {
                    return inner
                        .by_degree
                        .get(&degree)
                        .and_then(|m| m.get(key))
                        .cloned()
                }
            }
        };
        // validating the file recomputes characters, which re-enters this
        // cache, so no lock may be held while reading it
        let entries = read_file(&file_for(&dir, degree), degree);
        let mut inner = self.inner.write().unwrap();
        if !inner.loaded.contains(&degree) {
            merge_degree(&mut inner, degree, entries);
        }
        inner
            .by_degree
            .get(&degree)
            .and_then(|m| m.get(key))
            .cloned()
    }

    pub fn insert(&self, key: CharacterKey, value: BigInt) {
        let degree = key.lambda.size();
        let mut inner = self.inner.write().unwrap();
        let table = inner.by_degree.entry(degree).or_default();
        if table.insert(key, value).is_none() {
            inner.dirty.insert(degree);
        }
    }

    pub fn len(&self, degree: u32) -> usize {
        let inner = self.inner.read().unwrap();
        inner.by_degree.get(&degree).map_or(0, HashMap::len)
    }

    pub fn is_empty(&self) -> bool {
        self.inner
            .read()
            .unwrap()
            .by_degree
            .values()
            .all(HashMap::is_empty)
    }

    /// Writes every degree that gained entries since the last write.
    /// Returns the number of files written.
    pub fn persist(&self) -> Result<usize> {
        let mut inner = self.inner.write().unwrap();
        let Some(dir) = inner.dir.clone() else {
            return Ok(0);
        };
        fs::create_dir_all(&dir)?;
        let mut dirty: Vec<u32> = inner.dirty.drain().collect();
        dirty.sort_unstable();
        for &degree in &dirty {
            let Some(table) = inner.by_degree.get(&degree) else {
                continue;
            };
            let sorted: BTreeMap<(&[u32], &[u32]), &BigInt> = table
                .iter()
                .map(|(k, v)| ((k.lambda.parts(), k.rho.parts()), v))
                .collect();
            let file = CacheFile {
                format: CACHE_FORMAT_NAME.to_string(),
                version: CACHE_FORMAT_VERSION,
                degree,
                entries: sorted
                    .into_iter()
                    .map(|((l, r), v)| CacheEntry {
                        lambda: l.to_vec(),
                        rho: r.to_vec(),
                        value: v.to_string(),
                    })
                    .collect(),
            };
            let path = file_for(&dir, degree);
            let tmp = path.with_extension("json.tmp");
            fs::write(
                &tmp,
                serde_json::to_vec(&file).expect("cache file serializes"),
            )?;
            fs::rename(&tmp, &path)?;
        }
        Ok(dirty.len())
    }
}

fn file_for(dir: &Path, degree: u32) -> PathBuf {
    dir.join(format!("characters-d{degree}.json"))
}

fn merge_degree(inner: &mut Inner, degree: u32, entries: Option<Vec<(CharacterKey, BigInt)>>) {
    inner.loaded.insert(degree);
    match entries {
        Some(entries) => {
            let table = inner.by_degree.entry(degree).or_default();
            let from_file = entries.len();
            for (k, v) in entries {
                table.entry(k).or_insert(v);
            }
            if table.len() > from_file {
                inner.dirty.insert(degree);
            }
        }
        // missing, corrupt or stale: rebuild on the next persist
        None => {
            inner.dirty.insert(degree);
        }
    }
}

fn read_file(path: &Path, degree: u32) -> Option<Vec<(CharacterKey, BigInt)>> {
    let bytes = fs::read(path).ok()?;
    let file: CacheFile = serde_json::from_slice(&bytes).ok()?;
    if file.format != CACHE_FORMAT_NAME
        || file.version != CACHE_FORMAT_VERSION
        || file.degree != degree
    {
        return None;
    }
    let mut out = Vec::with_capacity(file.entries.len());
    for e in file.entries {
        let lambda = IntPartition::new(e.lambda).ok()?;
        let rho = IntPartition::new(e.rho).ok()?;
        if lambda.size() != degree || rho.size() != degree {
            return None;
        }
        let value: BigInt = e.value.parse().ok()?;
        out.push((CharacterKey { lambda, rho }, value));
    }
    // spot-check a few values against recomputation
    let step = (out.len() / 3).max(1);
    for (key, value) in out.iter().step_by(step).take(3) {
        if &super::character_uncached(&key.lambda, &key.rho) != value {
            return None;
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enum_int_partitions;

    fn fill(cache: &CharTableCache, d: u32) {
        for l in enum_int_partitions(d) {
            for r in enum_int_partitions(d) {
                let v = super::super::character_uncached(&l, &r);
                cache.insert(
                    CharacterKey {
                        lambda: l.clone(),
                        rho: r,
                    },
                    v,
                );
            }
        }
    }

    #[test]
    fn persists_and_reloads() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CharTableCache::default();
        cache.attach_dir(dir.path());
        fill(&cache, 4);
        assert_eq!(cache.persist().unwrap(), 1);
        assert!(dir.path().join("characters-d4.json").exists());

        let fresh = CharTableCache::default();
        fresh.attach_dir(dir.path());
        let key = CharacterKey {
            lambda: IntPartition::new(vec![1, 1]).unwrap(),
            rho: IntPartition::new(vec![2]).unwrap(),
        };
        // degree 2 was never written
        assert_eq!(fresh.get(&key), None);
        let key4 = CharacterKey {
            lambda: IntPartition::new(vec![2, 1, 1]).unwrap(),
            rho: IntPartition::new(vec![4]).unwrap(),
        };
        assert_eq!(fresh.get(&key4), Some(BigInt::from(1)));
        assert_eq!(fresh.len(4), 25);
    }

    #[test]
    fn corrupt_or_stale_files_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("characters-d3.json"), b"{not json").unwrap();
        let stale = CacheFile {
            format: CACHE_FORMAT_NAME.into(),
            version: CACHE_FORMAT_VERSION + 1,
            degree: 2,
            entries: vec![CacheEntry {
                lambda: vec![2],
                rho: vec![2],
                value: "1".into(),
            }],
        };
        fs::write(
            dir.path().join("characters-d2.json"),
            serde_json::to_vec(&stale).unwrap(),
        )
        .unwrap();
        let wrong = CacheFile {
            format: CACHE_FORMAT_NAME.into(),
            version: CACHE_FORMAT_VERSION,
            degree: 2,
            entries: vec![CacheEntry {
                lambda: vec![1, 1],
                rho: vec![2],
                value: "7".into(),
            }],
        };
        fs::write(
            dir.path().join("characters-d2.json"),
            serde_json::to_vec(&wrong).unwrap(),
        )
        .unwrap();

        let cache = CharTableCache::default();
        cache.attach_dir(dir.path());
        let k3 = CharacterKey {
            lambda: IntPartition::new(vec![3]).unwrap(),
            rho: IntPartition::new(vec![3]).unwrap(),
        };
        assert_eq!(cache.get(&k3), None);
        let k2 = CharacterKey {
            lambda: IntPartition::new(vec![1, 1]).unwrap(),
            rho: IntPartition::new(vec![2]).unwrap(),
        };
        assert_eq!(cache.get(&k2), None);
        fill(&cache, 3);
        fill(&cache, 2);
        assert_eq!(cache.persist().unwrap(), 2);

        let fresh = CharTableCache::default();
        fresh.attach_dir(dir.path());
        assert_eq!(fresh.get(&k2), Some(BigInt::from(-1)));
        assert_eq!(fresh.get(&k3), Some(BigInt::from(1)));
    }
}

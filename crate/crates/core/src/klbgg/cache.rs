//! Persistent store of Kazhdan–Lusztig polynomials.
//!
//! File format, one record per line after a version header:
//!
//! ```text
//! takiff-kl-cache<TAB>v1
//! <fingerprint><TAB><word x><TAB><word w><TAB><c0,c1,...>
//! ```
//!
//! Fingerprints are Cartan matrices written row by row (`2,-1;-1,2`). Words
//! are canonical reduced words with 1-based generators joined by `.`, or `e`.
//! The zero polynomial is written `0`. New records are appended; a final line
//! without its newline is a torn write and is ignored on load.

use std::collections::{BTreeMap, HashMap};
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use super::kl::{compute_kl_table, KLPolynomial, KlTable};
use crate::error::{Error, Result};
use crate::weyl::{fingerprint, CoxeterGroup};

pub const CACHE_HEADER: &str = "takiff-kl-cache\tv1";

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KlKey {
    pub fingerprint: String,
    pub x: Vec<usize>,
    pub w: Vec<usize>,
}

/// A Coxeter group together with its lazily computed KL table.
#[derive(Debug)]
pub struct GroupEntry {
    group: CoxeterGroup,
    table: OnceLock<KlTable>,
}

impl GroupEntry {
    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn table(&self) -> &KlTable {
        self.table.get_or_init(|| compute_kl_table(&self.group))
    }
}

#[derive(Debug, Default)]
pub struct KlCache {
    path: Option<PathBuf>,
    groups: Mutex<HashMap<String, Arc<GroupEntry>>>,
    entries: RwLock<BTreeMap<KlKey, KLPolynomial>>,
    pending: Mutex<Vec<KlKey>>,
}

fn fmt_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    word.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(".")
}

fn parse_word(s: &str) -> Option<Vec<usize>> {
    if s == "e" {
        return Some(Vec::new());
    }
    s.split('.')
        .map(|t| t.parse::<usize>().ok().filter(|&i| i > 0).map(|i| i - 1))
        .collect()
}

fn fmt_record(key: &KlKey, p: &KLPolynomial) -> String {
    let coeffs = if p.is_zero() {
        "0".to_string()
    } else {
        p.coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    format!(
        "{}\t{}\t{}\t{}\n",
        key.fingerprint,
        fmt_word(&key.x),
        fmt_word(&key.w),
        coeffs
    )
}

fn parse_record(line: &str) -> Option<(KlKey, KLPolynomial)> {
    let mut parts = line.split('\t');
    let fingerprint = parts.next()?.to_string();
    let x = parse_word(parts.next()?)?;
    let w = parse_word(parts.next()?)?;
    let coeffs: Vec<i64> = parts
        .next()?
        .split(',')
        .map(|c| c.parse().ok())
        .collect::<Option<_>>()?;
    if parts.next().is_some() || fingerprint.is_empty() {
        return None;
    }
    Some((
        KlKey { fingerprint, x, w },
        KLPolynomial::from_coeffs(coeffs),
    ))
}

impl KlCache {
    /// An in-memory cache.
    pub fn new() -> Self {
        Self::default()
    }

    /// A cache backed by `path`; existing records are loaded.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let cache = KlCache {
            path: Some(path.clone()),
            ..Self::default()
        };
        if path.exists() {
            let text = fs::read_to_string(&path)
                .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
            *cache.entries.write().expect("kl cache poisoned") = Self::parse(&text)?;
        }
        Ok(cache)
    }

    pub fn parse(text: &str) -> Result<BTreeMap<KlKey, KLPolynomial>> {
        let mut entries = BTreeMap::new();
        if text.is_empty() {
            return Ok(entries);
        }
        let complete = text.ends_with('\n');
        let lines: Vec<&str> = text.split('\n').collect();
        // split leaves an empty tail after the final newline
        let last = lines.len() - 1;
        match lines.first() {
            Some(&h) if h == CACHE_HEADER => {}
            Some(h) => return Err(Error::Cache(format!("unsupported header `{h}`"))),
            None => unreachable!(),
        }
        for (k, line) in lines.iter().enumerate().skip(1) {
            if k == last {
                // torn final record, or the empty remainder after '\n'
                debug_assert!(complete || !line.is_empty());
                break;
            }
            if line.is_empty() {
                continue;
            }
            let (key, poly) = parse_record(line)
                .ok_or_else(|| Error::Cache(format!("malformed record on line {}", k + 1)))?;
            if let Some(prev) = entries.get(&key) {
                if *prev != poly {
                    return Err(Error::Cache(format!(
                        "conflicting records for line {}",
                        k + 1
                    )));
                }
            }
            entries.insert(key, poly);
        }
        Ok(entries)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    /// Registered group for a Cartan matrix, created on first use.
    pub fn group(&self, cartan: &[Vec<i64>]) -> Result<Arc<GroupEntry>> {
        let fp = fingerprint(cartan);
        let mut groups = self.groups.lock().expect("kl cache poisoned");
        if let Some(g) = groups.get(&fp) {
            return Ok(g.clone());
        }
        let entry = Arc::new(GroupEntry {
            group: CoxeterGroup::new(cartan)?,
            table: OnceLock::new(),
        });
        groups.insert(fp, entry.clone());
        Ok(entry)
    }

    /// `P_{x,w}` by group index; looked up, else computed and recorded.
    pub fn kl(&self, entry: &GroupEntry, x: usize, w: usize) -> KLPolynomial {
        let g = entry.group();
        let key = KlKey {
            fingerprint: g.fingerprint(),
            x: g.word(x).to_vec(),
            w: g.word(w).to_vec(),
        };
        if let Some(p) = self.entries.read().expect("kl cache poisoned").get(&key) {
            return p.clone();
        }
        let p = entry.table().get(x, w);
        let mut entries = self.entries.write().expect("kl cache poisoned");
        if !entries.contains_key(&key) {
            entries.insert(key.clone(), p.clone());
            self.pending.lock().expect("kl cache poisoned").push(key);
        }
        p
    }

    pub fn get(&self, key: &KlKey) -> Option<KLPolynomial> {
        self.entries
            .read()
            .expect("kl cache poisoned")
            .get(key)
            .cloned()
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("kl cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of distinct Coxeter data among the stored records.
    pub fn fingerprints(&self) -> Vec<String> {
        let entries = self.entries.read().expect("kl cache poisoned");
        let mut fps: Vec<String> = entries.keys().map(|k| k.fingerprint.clone()).collect();
        fps.dedup();
        fps
    }

    /// Appends records computed since the last flush to the backing file.
    pub fn flush(&self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let mut pending = self.pending.lock().expect("kl cache poisoned");
        if pending.is_empty() {
            return Ok(());
        }
        let err = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(err)?;
        }
        let fresh = fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
        let mut out = String::new();
        if fresh {
            out.push_str(CACHE_HEADER);
            out.push('\n');
        }
        let entries = self.entries.read().expect("kl cache poisoned");
        for key in pending.iter() {
            out.push_str(&fmt_record(key, &entries[key]));
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(err)?;
        file.write_all(out.as_bytes()).map_err(err)?;
        pending.clear();
        Ok(())
    }

    /// Canonical serialisation: header, then records in key order.
    pub fn to_text(&self) -> String {
        let entries = self.entries.read().expect("kl cache poisoned");
        let mut out = String::from(CACHE_HEADER);
        out.push('\n');
        for (k, p) in entries.iter() {
            out.push_str(&fmt_record(k, p));
        }
        out
    }

    pub fn save_to(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_text())
            .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        self.pending.lock().expect("kl cache poisoned").clear();
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootSystem;

    fn fill(cache: &KlCache, t: &str) {
        let rs = RootSystem::new(&t.parse().unwrap());
        let entry = cache.group(rs.cartan_matrix()).unwrap();
        let n = entry.group().order();
        for x in 0..n {
            for w in 0..n {
                cache.kl(&entry, x, w);
            }
        }
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("kl.txt");
        let cache = KlCache::open(&path).unwrap();
        fill(&cache, "A3");
        fill(&cache, "B2");
        cache.flush().unwrap();
        let reopened = KlCache::open(&path).unwrap();
        assert_eq!(reopened.len(), cache.len());
        let a = dir.path().join("a.txt");
        let b = dir.path().join("b.txt");
        reopened.save_to(&a).unwrap();
        KlCache::open(&a).unwrap().save_to(&b).unwrap();
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
        assert_eq!(fs::read_to_string(&a).unwrap(), cache.to_text());
    }

    #[test]
    fn insertion_order_does_not_matter() {
        let one = KlCache::new();
        fill(&one, "A2");
        fill(&one, "B2");
        let two = KlCache::new();
        fill(&two, "B2");
        fill(&two, "A2");
        assert_eq!(one.to_text(), two.to_text());
    }

    #[test]
    fn torn_tail_is_ignored_and_bad_header_rejected() {
        let text = format!("{CACHE_HEADER}\n2\te\t1\t1\n2\te\te\t");
        let parsed = KlCache::parse(&text).unwrap();
        assert_eq!(parsed.len(), 1);
        assert!(KlCache::parse("takiff-kl-cache\tv0\n").is_err());
        let bad = format!("{CACHE_HEADER}\nnot a record\n");
        assert!(KlCache::parse(&bad).is_err());
        let conflict = format!("{CACHE_HEADER}\n2\te\t1\t1\n2\te\t1\t1,1\n");
        assert!(KlCache::parse(&conflict).is_err());
    }

    #[test]
    fn appends_only_new_records() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("kl.txt");
        let cache = KlCache::open(&path).unwrap();
        fill(&cache, "A1");
        cache.flush().unwrap();
        let before = fs::read_to_string(&path).unwrap();
        cache.flush().unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), before);
        let again = KlCache::open(&path).unwrap();
        fill(&again, "A1");
        again.flush().unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), before);
    }
}

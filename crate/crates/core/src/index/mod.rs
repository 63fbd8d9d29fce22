//! Method-name index: record store, name table, trigram postings and the
//! corpus word-frequency table.

mod disk;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extract::MethodRecord;
use crate::lexicon::FrequencyTable;

pub use disk::{FORMAT_VERSION, FREQUENCY_FILE, META_FILE, METHODS_FILE, NAMES_FILE, POSTINGS_FILE};

pub type Gram = [u8; 3];

/// Ordered words a method name must contain, left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatchPattern {
    words: Vec<String>,
}

impl MatchPattern {
    /// Returns `None` when the list or any word is empty.
    pub fn new<S: Into<String>>(words: impl IntoIterator<Item = S>) -> Option<Self> {
        let words: Vec<String> = words.into_iter().map(Into::into).collect();
        if words.is_empty() || words.iter().any(String::is_empty) {
            return None;
        }
        Some(MatchPattern { words })
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }
}

impl fmt::Display for MatchPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(".*")?;
        for w in &self.words {
            write!(f, "{w}.*")?;
        }
        Ok(())
    }
}

/// Whether `words` occur in `name` in order without overlapping.
///
/// Taking the leftmost occurrence of each word leaves the longest possible
/// suffix for the rest, so the greedy scan never misses a match.
pub fn ordered_match<S: AsRef<str>>(name: &str, words: &[S]) -> bool {
    let mut rest = name;
    for w in words {
        let w = w.as_ref();
        match rest.find(w) {
            Some(i) => rest = &rest[i + w.len()..],
            None => return false,
        }
    }
    true
}

pub(crate) fn grams(s: &str) -> impl Iterator<Item = Gram> + '_ {
    s.as_bytes().windows(3).map(|w| [w[0], w[1], w[2]])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexMeta {
    pub format_version: u32,
    pub records: u64,
    pub vocabulary: u64,
    pub grams: u64,
}

#[derive(Debug, Clone)]
pub struct NameIndex {
    records: Vec<MethodRecord>,
    postings: Option<BTreeMap<Gram, Vec<u32>>>,
    frequency: FrequencyTable,
}

impl NameIndex {
    /// Builds an in-memory index. Fails on a repeated method key.
    pub fn from_records(records: impl IntoIterator<Item = MethodRecord>) -> Result<Self> {
        let records: Vec<MethodRecord> = records.into_iter().collect();
        if records.len() > u32::MAX as usize {
            return Err(Error::Config("more than 2^32 records".into()));
        }
        let mut seen = HashSet::with_capacity(records.len());
        for r in &records {
            if !seen.insert(r.method_key.as_str()) {
                return Err(Error::DuplicateKey(r.method_key.clone()));
            }
        }
        let frequency = FrequencyTable::from_names(records.iter().map(|r| r.name.as_str()));
        let mut postings: BTreeMap<Gram, Vec<u32>> = BTreeMap::new();
        for (ord, r) in records.iter().enumerate() {
            for g in grams(&r.name_lower) {
                let list = postings.entry(g).or_default();
                if list.last() != Some(&(ord as u32)) {
                    list.push(ord as u32);
                }
            }
        }
        Ok(NameIndex {
            records,
            postings: Some(postings),
            frequency,
        })
    }

    /// Same index without trigram postings; searches scan every name.
    pub fn without_postings(mut self) -> Self {
        self.postings = None;
        self
    }

    pub fn load(dir: &Path) -> Result<Self> {
        disk::load(dir)
    }

    /// Writes the index files into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        disk::write(self, dir)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[MethodRecord] {
        &self.records
    }

    pub fn record(&self, ord: u32) -> &MethodRecord {
        &self.records[ord as usize]
    }

    pub fn frequency(&self) -> &FrequencyTable {
        &self.frequency
    }

    pub fn has_postings(&self) -> bool {
        self.postings.is_some()
    }

    pub fn meta(&self) -> IndexMeta {
        IndexMeta {
            format_version: FORMAT_VERSION,
            records: self.records.len() as u64,
            vocabulary: self.frequency.vocabulary_size() as u64,
            grams: self.postings.as_ref().map_or(0, |p| p.len() as u64),
        }
    }

    /// Ordinals of records whose lowercase name matches `pattern`, in
    /// stored order.
    pub fn search_names(&self, pattern: &MatchPattern) -> Vec<u32> {
        let words = pattern.words();
        match self.candidates(words) {
            Some(cands) => cands
                .into_iter()
                .filter(|&o| ordered_match(&self.records[o as usize].name_lower, words))
                .collect(),
            None => self.scan(words),
        }
    }

    /// Matching ordinals by checking every name.
    pub fn scan<S: AsRef<str>>(&self, words: &[S]) -> Vec<u32> {
        self.records
            .iter()
            .enumerate()
            .filter(|(_, r)| ordered_match(&r.name_lower, words))
            .map(|(o, _)| o as u32)
            .collect()
    }

    /// Intersection of the posting lists of every trigram of every word, or
    /// `None` when postings are absent or no word is long enough.
    fn candidates(&self, words: &[String]) -> Option<Vec<u32>> {
        let postings = self.postings.as_ref()?;
        let mut needed: Vec<Gram> = words.iter().flat_map(|w| grams(w)).collect();
        if needed.is_empty() {
            return None;
        }
        needed.sort_unstable();
        needed.dedup();
        let mut lists = Vec::with_capacity(needed.len());
        for g in &needed {
            match postings.get(g) {
                Some(l) => lists.push(l.as_slice()),
                None => return Some(Vec::new()),
            }
        }
        lists.sort_by_key(|l| l.len());
        let mut acc = lists[0].to_vec();
        for l in &lists[1..] {
            acc.retain(|o| l.binary_search(o).is_ok());
            if acc.is_empty() {
                break;
            }
        }
        Some(acc)
    }

    pub fn stats(&self) -> IndexStats {
        let mut hist = [0u64; 5];
        let mut with_apis = 0u64;
        let mut sum = 0.0;
        for r in &self.records {
            if r.api_sequence.is_empty() {
                continue;
            }
            with_apis += 1;
            let ratio = r.jdk_ratio();
            sum += ratio;
            hist[((ratio * 4.0).floor() as usize).min(4)] += 1;
        }
        IndexStats {
            records: self.records.len() as u64,
            vocabulary: self.frequency.vocabulary_size() as u64,
            name_words: self.frequency.total(),
            records_with_apis: with_apis,
            mean_jdk_ratio: if with_apis == 0 { 0.0 } else { sum / with_apis as f64 },
            jdk_ratio_histogram: hist,
        }
    }
}

/// Summary printed by `seqmatch stats`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexStats {
    pub records: u64,
    pub vocabulary: u64,
    pub name_words: u64,
    pub records_with_apis: u64,
    pub mean_jdk_ratio: f64,
    /// Records with at least one API token, bucketed by JDK ratio:
    /// [0,.25) [.25,.5) [.5,.75) [.75,1) and exactly 1.
    pub jdk_ratio_histogram: [u64; 5],
}

impl fmt::Display for IndexStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "records          {}", self.records)?;
        writeln!(f, "name vocabulary  {}", self.vocabulary)?;
        writeln!(f, "name words       {}", self.name_words)?;
        writeln!(f, "records w/ APIs  {}", self.records_with_apis)?;
        writeln!(f, "mean JDK ratio   {:.4}", self.mean_jdk_ratio)?;
        let labels = ["[0.00,0.25)", "[0.25,0.50)", "[0.50,0.75)", "[0.75,1.00)", "1.00"];
        for (label, n) in labels.iter().zip(self.jdk_ratio_histogram) {
            writeln!(f, "  jdk ratio {label:<12} {n}")?;
        }
        Ok(())
    }
}

/// Builds an index from `records` and writes it to `out_dir`.
///
/// A `.build.lock` file guards the directory for the duration of the build.
/// On failure, files written so far are removed.
pub fn build_index(records: impl IntoIterator<Item = MethodRecord>, out_dir: &Path) -> Result<NameIndex> {
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let _lock = disk::BuildLock::acquire(out_dir)?;
    let index = NameIndex::from_records(records)?;
    if let Err(e) = index.write(out_dir) {
        disk::remove_outputs(out_dir);
        return Err(e);
    }
    Ok(index)
}

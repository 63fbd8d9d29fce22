use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use super::{split_identifier, stem, tsv_rows};
use crate::error::{Error, Result};

/// Occurrence counts of stemmed, lowercase method-name words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencyTable {
    counts: BTreeMap<String, u64>,
    total: u64,
}

impl FrequencyTable {
    pub fn from_names<'a>(names: impl IntoIterator<Item = &'a str>) -> Self {
        let mut table = FrequencyTable::default();
        for name in names {
            table.add_name(name);
        }
        table
    }

    pub fn from_counts(counts: impl IntoIterator<Item = (String, u64)>) -> Self {
        let mut table = FrequencyTable::default();
        for (word, count) in counts {
            *table.counts.entry(word).or_default() += count;
            table.total += count;
        }
        table
    }

    pub fn add_name(&mut self, name: &str) {
        for word in split_identifier(name) {
            *self.counts.entry(stem(&word)).or_default() += 1;
            self.total += 1;
        }
    }

    pub fn get(&self, word: &str) -> u64 {
        self.counts.get(word).copied().unwrap_or(0)
    }

    /// Number of distinct words.
    pub fn vocabulary_size(&self) -> usize {
        self.counts.len()
    }

    /// Sum of all counts.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.counts.iter().map(|(w, c)| (w.as_str(), *c))
    }

    /// Writes `word<TAB>count` lines in byte order of the word.
    pub fn write_tsv(&self, mut out: impl Write) -> std::io::Result<()> {
        for (word, count) in &self.counts {
            writeln!(out, "{word}\t{count}")?;
        }
        Ok(())
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut rows = Vec::new();
        for (line, fields) in tsv_rows(text) {
            let [word, count] = fields[..] else {
                return Err(Error::parse(origin, line, "expected `word<TAB>count`"));
            };
            let count = count
                .parse::<u64>()
                .map_err(|e| Error::parse(origin, line, e.to_string()))?;
            rows.push((word.to_string(), count));
        }
        Ok(Self::from_counts(rows))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }
}

use std::collections::HashMap;
use std::path::Path;

use super::{stem, tsv_rows, FrequencyTable};
use crate::error::{Error, Result};

/// Word -> synonyms table standing in for a thesaurus export.
#[derive(Debug, Clone, Default)]
pub struct SynonymTable {
    entries: HashMap<String, Vec<String>>,
}

impl SynonymTable {
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut table = SynonymTable::default();
        for (line, fields) in tsv_rows(text) {
            let [word, syns] = fields[..] else {
                return Err(Error::parse(origin, line, "expected `word<TAB>syn1,syn2,...`"));
            };
            let syns = syns
                .split(',')
                .map(|s| s.trim().to_ascii_lowercase())
                .filter(|s| !s.is_empty());
            let syns: Vec<String> = syns.collect();
            table.insert_owned(&word.to_ascii_lowercase(), syns);
        }
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    /// Adds synonyms under the word and under its stem, so stemmed query
    /// words find them too.
    pub fn insert(&mut self, word: &str, synonyms: &[&str]) {
        self.insert_owned(word, synonyms.iter().map(|s| s.to_string()).collect());
    }

    fn insert_owned(&mut self, word: &str, synonyms: Vec<String>) {
        let stemmed = stem(word);
        if stemmed != word {
            self.entries
                .entry(stemmed)
                .or_default()
                .extend(synonyms.iter().cloned());
        }
        self.entries.entry(word.to_string()).or_default().extend(synonyms);
    }

    pub fn synonyms(&self, word: &str) -> &[String] {
        self.entries.get(word).map(Vec::as_slice).unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Replaces a word absent from the corpus name vocabulary by its most frequent
/// known synonym (ties go to the lexicographically smallest). Synonyms are
/// looked up under the word itself and compared by their stems.
pub fn synonym_substitute(word: &str, freq: &FrequencyTable, synonyms: &SynonymTable) -> String {
    if freq.get(word) > 0 {
        return word.to_string();
    }
    synonyms
        .synonyms(word)
        .iter()
        .map(|s| stem(s))
        .map(|s| (freq.get(&s), s))
        .filter(|(f, _)| *f > 0)
        .max_by(|(fa, sa), (fb, sb)| fa.cmp(fb).then_with(|| sb.cmp(sa)))
        .map(|(_, s)| s)
        .unwrap_or_else(|| word.to_string())
}

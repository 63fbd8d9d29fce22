use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::tsv_rows;
use crate::error::{Error, Result};

/// Part of speech assigned to a query word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WordProperty {
    Verb,
    Noun,
    Adjective,
    Adverb,
    Preposition,
    Conjunction,
    Other,
}

impl WordProperty {
    pub const ALL: [WordProperty; 7] = [
        WordProperty::Verb,
        WordProperty::Noun,
        WordProperty::Adjective,
        WordProperty::Adverb,
        WordProperty::Preposition,
        WordProperty::Conjunction,
        WordProperty::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            WordProperty::Verb => "verb",
            WordProperty::Noun => "noun",
            WordProperty::Adjective => "adjective",
            WordProperty::Adverb => "adverb",
            WordProperty::Preposition => "preposition",
            WordProperty::Conjunction => "conjunction",
            WordProperty::Other => "other",
        }
    }

    /// Whether words of this property survive query filtering.
    pub fn is_searchable(self) -> bool {
        self != WordProperty::Other
    }
}

impl fmt::Display for WordProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WordProperty {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "verb" | "v" => WordProperty::Verb,
            "noun" | "n" => WordProperty::Noun,
            "adjective" | "adj" => WordProperty::Adjective,
            "adverb" | "adv" => WordProperty::Adverb,
            "preposition" | "prep" => WordProperty::Preposition,
            "conjunction" | "conj" => WordProperty::Conjunction,
            "other" => WordProperty::Other,
            other => return Err(format!("unknown word property {other:?}")),
        })
    }
}

const PREPOSITIONS: &[&str] = &[
    "about", "above", "across", "after", "against", "along", "among", "around", "as", "at",
    "before", "behind", "below", "beneath", "beside", "between", "beyond", "by", "despite", "down",
    "during", "except", "for", "from", "in", "inside", "into", "like", "near", "of", "off", "on",
    "onto", "out", "outside", "over", "past", "per", "since", "through", "throughout", "till", "to",
    "toward", "towards", "under", "underneath", "until", "unto", "up", "upon", "via", "with",
    "within", "without",
];

const CONJUNCTIONS: &[&str] = &[
    "and", "or", "but", "nor", "yet", "so", "if", "because", "although", "though", "unless",
    "whereas", "while", "whether", "than", "then", "once", "either", "neither", "both",
];

/// Word -> property table plus the suffix fallback.
#[derive(Debug, Clone, Default)]
pub struct PosLexicon {
    entries: HashMap<String, WordProperty>,
}

impl PosLexicon {
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut entries = HashMap::new();
        for row in tsv_rows(text) {
            let (line, fields) = row;
            let [word, prop] = fields[..] else {
                return Err(Error::parse(origin, line, "expected `word<TAB>property`"));
            };
            let prop = prop
                .parse::<WordProperty>()
                .map_err(|e| Error::parse(origin, line, e))?;
            entries.insert(word.to_ascii_lowercase(), prop);
        }
        Ok(PosLexicon { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<WordProperty> {
        self.entries.get(word).copied()
    }

    pub fn insert(&mut self, word: &str, property: WordProperty) {
        self.entries.insert(word.to_ascii_lowercase(), property);
    }
}

/// Classifies one lowercase word.
pub fn classify_word(raw: &str, lexicon: &PosLexicon) -> WordProperty {
    let (property, source) = classify_with_source(raw, lexicon);
    log::debug!("classify {raw:?} -> {property} ({source})");
    property
}

fn classify_with_source(raw: &str, lexicon: &PosLexicon) -> (WordProperty, &'static str) {
    if raw.is_empty() || !raw.chars().any(char::is_alphabetic) {
        return (WordProperty::Other, "symbol");
    }
    if let Some(p) = lexicon.get(raw) {
        return (p, "lexicon");
    }
    if PREPOSITIONS.contains(&raw) {
        return (WordProperty::Preposition, "closed-list");
    }
    if CONJUNCTIONS.contains(&raw) {
        return (WordProperty::Conjunction, "closed-list");
    }
    if !raw.chars().all(|c| c.is_ascii_alphabetic()) {
        // Mixed tokens such as "md5" or "utf8" read as names.
        return (WordProperty::Noun, "default");
    }
    let has = |suffix: &str| raw.len() > suffix.len() + 2 && raw.ends_with(suffix);
    if has("ly") {
        return (WordProperty::Adverb, "suffix");
    }
    if has("ing") || has("ize") || has("ise") || has("ify") {
        return (WordProperty::Verb, "suffix");
    }
    if has("ous") || has("ful") || has("ive") || has("al") || has("able") || has("ible") {
        return (WordProperty::Adjective, "suffix");
    }
    (WordProperty::Noun, "default")
}

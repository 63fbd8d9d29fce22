use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::MatchPattern;
use crate::lexicon::{classify_word, importance_level, stem, synonym_substitute, FrequencyTable, Lexicons, WordProperty};

const QUESTION_WORDS: &[&str] = &["how", "what", "why", "when", "where", "which", "who"];
const AUXILIARIES: &[&str] = &["do", "does", "did", "can", "could", "should", "would", "is", "are", "i"];

/// A kept query word with the metadata that drives the drop schedule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TokenMetadata {
    /// Stemmed, possibly synonym-substituted form used for matching.
    pub token: String,
    pub property: WordProperty,
    pub frequency: u64,
    pub importance: u8,
    /// The query word as typed.
    #[serde(skip)]
    pub word: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QueryPlan {
    #[serde(skip)]
    pub raw_query: String,
    pub base_words: Vec<String>,
    pub kept_words: Vec<TokenMetadata>,
    pub patterns: Vec<MatchPattern>,
}

impl QueryPlan {
    /// Query length used as the denominator of both scores.
    pub fn nq(&self) -> usize {
        self.base_words.len()
    }

    pub fn tokens(&self) -> Vec<&str> {
        self.kept_words.iter().map(|t| t.token.as_str()).collect()
    }
}

/// Lowercases and splits on anything that is not a letter or digit.
pub fn tokenize_query(raw: &str) -> Vec<String> {
    raw.split(|c: char| !c.is_alphanumeric())
        .filter(|s| !s.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// Drops question words, auxiliaries and mentions of the Java language.
pub fn base_words(raw: &str) -> Vec<String> {
    let tokens = tokenize_query(raw);
    let mut out = Vec::with_capacity(tokens.len());
    let mut i = 0;
    while i < tokens.len() {
        let t = tokens[i].as_str();
        let phrase = (t == "in" || t == "using") && tokens.get(i + 1).is_some_and(|n| n == "java");
        if phrase {
            i += 2;
            continue;
        }
        if t != "java" && !QUESTION_WORDS.contains(&t) && !AUXILIARIES.contains(&t) {
            out.push(tokens[i].clone());
        }
        i += 1;
    }
    out
}

pub fn understand_query(raw: &str, lexicons: &Lexicons, frequency: &FrequencyTable) -> Result<QueryPlan> {
    let base = base_words(raw);
    let mut kept = Vec::new();
    for word in &base {
        let property = classify_word(word, &lexicons.pos);
        if !property.is_searchable() {
            continue;
        }
        let token = synonym_substitute(&stem(word), frequency, &lexicons.synonyms);
        let jdk = property == WordProperty::Noun
            && (lexicons.jdk.is_jdk_noun(word) || lexicons.jdk.is_jdk_noun(&token));
        kept.push(TokenMetadata {
            frequency: frequency.get(&token),
            importance: importance_level(property, jdk),
            property,
            token,
            word: word.clone(),
        });
    }
    if kept.is_empty() {
        return Err(Error::NoSearchableWords);
    }
    let patterns = drop_schedule(&kept);
    Ok(QueryPlan {
        raw_query: raw.to_string(),
        base_words: base,
        kept_words: kept,
        patterns,
    })
}

/// All kept words first, then one word fewer per pattern: the word with the
/// lowest (importance, frequency) goes, the rightmost on ties.
pub fn drop_schedule(kept: &[TokenMetadata]) -> Vec<MatchPattern> {
    let mut alive: Vec<&TokenMetadata> = kept.iter().collect();
    let mut out = Vec::with_capacity(kept.len());
    while !alive.is_empty() {
        out.push(MatchPattern::new(alive.iter().map(|t| t.token.clone())).expect("non-empty stems"));
        let victim = alive
            .iter()
            .enumerate()
            .min_by_key(|(i, t)| (t.importance, t.frequency, std::cmp::Reverse(*i)))
            .map(|(i, _)| i)
            .expect("non-empty");
        alive.remove(victim);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meta(token: &str, importance: u8, frequency: u64) -> TokenMetadata {
        TokenMetadata {
            token: token.into(),
            property: WordProperty::Noun,
            frequency,
            importance,
            word: token.into(),
        }
    }

    fn words(p: &MatchPattern) -> Vec<&str> {
        p.words().iter().map(String::as_str).collect()
    }

    #[test]
    fn worked_drop_order() {
        // Frequencies and levels from the worked example.
        let kept = [
            meta("convert", 4, 39292),
            meta("inputstream", 5, 3442),
            meta("to", 2, 22),
            meta("string", 5, 52369),
        ];
        let s = drop_schedule(&kept);
        let got: Vec<Vec<&str>> = s.iter().map(words).collect();
        assert_eq!(
            got,
            vec![
                vec!["convert", "inputstream", "to", "string"],
                vec!["convert", "inputstream", "string"],
                vec!["inputstream", "string"],
                vec!["string"],
            ]
        );
    }

    #[test]
    fn ties_drop_rightmost() {
        let s = drop_schedule(&[meta("a", 4, 7), meta("b", 4, 7), meta("c", 4, 7)]);
        assert_eq!(words(&s[1]), ["a", "b"]);
        assert_eq!(words(&s[2]), ["a"]);
    }

    #[test]
    fn filters_question_words_and_language() {
        assert_eq!(
            base_words("How to read a text line by line in Java?"),
            ["to", "read", "a", "text", "line", "by", "line"]
        );
        assert_eq!(base_words("sort list using java"), ["sort", "list"]);
        assert_eq!(base_words("what is java"), Vec::<String>::new());
    }

    #[test]
    fn worked_query_plan() {
        let lex = Lexicons::builtin();
        let freq = FrequencyTable::from_counts([
            ("convert".to_string(), 39292),
            ("inputstream".to_string(), 3442),
            ("to".to_string(), 22),
            ("string".to_string(), 52369),
        ]);
        let plan = understand_query("convert an inputstream to a string", &lex, &freq).unwrap();
        assert_eq!(plan.nq(), 6);
        assert_eq!(plan.tokens(), ["convert", "inputstream", "to", "string"]);
        let levels: Vec<u8> = plan.kept_words.iter().map(|t| t.importance).collect();
        assert_eq!(levels, [4, 5, 2, 5]);
        assert_eq!(plan.kept_words[1].frequency, 3442);
        assert_eq!(plan.patterns.len(), 4);
        assert_eq!(words(&plan.patterns[3]), ["string"]);
    }

    #[test]
    fn nothing_searchable() {
        let lex = Lexicons::builtin();
        let freq = FrequencyTable::default();
        assert!(matches!(understand_query("java", &lex, &freq), Err(Error::NoSearchableWords)));
        assert!(matches!(understand_query("how do i ... 42", &lex, &freq), Err(Error::NoSearchableWords)));
    }

    #[test]
    fn zero_frequency_words_take_synonyms() {
        let mut lex = Lexicons::builtin();
        lex.synonyms.insert("fetch", &["download", "get"]);
        let freq = FrequencyTable::from_counts([("download".to_string(), 3), ("get".to_string(), 40)]);
        let plan = understand_query("fetch file", &lex, &freq).unwrap();
        assert_eq!(plan.kept_words[0].token, "get");
        assert_eq!(plan.kept_words[0].word, "fetch");
        assert_eq!(plan.kept_words[0].frequency, 40);
    }

    proptest::proptest! {
        #[test]
        fn schedule_shape(levels in proptest::collection::vec((1u8..=5, 0u64..5), 1..8)) {
            let kept: Vec<_> = levels.iter().enumerate().map(|(i, &(imp, f))| meta(&format!("w{i}"), imp, f)).collect();
            let s = drop_schedule(&kept);
            proptest::prop_assert_eq!(s.len(), kept.len());
            proptest::prop_assert_eq!(s[0].words().len(), kept.len());
            for pair in s.windows(2) {
                let (a, b) = (pair[0].words(), pair[1].words());
                proptest::prop_assert_eq!(a.len(), b.len() + 1);
                let removed = (0..a.len()).any(|i| {
                    let mut rest = a.to_vec();
                    rest.remove(i);
                    rest == b
                });
                proptest::prop_assert!(removed);
            }
        }
    }
}

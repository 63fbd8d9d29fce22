use super::WordProperty;

/// Programming importance of a query word, 1 (noise) to 5 (JDK noun).
pub fn importance_level(property: WordProperty, is_jdk_noun: bool) -> u8 {
    match property {
        WordProperty::Noun if is_jdk_noun => 5,
        WordProperty::Verb | WordProperty::Noun => 4,
        WordProperty::Adjective | WordProperty::Adverb => 3,
        WordProperty::Preposition | WordProperty::Conjunction => 2,
        WordProperty::Other => 1,
    }
}

//! Word-level knowledge used by query understanding and indexing.
//!
//! Every table here is plain UTF-8 text so it can be swapped without a
//! rebuild. Tab-separated files skip blank lines and lines starting with `#`.

mod frequency;
mod importance;
mod jdk;
mod pos;
mod split;
mod stem;
mod synonyms;

use std::path::{Path, PathBuf};

pub use frequency::FrequencyTable;
pub use importance::importance_level;
pub use jdk::JdkCatalog;
pub use pos::{classify_word, PosLexicon, WordProperty};
pub use split::split_identifier;
pub use stem::stem;
pub use synonyms::{synonym_substitute, SynonymTable};

use crate::error::Result;

pub const BUILTIN_POS_LEXICON: &str = include_str!("../../data/pos_lexicon.tsv");
pub const BUILTIN_SYNONYMS: &str = include_str!("../../data/synonyms.tsv");
pub const BUILTIN_JDK_CATALOG: &str = include_str!("../../data/jdk_catalog.txt");

/// The three static tables a search needs besides the index itself.
#[derive(Debug, Clone)]
pub struct Lexicons {
    pub pos: PosLexicon,
    pub synonyms: SynonymTable,
    pub jdk: JdkCatalog,
}

/// Optional replacements for the built-in tables.
#[derive(Debug, Clone, Default)]
pub struct LexiconPaths {
    pub pos_lexicon: Option<PathBuf>,
    pub synonyms: Option<PathBuf>,
    pub jdk_catalog: Option<PathBuf>,
}

impl Lexicons {
    /// Tables compiled into the crate from `data/`.
    pub fn builtin() -> Self {
        let origin = Path::new("<builtin>");
        Lexicons {
            pos: PosLexicon::parse(BUILTIN_POS_LEXICON, origin).expect("builtin POS lexicon"),
            synonyms: SynonymTable::parse(BUILTIN_SYNONYMS, origin).expect("builtin synonyms"),
            jdk: JdkCatalog::parse(BUILTIN_JDK_CATALOG, origin).expect("builtin JDK catalog"),
        }
    }

    /// Built-in tables with any of them overridden from disk.
    pub fn load(paths: &LexiconPaths) -> Result<Self> {
        let mut lex = Self::builtin();
        if let Some(p) = &paths.pos_lexicon {
            lex.pos = PosLexicon::load(p)?;
        }
        if let Some(p) = &paths.synonyms {
            lex.synonyms = SynonymTable::load(p)?;
        }
        if let Some(p) = &paths.jdk_catalog {
            lex.jdk = JdkCatalog::load(p)?;
        }
        Ok(lex)
    }
}

/// Yields `(line_number, fields)` for every data line of a TSV text.
pub(crate) fn tsv_rows(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split('\t').map(str::trim).collect()))
        }
    })
}

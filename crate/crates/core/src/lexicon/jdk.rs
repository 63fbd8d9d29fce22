use std::collections::{HashMap, HashSet};
use std::path::Path;

use crate::error::{Error, Result};

/// Catalog of JDK types and well-known members.
///
/// Type lines are fully qualified class names (`java.io.InputStream`); member
/// lines end in `()` (`java.io.BufferedReader.readLine()`).
#[derive(Debug, Clone, Default)]
pub struct JdkCatalog {
    /// Simple type name -> qualified names in file order.
    types: HashMap<String, Vec<String>>,
    /// Lowercased simple type names.
    type_words: HashSet<String>,
    /// Lowercased member names.
    member_words: HashSet<String>,
}

impl JdkCatalog {
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut catalog = JdkCatalog::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !(line.starts_with("java.") || line.starts_with("javax.")) {
                return Err(Error::parse(origin, idx + 1, "entries must start with java. or javax."));
            }
            if let Some(member) = line.strip_suffix("()") {
                let name = member.rsplit('.').next().unwrap_or(member);
                catalog.member_words.insert(name.to_ascii_lowercase());
            } else {
                let simple = line.rsplit('.').next().unwrap_or(line);
                catalog.type_words.insert(simple.to_ascii_lowercase());
                catalog
                    .types
                    .entry(simple.to_string())
                    .or_default()
                    .push(line.to_string());
            }
        }
        if catalog.types.is_empty() {
            return Err(Error::parse(origin, 0, "catalog has no types"));
        }
        Ok(catalog)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn type_count(&self) -> usize {
        self.types.len()
    }

    /// Qualified name of a `java.lang` type, which Java imports implicitly.
    pub fn java_lang(&self, simple: &str) -> Option<&str> {
        self.types
            .get(simple)?
            .iter()
            .find(|q| q.strip_prefix("java.lang.") == Some(simple))
            .map(String::as_str)
    }

    /// Qualified name of `simple` if the catalog places it in `package`.
    pub fn in_package(&self, package: &str, simple: &str) -> Option<&str> {
        self.types.get(simple)?.iter().find_map(|q| {
            let pkg = q.strip_suffix(simple)?.strip_suffix('.')?;
            (pkg == package).then_some(q.as_str())
        })
    }

    pub fn contains_type(&self, simple: &str) -> bool {
        self.types.contains_key(simple)
    }

    /// True when a lowercase query word names a JDK type or member, or can be
    /// cut entirely into JDK type names ("stringbuilderlist").
    pub fn is_jdk_noun(&self, word: &str) -> bool {
        let word = word.to_ascii_lowercase();
        if word.is_empty() {
            return false;
        }
        if self.type_words.contains(&word) || self.member_words.contains(&word) {
            return true;
        }
        self.segments_into_types(&word)
    }

    fn segments_into_types(&self, word: &str) -> bool {
        let n = word.len();
        let mut reachable = vec![false; n + 1];
        reachable[0] = true;
        for start in 0..n {
            if !reachable[start] || !word.is_char_boundary(start) {
                continue;
            }
            for end in start + 1..=n {
                if word.is_char_boundary(end) && self.type_words.contains(&word[start..end]) {
                    reachable[end] = true;
                }
            }
        }
        reachable[n]
    }
}

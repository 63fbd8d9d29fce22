//! Method extraction from Java sources.

mod lexer;
mod parse;

use serde::{Deserialize, Serialize};

use crate::ingest::SourceFile;
use crate::lexicon::JdkCatalog;

pub use parse::{base_type, is_reference_type, ApiRef, Import};

/// One API reference in a method body, qualified as far as the file's
/// imports and the JDK catalog allow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApiToken {
    pub qualified: String,
    pub simple: String,
    pub is_jdk: bool,
}

impl ApiToken {
    pub fn new(qualified: impl Into<String>) -> Self {
        let qualified = qualified.into();
        ApiToken {
            simple: simple_name(&qualified),
            is_jdk: qualified.starts_with("java.") || qualified.starts_with("javax."),
            qualified,
        }
    }
}

/// `java.lang.StringBuilder.append()` -> `StringBuilder.append`.
fn simple_name(qualified: &str) -> String {
    let bare = qualified.strip_suffix("()").unwrap_or(qualified);
    let segs: Vec<&str> = bare.split('.').collect();
    let from = segs
        .iter()
        .position(|s| s.chars().next().is_some_and(char::is_uppercase))
        .unwrap_or(segs.len().saturating_sub(1));
    segs[from..].join(".")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodRecord {
    pub method_key: String,
    pub name: String,
    pub name_lower: String,
    pub param_types: Vec<String>,
    pub return_type: String,
    pub body_text: String,
    pub api_sequence: Vec<ApiToken>,
    pub content_hash: String,
    pub has_javadoc: bool,
}

impl MethodRecord {
    /// Repository id, the part of the key before the first `#`.
    pub fn repo(&self) -> &str {
        self.method_key.split('#').next().unwrap_or("")
    }

    /// Path of the source file relative to its repository.
    pub fn path(&self) -> &str {
        let rest = self.method_key.split_once('#').map_or("", |(_, r)| r);
        rest.rsplit_once('#').map_or(rest, |(p, _)| p)
    }

    pub fn jdk_ratio(&self) -> f64 {
        if self.api_sequence.is_empty() {
            return 0.0;
        }
        let jdk = self.api_sequence.iter().filter(|t| t.is_jdk).count();
        jdk as f64 / self.api_sequence.len() as f64
    }
}

/// Records found in one file, plus a note when the file could not be parsed.
#[derive(Debug, Default)]
pub struct FileExtraction {
    pub records: Vec<MethodRecord>,
    pub diagnostic: Option<String>,
}

pub fn extract_methods(file: &SourceFile, catalog: &JdkCatalog) -> FileExtraction {
    let parsed = match parse::parse_file(&file.text) {
        Ok(p) => p,
        Err(msg) => {
            log::warn!("{}/{}: {msg}", file.repo_id, file.rel_path);
            return FileExtraction {
                records: Vec::new(),
                diagnostic: Some(msg),
            };
        }
    };
    let records = parsed
        .methods
        .into_iter()
        .map(|m| {
            let body_text = file.text[m.start..m.end].to_string();
            MethodRecord {
                method_key: format!("{}#{}#{}", file.repo_id, file.rel_path, m.start_line),
                name_lower: m.name.to_ascii_lowercase(),
                name: m.name,
                param_types: m.param_types,
                return_type: m.return_type,
                api_sequence: qualify_apis(&m.refs, &parsed.imports, catalog),
                content_hash: content_hash(&body_text),
                body_text,
                has_javadoc: m.has_javadoc,
            }
        })
        .collect();
    FileExtraction {
        records,
        diagnostic: None,
    }
}

/// Qualifies references in order. Types resolve through an explicit import,
/// then a wildcard import the catalog can confirm, then `java.lang`; anything
/// else passes through as written.
pub fn qualify_apis(refs: &[ApiRef], imports: &[Import], catalog: &JdkCatalog) -> Vec<ApiToken> {
    refs.iter()
        .map(|r| {
            let qualified = match r {
                ApiRef::Type(path) => qualify_type(path, imports, catalog),
                ApiRef::Member { target, method } => {
                    format!("{}.{method}()", qualify_type(target, imports, catalog))
                }
                ApiRef::Bare(method) => format!("{method}()"),
                ApiRef::Local { class, method } => {
                    let suffix = format!(".{method}");
                    match imports
                        .iter()
                        .find(|i| i.is_static && !i.wildcard && i.path.ends_with(&suffix))
                    {
                        Some(i) => format!("{}()", i.path),
                        None if class.is_empty() => format!("{method}()"),
                        None => format!("{class}.{method}()"),
                    }
                }
            };
            ApiToken::new(qualified)
        })
        .collect()
}

fn qualify_type(path: &str, imports: &[Import], catalog: &JdkCatalog) -> String {
    let (head, rest) = path.split_once('.').map_or((path, ""), |(h, r)| (h, r));
    if !head.chars().next().is_some_and(char::is_uppercase) {
        return path.to_string();
    }
    let suffix = format!(".{head}");
    let explicit = imports
        .iter()
        .find(|i| !i.is_static && !i.wildcard && (i.path.ends_with(&suffix) || i.path == head))
        .map(|i| i.path.clone());
    let base = explicit
        .or_else(|| {
            imports
                .iter()
                .filter(|i| i.wildcard && !i.is_static)
                .find_map(|i| catalog.in_package(&i.path, head).map(str::to_string))
        })
        .or_else(|| catalog.java_lang(head).map(str::to_string));
    match base {
        Some(b) if rest.is_empty() => b,
        Some(b) => format!("{b}.{rest}"),
        None => path.to_string(),
    }
}

/// MD5 of the source with whitespace runs collapsed and the ends trimmed.
pub fn content_hash(source: &str) -> String {
    let normalized = source.split_whitespace().collect::<Vec<_>>().join(" ");
    format!("{:x}", md5::compute(normalized.as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::Lexicons;

    fn file(text: &str) -> SourceFile {
        SourceFile {
            repo_id: "demo".into(),
            rel_path: "src/Util.java".into(),
            byte_len: text.len() as u64,
            text: text.into(),
        }
    }

    fn qualified(r: &MethodRecord) -> Vec<&str> {
        r.api_sequence.iter().map(|t| t.qualified.as_str()).collect()
    }

    const PAIR: &str = include_str!("../../tests/fixtures/stream_pair/Util.java");

    #[test]
    fn first_method_of_the_pair() {
        let lex = Lexicons::builtin();
        let out = extract_methods(&file(PAIR), &lex.jdk);
        assert!(out.diagnostic.is_none());
        let r = &out.records[0];
        assert_eq!(r.name, "convertInputStreamToString");
        assert_eq!(r.return_type, "String");
        assert_eq!(r.param_types, ["InputStream"]);
        assert_eq!(
            qualified(r),
            [
                "java.io.InputStream",
                "java.io.InputStreamReader",
                "java.io.BufferedReader",
                "java.lang.StringBuilder",
                "java.lang.String",
                "java.io.BufferedReader.readLine()",
                "java.lang.StringBuilder.append()",
                "java.lang.StringBuilder.toString()",
                "java.lang.String",
            ]
        );
        assert!(r.api_sequence.iter().all(|t| t.is_jdk));
        assert!(r.body_text.starts_with("public String convertInputStreamToString("));
        assert!(r.body_text.ends_with('}'));
    }

    #[test]
    fn second_method_of_the_pair() {
        let lex = Lexicons::builtin();
        let out = extract_methods(&file(PAIR), &lex.jdk);
        let r = &out.records[1];
        assert_eq!(r.name, "convertInputStream2String");
        assert_eq!(qualified(r), ["java.io.InputStream", "Util.convert()", "java.lang.String"]);
        let flags: Vec<bool> = r.api_sequence.iter().map(|t| t.is_jdk).collect();
        assert_eq!(flags, [true, false, true]);
        assert!((r.jdk_ratio() - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn keys_and_provenance() {
        let lex = Lexicons::builtin();
        let out = extract_methods(&file(PAIR), &lex.jdk);
        let r = &out.records[0];
        let line = r.method_key.rsplit('#').next().unwrap().parse::<usize>().unwrap();
        assert_eq!(PAIR.lines().nth(line - 1).unwrap().trim_start(), r.body_text.lines().next().unwrap());
        assert_eq!(r.repo(), "demo");
        assert_eq!(r.path(), "src/Util.java");
        assert_eq!(r.name_lower, "convertinputstreamtostring");
    }

    #[test]
    fn interface_without_bodies_yields_nothing() {
        let lex = Lexicons::builtin();
        let out = extract_methods(&file("interface Shape { void f(); double area(); }"), &lex.jdk);
        assert!(out.records.is_empty());
        assert!(out.diagnostic.is_none());
    }

    #[test]
    fn broken_file_yields_diagnostic() {
        let lex = Lexicons::builtin();
        let out = extract_methods(&file("class A { void f() { "), &lex.jdk);
        assert!(out.records.is_empty());
        assert!(out.diagnostic.unwrap().contains("unbalanced"));
    }

    #[test]
    fn qualification_order() {
        let lex = Lexicons::builtin();
        let imports = vec![
            Import { path: "java.io.File".into(), wildcard: false, is_static: false },
            Import { path: "java.util".into(), wildcard: true, is_static: false },
            Import { path: "com.acme".into(), wildcard: true, is_static: false },
            Import { path: "java.lang.Math.max".into(), wildcard: false, is_static: true },
        ];
        let refs = vec![
            ApiRef::Type("String".into()),
            ApiRef::Type("File".into()),
            ApiRef::Type("ArrayList".into()),
            ApiRef::Type("Map.Entry".into()),
            ApiRef::Type("Widget".into()),
            ApiRef::Member { target: "System.out".into(), method: "println".into() },
            ApiRef::Local { class: "Calc".into(), method: "max".into() },
            ApiRef::Local { class: "Calc".into(), method: "min".into() },
            ApiRef::Bare("close".into()),
        ];
        let got = qualify_apis(&refs, &imports, &lex.jdk);
        let q: Vec<_> = got.iter().map(|t| t.qualified.as_str()).collect();
        assert_eq!(
            q,
            [
                "java.lang.String",
                "java.io.File",
                "java.util.ArrayList",
                "java.util.Map.Entry",
                "Widget",
                "java.lang.System.out.println()",
                "java.lang.Math.max()",
                "Calc.min()",
                "close()",
            ]
        );
        let simple: Vec<_> = got.iter().map(|t| t.simple.as_str()).collect();
        assert_eq!(
            simple,
            ["String", "File", "ArrayList", "Map.Entry", "Widget", "System.out.println", "Math.max", "Calc.min", "close"]
        );
        let jdk: Vec<_> = got.iter().map(|t| t.is_jdk).collect();
        assert_eq!(jdk, [true, true, true, true, false, true, true, false, false]);
    }

    #[test]
    fn hash_normalizes_whitespace_only() {
        assert_eq!(content_hash(""), "d41d8cd98f00b204e9800998ecf8427e");
        let a = "public int f() {\n    return 1;\n}";
        let b = "  public int f() {\n\t\treturn 1;\n}  ";
        assert_eq!(content_hash(a), content_hash(b));
        assert_ne!(content_hash(a), content_hash(&a.replace("public", "private")));
        assert_ne!(content_hash(a), content_hash(&a.replace("{", "{ // note\n")));
    }

    #[test]
    fn extraction_is_deterministic() {
        let lex = Lexicons::builtin();
        let a = extract_methods(&file(PAIR), &lex.jdk).records;
        let b = extract_methods(&file(PAIR), &lex.jdk).records;
        assert_eq!(a, b);
    }

    proptest::proptest! {
        #[test]
        fn arbitrary_text_never_panics(s in "[ -~\n]{0,300}") {
            let lex = Lexicons::builtin();
            let out = extract_methods(&file(&s), &lex.jdk);
            for r in out.records {
                proptest::prop_assert!(r.body_text.contains(&r.name));
                let ratio = r.jdk_ratio();
                proptest::prop_assert!((0.0..=1.0).contains(&ratio));
            }
        }

        #[test]
        fn arbitrary_brace_soup_never_panics(s in "[{}();a-zA-Z =.<>,@\"]{0,200}") {
            let lex = Lexicons::builtin();
            let _ = extract_methods(&file(&format!("class X {{ {s} }}")), &lex.jdk);
        }
    }
}

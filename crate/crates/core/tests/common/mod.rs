#![allow(dead_code)]

use std::path::{Path, PathBuf};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use seqmatch::extract::content_hash;
use seqmatch::indexer::index_corpus;
use seqmatch::ingest::IngestConfig;
use seqmatch::lexicon::Lexicons;
use seqmatch::{ApiToken, MethodRecord, NameIndex, Searcher};

pub const STREAM_QUERY: &str = "convert an inputstream to a string";

pub fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(rel)
}

/// Indexes a fixture tree into `out` with the built-in lexicons.
pub fn index_fixture(rel: &str, out: &Path) -> Searcher {
    let lexicons = Lexicons::builtin();
    let config = IngestConfig {
        roots: vec![fixture(rel)],
        ..IngestConfig::default()
    };
    let (index, _) = index_corpus(&config, &lexicons.jdk, out).expect("fixture indexes");
    Searcher::new(index, lexicons)
}

/// FRank columns per query set, `None` for not found.
pub fn frank_tables() -> Vec<(String, Vec<Option<usize>>)> {
    let text = std::fs::read_to_string(fixture("frank_tables.tsv")).unwrap();
    let mut out: Vec<(String, Vec<Option<usize>>)> = Vec::new();
    for line in text.lines().filter(|l| !l.starts_with('#') && !l.is_empty()) {
        let f: Vec<&str> = line.split('\t').collect();
        let rank = if f[2] == "NF" { None } else { Some(f[2].parse().unwrap()) };
        match out.last_mut() {
            Some((name, col)) if name == f[0] => col.push(rank),
            _ => out.push((f[0].to_string(), vec![rank])),
        }
    }
    out
}

/// Words that survive stemming unchanged, so queries built from them hit
/// names built from them.
pub const VOCAB: &[&str] = &[
    "read", "write", "file", "string", "list", "map", "sort", "convert", "parse", "json", "xml", "http",
    "request", "url", "date", "time", "format", "byte", "buffer", "stream", "input", "output", "reader",
    "socket", "thread", "pool", "lock", "queue", "stack", "tree", "node", "graph", "path", "load", "save",
    "config", "user", "account", "order", "cache", "key", "hash", "text", "line", "word", "char", "number",
    "random", "count", "split", "join", "trim", "merge", "copy", "delete", "find", "search", "filter",
    "print", "send", "check", "valid", "email", "zip", "image", "pixel", "color", "matrix", "vector",
    "sum", "max", "min", "average", "median", "prime", "digit", "binary", "hex", "base", "encode",
    "decode", "encrypt", "token", "session", "cookie", "header", "body", "table", "row", "column", "query",
    "insert", "update", "select", "index", "record", "event", "listen", "handler", "timer", "task",
];

const JDK_TYPES: &[&str] = &[
    "java.lang.String", "java.lang.StringBuilder", "java.io.File", "java.io.InputStream",
    "java.io.BufferedReader", "java.util.List", "java.util.Map", "java.util.HashMap",
    "java.util.ArrayList", "java.net.URL", "java.nio.file.Files", "java.util.Collections",
];

pub fn camel(words: &[&str]) -> String {
    let mut s = words[0].to_string();
    for w in &words[1..] {
        let mut c = w.chars();
        if let Some(f) = c.next() {
            s.extend(f.to_uppercase());
            s.push_str(c.as_str());
        }
    }
    s
}

/// `n` methods with 1 to 5 word camelCase names and a few API tokens each.
pub fn synthetic_records(n: usize, seed: u64) -> Vec<MethodRecord> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let len = rng.gen_range(1..=5);
            let words: Vec<&str> = (0..len).map(|_| *VOCAB.choose(&mut rng).unwrap()).collect();
            let name = camel(&words);
            let apis: Vec<ApiToken> = (0..rng.gen_range(0..6))
                .map(|_| {
                    if rng.gen_bool(0.7) {
                        ApiToken::new(*JDK_TYPES.choose(&mut rng).unwrap())
                    } else {
                        ApiToken::new(format!("com.acme.{}", camel(&[VOCAB.choose(&mut rng).unwrap(), "util"])))
                    }
                })
                .collect();
            let body = format!("void {name}() {{ /* {i} */ }}");
            MethodRecord {
                method_key: format!("repo{}#src/Gen{}.java#{}", i % 97, i / 1000, i % 1000 + 1),
                name_lower: name.to_lowercase(),
                name,
                param_types: Vec::new(),
                return_type: "void".into(),
                content_hash: content_hash(&body),
                body_text: body,
                api_sequence: apis,
                has_javadoc: false,
            }
        })
        .collect()
}

pub fn synthetic_index(n: usize, seed: u64) -> NameIndex {
    NameIndex::from_records(synthetic_records(n, seed)).expect("unique keys")
}

/// Random natural-language-ish queries over the synthetic vocabulary.
pub fn synthetic_queries(n: usize, seed: u64) -> Vec<String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let glue = ["a", "the", "to", "from", "in", "by", "of"];
    (0..n)
        .map(|_| {
            let len = rng.gen_range(2..=6);
            let mut q: Vec<&str> = Vec::new();
            for _ in 0..len {
                if rng.gen_bool(0.25) {
                    q.push(glue.choose(&mut rng).unwrap());
                }
                q.push(VOCAB.choose(&mut rng).unwrap());
            }
            q.join(" ")
        })
        .collect()
}

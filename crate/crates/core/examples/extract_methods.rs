//! Prints the methods and API sequences found in one Java file.
//!
//! `cargo run --example extract_methods -- path/to/File.java`

use std::path::PathBuf;

use seqmatch::extract::extract_methods;
use seqmatch::ingest::SourceFile;
use seqmatch::lexicon::Lexicons;

fn main() {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/stream_pair/Util.java"));
    let text = std::fs::read_to_string(&path).expect("readable file");
    let file = SourceFile {
        repo_id: "local".into(),
        rel_path: path.file_name().unwrap().to_string_lossy().into_owned(),
        byte_len: text.len() as u64,
        text,
    };
    let out = extract_methods(&file, &Lexicons::builtin().jdk);
    if let Some(d) = out.diagnostic {
        eprintln!("parse problem: {d}");
    }
    for r in out.records {
        println!("{}  {}({}) -> {}", r.method_key, r.name, r.param_types.join(", "), r.return_type);
        for t in &r.api_sequence {
            println!("    {}{}", t.qualified, if t.is_jdk { "" } else { "  (non-JDK)" });
        }
        println!("    jdk ratio {:.2}", r.jdk_ratio());
    }
}

//! Indexes the two-method InputStream fixture and shows how the closer name
//! wins: `cargo run --example worked_example`.

use std::path::Path;

use seqmatch::indexer::index_corpus;
use seqmatch::ingest::IngestConfig;
use seqmatch::lexicon::Lexicons;
use seqmatch::{SearchOptions, Searcher};

fn main() -> seqmatch::Result<()> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/stream_pair");
    let out = std::env::temp_dir().join("seqmatch-worked-example");
    let lexicons = Lexicons::builtin();
    let config = IngestConfig {
        roots: vec![root],
        ..IngestConfig::default()
    };
    let (index, _) = index_corpus(&config, &lexicons.jdk, &out)?;
    let searcher = Searcher::new(index, lexicons);

    let query = "convert an inputstream to a string";
    let resp = searcher.search(query, &SearchOptions::default())?;
    println!("query    {query}");
    println!("kept     {:?}", resp.plan.tokens());
    for p in &resp.plan.patterns {
        println!("pattern  {p}");
    }
    for h in &resp.results {
        println!("#{}  {:<28} s_name {:.4}  s_body {:.4}", h.rank, h.method_name, h.s_name, h.s_body);
    }
    let _ = std::fs::remove_dir_all(out);
    Ok(())
}

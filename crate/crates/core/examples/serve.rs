//! Serves the bundled fixture over HTTP.
//!
//! `cargo run --example serve`, then
//! `curl 'localhost:8080/search?q=sort+a+map+by+value&k=3'`.

use std::net::SocketAddr;
use std::path::Path;
use std::sync::Arc;

use seqmatch::indexer::index_corpus;
use seqmatch::ingest::IngestConfig;
use seqmatch::lexicon::Lexicons;
use seqmatch::{SearchOptions, Searcher};

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/ablation");
    let out = std::env::temp_dir().join("seqmatch-serve-example");
    let lexicons = Lexicons::builtin();
    let config = IngestConfig {
        roots: vec![root],
        ..IngestConfig::default()
    };
    let (index, _) = index_corpus(&config, &lexicons.jdk, &out)?;
    let addr: SocketAddr = "127.0.0.1:8080".parse()?;
    println!("http://{addr}/search?q=...  (ctrl-c to stop)");
    seqmatch::server::serve(addr, Arc::new(Searcher::new(index, lexicons)), SearchOptions::default()).await?;
    Ok(())
}

//! Walks a corpus the way the indexer does and reports what would be read.
//!
//! `cargo run --example ingest_corpus -- ROOT [--exclude GLOB]...`

use std::path::PathBuf;

use seqmatch::ingest::{discover_repos, stream_sources, IngestConfig, IngestStats};

fn main() -> seqmatch::Result<()> {
    let mut config = IngestConfig::default();
    let mut args = std::env::args().skip(1);
    while let Some(a) = args.next() {
        if a == "--exclude" {
            config.exclude.extend(args.next());
        } else {
            config.roots.push(PathBuf::from(a));
        }
    }
    if config.roots.is_empty() {
        config.roots.push(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/ablation"));
    }
    let mut total = IngestStats::default();
    for repo in discover_repos(&config.roots)? {
        let mut files = stream_sources(&repo, &config)?;
        let (mut n, mut bytes) = (0, 0);
        for f in files.by_ref() {
            n += 1;
            bytes += f.byte_len;
        }
        println!("{:<20} {n:>6} files {bytes:>10} bytes", repo.repo_id);
        total.merge(&files.stats());
    }
    println!("{total:#?}");
    Ok(())
}

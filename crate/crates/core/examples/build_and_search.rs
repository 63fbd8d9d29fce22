//! Indexes a corpus directory, then answers queries from stdin, one per line.
//!
//! `cargo run --release --example build_and_search -- CORPUS_DIR [INDEX_DIR]`

use std::io::BufRead;
use std::path::PathBuf;

use seqmatch::indexer::index_corpus;
use seqmatch::ingest::IngestConfig;
use seqmatch::lexicon::Lexicons;
use seqmatch::{SearchOptions, Searcher};

fn main() -> seqmatch::Result<()> {
    let mut args = std::env::args_os().skip(1).map(PathBuf::from);
    let corpus = args
        .next()
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/ablation"));
    let out = args.next().unwrap_or_else(|| std::env::temp_dir().join("seqmatch-example-index"));
    let lexicons = Lexicons::builtin();
    let config = IngestConfig {
        roots: vec![corpus],
        ..IngestConfig::default()
    };
    let (index, report) = index_corpus(&config, &lexicons.jdk, &out)?;
    eprintln!("{} methods from {} repos in {:.2?}", report.methods, report.repos, report.elapsed);
    let searcher = Searcher::new(index, lexicons);
    eprintln!("type a query, ctrl-d to quit");
    for line in std::io::stdin().lock().lines() {
        let Ok(line) = line else { break };
        match searcher.search(&line, &SearchOptions::default()) {
            Ok(resp) => {
                for h in resp.results {
                    println!("{:>2} {:.3} {:.3} {}  {}", h.rank, h.s_name, h.s_body, h.method_name, h.method_key);
                }
            }
            Err(e) => eprintln!("{e}"),
        }
    }
    Ok(())
}

//! Scores all three rerank modes on the bundled hand-judged fixture.

use std::path::Path;

use seqmatch::eval::{run_eval, JudgmentSet};
use seqmatch::indexer::index_corpus;
use seqmatch::ingest::IngestConfig;
use seqmatch::lexicon::Lexicons;
use seqmatch::{RerankMode, Searcher};

fn main() -> seqmatch::Result<()> {
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/ablation");
    let out = std::env::temp_dir().join("seqmatch-evaluate");
    let lexicons = Lexicons::builtin();
    let config = IngestConfig {
        roots: vec![fixture.clone()],
        ..IngestConfig::default()
    };
    let (index, _) = index_corpus(&config, &lexicons.jdk, &out)?;
    let searcher = Searcher::new(index, lexicons);
    let judgments = JudgmentSet::load(&fixture.join("queries.tsv"), &fixture.join("judgments.tsv"))?;
    for (i, mode) in RerankMode::ALL.into_iter().enumerate() {
        let report = run_eval(&searcher, &judgments, mode, 10);
        let table = report.text_table();
        print!("{}", if i == 0 { table.as_str() } else { table.split_once('\n').unwrap().1 });
    }
    let _ = std::fs::remove_dir_all(out);
    Ok(())
}

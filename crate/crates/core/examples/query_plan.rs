//! Shows how a query is read: kept words, their metadata and the patterns
//! tried in order.
//!
//! `cargo run --example query_plan -- "how to read a file line by line in java"`
//! Pass `--index DIR` first to take word frequencies from a built index.

use seqmatch::lexicon::{FrequencyTable, Lexicons};
use seqmatch::search::understand_query;
use seqmatch::NameIndex;

fn main() -> seqmatch::Result<()> {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    let mut freq = FrequencyTable::default();
    if args.first().map(String::as_str) == Some("--index") && args.len() > 1 {
        freq = NameIndex::load(args[1].as_ref())?.frequency().clone();
        args.drain(..2);
    }
    let query = if args.is_empty() { "how to read a file line by line in java".to_string() } else { args.join(" ") };
    let plan = understand_query(&query, &Lexicons::builtin(), &freq)?;
    println!("base words  {:?} (nq = {})", plan.base_words, plan.nq());
    for t in &plan.kept_words {
        println!("  {:<12} -> {:<12} {:<12} importance {}  frequency {}", t.word, t.token, t.property, t.importance, t.frequency);
    }
    for (i, p) in plan.patterns.iter().enumerate() {
        println!("round {}  {p}", i + 1);
    }
    Ok(())
}

//! One PASS/FAIL line per acceptance criterion.
//!
//! Exits non-zero when a criterion fails that is not in `KNOWN_GAPS`.
//! Known gaps still print FAIL; see the README for why they fail.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use common::*;
use seqmatch::eval::{mrr, mrr_with, success_rate, NotFoundPolicy, CUTOFFS};
use seqmatch::index::{ordered_match, MatchPattern};
use seqmatch::lexicon::{importance_level, FrequencyTable, Lexicons, WordProperty};
use seqmatch::search::{name_alignment, understand_query, RerankMode, SearchOptions};
use seqmatch::{eval, Searcher};

const SCORE_TOL: f64 = 1e-4;
const METRIC_TOL: f64 = 0.01;

/// Criteria that fail for reasons recorded in the README.
const KNOWN_GAPS: &[&str] = &["4"];

struct Report {
    failed: Vec<String>,
}

impl Report {
    fn check(&mut self, id: &str, name: &str, ok: bool, detail: String) {
        println!("{} {id} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failed.push(id.to_string());
        }
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn golden(r: &mut Report) {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let searcher = index_fixture("stream_pair", dir.path());
    let resp = searcher.search(STREAM_QUERY, &SearchOptions::default()).unwrap();
    let elapsed = start.elapsed();
    let got: Vec<(String, f64, f64)> = resp
        .results
        .iter()
        .map(|h| (h.method_name.clone(), h.s_name, h.s_body))
        .collect();
    let want = [
        ("convertInputStreamToString", 0.6667, 0.25),
        ("convertInputStream2String", 0.48, 0.1111),
    ];
    let ok = got.len() == 2
        && got.iter().zip(&want).all(|(g, w)| g.0 == w.0 && close(g.1, w.1, SCORE_TOL) && close(g.2, w.2, SCORE_TOL))
        && elapsed < Duration::from_secs(1);
    let detail = got
        .iter()
        .map(|(n, a, b)| format!("{n} s_name={a:.4} s_body={b:.4}"))
        .collect::<Vec<_>>()
        .join("; ");
    r.check("1", "worked example scores and order", ok, format!("{detail}; {elapsed:.2?}"));
}

fn drop_schedule(r: &mut Report) {
    let freq = FrequencyTable::from_counts([
        ("convert".to_string(), 39292),
        ("inputstream".to_string(), 3442),
        ("to".to_string(), 22),
        ("string".to_string(), 52369),
    ]);
    let plan = understand_query(STREAM_QUERY, &Lexicons::builtin(), &freq).unwrap();
    let got: Vec<String> = plan.patterns.iter().map(|p| p.to_string()).collect();
    let want = [
        ".*convert.*inputstream.*to.*string.*",
        ".*convert.*inputstream.*string.*",
        ".*inputstream.*string.*",
        ".*string.*",
    ];
    r.check("2", "drop schedule", got == want, got.join(" | "));
}

fn importance(r: &mut Report) {
    use WordProperty::*;
    let want = |p: WordProperty, jdk: bool| match p {
        Noun if jdk => 5,
        Verb | Noun => 4,
        Adjective | Adverb => 3,
        Preposition | Conjunction => 2,
        Other => 1,
    };
    let mut bad = Vec::new();
    for p in WordProperty::ALL {
        for jdk in [false, true] {
            if importance_level(p, jdk) != want(p, jdk) {
                bad.push(format!("{p}/{jdk}"));
            }
        }
    }
    let detail = if bad.is_empty() { "14 combinations".to_string() } else { bad.join(", ") };
    r.check("3", "importance levels", bad.is_empty(), detail);
}

fn metrics(r: &mut Report) {
    // (set, SR@1, SR@5, SR@10, MRR) as published.
    let published = [
        ("q50", 0.64, 0.76, 0.76, 0.71),
        ("q99", 0.48, 0.65, 0.68, 0.58),
        ("q25", 0.28, 0.56, 0.56, 0.46),
        ("all", 0.50, 0.67, 0.68, 0.60),
    ];
    let mut tables = frank_tables();
    let all: Vec<Option<usize>> = tables.iter().flat_map(|(_, c)| c.clone()).collect();
    tables.push(("all".to_string(), all));
    let mut ok = true;
    let mut parts = Vec::new();
    let mut lenient = Vec::new();
    for ((name, col), (set, s1, s5, s10, m)) in tables.iter().zip(published) {
        assert_eq!(name, set);
        let sr: Vec<f64> = CUTOFFS.iter().map(|&k| success_rate(col, k)).collect();
        let got_mrr = mrr(col);
        let set_ok = close(sr[0], s1, METRIC_TOL)
            && close(sr[1], s5, METRIC_TOL)
            && close(sr[2], s10, METRIC_TOL)
            && close(got_mrr, m, METRIC_TOL);
        ok &= set_ok;
        parts.push(format!(
            "{set}{} SR={:.3}/{:.3}/{:.3} MRR={got_mrr:.3} (want {s1}/{s5}/{s10} {m})",
            if set_ok { "" } else { "!" },
            sr[0],
            sr[1],
            sr[2]
        ));
        lenient.push(format!("{set}={:.3}", mrr_with(col, NotFoundPolicy::BeyondCutoff(10))));
    }
    r.check("4", "metrics from FRank columns, NF=0", ok, parts.join("; "));
    println!("INFO 4 MRR with NF counted as rank 11: {}", lenient.join(" "));
}

fn prefilter_equivalence(r: &mut Report) {
    let index = synthetic_index(10_000, 7);
    let scan_only = index.clone().without_postings();
    let mut rng = StdRng::seed_from_u64(11);
    let mut mismatches = 0;
    let mut hits = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=4);
        let words: Vec<String> = (0..n)
            .map(|_| {
                let w = VOCAB.choose(&mut rng).unwrap();
                // Cut some words short, including below trigram length.
                let len = rng.gen_range(1..=w.len());
                w[..len].to_string()
            })
            .collect();
        let pattern = MatchPattern::new(words.clone()).unwrap();
        let fast = index.search_names(&pattern);
        let slow = scan_only.search_names(&pattern);
        let truth: Vec<u32> = (0..index.len() as u32)
            .filter(|&o| ordered_match(&index.record(o).name_lower, &words))
            .collect();
        hits += truth.len();
        if fast != truth || slow != truth {
            mismatches += 1;
        }
    }
    r.check(
        "5a",
        "trigram prefilter equals full scan",
        mismatches == 0,
        format!("500 patterns over 10000 names, {hits} matches, {mismatches} mismatches"),
    );
}

fn brute_force(words: &[&str], name: &str) -> (usize, usize) {
    let mut best = (0, 0);
    for mask in 0u32..(1 << words.len()) {
        let subset: Vec<&str> = (0..words.len()).filter(|i| mask >> i & 1 == 1).map(|i| words[i]).collect();
        if ordered_match(name, &subset) {
            best = best.max((subset.len(), subset.iter().map(|w| w.len()).sum()));
        }
    }
    best
}

fn alignment_oracle(r: &mut Report) {
    let names: Vec<String> = synthetic_records(1000, 3).into_iter().map(|m| m.name_lower).collect();
    let mut rng = StdRng::seed_from_u64(5);
    let mut mismatches = 0;
    let mut pairs = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let words: Vec<&str> = (0..n).map(|_| *VOCAB.choose(&mut rng).unwrap()).collect();
        for name in &names {
            pairs += 1;
            if name_alignment(&words, name) != brute_force(&words, name) {
                mismatches += 1;
            }
        }
    }
    r.check(
        "5b",
        "name alignment equals subset enumeration",
        mismatches == 0,
        format!("{pairs} query/name pairs, {mismatches} mismatches"),
    );
}

fn schedule_monotone(r: &mut Report) {
    let mut violations = 0;
    let mut plans = 0;
    for seed in 0..5 {
        let searcher = Searcher::new(synthetic_index(5_000, 100 + seed), Lexicons::builtin());
        for q in synthetic_queries(100, 200 + seed) {
            let Ok(plan) = searcher.plan(&q) else { continue };
            plans += 1;
            for w in plan.patterns.windows(2) {
                let next: HashSet<u32> = searcher.index().search_names(&w[1]).into_iter().collect();
                violations += searcher
                    .index()
                    .search_names(&w[0])
                    .iter()
                    .filter(|o| !next.contains(o))
                    .count();
            }
        }
    }
    r.check(
        "5c",
        "every round's matches match the next round",
        violations == 0 && plans > 0,
        format!("{plans} plans over 5 corpora, {violations} violations"),
    );
}

fn latency(r: &mut Report) {
    let build = Instant::now();
    let searcher = Searcher::new(synthetic_index(100_000, 42), Lexicons::builtin());
    let build = build.elapsed();
    let queries = synthetic_queries(200, 43);
    let opts = SearchOptions::default();
    let mut times: Vec<Duration> = queries
        .iter()
        .filter_map(|q| {
            let t = Instant::now();
            searcher.search(q, &opts).ok()?;
            Some(t.elapsed())
        })
        .collect();
    times.sort();
    let mean = times.iter().sum::<Duration>() / times.len() as u32;
    let p95 = times[times.len() * 95 / 100];
    let worst = *times.last().unwrap();
    r.check(
        "5d",
        "latency at 100k methods",
        mean < Duration::from_millis(100),
        format!("{} queries, mean {mean:.2?}, p95 {p95:.2?}, max {worst:.2?} (index built in {build:.2?})", times.len()),
    );
}

fn ablation(r: &mut Report) {
    let dir = tempfile::tempdir().unwrap();
    let searcher = index_fixture("ablation", dir.path());
    let judgments =
        eval::JudgmentSet::load(&fixture("ablation/queries.tsv"), &fixture("ablation/judgments.tsv")).unwrap();
    let full = eval::run_eval(&searcher, &judgments, RerankMode::Full, 10);
    let none = eval::run_eval(&searcher, &judgments, RerankMode::NoRerank, 10);
    let ok = searcher.index().len() == 50 && judgments.queries.len() >= 10 && none.mrr <= full.mrr;
    r.check(
        "6",
        "ablation direction",
        ok,
        format!(
            "{} methods, {} queries, MRR full {:.3} no_rerank {:.3}",
            searcher.index().len(),
            judgments.queries.len(),
            full.mrr,
            none.mrr
        ),
    );
}

fn determinism(r: &mut Report) {
    let run = || {
        let dir = tempfile::tempdir().unwrap();
        let searcher = index_fixture("ablation", dir.path());
        let methods = std::fs::read(dir.path().join(seqmatch::index::METHODS_FILE)).unwrap();
        let results: Vec<String> = ["copy a file", STREAM_QUERY, "sort a map by value"]
            .iter()
            .map(|q| searcher.search(q, &SearchOptions::default()).unwrap().to_json())
            .collect();
        (methods, results)
    };
    let (m1, r1) = run();
    let (m2, r2) = run();
    r.check(
        "7",
        "byte-identical builds and results",
        m1 == m2 && r1 == r2,
        format!("methods.jsonl {} bytes, {} result documents", m1.len(), r1.len()),
    );
}

fn main() -> ExitCode {
    let mut r = Report { failed: Vec::new() };
    golden(&mut r);
    drop_schedule(&mut r);
    importance(&mut r);
    metrics(&mut r);
    prefilter_equivalence(&mut r);
    alignment_oracle(&mut r);
    schedule_monotone(&mut r);
    latency(&mut r);
    ablation(&mut r);
    determinism(&mut r);
    let unexpected: Vec<&String> = r.failed.iter().filter(|id| !KNOWN_GAPS.contains(&id.as_str())).collect();
    println!(
        "{} failed ({} known), {} unexpected",
        r.failed.len(),
        r.failed.len() - unexpected.len(),
        unexpected.len()
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Query understanding, iterative name search and reranking.

mod query;
mod rank;
mod score;

use std::collections::HashSet;
use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::index::NameIndex;
use crate::lexicon::Lexicons;

pub use query::{base_words, drop_schedule, tokenize_query, understand_query, QueryPlan, TokenMetadata};
pub use rank::{rerank, RerankMode, Scored};
pub use score::{body_terms, name_alignment, score_body, score_name, BodyTerms};

pub const DEFAULT_K: usize = 10;
pub const DEFAULT_POOL_MIN: usize = 10;
const SNIPPET_LINES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub k: usize,
    pub mode: RerankMode,
    /// Retrieval stops once the pool holds more than this many methods.
    pub pool_min: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            k: DEFAULT_K,
            mode: RerankMode::Full,
            pool_min: DEFAULT_POOL_MIN,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Candidate {
    pub ord: u32,
    /// 1-based pattern number.
    pub round: usize,
}

/// Runs the patterns in order, pooling matches until the pool holds more
/// than `pool_min` methods. Methods whose content hash is already pooled
/// are skipped.
pub fn iterative_search(plan: &QueryPlan, index: &NameIndex, pool_min: usize) -> Vec<Candidate> {
    let mut pool = Vec::new();
    let mut hashes = HashSet::new();
    for (i, pattern) in plan.patterns.iter().enumerate() {
        for ord in index.search_names(pattern) {
            if hashes.insert(index.record(ord).content_hash.as_str()) {
                pool.push(Candidate { ord, round: i + 1 });
            }
        }
        log::debug!("round {} {pattern}: pool {}", i + 1, pool.len());
        if pool.len() > pool_min {
            break;
        }
    }
    pool
}

pub fn score_candidates(plan: &QueryPlan, index: &NameIndex, pool: &[Candidate]) -> Vec<Scored> {
    let words = plan.tokens();
    let nq = plan.nq();
    pool.par_iter()
        .enumerate()
        .map(|(i, c)| {
            let r = index.record(c.ord);
            Scored {
                ord: c.ord,
                method_key: r.method_key.clone(),
                name_len: r.name.len(),
                s_name: score_name(&words, nq, &r.name_lower),
                s_body: score_body(&words, nq, &r.api_sequence),
                round: c.round,
                discovered: i,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchHit {
    pub rank: usize,
    pub method_key: String,
    pub method_name: String,
    pub s_name: f64,
    pub s_body: f64,
    pub round: usize,
    pub repo: String,
    pub path: String,
    pub snippet: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResponse {
    pub query: String,
    pub plan: QueryPlan,
    pub results: Vec<SearchHit>,
}

impl SearchResponse {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("response serializes")
    }

    pub fn keys(&self) -> Vec<&str> {
        self.results.iter().map(|h| h.method_key.as_str()).collect()
    }
}

/// Wall-clock time per stage of one search.
#[derive(Debug, Clone, Copy, Default)]
pub struct StageTimes {
    pub understand: Duration,
    pub retrieve: Duration,
    pub rank: Duration,
}

impl StageTimes {
    pub fn total(&self) -> Duration {
        self.understand + self.retrieve + self.rank
    }
}

/// A loaded index plus the lexicons needed to read queries.
#[derive(Debug, Clone)]
pub struct Searcher {
    index: NameIndex,
    lexicons: Lexicons,
}

impl Searcher {
    pub fn new(index: NameIndex, lexicons: Lexicons) -> Self {
        Searcher { index, lexicons }
    }

    pub fn open(dir: &Path, lexicons: Lexicons) -> Result<Self> {
        Ok(Searcher::new(NameIndex::load(dir)?, lexicons))
    }

    pub fn index(&self) -> &NameIndex {
        &self.index
    }

    pub fn lexicons(&self) -> &Lexicons {
        &self.lexicons
    }

    pub fn plan(&self, query: &str) -> Result<QueryPlan> {
        understand_query(query, &self.lexicons, self.index.frequency())
    }

    pub fn search(&self, query: &str, opts: &SearchOptions) -> Result<SearchResponse> {
        self.search_timed(query, opts).map(|(r, _)| r)
    }

    pub fn search_timed(&self, query: &str, opts: &SearchOptions) -> Result<(SearchResponse, StageTimes)> {
        let t0 = Instant::now();
        let plan = self.plan(query)?;
        let t1 = Instant::now();
        let pool = iterative_search(&plan, &self.index, opts.pool_min);
        let t2 = Instant::now();
        let ranked = rerank(score_candidates(&plan, &self.index, &pool), opts.mode, opts.k);
        let results = ranked
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                let r = self.index.record(s.ord);
                SearchHit {
                    rank: i + 1,
                    method_key: s.method_key,
                    method_name: r.name.clone(),
                    s_name: s.s_name,
                    s_body: s.s_body,
                    round: s.round,
                    repo: r.repo().to_string(),
                    path: r.path().to_string(),
                    snippet: r.body_text.lines().take(SNIPPET_LINES).collect::<Vec<_>>().join("\n"),
                }
            })
            .collect();
        let t3 = Instant::now();
        let times = StageTimes {
            understand: t1 - t0,
            retrieve: t2 - t1,
            rank: t3 - t2,
        };
        Ok((
            SearchResponse {
                query: query.to_string(),
                plan,
                results,
            },
            times,
        ))
    }
}

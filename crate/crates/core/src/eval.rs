//! Ranking metrics and the evaluation driver.
//!
//! Queries file: `query_id<TAB>text`. Judgments file:
//! `query_id<TAB>method_key<TAB>0|1`. Blank lines and `#` comments are
//! ignored in both.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::{self, Write as _};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lexicon::tsv_rows;
use crate::search::{RerankMode, SearchOptions, Searcher};

pub const CUTOFFS: [usize; 3] = [1, 5, 10];

/// Rank of the first relevant key, 1-based; `None` when absent.
pub fn frank<S: AsRef<str>>(ranked: &[S], is_relevant: impl Fn(&str) -> bool) -> Option<usize> {
    ranked.iter().position(|k| is_relevant(k.as_ref())).map(|i| i + 1)
}

/// Share of queries whose first relevant result is within the top `k`.
pub fn success_rate(franks: &[Option<usize>], k: usize) -> f64 {
    if franks.is_empty() {
        return 0.0;
    }
    franks.iter().filter(|f| f.is_some_and(|r| r <= k)).count() as f64 / franks.len() as f64
}

/// Mean over queries of (relevant results in the top `k`) / `k`.
pub fn precision_at(relevant_per_query: &[Vec<bool>], k: usize) -> f64 {
    if relevant_per_query.is_empty() || k == 0 {
        return 0.0;
    }
    let sum: f64 = relevant_per_query
        .iter()
        .map(|flags| flags.iter().take(k).filter(|&&r| r).count() as f64 / k as f64)
        .sum();
    sum / relevant_per_query.len() as f64
}

/// Reciprocal rank credited to a query with no relevant result in the list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum NotFoundPolicy {
    /// Contributes 0.
    #[default]
    Zero,
    /// Treated as ranked just past the cutoff: contributes 1 / (cutoff + 1).
    BeyondCutoff(usize),
}

pub fn mrr(franks: &[Option<usize>]) -> f64 {
    mrr_with(franks, NotFoundPolicy::Zero)
}

pub fn mrr_with(franks: &[Option<usize>], policy: NotFoundPolicy) -> f64 {
    if franks.is_empty() {
        return 0.0;
    }
    let sum: f64 = franks
        .iter()
        .map(|f| match (f, policy) {
            (Some(r), _) => 1.0 / *r as f64,
            (None, NotFoundPolicy::Zero) => 0.0,
            (None, NotFoundPolicy::BeyondCutoff(k)) => 1.0 / (k + 1) as f64,
        })
        .sum();
    sum / franks.len() as f64
}

/// Queries and relevance labels.
#[derive(Debug, Clone, Default)]
pub struct JudgmentSet {
    pub queries: Vec<(String, String)>,
    labels: HashMap<String, HashMap<String, bool>>,
}

impl JudgmentSet {
    pub fn new(queries: Vec<(String, String)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (id, _) in &queries {
            if !seen.insert(id.as_str()) {
                return Err(Error::Config(format!("duplicate query id {id:?}")));
            }
        }
        Ok(JudgmentSet {
            queries,
            labels: HashMap::new(),
        })
    }

    pub fn judge(&mut self, query_id: &str, method_key: &str, relevant: bool) {
        self.labels
            .entry(query_id.to_string())
            .or_default()
            .insert(method_key.to_string(), relevant);
    }

    pub fn is_relevant(&self, query_id: &str, method_key: &str) -> bool {
        self.labels
            .get(query_id)
            .and_then(|m| m.get(method_key))
            .copied()
            .unwrap_or(false)
    }

    /// Judged keys, sorted, for checking against an index.
    pub fn judged_keys(&self) -> Vec<&str> {
        let mut keys: Vec<&str> = self.labels.values().flat_map(|m| m.keys().map(String::as_str)).collect();
        keys.sort_unstable();
        keys.dedup();
        keys
    }

    pub fn parse(queries_text: &str, queries_origin: &Path, judgments_text: &str, judgments_origin: &Path) -> Result<Self> {
        let mut queries = Vec::new();
        for (line, fields) in tsv_rows(queries_text) {
            let [id, text] = fields[..] else {
                return Err(Error::parse(queries_origin, line, "expected `query_id<TAB>text`"));
            };
            queries.push((id.to_string(), text.to_string()));
        }
        let mut set = JudgmentSet::new(queries)?;
        let ids: HashSet<String> = set.queries.iter().map(|(id, _)| id.clone()).collect();
        for (line, fields) in tsv_rows(judgments_text) {
            let [qid, key, flag] = fields[..] else {
                return Err(Error::parse(judgments_origin, line, "expected `query_id<TAB>method_key<TAB>0|1`"));
            };
            let relevant = match flag {
                "1" => true,
                "0" => false,
                other => return Err(Error::parse(judgments_origin, line, format!("relevance must be 0 or 1, got {other:?}"))),
            };
            if !ids.contains(qid) {
                log::warn!("{}:{line}: judgment for unknown query {qid:?}", judgments_origin.display());
            }
            set.judge(qid, key, relevant);
        }
        Ok(set)
    }

    pub fn load(queries: &Path, judgments: &Path) -> Result<Self> {
        let q = std::fs::read_to_string(queries).map_err(|e| Error::io(queries, e))?;
        let j = std::fs::read_to_string(judgments).map_err(|e| Error::io(judgments, e))?;
        Self::parse(&q, queries, &j, judgments)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryOutcome {
    pub query_id: String,
    /// `null` when nothing relevant was returned.
    pub frank: Option<usize>,
    pub returned: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub mode: RerankMode,
    #[serde(rename = "Q")]
    pub q: usize,
    pub per_query: Vec<QueryOutcome>,
    pub sr_at: BTreeMap<usize, f64>,
    pub p_at: BTreeMap<usize, f64>,
    pub mrr: f64,
    /// Judged method keys missing from the index.
    pub dangling_judgments: usize,
}

impl MetricsReport {
    /// Builds a report from ranked keys per query.
    pub fn from_rankings(mode: RerankMode, rankings: &[(String, Vec<String>)], judgments: &JudgmentSet) -> Self {
        let mut per_query = Vec::with_capacity(rankings.len());
        let mut flags = Vec::with_capacity(rankings.len());
        for (qid, keys) in rankings {
            let rel: Vec<bool> = keys.iter().map(|k| judgments.is_relevant(qid, k)).collect();
            per_query.push(QueryOutcome {
                query_id: qid.clone(),
                frank: rel.iter().position(|&r| r).map(|i| i + 1),
                returned: keys.len(),
            });
            flags.push(rel);
        }
        let franks: Vec<Option<usize>> = per_query.iter().map(|o| o.frank).collect();
        MetricsReport {
            mode,
            q: per_query.len(),
            sr_at: CUTOFFS.iter().map(|&k| (k, success_rate(&franks, k))).collect(),
            p_at: CUTOFFS.iter().map(|&k| (k, precision_at(&flags, k))).collect(),
            mrr: mrr(&franks),
            per_query,
            dangling_judgments: 0,
        }
    }

    pub fn franks(&self) -> Vec<Option<usize>> {
        self.per_query.iter().map(|o| o.frank).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn text_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<10} {:>4} {:>6} {:>6} {:>6} {:>6} {:>6} {:>6} {:>6}",
            "mode", "Q", "SR@1", "SR@5", "SR@10", "P@1", "P@5", "P@10", "MRR");
        let _ = writeln!(
            s,
            "{:<10} {:>4} {:>6.3} {:>6.3} {:>6.3} {:>6.3} {:>6.3} {:>6.3} {:>6.3}",
            self.mode.as_str(),
            self.q,
            self.sr_at[&1],
            self.sr_at[&5],
            self.sr_at[&10],
            self.p_at[&1],
            self.p_at[&5],
            self.p_at[&10],
            self.mrr
        );
        s
    }
}

impl fmt::Display for MetricsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text_table())
    }
}

/// Runs every query through the searcher in `mode` and scores the top 10.
pub fn run_eval(searcher: &Searcher, judgments: &JudgmentSet, mode: RerankMode, pool_min: usize) -> MetricsReport {
    let known: HashSet<&str> = searcher.index().records().iter().map(|r| r.method_key.as_str()).collect();
    let dangling: Vec<&str> = judgments.judged_keys().into_iter().filter(|k| !known.contains(k)).collect();
    for k in &dangling {
        log::warn!("judged method {k} is not in the index");
    }
    let opts = SearchOptions {
        k: *CUTOFFS.iter().max().expect("non-empty"),
        mode,
        pool_min,
    };
    let rankings: Vec<(String, Vec<String>)> = judgments
        .queries
        .iter()
        .map(|(qid, text)| {
            let keys = match searcher.search(text, &opts) {
                Ok(r) => r.results.into_iter().map(|h| h.method_key).collect(),
                Err(e) => {
                    log::warn!("query {qid}: {e}");
                    Vec::new()
                }
            };
            (qid.clone(), keys)
        })
        .collect();
    let mut report = MetricsReport::from_rankings(mode, &rankings, judgments);
    report.dangling_judgments = dangling.len();
    report
}

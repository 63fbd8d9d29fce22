use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// How candidates are ordered after retrieval.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RerankMode {
    /// Name score, then body score.
    #[default]
    Full,
    /// Name score only.
    NoSbody,
    /// Retrieval order.
    NoRerank,
}

impl RerankMode {
    pub const ALL: [RerankMode; 3] = [RerankMode::Full, RerankMode::NoSbody, RerankMode::NoRerank];

    pub fn as_str(self) -> &'static str {
        match self {
            RerankMode::Full => "full",
            RerankMode::NoSbody => "no_sbody",
            RerankMode::NoRerank => "no_rerank",
        }
    }
}

impl fmt::Display for RerankMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RerankMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "full" => Ok(RerankMode::Full),
            "no_sbody" => Ok(RerankMode::NoSbody),
            "no_rerank" => Ok(RerankMode::NoRerank),
            _ => Err(format!("unknown mode {s:?} (expected full, no_sbody or no_rerank)")),
        }
    }
}

/// A retrieved method with its scores.
#[derive(Debug, Clone, PartialEq)]
pub struct Scored {
    /// Record ordinal in the index.
    pub ord: u32,
    pub method_key: String,
    pub name_len: usize,
    pub s_name: f64,
    pub s_body: f64,
    /// 1-based pattern number that first retrieved the method.
    pub round: usize,
    /// Position in the retrieval pool.
    pub discovered: usize,
}

fn desc(a: f64, b: f64) -> Ordering {
    b.total_cmp(&a)
}

/// Sorts `candidates` for `mode` and keeps the first `k`.
pub fn rerank(mut candidates: Vec<Scored>, mode: RerankMode, k: usize) -> Vec<Scored> {
    let tail = |a: &Scored, b: &Scored| {
        a.round
            .cmp(&b.round)
            .then(a.name_len.cmp(&b.name_len))
            .then_with(|| a.method_key.cmp(&b.method_key))
    };
    match mode {
        RerankMode::Full => candidates.sort_by(|a, b| {
            desc(a.s_name, b.s_name)
                .then(desc(a.s_body, b.s_body))
                .then_with(|| tail(a, b))
        }),
        RerankMode::NoSbody => candidates.sort_by(|a, b| desc(a.s_name, b.s_name).then_with(|| tail(a, b))),
        RerankMode::NoRerank => candidates.sort_by_key(|c| (c.round, c.discovered)),
    }
    candidates.truncate(k);
    candidates
}

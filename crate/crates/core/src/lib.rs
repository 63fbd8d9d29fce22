//! Method-level code search over Java corpora.
//!
//! A query is reduced to its programming-relevant words, which are matched
//! in order against indexed method names; words are dropped one at a time,
//! least important first, until enough methods are found. Candidates are
//! then ranked by how well the query covers the method name and the APIs
//! its body uses.

pub mod config;
pub mod error;
pub mod eval;
pub mod extract;
pub mod index;
pub mod indexer;
pub mod ingest;
pub mod lexicon;
pub mod search;
pub mod server;

pub use error::{Error, Result};
pub use extract::{ApiToken, MethodRecord};
pub use index::NameIndex;
pub use search::{RerankMode, SearchOptions, SearchResponse, Searcher};

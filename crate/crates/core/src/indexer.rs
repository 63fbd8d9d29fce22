//! Corpus to index: discovery, parallel extraction, build.

use std::collections::HashSet;
use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::extract::{extract_methods, MethodRecord};
use crate::index::{build_index, NameIndex};
use crate::ingest::{discover_repos, stream_sources, IngestConfig, IngestStats, SourceFile};
use crate::lexicon::JdkCatalog;

#[derive(Debug, Clone, Default, Serialize)]
pub struct CorpusReport {
    pub repos: usize,
    pub ingest: IngestStats,
    pub methods: usize,
    /// Files the extractor could not parse.
    pub unparsed_files: usize,
    /// Later methods dropped because an earlier one had the same key
    /// (two declarations starting on one line).
    pub duplicate_keys: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Extracts every method under the configured roots, in repository and
/// path order.
pub fn collect_records(config: &IngestConfig, catalog: &JdkCatalog) -> Result<(Vec<MethodRecord>, CorpusReport)> {
    let start = Instant::now();
    let repos = discover_repos(&config.roots)?;
    let mut report = CorpusReport {
        repos: repos.len(),
        ..CorpusReport::default()
    };
    let mut files: Vec<SourceFile> = Vec::new();
    for repo in &repos {
        let mut sources = stream_sources(repo, config)?;
        files.extend(sources.by_ref());
        report.ingest.merge(&sources.stats());
    }
    let extracted: Vec<_> = files.par_iter().map(|f| extract_methods(f, catalog)).collect();
    let mut seen = HashSet::new();
    let mut records = Vec::new();
    for (file, out) in files.iter().zip(extracted) {
        if let Some(d) = out.diagnostic {
            log::warn!("{}#{}: {d}", file.repo_id, file.rel_path);
            report.unparsed_files += 1;
        }
        for r in out.records {
            if seen.insert(r.method_key.clone()) {
                records.push(r);
            } else {
                log::warn!("dropping second method at {}", r.method_key);
                report.duplicate_keys += 1;
            }
        }
    }
    report.methods = records.len();
    report.elapsed = start.elapsed();
    Ok((records, report))
}

/// Extracts the corpus and writes the index to `out_dir`.
pub fn index_corpus(config: &IngestConfig, catalog: &JdkCatalog, out_dir: &Path) -> Result<(NameIndex, CorpusReport)> {
    let start = Instant::now();
    let (records, mut report) = collect_records(config, catalog)?;
    let index = build_index(records, out_dir)?;
    report.elapsed = start.elapsed();
    Ok((index, report))
}

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::lexicon::{LexiconPaths, Lexicons};
use crate::search::{RerankMode, SearchOptions, DEFAULT_K, DEFAULT_POOL_MIN};

pub const INDEX_ENV: &str = "SEQMATCH_INDEX";
pub const DEFAULT_PORT: u16 = 8080;

/// Settings shared by the commands that read an index.
#[derive(Debug, Clone)]
pub struct AppConfig {
    pub index_dir: PathBuf,
    pub lexicons: LexiconPaths,
    pub k: usize,
    pub pool_min: usize,
    pub mode: RerankMode,
    pub port: u16,
}

impl Default for AppConfig {
    fn default() -> Self {
        AppConfig {
            index_dir: PathBuf::from("index"),
            lexicons: LexiconPaths::default(),
            k: DEFAULT_K,
            pool_min: DEFAULT_POOL_MIN,
            mode: RerankMode::Full,
            port: DEFAULT_PORT,
        }
    }
}

impl AppConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        if self.pool_min == 0 {
            return Err(Error::Config("pool_min must be at least 1".into()));
        }
        Ok(())
    }

    pub fn search_options(&self) -> SearchOptions {
        SearchOptions {
            k: self.k,
            mode: self.mode,
            pool_min: self.pool_min,
        }
    }

    pub fn load_lexicons(&self) -> Result<Lexicons> {
        Lexicons::load(&self.lexicons)
    }
}

//! Repository discovery and source streaming.

use std::path::{Path, PathBuf};

use globset::{Glob, GlobSet, GlobSetBuilder};
use serde::{Deserialize, Serialize};
use walkdir::WalkDir;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_FILE_BYTES: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepoSpec {
    pub repo_id: String,
    pub root_path: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    pub repo_id: String,
    /// `/`-separated path relative to the repository root.
    pub rel_path: String,
    pub text: String,
    pub byte_len: u64,
}

/// Ingest settings, read from a JSON file:
///
/// ```json
/// { "roots": ["corpus"], "max_file_bytes": 1048576, "exclude": ["**/test/**"] }
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IngestConfig {
    #[serde(default)]
    pub roots: Vec<PathBuf>,
    #[serde(default = "default_max")]
    pub max_file_bytes: u64,
    #[serde(default)]
    pub exclude: Vec<String>,
}

fn default_max() -> u64 {
    DEFAULT_MAX_FILE_BYTES
}

impl Default for IngestConfig {
    fn default() -> Self {
        IngestConfig {
            roots: Vec::new(),
            max_file_bytes: DEFAULT_MAX_FILE_BYTES,
            exclude: Vec::new(),
        }
    }
}

impl IngestConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg: IngestConfig = serde_json::from_str(&text).map_err(|source| Error::Json {
            path: path.to_path_buf(),
            source,
        })?;
        // Relative roots are taken relative to the config file.
        if let Some(dir) = path.parent() {
            for root in &mut cfg.roots {
                if root.is_relative() {
                    *root = dir.join(&*root);
                }
            }
        }
        Ok(cfg)
    }

    pub fn exclude_set(&self) -> Result<GlobSet> {
        let mut b = GlobSetBuilder::new();
        for pat in &self.exclude {
            let glob = Glob::new(pat).map_err(|e| Error::Config(format!("exclude glob {pat:?}: {e}")))?;
            b.add(glob);
        }
        b.build().map_err(|e| Error::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct IngestStats {
    pub files_yielded: u64,
    pub skipped_oversize: u64,
    pub skipped_unreadable: u64,
    pub skipped_excluded: u64,
    /// Files that needed replacement characters to decode.
    pub lossy_decoded: u64,
}

impl IngestStats {
    pub fn merge(&mut self, other: &IngestStats) {
        self.files_yielded += other.files_yielded;
        self.skipped_oversize += other.skipped_oversize;
        self.skipped_unreadable += other.skipped_unreadable;
        self.skipped_excluded += other.skipped_excluded;
        self.lossy_decoded += other.lossy_decoded;
    }
}

fn is_java(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "java")
}

/// One repository per immediate child directory of each root, or the root
/// itself when it holds `.java` files directly.
pub fn discover_repos(roots: &[PathBuf]) -> Result<Vec<RepoSpec>> {
    let mut out = Vec::new();
    for root in roots {
        let meta = std::fs::metadata(root).map_err(|e| Error::io(root, e))?;
        if !meta.is_dir() {
            return Err(Error::NotADirectory { path: root.clone() });
        }
        let mut children = Vec::new();
        let mut direct_java = false;
        for entry in std::fs::read_dir(root).map_err(|e| Error::io(root, e))? {
            let entry = entry.map_err(|e| Error::io(root, e))?;
            let path = entry.path();
            if path.is_dir() {
                children.push(path);
            } else if is_java(&path) {
                direct_java = true;
            }
        }
        if direct_java {
            out.push(RepoSpec {
                repo_id: dir_name(root),
                root_path: root.clone(),
            });
            continue;
        }
        children.sort();
        out.extend(children.into_iter().map(|p| RepoSpec {
            repo_id: dir_name(&p),
            root_path: p,
        }));
    }
    Ok(out)
}

fn dir_name(path: &Path) -> String {
    let name = path
        .canonicalize()
        .ok()
        .and_then(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()));
    name.filter(|n| !n.is_empty()).unwrap_or_else(|| "root".to_string())
}

/// Iterator over a repository's `.java` files in lexicographic path order.
pub struct Sources {
    repo_id: String,
    pending: std::vec::IntoIter<(String, PathBuf)>,
    max_file_bytes: u64,
    stats: IngestStats,
}

impl Sources {
    pub fn stats(&self) -> IngestStats {
        self.stats
    }
}

impl Iterator for Sources {
    type Item = SourceFile;

    fn next(&mut self) -> Option<SourceFile> {
        for (rel_path, path) in self.pending.by_ref() {
            let len = match std::fs::metadata(&path) {
                Ok(m) => m.len(),
                Err(e) => {
                    log::warn!("skipping {}: {e}", path.display());
                    self.stats.skipped_unreadable += 1;
                    continue;
                }
            };
            if len > self.max_file_bytes {
                log::warn!("skipping {} ({len} bytes exceeds {})", path.display(), self.max_file_bytes);
                self.stats.skipped_oversize += 1;
                continue;
            }
            let bytes = match std::fs::read(&path) {
                Ok(b) => b,
                Err(e) => {
                    log::warn!("skipping {}: {e}", path.display());
                    self.stats.skipped_unreadable += 1;
                    continue;
                }
            };
            let text = match String::from_utf8(bytes) {
                Ok(s) => s,
                Err(e) => {
                    self.stats.lossy_decoded += 1;
                    String::from_utf8_lossy(e.as_bytes()).into_owned()
                }
            };
            self.stats.files_yielded += 1;
            return Some(SourceFile {
                repo_id: self.repo_id.clone(),
                rel_path,
                byte_len: len,
                text,
            });
        }
        None
    }
}

pub fn stream_sources(repo: &RepoSpec, config: &IngestConfig) -> Result<Sources> {
    let exclude = config.exclude_set()?;
    let mut stats = IngestStats::default();
    let mut files = Vec::new();
    for entry in WalkDir::new(&repo.root_path).follow_links(false) {
        let entry = match entry {
            Ok(e) => e,
            Err(e) => {
                log::warn!("skipping unreadable entry under {}: {e}", repo.root_path.display());
                stats.skipped_unreadable += 1;
                continue;
            }
        };
        if !entry.file_type().is_file() || !is_java(entry.path()) {
            continue;
        }
        let rel = entry
            .path()
            .strip_prefix(&repo.root_path)
            .unwrap_or(entry.path())
            .components()
            .map(|c| c.as_os_str().to_string_lossy())
            .collect::<Vec<_>>()
            .join("/");
        if exclude.is_match(&rel) {
            stats.skipped_excluded += 1;
            continue;
        }
        files.push((rel, entry.into_path()));
    }
    files.sort();
    Ok(Sources {
        repo_id: repo.repo_id.clone(),
        pending: files.into_iter(),
        max_file_bytes: config.max_file_bytes,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    fn touch(path: &Path, body: &[u8]) {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(path, body).unwrap();
    }

    #[test]
    fn children_become_repos_in_order() {
        let dir = tempfile::tempdir().unwrap();
        touch(&dir.path().join("b/X.java"), b"class X {}");
        touch(&dir.path().join("a/Y.java"), b"class Y {}");
        let repos = discover_repos(&[dir.path().to_path_buf()]).unwrap();
        let ids: Vec<_> = repos.iter().map(|r| r.repo_id.as_str()).collect();
        assert_eq!(ids, ["a", "b"]);
    }

    #[test]
    fn empty_root_has_no_repos() {
        let dir = tempfile::tempdir().unwrap();
        assert!(discover_repos(&[dir.path().to_path_buf()]).unwrap().is_empty());
    }

    #[test]
    fn root_with_java_files_is_one_repo() {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().join("solo");
        touch(&root.join("Foo.java"), b"class Foo {}");
        touch(&root.join("sub/Bar.java"), b"class Bar {}");
        let repos = discover_repos(std::slice::from_ref(&root)).unwrap();
        assert_eq!(repos, [RepoSpec { repo_id: "solo".into(), root_path: root }]);
    }

    #[test]
    fn missing_root_is_an_error() {
        let err = discover_repos(&[PathBuf::from("/definitely/not/here")]).unwrap_err();
        assert!(err.to_string().contains("/definitely/not/here"));
    }

    #[test]
    fn streams_java_only_in_path_order() {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().to_path_buf();
        touch(&root.join("a/b/C.java"), b"class C {}");
        touch(&root.join("Z.java"), b"class Z {}");
        touch(&root.join("a.java"), b"class A {}");
        touch(&root.join("README.md"), b"# hi");
        let repo = RepoSpec { repo_id: "r".into(), root_path: root };
        let mut it = stream_sources(&repo, &IngestConfig::default()).unwrap();
        let rels: Vec<_> = it.by_ref().map(|f| f.rel_path).collect();
        assert_eq!(rels, ["Z.java", "a.java", "a/b/C.java"]);
        assert_eq!(it.stats().files_yielded, 3);
    }

    #[test]
    fn oversize_and_excluded_files_are_counted() {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().to_path_buf();
        touch(&root.join("Big.java"), &vec![b' '; 2 << 20]);
        touch(&root.join("gen/G.java"), b"class G {}");
        touch(&root.join("Ok.java"), b"class Ok {}");
        let repo = RepoSpec { repo_id: "r".into(), root_path: root };
        let cfg = IngestConfig {
            exclude: vec!["gen/**".into()],
            ..IngestConfig::default()
        };
        let mut it = stream_sources(&repo, &cfg).unwrap();
        let files: Vec<_> = it.by_ref().collect();
        assert_eq!(files.len(), 1);
        let s = it.stats();
        assert_eq!((s.skipped_oversize, s.skipped_excluded, s.files_yielded), (1, 1, 1));
    }

    #[test]
    fn invalid_utf8_is_decoded_lossily() {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().to_path_buf();
        touch(&root.join("L.java"), b"class L { String s = \"caf\xe9\"; }");
        let repo = RepoSpec { repo_id: "r".into(), root_path: root };
        let mut it = stream_sources(&repo, &IngestConfig::default()).unwrap();
        let f = it.next().unwrap();
        assert!(f.text.contains('\u{FFFD}'));
        assert_eq!(it.stats().lossy_decoded, 1);
    }

    #[test]
    fn config_defaults_and_relative_roots() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ingest.json");
        fs::write(&path, r#"{"roots": ["corpus"]}"#).unwrap();
        let cfg = IngestConfig::load(&path).unwrap();
        assert_eq!(cfg.max_file_bytes, DEFAULT_MAX_FILE_BYTES);
        assert_eq!(cfg.roots, [dir.path().join("corpus")]);
        fs::write(&path, r#"{"roots": [], "bogus": 1}"#).unwrap();
        assert!(IngestConfig::load(&path).is_err());
    }
}

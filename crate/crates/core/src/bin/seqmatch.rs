use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use seqmatch::config::{AppConfig, DEFAULT_PORT, INDEX_ENV};
use seqmatch::eval::{run_eval, JudgmentSet};
use seqmatch::indexer::index_corpus;
use seqmatch::ingest::IngestConfig;
use seqmatch::lexicon::LexiconPaths;
use seqmatch::search::{RerankMode, Searcher, DEFAULT_K, DEFAULT_POOL_MIN};
use seqmatch::{server, Error, NameIndex};

#[derive(Parser)]
#[command(name = "seqmatch", version, about = "Search Java methods by what they do")]
struct Cli {
    /// Index directory.
    #[arg(long, global = true, env = INDEX_ENV, default_value = "index")]
    index: PathBuf,

    /// Word-property lexicon (word<TAB>property) replacing the built-in one.
    #[arg(long, global = true)]
    pos_lexicon: Option<PathBuf>,

    /// Synonym table (word<TAB>syn1,syn2,...) replacing the built-in one.
    #[arg(long, global = true)]
    synonyms: Option<PathBuf>,

    /// JDK catalog (one qualified name per line) replacing the built-in one.
    #[arg(long, global = true)]
    jdk_catalog: Option<PathBuf>,

    /// Log more (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract methods from Java repositories and build an index.
    Index(IndexArgs),
    /// Run one query against the index.
    Search(SearchArgs),
    /// Score a query set against relevance judgments.
    Eval(EvalArgs),
    /// Serve GET /search and GET /healthz over HTTP.
    Serve(ServeArgs),
    /// Print index statistics.
    Stats {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct IndexArgs {
    /// Directories holding one repository per child directory, or Java
    /// sources directly.
    roots: Vec<PathBuf>,
    /// JSON ingest config: {"roots": [...], "max_file_bytes": N, "exclude": [globs]}.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Skip files larger than this.
    #[arg(long)]
    max_file_bytes: Option<u64>,
    /// Glob over repository-relative paths to skip; repeatable.
    #[arg(long)]
    exclude: Vec<String>,
}

#[derive(Args, Clone)]
struct RankArgs {
    /// Results to return.
    #[arg(short, long, default_value_t = DEFAULT_K)]
    k: usize,
    /// full, no_sbody or no_rerank.
    #[arg(long, default_value = "full")]
    mode: RerankMode,
    /// Keep dropping words until more than this many methods are pooled.
    #[arg(long, default_value_t = DEFAULT_POOL_MIN)]
    pool_min: usize,
}

#[derive(Args)]
struct SearchArgs {
    query: String,
    #[command(flatten)]
    rank: RankArgs,
    /// Print the full result JSON.
    #[arg(long)]
    json: bool,
    /// Print per-stage timings to stderr.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct EvalArgs {
    /// query_id<TAB>text
    #[arg(long)]
    queries: PathBuf,
    /// query_id<TAB>method_key<TAB>0|1
    #[arg(long)]
    judgments: PathBuf,
    /// Modes to run; defaults to all three.
    #[arg(long)]
    mode: Vec<RerankMode>,
    #[arg(long, default_value_t = DEFAULT_POOL_MIN)]
    pool_min: usize,
    /// Write the JSON reports here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1")]
    host: IpAddr,
    #[arg(long, default_value_t = DEFAULT_PORT)]
    port: u16,
    #[command(flatten)]
    rank: RankArgs,
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(m) => Failure::Usage(m),
            e => Failure::Data(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn app_config(cli: &Cli, rank: Option<&RankArgs>) -> AppConfig {
    let mut cfg = AppConfig {
        index_dir: cli.index.clone(),
        lexicons: LexiconPaths {
            pos_lexicon: cli.pos_lexicon.clone(),
            synonyms: cli.synonyms.clone(),
            jdk_catalog: cli.jdk_catalog.clone(),
        },
        ..AppConfig::default()
    };
    if let Some(r) = rank {
        cfg.k = r.k;
        cfg.mode = r.mode;
        cfg.pool_min = r.pool_min;
    }
    cfg
}

fn open(cfg: &AppConfig) -> Result<Searcher, Failure> {
    cfg.validate()?;
    let lexicons = cfg.load_lexicons()?;
    Ok(Searcher::open(&cfg.index_dir, lexicons)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Index(args) => {
            let cfg = app_config(&cli, None);
            let mut ingest = match &args.config {
                Some(p) => IngestConfig::load(p)?,
                None => IngestConfig::default(),
            };
            ingest.roots.extend(args.roots.iter().cloned());
            if let Some(m) = args.max_file_bytes {
                ingest.max_file_bytes = m;
            }
            ingest.exclude.extend(args.exclude.iter().cloned());
            if ingest.roots.is_empty() {
                return Err(Failure::Usage("no corpus roots given".into()));
            }
            let lexicons = cfg.load_lexicons()?;
            let (_, report) = index_corpus(&ingest, &lexicons.jdk, &cfg.index_dir)?;
            let s = report.ingest;
            println!("repos          {}", report.repos);
            println!("files          {}", s.files_yielded);
            println!("methods        {}", report.methods);
            println!(
                "skipped        {} oversize, {} excluded, {} unreadable, {} unparsed",
                s.skipped_oversize, s.skipped_excluded, s.skipped_unreadable, report.unparsed_files
            );
            if report.duplicate_keys > 0 {
                println!("duplicate keys {}", report.duplicate_keys);
            }
            println!("elapsed        {:.2?}", report.elapsed);
            println!("index          {}", cfg.index_dir.display());
        }
        Command::Search(args) => {
            let cfg = app_config(&cli, Some(&args.rank));
            let load_start = Instant::now();
            let searcher = open(&cfg)?;
            let load = load_start.elapsed();
            let (resp, times) = searcher.search_timed(&args.query, &cfg.search_options())?;
            if args.json {
                println!("{}", resp.to_json());
            } else {
                println!("{:>4}  {:>6}  {:>6}  {:<40}  path", "rank", "s_name", "s_body", "name");
                for h in &resp.results {
                    println!(
                        "{:>4}  {:>6.4}  {:>6.4}  {:<40}  {}/{}",
                        h.rank, h.s_name, h.s_body, h.method_name, h.repo, h.path
                    );
                }
            }
            if args.timing {
                eprintln!(
                    "load {:.2?}  understand {:.2?}  retrieve {:.2?}  rank {:.2?}  query total {:.2?}",
                    load,
                    times.understand,
                    times.retrieve,
                    times.rank,
                    times.total()
                );
            }
        }
        Command::Eval(args) => {
            let cfg = AppConfig {
                pool_min: args.pool_min,
                ..app_config(&cli, None)
            };
            let searcher = open(&cfg)?;
            let judgments = JudgmentSet::load(&args.queries, &args.judgments)?;
            let modes = if args.mode.is_empty() { RerankMode::ALL.to_vec() } else { args.mode.clone() };
            let reports: Vec<_> = modes
                .iter()
                .map(|&m| run_eval(&searcher, &judgments, m, cfg.pool_min))
                .collect();
            let json = serde_json::to_string_pretty(&reports).expect("reports serialize");
            let mut table = String::new();
            for (i, r) in reports.iter().enumerate() {
                let t = r.text_table();
                // One header for all modes.
                table.push_str(if i == 0 { &t } else { t.split_once('\n').map_or("", |(_, b)| b) });
            }
            match &args.out {
                Some(p) => {
                    std::fs::write(p, json + "\n").map_err(|e| Error::Io { path: p.clone(), source: e })?;
                    print!("{table}");
                }
                None => {
                    println!("{json}");
                    eprint!("{table}");
                }
            }
        }
        Command::Serve(args) => {
            let cfg = AppConfig {
                port: args.port,
                ..app_config(&cli, Some(&args.rank))
            };
            let searcher = Arc::new(open(&cfg)?);
            let addr = SocketAddr::new(args.host, cfg.port);
            let rt = tokio::runtime::Runtime::new().map_err(|e| Error::Io { path: PathBuf::from("<runtime>"), source: e })?;
            eprintln!("serving {} methods on http://{addr}", searcher.index().len());
            rt.block_on(server::serve(addr, searcher, cfg.search_options()))
                .map_err(|e| Error::Io { path: PathBuf::from(addr.to_string()), source: e })?;
        }
        Command::Stats { json } => {
            let index = NameIndex::load(&cli.index)?;
            let stats = index.stats();
            if *json {
                println!("{}", serde_json::to_string_pretty(&stats).expect("stats serialize"));
            } else {
                print!("{stats}");
            }
        }
    }
    Ok(())
}

//! `rdfbench`: generate bibliography documents, inspect them, run the
//! benchmark queries, serve a document over HTTP and benchmark engines.
//!
//! Exit codes: 0 on success, 1 on operational failures (including any
//! benchmark query that ended in an error), 2 on usage errors.

mod config_file;

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use rdfbench_core::distributions;
use rdfbench_core::rdfmodel::vocab;
use rdfbench_core::worldsim::{file_stats, generate_to_path, peak_rss_bytes, GenerationConfig, Limit};
use rdfbench_engine::queries;
use rdfbench_engine::sparql::{evaluate, parse, results, CancelToken, EvalOptions};
use rdfbench_engine::TripleStore;
use rdfbench_harness::config::{self as hconfig, RunConfig, Target};
use rdfbench_harness::runner::{self, Event};
use rdfbench_harness::server::{Dataset, Endpoint, ServeOptions};

#[derive(Parser, Debug)]
#[command(name = "rdfbench", version, about = "Bibliography RDF generator and SPARQL benchmark")]
struct Cli {
    /// File of key=value lines supplying defaults for long flags.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a document in N-Triples format and print its characteristics.
    Generate {
        /// Stop before the document exceeds this many triples (e.g. 10000, 50k, 1M).
        #[arg(long, value_parser = parse_size, required_unless_present = "year", conflicts_with = "year")]
        triples: Option<u64>,
        /// Simulate every year up to and including this one.
        #[arg(long)]
        year: Option<i32>,
        /// Generator seed [default: 333067].
        #[arg(long)]
        seed: Option<u64>,
        /// Output path of the N-Triples document.
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Print per-class counts, authors and covered years of a document.
    Stats {
        /// N-Triples document to inspect.
        file: PathBuf,
    },
    /// Evaluate a catalog query or a query file against a document.
    Query {
        /// N-Triples document to load.
        #[arg(long, value_name = "FILE")]
        doc: PathBuf,
        /// Catalog id, e.g. Q4 or q12c.
        #[arg(long, required_unless_present = "file", conflicts_with = "file")]
        id: Option<String>,
        /// File holding the query text.
        #[arg(long, value_name = "FILE")]
        file: Option<PathBuf>,
        /// Result serialization.
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Wall-clock limit, e.g. 30s, 500ms, 10min.
        #[arg(long, value_parser = parse_duration)]
        timeout: Option<Duration>,
        /// Budget for materialized results, e.g. 512M, 2G.
        #[arg(long = "memory-limit", value_parser = parse_bytes)]
        memory_limit: Option<usize>,
    },
    /// Run the query catalog over a ladder of document sizes.
    Bench {
        /// Comma-separated ascending sizes.
        #[arg(long, default_value = "10k,50k,250k,1M,5M,25M")]
        sizes: String,
        /// Runs per query and size; every run starts from a freshly loaded store.
        #[arg(long, default_value_t = hconfig::DEFAULT_RUNS)]
        runs: usize,
        /// Per-query limit; exceeding it is recorded as a timeout.
        #[arg(long, value_parser = parse_duration, default_value = "30min")]
        timeout: Duration,
        /// Per-query budget for materialized results; exceeding it is recorded as memory exhaustion.
        #[arg(long = "memory-limit", value_parser = parse_bytes)]
        memory_limit: Option<usize>,
        /// Benchmark a SPARQL endpoint instead of the builtin engine; `{size}`
        /// in the URL is replaced by the size label.
        #[arg(long, value_name = "URL")]
        endpoint: Option<String>,
        /// Generator seed of the documents.
        #[arg(long)]
        seed: Option<u64>,
        /// Cache directory of generated documents.
        #[arg(long = "doc-dir", default_value = "rdfbench-docs")]
        doc_dir: PathBuf,
        /// Comma-separated subset of query ids.
        #[arg(long)]
        queries: Option<String>,
        /// Write raw outcomes as CSV.
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
        /// Write the per-query averages table as Markdown.
        #[arg(long, value_name = "FILE")]
        markdown: Option<PathBuf>,
        /// Suppress per-query progress lines.
        #[arg(long)]
        quiet: bool,
    },
    /// Expose documents over the SPARQL HTTP protocol.
    Serve {
        /// Document to serve, as PATH or LABEL=PATH; repeatable. Each is
        /// queried at /LABEL/sparql (default label: file stem), the first
        /// also at /sparql.
        #[arg(long, required = true, value_name = "[LABEL=]FILE")]
        doc: Vec<String>,
        /// Interface to listen on.
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// 0 picks a free port; the bound address is printed first.
        #[arg(long, default_value_t = 8000)]
        port: u16,
        /// Per-query limit; exceeding it answers 503.
        #[arg(long, value_parser = parse_duration)]
        timeout: Option<Duration>,
        /// Per-query budget for materialized results; exceeding it answers 500.
        #[arg(long = "memory-limit", value_parser = parse_bytes)]
        memory_limit: Option<usize>,
        /// Worker threads answering requests.
        #[arg(long, default_value_t = 4)]
        threads: usize,
    },
    /// Write the catalog query texts, one .rq file per query, or print them.
    ExportQueries {
        /// Directory to write the .rq files into; without it the texts are printed.
        #[arg(long, value_name = "DIR")]
        dir: Option<PathBuf>,
    },
    /// Print every model parameter and the vocabulary mapping.
    DumpParams,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_size(s: &str) -> Result<u64, String> {
    hconfig::parse_size(s).map_err(|e| e.to_string())
}

fn parse_duration(s: &str) -> Result<Duration, String> {
    hconfig::parse_duration(s).map_err(|e| e.to_string())
}

fn parse_bytes(s: &str) -> Result<usize, String> {
    hconfig::parse_bytes(s).map_err(|e| e.to_string())
}

/// Failures that are the caller's fault rather than the environment's.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn generate(triples: Option<u64>, year: Option<i32>, seed: Option<u64>, out: PathBuf) -> Result<()> {
    let limit = match (triples, year) {
        (Some(n), None) => Limit::Triples(n),
        (None, Some(y)) => Limit::Year(y),
        _ => unreachable!("clap enforces exactly one limit"),
    };
    let mut config = GenerationConfig::new(limit);
    if let Some(s) = seed {
        config = config.with_seed(s);
    }
    let mut stats = generate_to_path(&config, &out).with_context(|| format!("generating {}", out.display()))?;
    stats.peak_rss_bytes = peak_rss_bytes();
    print!("{}", stats.render_text());
    Ok(())
}

fn stats(file: PathBuf) -> Result<()> {
    let f = File::open(&file).with_context(|| format!("opening {}", file.display()))?;
    let stats = file_stats(BufReader::with_capacity(1 << 20, f)).with_context(|| format!("reading {}", file.display()))?;
    print!("{}", stats.render_text());
    Ok(())
}

fn load(doc: &Path) -> Result<TripleStore> {
    TripleStore::load_path(doc).with_context(|| format!("loading {}", doc.display()))
}

fn query(
    doc: PathBuf,
    id: Option<String>,
    file: Option<PathBuf>,
    format: Format,
    timeout: Option<Duration>,
    memory_limit: Option<usize>,
) -> Result<()> {
    let text = match (id, file) {
        (Some(id), _) => queries::get(&id).map_err(|e| usage(e.to_string()))?.text.clone(),
        (None, Some(f)) => std::fs::read_to_string(&f).with_context(|| format!("reading {}", f.display()))?,
        (None, None) => unreachable!("clap requires --id or --file"),
    };
    let parsed = parse(&text).map_err(|e| usage(format!("query: {e}")))?;
    let store = load(&doc)?;
    let cancel = timeout.map_or_else(CancelToken::new, |t| CancelToken::with_deadline(Instant::now() + t));
    let start = Instant::now();
    let result = evaluate(&parsed, &store, &EvalOptions { cancel, memory_limit })?;
    let elapsed = start.elapsed();
    let body = match format {
        Format::Csv => results::to_csv(&result, &store),
        Format::Json => results::to_json(&result, &store).to_string() + "\n",
    };
    std::io::stdout().lock().write_all(body.as_bytes())?;
    eprintln!("{} rows in {:.3}s", result.len(), elapsed.as_secs_f64());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn bench(
    sizes: String,
    runs: usize,
    timeout: Duration,
    memory_limit: Option<usize>,
    endpoint: Option<String>,
    seed: Option<u64>,
    doc_dir: PathBuf,
    query_ids: Option<String>,
    csv: Option<PathBuf>,
    markdown: Option<PathBuf>,
    quiet: bool,
) -> Result<bool> {
    let defaults = RunConfig::default();
    let config = RunConfig {
        sizes: hconfig::parse_sizes(&sizes).map_err(|e| usage(e.to_string()))?,
        runs,
        timeout,
        memory_limit,
        target: endpoint.map_or(Target::Builtin, Target::Endpoint),
        seed: seed.unwrap_or(defaults.seed),
        doc_dir,
        queries: query_ids.map(|q| q.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()).unwrap_or_default(),
    };
    config.validate().map_err(|e| usage(e.to_string()))?;
    for id in &config.queries {
        queries::get(id).map_err(|e| usage(e.to_string()))?;
    }
    let report = runner::run(&config, &mut |event| {
        if quiet {
            return;
        }
        match event {
            Event::Document { size, path, generated } => {
                let verb = if generated { "generated" } else { "using" };
                eprintln!("[{}] {verb} {}", hconfig::size_label(size), path.display());
            }
            Event::Load(l) => {
                eprintln!("[{}] run {}: loaded {} triples in {:.3}s", hconfig::size_label(l.size), l.run, l.triples, l.secs)
            }
            Event::Outcome(c) => {
                let o = &c.outcome;
                let rows = o.rows.map_or(String::new(), |r| format!(" rows={r}"));
                let msg = o.message.as_ref().map_or(String::new(), |m| format!(" ({m})"));
                eprintln!("[{}] run {} {:<4} {} {:.3}s{rows}{msg}", hconfig::size_label(c.size), c.run, c.query, o.status, o.tme);
            }
        }
    })?;
    if let Some(path) = &csv {
        std::fs::write(path, report.to_csv()).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &markdown {
        std::fs::write(path, report.to_markdown()).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut out = String::new();
    out.push_str(&report.success_matrix());
    out.push('\n');
    out.push_str(&report.to_markdown());
    std::io::stdout().lock().write_all(out.as_bytes())?;
    Ok(!report.has_errors())
}

fn serve(docs: Vec<String>, host: String, port: u16, timeout: Option<Duration>, memory_limit: Option<usize>, threads: usize) -> Result<()> {
    let mut datasets = Vec::new();
    for spec in docs {
        let (label, path) = match spec.split_once('=') {
            Some((l, p)) => (l.to_string(), PathBuf::from(p)),
            None => {
                let p = PathBuf::from(&spec);
                let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                (stem, p)
            }
        };
        if label.is_empty() || label.contains('/') {
            return Err(usage(format!("invalid document label '{label}'")));
        }
        let store = load(&path)?;
        eprintln!("loaded {} ({} triples) as '{label}'", path.display(), store.len());
        datasets.push(Dataset { label, store: Arc::new(store) });
    }
    let opts = ServeOptions { timeout, memory_limit, threads };
    let endpoint = Endpoint::start(&format!("{host}:{port}"), datasets, opts).with_context(|| format!("binding {host}:{port}"))?;
    println!("listening on {}", endpoint.url(None));
    std::io::stdout().flush()?;
    endpoint.wait();
    Ok(())
}

fn export_queries(dir: Option<PathBuf>) -> Result<()> {
    match dir {
        Some(dir) => {
            std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            for q in queries::all() {
                let path = dir.join(format!("{}.rq", q.id.to_lowercase()));
                std::fs::write(&path, &q.text).with_context(|| format!("writing {}", path.display()))?;
                println!("{}", path.display());
            }
        }
        None => {
            let mut out = String::new();
            for q in queries::all() {
                out.push_str(&format!("# {}: {}\n{}\n", q.id, q.description, q.text.trim_end()));
                out.push('\n');
            }
            std::io::stdout().lock().write_all(out.as_bytes())?;
        }
    }
    Ok(())
}

fn dispatch(command: Command) -> Result<bool> {
    match command {
        Command::Generate { triples, year, seed, out } => generate(triples, year, seed, out)?,
        Command::Stats { file } => stats(file)?,
        Command::Query { doc, id, file, format, timeout, memory_limit } => query(doc, id, file, format, timeout, memory_limit)?,
        Command::Bench { sizes, runs, timeout, memory_limit, endpoint, seed, doc_dir, queries, csv, markdown, quiet } => {
            return bench(sizes, runs, timeout, memory_limit, endpoint, seed, doc_dir, queries, csv, markdown, quiet)
        }
        Command::Serve { doc, host, port, timeout, memory_limit, threads } => serve(doc, host, port, timeout, memory_limit, threads)?,
        Command::ExportQueries { dir } => export_queries(dir)?,
        Command::DumpParams => print!("{}\n{}", distributions::manifest(), vocab::manifest()),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let args = match config_file::expand_args(&Cli::command(), std::env::args_os().collect()) {
        Ok(a) => a,
        Err(config_file::ConfigFileError::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
        Err(config_file::ConfigFileError::Io(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(1);
        }
    };
    // clap exits with 2 on usage errors and 0 for --help
    let cli = Cli::parse_from(args);
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: some queries ended in errors");
            ExitCode::from(1)
        }
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

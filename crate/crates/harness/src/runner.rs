//! Sequential execution of the (size, query, run) grid.
//!
//! Each query runs on its own worker thread under a cooperative deadline;
//! the harness waits a little longer than the deadline and classifies a
//! worker that has not answered by then as timed out. Builtin runs are cold:
//! the store is dropped and loaded again before every run.

use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rdfbench_core::worldsim::{generate_to_path, GenerationConfig, Limit};
use rdfbench_core::{GenerateError, NTriplesError};
use rdfbench_engine::queries::{self, UnknownQuery};
use rdfbench_engine::sparql::{evaluate, parse, CancelToken, EvalError, EvalOptions, Query};
use rdfbench_engine::TripleStore;
use thiserror::Error;

use crate::config::{size_label, ConfigError, RunConfig, Target};
use crate::endpoint::query_endpoint;
use crate::outcome::{QueryOutcome, Rows, Status};
use crate::probe;
use crate::report::{BenchReport, Cell, LoadRecord};

/// Extra wait beyond the deadline before a silent worker is abandoned, as a
/// fraction of the timeout.
const GRACE_FRACTION: f64 = 0.05;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    UnknownQuery(#[from] UnknownQuery),
    #[error("generating {path}: {source}")]
    Generate { path: PathBuf, source: GenerateError },
    #[error("loading {path}: {source}")]
    Load { path: PathBuf, source: NTriplesError },
    #[error("creating document directory {path}: {source}")]
    DocDir { path: PathBuf, source: std::io::Error },
}

/// Progress notifications, in execution order.
#[derive(Debug)]
pub enum Event<'a> {
    Document { size: u64, path: &'a Path, generated: bool },
    Load(&'a LoadRecord),
    Outcome(&'a Cell),
}

/// Cache location of the generated document of a size.
pub fn document_path(config: &RunConfig, size: u64) -> PathBuf {
    config.doc_dir.join(format!("{}-seed{}.nt", size_label(size), config.seed))
}

/// Returns the cached document of a size, generating it first if needed.
/// Generation writes to a temporary name and renames, so an interrupted
/// run never leaves a truncated document behind.
pub fn ensure_document(config: &RunConfig, size: u64) -> Result<(PathBuf, bool), RunError> {
    let path = document_path(config, size);
    if path.is_file() {
        return Ok((path, false));
    }
    std::fs::create_dir_all(&config.doc_dir).map_err(|source| RunError::DocDir { path: config.doc_dir.clone(), source })?;
    let partial = path.with_extension("nt.partial");
    let gen = GenerationConfig::new(Limit::Triples(size)).with_seed(config.seed);
    generate_to_path(&gen, &partial).map_err(|source| RunError::Generate { path: path.clone(), source })?;
    std::fs::rename(&partial, &path).map_err(|e| RunError::Generate { path: path.clone(), source: GenerateError::from(e) })?;
    Ok((path, true))
}

/// Runs one query against an in-memory store on a worker thread.
pub fn execute_builtin(store: &Arc<TripleStore>, query: &Arc<Query>, timeout: Duration, memory_limit: Option<usize>) -> QueryOutcome {
    let (tx, rx) = mpsc::channel();
    let cancel = CancelToken::with_deadline(Instant::now() + timeout);
    let opts = EvalOptions { cancel: cancel.clone(), memory_limit };
    let (store, query) = (store.clone(), query.clone());
    std::thread::spawn(move || {
        let rss_reset = probe::reset_peak_rss();
        let cpu0 = probe::thread_cpu_times();
        let start = Instant::now();
        let result = evaluate(&query, &store, &opts).map(|r| match r {
            rdfbench_engine::sparql::QueryResult::Ask(b) => Rows::Boolean(b),
            r => Rows::Count(r.len() as u64),
        });
        let tme = start.elapsed().as_secs_f64();
        let cpu = probe::thread_cpu_times().zip(cpu0).map(|((u1, s1), (u0, s0))| (u1 - u0, s1 - s0));
        let rmem = if rss_reset { probe::peak_rss_bytes() } else { None };
        let _ = tx.send((result, tme, cpu, rmem));
    });
    let wait = timeout + timeout.mul_f64(GRACE_FRACTION);
    let timed_out = || QueryOutcome::failure(Status::Timeout, timeout.as_secs_f64(), format!("no answer within {timeout:?}"));
    match rx.recv_timeout(wait) {
        Ok((result, tme, cpu, rmem)) => {
            let mut outcome = match result {
                Ok(rows) => QueryOutcome::success(tme, rows),
                Err(EvalError::Cancelled) => timed_out(),
                Err(e @ EvalError::MemoryExhausted { .. }) => QueryOutcome::failure(Status::MemoryExhaustion, tme, e.to_string()),
                Err(e) => QueryOutcome::failure(Status::Error, tme, e.to_string()),
            };
            outcome.usr = cpu.map(|c| c.0);
            outcome.sys = cpu.map(|c| c.1);
            outcome.rmem = rmem;
            outcome
        }
        Err(mpsc::RecvTimeoutError::Timeout) => {
            // the worker keeps its own handles and exits at its next poll
            cancel.cancel();
            timed_out()
        }
        Err(mpsc::RecvTimeoutError::Disconnected) => QueryOutcome::failure(Status::Error, 0.0, "evaluation panicked"),
    }
}

struct Prepared {
    id: &'static str,
    text: String,
    parsed: Result<Arc<Query>, String>,
}

fn prepare(config: &RunConfig) -> Result<Vec<Prepared>, RunError> {
    let selected: Vec<&queries::BenchmarkQuery> = if config.queries.is_empty() {
        queries::all().iter().collect()
    } else {
        config.queries.iter().map(|id| queries::get(id)).collect::<Result<_, _>>()?
    };
    Ok(selected
        .into_iter()
        .map(|q| Prepared { id: q.id, text: q.text.clone(), parsed: parse(&q.text).map(Arc::new).map_err(|e| e.to_string()) })
        .collect())
}

/// Executes the whole grid. Query-level failures become outcomes; only
/// problems that prevent a size from being run at all are returned as errors.
pub fn run(config: &RunConfig, progress: &mut dyn FnMut(Event<'_>)) -> Result<BenchReport, RunError> {
    config.validate()?;
    let prepared = prepare(config)?;
    let mut report = BenchReport::default();
    for &size in &config.sizes {
        report.sizes.push(size);
        let path = match &config.target {
            Target::Builtin => {
                let (path, generated) = ensure_document(config, size)?;
                progress(Event::Document { size, path: &path, generated });
                Some(path)
            }
            Target::Endpoint(_) => None,
        };
        for run in 1..=config.runs {
            let store = match &path {
                Some(path) => {
                    let store = TripleStore::load_path(path).map_err(|source| RunError::Load { path: path.clone(), source })?;
                    let load = LoadRecord { size, run, secs: store.load_secs(), triples: store.len() as u64 };
                    progress(Event::Load(&load));
                    report.loads.push(load);
                    Some(Arc::new(store))
                }
                None => None,
            };
            for q in &prepared {
                let outcome = match (&q.parsed, &store, &config.target) {
                    (Err(msg), _, _) => QueryOutcome::failure(Status::Error, 0.0, msg.clone()),
                    (Ok(parsed), Some(store), _) => execute_builtin(store, parsed, config.timeout, config.memory_limit),
                    (Ok(_), None, Target::Endpoint(url)) => {
                        query_endpoint(&url.replace("{size}", &size_label(size)), &q.text, config.timeout)
                    }
                    (Ok(_), None, Target::Builtin) => unreachable!("builtin runs always load a store"),
                };
                report.push(Cell { size, query: q.id.to_string(), run, outcome });
                progress(Event::Outcome(report.cells.last().expect("just pushed")));
            }
        }
    }
    Ok(report)
}

//! Minimal SPARQL protocol endpoint over immutable in-memory stores.
//!
//! `/sparql` answers from the first document and `/<label>/sparql` from the
//! document registered under that label. Queries arrive as GET `?query=`,
//! form-encoded POST, or a raw `application/sparql-query` POST body.
//! Results are JSON unless the client asks for CSV only.

use std::io;
use std::net::SocketAddr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::thread::JoinHandle;
use std::time::{Duration, Instant};

use rdfbench_engine::sparql::{evaluate, parse, results, CancelToken, EvalError, EvalOptions};
use rdfbench_engine::TripleStore;
use tiny_http::{Header, Method, Request, Response};

use crate::endpoint::RESULTS_JSON;

#[derive(Debug, Clone)]
pub struct ServeOptions {
    /// Per-query evaluation deadline.
    pub timeout: Option<Duration>,
    pub memory_limit: Option<usize>,
    /// Number of request-handling threads.
    pub threads: usize,
}

impl Default for ServeOptions {
    fn default() -> Self {
        Self { timeout: None, memory_limit: None, threads: 4 }
    }
}

/// A document exposed by the endpoint.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub label: String,
    pub store: Arc<TripleStore>,
}

pub struct Endpoint {
    server: Arc<tiny_http::Server>,
    stop: Arc<AtomicBool>,
    workers: Vec<JoinHandle<()>>,
    addr: SocketAddr,
}

struct Reply {
    status: u16,
    content_type: &'static str,
    body: String,
}

impl Reply {
    fn text(status: u16, body: impl Into<String>) -> Self {
        Self { status, content_type: "text/plain; charset=utf-8", body: body.into() }
    }
}

impl Endpoint {
    /// Binds `addr` (port 0 picks a free port) and starts serving.
    pub fn start(addr: &str, datasets: Vec<Dataset>, opts: ServeOptions) -> io::Result<Self> {
        if datasets.is_empty() {
            return Err(io::Error::new(io::ErrorKind::InvalidInput, "no documents to serve"));
        }
        let server = tiny_http::Server::http(addr).map_err(|e| io::Error::new(io::ErrorKind::AddrNotAvailable, e))?;
        let addr = server.server_addr().to_ip().ok_or_else(|| io::Error::new(io::ErrorKind::Unsupported, "not an IP listener"))?;
        let server = Arc::new(server);
        let stop = Arc::new(AtomicBool::new(false));
        let datasets = Arc::new(datasets);
        let workers = (0..opts.threads.max(1))
            .map(|_| {
                let (server, stop, datasets, opts) = (server.clone(), stop.clone(), datasets.clone(), opts.clone());
                std::thread::spawn(move || {
                    while !stop.load(Ordering::Relaxed) {
                        if let Ok(rq) = server.recv() {
                            handle(rq, &datasets, &opts);
                        }
                    }
                })
            })
            .collect();
        Ok(Self { server, stop, workers, addr })
    }

    pub fn addr(&self) -> SocketAddr {
        self.addr
    }

    /// Query URL of a labeled document, or of the default one.
    pub fn url(&self, label: Option<&str>) -> String {
        match label {
            Some(l) => format!("http://{}/{l}/sparql", self.addr),
            None => format!("http://{}/sparql", self.addr),
        }
    }

    /// Blocks for as long as the endpoint runs.
    pub fn wait(mut self) {
        for w in self.workers.drain(..) {
            let _ = w.join();
        }
    }

    pub fn shutdown(mut self) {
        self.stop.store(true, Ordering::Relaxed);
        for _ in 0..self.workers.len() {
            self.server.unblock();
        }
        for w in self.workers.drain(..) {
            let _ = w.join();
        }
    }
}

fn header<'a>(rq: &'a Request, name: &str) -> Option<&'a str> {
    rq.headers().iter().find(|h| h.field.as_str().as_str().eq_ignore_ascii_case(name)).map(|h| h.value.as_str())
}

fn form_query(encoded: &str) -> Option<String> {
    form_urlencoded::parse(encoded.as_bytes()).find(|(k, _)| k == "query").map(|(_, v)| v.into_owned())
}

fn extract_query(rq: &mut Request, query_string: Option<&str>) -> Result<String, Reply> {
    match rq.method() {
        Method::Get => query_string.and_then(form_query).ok_or_else(|| Reply::text(400, "missing 'query' parameter")),
        Method::Post => {
            let content_type = header(rq, "Content-Type").unwrap_or("").to_ascii_lowercase();
            let mut body = String::new();
            rq.as_reader().read_to_string(&mut body).map_err(|e| Reply::text(400, format!("unreadable body: {e}")))?;
            if content_type.starts_with("application/sparql-query") {
                Ok(body)
            } else if content_type.starts_with("application/x-www-form-urlencoded") {
                form_query(&body).ok_or_else(|| Reply::text(400, "missing 'query' parameter"))
            } else {
                Err(Reply::text(415, format!("unsupported content type '{content_type}'")))
            }
        }
        _ => Err(Reply::text(405, "use GET or POST")),
    }
}

fn answer(rq: &mut Request, datasets: &[Dataset], opts: &ServeOptions) -> Reply {
    let url = rq.url().to_string();
    let (path, query_string) = match url.split_once('?') {
        Some((p, q)) => (p, Some(q)),
        None => (url.as_str(), None),
    };
    let dataset = match path.trim_matches('/').split('/').collect::<Vec<_>>().as_slice() {
        ["sparql"] => &datasets[0],
        [label, "sparql"] => match datasets.iter().find(|d| d.label == *label) {
            Some(d) => d,
            None => return Reply::text(404, format!("no document labeled '{label}'")),
        },
        _ => return Reply::text(404, "not found; query at /sparql or /<label>/sparql"),
    };
    let text = match extract_query(rq, query_string) {
        Ok(t) => t,
        Err(reply) => return reply,
    };
    let query = match parse(&text) {
        Ok(q) => q,
        Err(e) => return Reply::text(400, e.to_string()),
    };
    let cancel = opts.timeout.map_or_else(CancelToken::new, |t| CancelToken::with_deadline(Instant::now() + t));
    let eval_opts = EvalOptions { cancel, memory_limit: opts.memory_limit };
    let result = match evaluate(&query, &dataset.store, &eval_opts) {
        Ok(r) => r,
        Err(e @ EvalError::Cancelled) => return Reply::text(503, e.to_string()),
        Err(e @ EvalError::TooManyVariables) => return Reply::text(400, e.to_string()),
        Err(e) => return Reply::text(500, e.to_string()),
    };
    let accept = header(rq, "Accept").unwrap_or("").to_ascii_lowercase();
    if accept.contains("text/csv") && !accept.contains("json") {
        Reply { status: 200, content_type: "text/csv; charset=utf-8", body: results::to_csv(&result, &dataset.store) }
    } else {
        Reply { status: 200, content_type: RESULTS_JSON, body: results::to_json(&result, &dataset.store).to_string() }
    }
}

fn handle(mut rq: Request, datasets: &[Dataset], opts: &ServeOptions) {
    let reply = answer(&mut rq, datasets, opts);
    let content_type = Header::from_bytes("Content-Type", reply.content_type).expect("static header");
    let response = Response::from_string(reply.body).with_status_code(reply.status).with_header(content_type);
    // the client may have given up already
    let _ = rq.respond(response);
}

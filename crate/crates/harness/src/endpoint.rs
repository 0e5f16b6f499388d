//! Client side of the SPARQL protocol: POSTs a form-encoded query, asks for
//! results JSON and counts the returned rows.
//!
//! Times are client-side elapsed only; CPU and memory of the remote process
//! are not observable from here and stay absent.

use std::io::ErrorKind;
use std::time::{Duration, Instant};

use serde_json::Value;

use crate::outcome::{QueryOutcome, Rows, Status};

pub const RESULTS_JSON: &str = "application/sparql-results+json";

/// Row count of a SELECT results document or the answer of an ASK one.
pub fn parse_results_json(text: &str) -> Result<Rows, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| format!("malformed results JSON: {e}"))?;
    if let Some(b) = v.get("boolean") {
        return b.as_bool().map(Rows::Boolean).ok_or_else(|| "'boolean' is not a JSON boolean".to_string());
    }
    v.pointer("/results/bindings")
        .and_then(Value::as_array)
        .map(|rows| Rows::Count(rows.len() as u64))
        .ok_or_else(|| "results JSON lacks both 'boolean' and 'results.bindings'".to_string())
}

fn is_timeout(e: &ureq::Error) -> bool {
    match e {
        ureq::Error::Timeout(_) => true,
        ureq::Error::Io(io) => matches!(io.kind(), ErrorKind::TimedOut | ErrorKind::WouldBlock),
        _ => false,
    }
}

/// Executes `query` at `url` within `timeout`.
pub fn query_endpoint(url: &str, query: &str, timeout: Duration) -> QueryOutcome {
    let agent: ureq::Agent = ureq::Agent::config_builder().timeout_global(Some(timeout)).http_status_as_error(false).build().into();
    let start = Instant::now();
    let timed_out = || QueryOutcome::failure(Status::Timeout, timeout.as_secs_f64(), format!("no answer within {timeout:?}"));
    let response = match agent.post(url).header("Accept", RESULTS_JSON).send_form([("query", query)]) {
        Ok(r) => r,
        Err(e) if is_timeout(&e) => return timed_out(),
        Err(e) => return QueryOutcome::failure(Status::Error, start.elapsed().as_secs_f64(), format!("request failed: {e}")),
    };
    let status = response.status().as_u16();
    let body = response.into_body().with_config().limit(u64::MAX).read_to_string();
    let tme = start.elapsed().as_secs_f64();
    let body = match body {
        Ok(b) => b,
        Err(e) if is_timeout(&e) => return timed_out(),
        Err(e) => return QueryOutcome::failure(Status::Error, tme, format!("reading response failed: {e}")),
    };
    if status >= 400 {
        let snippet: String = body.chars().take(200).collect();
        return QueryOutcome::failure(Status::Error, tme, format!("HTTP {status}: {snippet}"));
    }
    match parse_results_json(&body) {
        Ok(rows) => QueryOutcome::success(tme, rows),
        Err(msg) => QueryOutcome::failure(Status::Error, tme, msg),
    }
}

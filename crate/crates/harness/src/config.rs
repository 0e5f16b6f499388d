//! Run configuration and the textual forms of sizes and durations.

use std::path::PathBuf;
use std::time::Duration;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("invalid size '{0}' (expected e.g. 10000, 10k, 1M)")]
    Size(String),
    #[error("invalid duration '{0}' (expected e.g. 500ms, 60s, 30min, 1h)")]
    Duration(String),
    #[error("invalid byte count '{0}' (expected e.g. 512M, 2G)")]
    Bytes(String),
    #[error("runs must be at least 1")]
    NoRuns,
    #[error("at least one size is required")]
    NoSizes,
    #[error("sizes must be strictly ascending")]
    Unordered,
    #[error("timeout must be positive")]
    ZeroTimeout,
}

/// Where queries are executed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    /// In-process engine; the store is reloaded for every run.
    Builtin,
    /// SPARQL protocol endpoint. A `{size}` placeholder in the URL is
    /// replaced by the size label, so one server can host several documents.
    Endpoint(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Document sizes in triples.
    pub sizes: Vec<u64>,
    pub runs: usize,
    pub timeout: Duration,
    /// Budget for materialized results of the builtin engine.
    pub memory_limit: Option<usize>,
    pub target: Target,
    /// Generator seed for documents produced on demand.
    pub seed: u64,
    /// Cache directory of generated documents.
    pub doc_dir: PathBuf,
    /// Query ids to run; empty means the full catalog.
    pub queries: Vec<String>,
}

pub const DEFAULT_SIZES: [u64; 6] = [10_000, 50_000, 250_000, 1_000_000, 5_000_000, 25_000_000];
pub const DEFAULT_RUNS: usize = 3;
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30 * 60);

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            sizes: DEFAULT_SIZES.to_vec(),
            runs: DEFAULT_RUNS,
            timeout: DEFAULT_TIMEOUT,
            memory_limit: None,
            target: Target::Builtin,
            seed: rdfbench_core::rng::DEFAULT_SEED,
            doc_dir: PathBuf::from("rdfbench-docs"),
            queries: Vec::new(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.runs == 0 {
            return Err(ConfigError::NoRuns);
        }
        if self.sizes.is_empty() {
            return Err(ConfigError::NoSizes);
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ConfigError::Unordered);
        }
        if self.timeout.is_zero() {
            return Err(ConfigError::ZeroTimeout);
        }
        Ok(())
    }
}

fn split_suffix(s: &str) -> (&str, &str) {
    let i = s.find(|c: char| !c.is_ascii_digit() && c != '.').unwrap_or(s.len());
    (&s[..i], &s[i..])
}

/// Parses `10000`, `10k`, `1M` or `1.5M`.
pub fn parse_size(s: &str) -> Result<u64, ConfigError> {
    let err = || ConfigError::Size(s.to_string());
    let (num, suffix) = split_suffix(s.trim());
    let factor = match suffix {
        "" => 1.0,
        "k" | "K" => 1e3,
        "m" | "M" => 1e6,
        "g" | "G" => 1e9,
        _ => return Err(err()),
    };
    let n: f64 = num.parse().map_err(|_| err())?;
    let v = n * factor;
    if v < 1.0 || v.fract() != 0.0 {
        return Err(err());
    }
    Ok(v as u64)
}

/// Comma-separated sizes.
pub fn parse_sizes(s: &str) -> Result<Vec<u64>, ConfigError> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(parse_size).collect()
}

/// Compact label of a size: `10k`, `1M`, or the plain number.
pub fn size_label(n: u64) -> String {
    if n >= 1_000_000 && n.is_multiple_of(1_000_000) {
        format!("{}M", n / 1_000_000)
    } else if n >= 1000 && n.is_multiple_of(1000) {
        format!("{}k", n / 1000)
    } else {
        n.to_string()
    }
}

/// Parses `250ms`, `60s`, `30min`, `1h`; a bare number means seconds.
pub fn parse_duration(s: &str) -> Result<Duration, ConfigError> {
    let err = || ConfigError::Duration(s.to_string());
    let (num, suffix) = split_suffix(s.trim());
    let n: f64 = num.parse().map_err(|_| err())?;
    let secs = match suffix {
        "ms" => n / 1e3,
        "" | "s" => n,
        "m" | "min" => n * 60.0,
        "h" => n * 3600.0,
        _ => return Err(err()),
    };
    Duration::try_from_secs_f64(secs).map_err(|_| err())
}

/// Parses byte counts with binary suffixes: `512M`, `2G`, `64k`.
pub fn parse_bytes(s: &str) -> Result<usize, ConfigError> {
    let err = || ConfigError::Bytes(s.to_string());
    let (num, suffix) = split_suffix(s.trim());
    let factor: u64 = match suffix.trim_end_matches(['B', 'b']).trim_end_matches('i') {
        "" => 1,
        "k" | "K" => 1 << 10,
        "m" | "M" => 1 << 20,
        "g" | "G" => 1 << 30,
        _ => return Err(err()),
    };
    let n: u64 = num.parse().map_err(|_| err())?;
    n.checked_mul(factor).and_then(|v| usize::try_from(v).ok()).ok_or_else(err)
}

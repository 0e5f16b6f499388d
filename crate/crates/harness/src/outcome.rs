//! Classified result of one query execution.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Success,
    Timeout,
    MemoryExhaustion,
    Error,
}

impl Status {
    /// Success matrix symbol.
    pub fn symbol(self) -> char {
        match self {
            Status::Success => '+',
            Status::Timeout => 'T',
            Status::MemoryExhaustion => 'M',
            Status::Error => 'E',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Success => "success",
            Status::Timeout => "timeout",
            Status::MemoryExhaustion => "memory",
            Status::Error => "error",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Status::Success, Status::Timeout, Status::MemoryExhaustion, Status::Error]
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| format!("unknown status '{s}'"))
    }
}

/// Result size: a row count for SELECT, the answer for ASK.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rows {
    Count(u64),
    Boolean(bool),
}

impl fmt::Display for Rows {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rows::Count(n) => write!(f, "{n}"),
            Rows::Boolean(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Rows {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "true" => Ok(Rows::Boolean(true)),
            "false" => Ok(Rows::Boolean(false)),
            _ => s.parse().map(Rows::Count).map_err(|_| format!("invalid row count '{s}'")),
        }
    }
}

/// Invariant: `Success` implies `rows` is present.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryOutcome {
    pub status: Status,
    /// Elapsed seconds; the timeout itself for `Timeout`.
    pub tme: f64,
    /// User and system CPU seconds of the executing thread, where available.
    pub usr: Option<f64>,
    pub sys: Option<f64>,
    /// Peak resident bytes during execution, where available.
    pub rmem: Option<u64>,
    pub rows: Option<Rows>,
    /// Diagnostic for non-success outcomes; not serialized.
    pub message: Option<String>,
}

impl QueryOutcome {
    pub fn success(tme: f64, rows: Rows) -> Self {
        Self { status: Status::Success, tme, usr: None, sys: None, rmem: None, rows: Some(rows), message: None }
    }

    pub fn failure(status: Status, tme: f64, message: impl Into<String>) -> Self {
        Self { status, tme, usr: None, sys: None, rmem: None, rows: None, message: Some(message.into()) }
    }

    pub fn is_success(&self) -> bool {
        self.status == Status::Success
    }
}

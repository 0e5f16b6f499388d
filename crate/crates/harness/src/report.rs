//! Raw outcomes of a benchmark run, their aggregates and renderings.
//!
//! Aggregates are computed from the raw cells only, in run order, so a
//! report re-parsed from its CSV yields bit-identical means.

use std::fmt::Write as _;

use rdfbench_engine::queries;
use thiserror::Error;

use crate::config::size_label;
use crate::metrics::{penalized_means, Means};
use crate::outcome::{QueryOutcome, Rows, Status};

/// Outcome of one (size, query, run) execution; runs count from 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub size: u64,
    pub query: String,
    pub run: usize,
    pub outcome: QueryOutcome,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadRecord {
    pub size: u64,
    pub run: usize,
    pub secs: f64,
    pub triples: u64,
}

/// Per (size, query) summary over all runs.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    /// First non-success status in run order, else `Success`.
    pub status: Status,
    /// Mean elapsed time; present iff every run succeeded.
    pub mean_tme: Option<f64>,
    pub rows: Option<Rows>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchReport {
    /// Sizes and queries in execution order.
    pub sizes: Vec<u64>,
    pub queries: Vec<String>,
    pub cells: Vec<Cell>,
    pub loads: Vec<LoadRecord>,
}

pub const CSV_HEADER: &str = "size,query,run,status,tme,usr,sys,rmem,rows";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct CsvError {
    pub line: usize,
    pub message: String,
}

/// Seconds with at least three significant digits, up to microseconds.
pub fn format_secs(t: f64) -> String {
    let decimals = if t > 0.0 { (2 - t.log10().floor() as i32).clamp(3, 6) } else { 3 };
    format!("{t:.*}", decimals as usize)
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or(String::new(), T::to_string)
}

impl BenchReport {
    pub fn push(&mut self, cell: Cell) {
        if !self.sizes.contains(&cell.size) {
            self.sizes.push(cell.size);
        }
        if !self.queries.contains(&cell.query) {
            self.queries.push(cell.query.clone());
        }
        self.cells.push(cell);
    }

    pub fn has_errors(&self) -> bool {
        self.cells.iter().any(|c| c.outcome.status == Status::Error)
    }

    pub fn cells_for<'a>(&'a self, size: u64, query: &'a str) -> impl Iterator<Item = &'a Cell> + 'a {
        self.cells.iter().filter(move |c| c.size == size && c.query == query)
    }

    pub fn aggregate(&self, size: u64, query: &str) -> Option<Aggregate> {
        let cells: Vec<&Cell> = self.cells_for(size, query).collect();
        if cells.is_empty() {
            return None;
        }
        let status = cells.iter().map(|c| c.outcome.status).find(|s| *s != Status::Success).unwrap_or(Status::Success);
        let mean_tme = (status == Status::Success).then(|| cells.iter().map(|c| c.outcome.tme).sum::<f64>() / cells.len() as f64);
        let rows = cells.iter().find_map(|c| c.outcome.rows);
        Some(Aggregate { status, mean_tme, rows })
    }

    /// Penalized means over the queries of one size.
    pub fn means(&self, size: u64) -> Option<Means> {
        penalized_means(self.queries.iter().filter_map(|q| self.aggregate(size, q)).map(|a| a.mean_tme))
    }

    /// Mean load time of a size over its runs.
    pub fn mean_load_secs(&self, size: u64) -> Option<f64> {
        let loads: Vec<f64> = self.loads.iter().filter(|l| l.size == size).map(|l| l.secs).collect();
        (!loads.is_empty()).then(|| loads.iter().sum::<f64>() / loads.len() as f64)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for c in &self.cells {
            let o = &c.outcome;
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                c.size,
                c.query,
                c.run,
                o.status,
                o.tme,
                opt(&o.usr),
                opt(&o.sys),
                opt(&o.rmem),
                opt(&o.rows)
            );
        }
        out
    }

    /// Inverse of [`BenchReport::to_csv`]; load times are not part of the CSV.
    pub fn from_csv(text: &str) -> Result<Self, CsvError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim_end() == CSV_HEADER => {}
            _ => return Err(CsvError { line: 1, message: format!("expected header '{CSV_HEADER}'") }),
        }
        let mut report = BenchReport::default();
        for (i, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let err = |message: String| CsvError { line: i + 1, message };
            let f: Vec<&str> = line.trim_end().split(',').collect();
            if f.len() != 9 {
                return Err(err(format!("expected 9 fields, found {}", f.len())));
            }
            fn field<T: std::str::FromStr>(s: &str, name: &str) -> Result<Option<T>, String> {
                if s.is_empty() {
                    return Ok(None);
                }
                s.parse().map(Some).map_err(|_| format!("invalid {name} '{s}'"))
            }
            let required = |v: Option<u64>, name: &str| v.ok_or_else(|| err(format!("missing {name}")));
            let size = required(field(f[0], "size").map_err(err)?, "size")?;
            let run = required(field(f[2], "run").map_err(err)?, "run")? as usize;
            let status: Status = f[3].parse().map_err(err)?;
            let tme: f64 = field(f[4], "tme").map_err(err)?.ok_or_else(|| err("missing tme".into()))?;
            let outcome = QueryOutcome {
                status,
                tme,
                usr: field(f[5], "usr").map_err(err)?,
                sys: field(f[6], "sys").map_err(err)?,
                rmem: field(f[7], "rmem").map_err(err)?,
                rows: if f[8].is_empty() { None } else { Some(f[8].parse().map_err(err)?) },
                message: None,
            };
            report.push(Cell { size, query: f[1].to_string(), run, outcome });
        }
        Ok(report)
    }

    /// Per-size table of mean query times, load times and penalized means.
    /// Failed queries show their status symbol.
    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| size | load [s] |");
        for q in &self.queries {
            let _ = write!(out, " {q} |");
        }
        out.push_str(" arith. mean [s] | geo. mean [s] |\n|---|---:|");
        for _ in &self.queries {
            out.push_str("---:|");
        }
        out.push_str("---:|---:|\n");
        for &size in &self.sizes {
            let load = self.mean_load_secs(size).map_or("-".to_string(), format_secs);
            let _ = write!(out, "| {} | {load} |", size_label(size));
            for q in &self.queries {
                let cell = match self.aggregate(size, q) {
                    Some(Aggregate { mean_tme: Some(t), .. }) => format_secs(t),
                    Some(a) => a.status.symbol().to_string(),
                    None => "-".to_string(),
                };
                let _ = write!(out, " {cell} |");
            }
            match self.means(size) {
                Some(m) => {
                    let _ = writeln!(out, " {} | {} |", format_secs(m.arithmetic), format_secs(m.geometric));
                }
                None => out.push_str(" - | - |\n"),
            }
        }
        out
    }

    /// Compact matrix of per-query statuses, one line per size, below a
    /// two-line column heading.
    pub fn success_matrix(&self) -> String {
        let catalog: Vec<&str> = queries::all().iter().map(|q| q.id).collect();
        let header: [String; 2] = if self.queries.is_empty() || self.queries == catalog {
            queries::MATRIX_HEADER.map(String::from)
        } else {
            let (top, bottom) = self.queries.iter().map(|q| queries::matrix_heading(q)).unzip();
            [top, bottom]
        };
        let labels: Vec<String> = self.sizes.iter().map(|&s| size_label(s)).collect();
        let width = labels.iter().map(|l| l.len() + 2).max().unwrap_or(0).max(6);
        let mut out = String::new();
        for h in &header {
            let _ = writeln!(out, "{:width$}{h}", "");
        }
        for (&size, label) in self.sizes.iter().zip(&labels) {
            let symbols: String = self.queries.iter().map(|q| self.aggregate(size, q).map_or(' ', |a| a.status.symbol())).collect();
            let _ = writeln!(out, "{label:width$}{symbols}");
        }
        out
    }
}

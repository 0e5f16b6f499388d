//! Document characteristics: per-class counts, authors, simulated years.

use std::fmt::Write as _;
use std::io::BufRead;

use crate::classes::DocumentClass;
use crate::error::NTriplesError;
use crate::rdfmodel::ntriples::Reader;
use crate::rdfmodel::{vocab, Term};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct GenerationStats {
    pub triples: u64,
    /// Last year with at least one emitted document.
    pub last_year: Option<i32>,
    /// Indexed by [`DocumentClass::index`].
    pub class_counts: [u64; 9],
    /// Author slots (`dc:creator` triples).
    pub total_authors: u64,
    /// Distinct persons (`foaf:Person` instances).
    pub distinct_authors: u64,
    pub elapsed_secs: f64,
    pub peak_rss_bytes: Option<u64>,
}

impl GenerationStats {
    pub fn count(&self, class: DocumentClass) -> u64 {
        self.class_counts[class.index()]
    }

    /// Aligned text summary.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<18}{}", "triples", self.triples);
        let year = self.last_year.map_or("-".to_string(), |y| y.to_string());
        let _ = writeln!(out, "{:<18}{}", "data up to", year);
        let _ = writeln!(out, "{:<18}{}", "total authors", self.total_authors);
        let _ = writeln!(out, "{:<18}{}", "distinct authors", self.distinct_authors);
        for class in DISPLAY_ORDER {
            let _ = writeln!(out, "{:<18}{}", class.slug(), self.count(class));
        }
        if self.elapsed_secs > 0.0 {
            let _ = writeln!(out, "{:<18}{:.3}", "elapsed [s]", self.elapsed_secs);
        }
        if let Some(rss) = self.peak_rss_bytes {
            let _ = writeln!(out, "{:<18}{}", "peak rss [B]", rss);
        }
        out
    }
}

pub const DISPLAY_ORDER: [DocumentClass; 9] = [
    DocumentClass::Journal,
    DocumentClass::Article,
    DocumentClass::Proceedings,
    DocumentClass::Inproceedings,
    DocumentClass::Incollection,
    DocumentClass::Book,
    DocumentClass::PhdThesis,
    DocumentClass::MastersThesis,
    DocumentClass::Www,
];

/// Recomputes the characteristics of an N-Triples document.
pub fn file_stats<R: BufRead>(input: R) -> Result<GenerationStats, NTriplesError> {
    let creator = vocab::property(crate::classes::Attribute::Author).0;
    let issued = vocab::property(crate::classes::Attribute::Year).0;
    let mut stats = GenerationStats::default();
    for t in Reader::new(input) {
        let t = t?;
        stats.triples += 1;
        let p = t.predicate.value();
        if p == vocab::RDF_TYPE {
            if let Term::Iri(o) = &t.object {
                if o == vocab::FOAF_PERSON {
                    stats.distinct_authors += 1;
                } else if let Some(local) = o.strip_prefix(vocab::BENCH) {
                    if let Some(c) = DocumentClass::from_local_name(local) {
                        stats.class_counts[c.index()] += 1;
                    }
                }
            }
        } else if p == creator {
            stats.total_authors += 1;
        } else if p == issued {
            if let Ok(y) = t.object.value().parse::<i32>() {
                stats.last_year = Some(stats.last_year.map_or(y, |m| m.max(y)));
            }
        }
    }
    Ok(stats)
}

/// High-water mark of resident memory of this process, where the OS exposes it.
pub fn peak_rss_bytes() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

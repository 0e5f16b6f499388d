//! Closed-form statistical model of the bibliography: yearly class counts,
//! author population curves, repeated-attribute distributions, the
//! publications-per-author power law, and the attribute probability table.
//!
//! All constants live in this module and are dumped verbatim by
//! [`manifest`].

use std::fmt::Write as _;

use crate::classes::{Attribute, DocumentClass};
use crate::error::ParamError;
use crate::rng::RngState;

/// Version tag of the embedded parameter set.
pub const PARAMETER_VERSION: &str = "dblp-model-1";

/// First simulated year.
pub const FIRST_YEAR: i32 = 1936;
/// Last year the simulation is allowed to reach.
pub const LAST_YEAR: i32 = 2100;

/// PhD, masters and WWW documents are drawn uniformly, starting in this year.
pub const RANDOM_CLASS_ONSET: i32 = 1980;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianParams {
    pub mu: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogisticParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub x0: i32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawParams {
    pub a: f64,
    pub k: f64,
    pub b: f64,
}

pub const CITE: GaussianParams = GaussianParams { mu: 16.82, sigma: 10.07 };
pub const EDITOR: GaussianParams = GaussianParams { mu: 2.15, sigma: 1.18 };

pub const JOURNAL: LogisticParams = LogisticParams { a: 740.43, b: 426.28, c: 0.12, x0: 1950 };
pub const ARTICLE: LogisticParams = LogisticParams { a: 58519.12, b: 876.80, c: 0.12, x0: 1950 };
pub const PROCEEDINGS: LogisticParams = LogisticParams { a: 5502.31, b: 1250.26, c: 0.14, x0: 1965 };
pub const INPROCEEDINGS: LogisticParams = LogisticParams { a: 337132.34, b: 1901.05, c: 0.15, x0: 1965 };
pub const INCOLLECTION: LogisticParams = LogisticParams { a: 3577.31, b: 196.49, c: 0.09, x0: 1980 };
pub const BOOK: LogisticParams = LogisticParams { a: 52.97, b: 40739.38, c: 0.32, x0: 1950 };

/// Upper bounds of the uniformly drawn classes.
pub const PHD_MAX: i64 = 20;
pub const MASTERS_MAX: i64 = 10;
pub const WWW_MAX: i64 = 10;

/// Coauthor scaling: total coauthors `2.12 x`, distinct coauthors `x^0.81`.
pub const COAUTHOR_TOTAL_FACTOR: f64 = 2.12;
pub const COAUTHOR_DISTINCT_EXPONENT: f64 = 0.81;

pub fn gaussian_pdf(x: f64, p: GaussianParams) -> Result<f64, ParamError> {
    if p.sigma <= 0.0 || p.sigma.is_nan() {
        return Err(ParamError::new(format!("sigma must be positive, got {}", p.sigma)));
    }
    let z = (x - p.mu) / p.sigma;
    Ok((-0.5 * z * z).exp() / (p.sigma * (2.0 * std::f64::consts::PI).sqrt()))
}

pub fn logistic(yr: f64, p: LogisticParams) -> f64 {
    p.a / (1.0 + p.b * (-p.c * (yr - f64::from(p.x0))).exp())
}

pub fn powerlaw(x: f64, p: PowerLawParams) -> Result<f64, ParamError> {
    if x <= 0.0 || x.is_nan() {
        return Err(ParamError::new(format!("power law needs x > 0, got {x}")));
    }
    Ok(p.a * x.powf(p.k) + p.b)
}

/// Round half up, clamped at zero.
pub fn round_count(x: f64) -> u64 {
    if x.is_nan() || x <= 0.0 {
        0
    } else {
        (x + 0.5).floor() as u64
    }
}

/// Expected (unrounded) count curve of a logistic class.
pub fn class_curve(class: DocumentClass) -> Option<LogisticParams> {
    match class {
        DocumentClass::Journal => Some(JOURNAL),
        DocumentClass::Article => Some(ARTICLE),
        DocumentClass::Proceedings => Some(PROCEEDINGS),
        DocumentClass::Inproceedings => Some(INPROCEEDINGS),
        DocumentClass::Incollection => Some(INCOLLECTION),
        DocumentClass::Book => Some(BOOK),
        _ => None,
    }
}

/// Number of documents of `class` in year `yr`.
pub fn class_count(class: DocumentClass, yr: i32, rng: &mut RngState) -> Result<u64, ParamError> {
    if !(FIRST_YEAR..=LAST_YEAR).contains(&yr) {
        return Err(ParamError::new(format!("year {yr} outside [{FIRST_YEAR}, {LAST_YEAR}]")));
    }
    if let Some(curve) = class_curve(class) {
        return Ok(round_count(logistic(f64::from(yr), curve)));
    }
    let max = match class {
        DocumentClass::PhdThesis => PHD_MAX,
        DocumentClass::MastersThesis => MASTERS_MAX,
        DocumentClass::Www => WWW_MAX,
        _ => unreachable!("all logistic classes handled above"),
    };
    // draw unconditionally so the stream position never depends on the year
    let v = rng.uniform_int(0, max)?;
    Ok(if yr >= RANDOM_CLASS_ONSET { v as u64 } else { 0 })
}

/// Fraction of the author total that are distinct persons.
pub fn distinct_author_factor(yr: i32) -> f64 {
    -0.67 / (1.0 + 169.41 * (-0.07 * f64::from(yr - 1936)).exp()) + 0.84
}

/// Fraction of the distinct authors that publish for the first time.
pub fn new_author_factor(yr: i32) -> f64 {
    -0.29 / (1.0 + 1749.00 * (-0.14 * f64::from(yr - 1937)).exp()) + 0.628
}

/// Distinct and new author counts for a total of `f_auth` author slots.
pub fn author_counts(yr: i32, f_auth: f64) -> Result<(f64, f64), ParamError> {
    if f_auth < 0.0 || f_auth.is_nan() {
        return Err(ParamError::new(format!("author total must be >= 0, got {f_auth}")));
    }
    let distinct = distinct_author_factor(yr) * f_auth;
    Ok((distinct, new_author_factor(yr) * distinct))
}

pub fn author_params(yr: i32) -> GaussianParams {
    let dy = f64::from(yr - 1975);
    GaussianParams { mu: 2.05 / (1.0 + 17.59 * (-0.11 * dy).exp()) + 1.05, sigma: 1.00 / (1.0 + 6.46 * (-0.10 * dy).exp()) + 0.50 }
}

/// Exponent of the publications-per-author power law in year `yr`.
pub fn awp_exponent(yr: i32) -> f64 {
    -0.60 / (1.0 + 216223.0 * (-0.20 * f64::from(yr - 1936)).exp()) + 3.08
}

/// Power law giving the number of authors with `x` publications in a year
/// with `publications` total publications.
pub fn awp_params(yr: i32, publications: f64) -> PowerLawParams {
    PowerLawParams { a: 1.50 * publications, k: -awp_exponent(yr), b: -5.0 }
}

/// `(total, distinct)` expected coauthors for an author with `x` publications.
pub fn coauthor_targets(x: f64) -> Result<(f64, f64), ParamError> {
    if x < 0.0 || x.is_nan() {
        return Err(ParamError::new(format!("publication count must be >= 0, got {x}")));
    }
    Ok((COAUTHOR_TOTAL_FACTOR * x, x.powf(COAUTHOR_DISTINCT_EXPONENT)))
}

/// A distribution over `1..=weights.len()` sampled by inverse CDF.
#[derive(Debug, Clone)]
pub struct DiscreteDistribution {
    probabilities: Vec<f64>,
    cdf: Vec<f64>,
}

impl DiscreteDistribution {
    /// Normalizes non-negative weights over the support `1..=weights.len()`.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self, ParamError> {
        let total: f64 = weights.iter().sum();
        if weights.is_empty() || total <= 0.0 || !total.is_finite() {
            return Err(ParamError::new("distribution needs positive total weight"));
        }
        if weights.iter().any(|w| *w < 0.0) {
            return Err(ParamError::new("negative weight"));
        }
        let probabilities: Vec<f64> = weights.iter().map(|w| w / total).collect();
        let mut acc = 0.0;
        let mut cdf: Vec<f64> = probabilities
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        *cdf.last_mut().expect("non-empty") = 1.0;
        Ok(Self { probabilities, cdf })
    }

    /// Gaussian discretized over `[1, ceil(mu + 6 sigma)]`.
    pub fn gaussian(p: GaussianParams) -> Result<Self, ParamError> {
        let upper = ((p.mu + 6.0 * p.sigma).ceil() as i64).max(1);
        let weights = (1..=upper).map(|n| gaussian_pdf(n as f64, p)).collect::<Result<Vec<_>, _>>()?;
        Self::from_weights(weights)
    }

    /// Power law `max(f(x), 0)` over `x = 1 .. x_max`, where `x_max` is the
    /// first `x` at which the curve is no longer positive. Falls back to a
    /// point mass at 1 when the curve is not positive at `x = 1`.
    pub fn powerlaw(p: PowerLawParams) -> Result<Self, ParamError> {
        let mut weights = Vec::new();
        let mut x = 1.0;
        loop {
            let w = powerlaw(x, p)?;
            if w <= 0.0 || weights.len() >= 100_000 {
                break;
            }
            weights.push(w);
            x += 1.0;
        }
        if weights.is_empty() {
            weights.push(1.0);
        }
        Self::from_weights(weights)
    }

    pub fn support_max(&self) -> u32 {
        self.probabilities.len() as u32
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn mean(&self) -> f64 {
        self.probabilities.iter().enumerate().map(|(i, p)| (i + 1) as f64 * p).sum()
    }

    pub fn mode(&self) -> u32 {
        let mut best = 0;
        for (i, p) in self.probabilities.iter().enumerate() {
            if *p > self.probabilities[best] {
                best = i;
            }
        }
        best as u32 + 1
    }

    pub fn sample(&self, rng: &mut RngState) -> u32 {
        let u = rng.next_unit();
        let idx = self.cdf.partition_point(|c| *c <= u);
        idx.min(self.cdf.len() - 1) as u32 + 1
    }
}

/// The repeated attributes with a count distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepeatedAttribute {
    Cite,
    Editor,
    Author,
}

pub fn repeated_attribute_distribution(attr: RepeatedAttribute, yr: i32) -> Result<DiscreteDistribution, ParamError> {
    let params = match attr {
        RepeatedAttribute::Cite => CITE,
        RepeatedAttribute::Editor => EDITOR,
        RepeatedAttribute::Author => author_params(yr),
    };
    DiscreteDistribution::gaussian(params)
}

/// Draws the number of occurrences of a repeated attribute (at least 1).
pub fn repeated_attribute_count(attr: RepeatedAttribute, yr: i32, rng: &mut RngState) -> Result<u32, ParamError> {
    Ok(repeated_attribute_distribution(attr, yr)?.sample(rng))
}

/// Probability that an attribute describes a document, per class.
///
/// Rows follow [`Attribute::ALL`], columns follow [`DocumentClass::TABLE`]
/// (article, inproceedings, proceedings, book, incollection, phdthesis,
/// mastersthesis, www).
pub const ATTRIBUTE_TABLE: [[f64; 8]; 22] = [
    // address
    [0.0000, 0.0000, 0.0004, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000],
    // author
    [0.9895, 0.9970, 0.0001, 0.8937, 0.8459, 1.0000, 1.0000, 0.9973],
    // booktitle
    [0.0006, 1.0000, 0.9579, 0.0183, 1.0000, 0.0000, 0.0000, 0.0001],
    // cdrom
    [0.0112, 0.0162, 0.0000, 0.0032, 0.0138, 0.0000, 0.0000, 0.0000],
    // chapter
    [0.0000, 0.0000, 0.0000, 0.0000, 0.0005, 0.0000, 0.0000, 0.0000],
    // cite
    [0.0048, 0.0104, 0.0001, 0.0079, 0.0047, 0.0000, 0.0000, 0.0000],
    // crossref
    [0.0006, 0.8003, 0.0016, 0.0000, 0.6951, 0.0000, 0.0000, 0.0000],
    // editor
    [0.0000, 0.0000, 0.7992, 0.1040, 0.0000, 0.0000, 0.0000, 0.0004],
    // ee
    [0.6781, 0.6519, 0.0019, 0.0079, 0.3610, 0.1444, 0.0000, 0.0000],
    // isbn
    [0.0000, 0.0000, 0.8592, 0.9294, 0.0073, 0.0222, 0.0000, 0.0000],
    // journal
    [0.9994, 0.0000, 0.0004, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000],
    // month
    [0.0065, 0.0000, 0.0001, 0.0008, 0.0000, 0.0333, 0.0000, 0.0000],
    // note
    [0.0297, 0.0000, 0.0002, 0.0000, 0.0000, 0.0000, 0.0000, 0.0273],
    // number
    [0.9224, 0.0001, 0.0009, 0.0000, 0.0000, 0.0333, 0.0000, 0.0000],
    // pages
    [0.9261, 0.9489, 0.0000, 0.0000, 0.6849, 0.0000, 0.0000, 0.0000],
    // publisher
    [0.0006, 0.0000, 0.9737, 0.9992, 0.0237, 0.0444, 0.0000, 0.0000],
    // school
    [0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 1.0000, 1.0000, 0.0000],
    // series
    [0.0000, 0.0000, 0.5791, 0.5365, 0.0000, 0.0222, 0.0000, 0.0000],
    // title
    [1.0000, 1.0000, 1.0000, 1.0000, 1.0000, 1.0000, 1.0000, 1.0000],
    // url
    [0.9986, 1.0000, 0.9860, 0.2373, 0.9992, 0.0222, 0.3750, 0.9624],
    // volume
    [0.9982, 0.0000, 0.5670, 0.5024, 0.0000, 0.0111, 0.0000, 0.0000],
    // year
    [1.0000, 1.0000, 1.0000, 1.0000, 1.0000, 1.0000, 1.0000, 0.0011],
];

pub fn attribute_probability(class: DocumentClass, attr: Attribute) -> Result<f64, ParamError> {
    let column = DocumentClass::TABLE
        .iter()
        .position(|c| *c == class)
        .ok_or_else(|| ParamError::new(format!("no attribute probabilities for class {class}")))?;
    Ok(ATTRIBUTE_TABLE[attr.index()][column])
}

/// Text dump of every constant of the model.
pub fn manifest() -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# parameter set {PARAMETER_VERSION}");
    let _ = writeln!(out, "first_year = {FIRST_YEAR}");
    let _ = writeln!(out, "random_class_onset = {RANDOM_CLASS_ONSET}");
    let _ = writeln!(out, "\n[gaussian]  mu sigma");
    let _ = writeln!(out, "cite        {} {}", CITE.mu, CITE.sigma);
    let _ = writeln!(out, "editor      {} {}", EDITOR.mu, EDITOR.sigma);
    let _ = writeln!(out, "author.mu    2.05/(1+17.59*exp(-0.11*(yr-1975)))+1.05");
    let _ = writeln!(out, "author.sigma 1.00/(1+6.46*exp(-0.10*(yr-1975)))+0.50");
    let _ = writeln!(out, "\n[logistic]  a/(1+b*exp(-c*(yr-x0)))");
    for class in DocumentClass::ALL {
        if let Some(p) = class_curve(class) {
            let _ = writeln!(out, "{:<14}a={} b={} c={} x0={}", class.slug(), p.a, p.b, p.c, p.x0);
        }
    }
    let _ = writeln!(out, "phdthesis     uniform[0..{PHD_MAX}]");
    let _ = writeln!(out, "mastersthesis uniform[0..{MASTERS_MAX}]");
    let _ = writeln!(out, "www           uniform[0..{WWW_MAX}]");
    let _ = writeln!(out, "\n[authors]");
    let _ = writeln!(out, "distinct = (-0.67/(1+169.41*exp(-0.07*(yr-1936)))+0.84) * total");
    let _ = writeln!(out, "new      = (-0.29/(1+1749.00*exp(-0.14*(yr-1937)))+0.628) * distinct");
    let _ = writeln!(out, "awp(x)   = 1.50*publications*x^-k - 5");
    let _ = writeln!(out, "k        = -0.60/(1+216223*exp(-0.20*(yr-1936)))+3.08");
    let _ = writeln!(out, "coauthors total = {COAUTHOR_TOTAL_FACTOR}*x, distinct = x^{COAUTHOR_DISTINCT_EXPONENT}");
    let _ = writeln!(out, "\n[attributes]");
    let _ = write!(out, "{:<10}", "");
    for class in DocumentClass::TABLE {
        let _ = write!(out, " {:>13}", class.slug());
    }
    let _ = writeln!(out);
    for attr in Attribute::ALL {
        let _ = write!(out, "{:<10}", attr.name());
        for p in ATTRIBUTE_TABLE[attr.index()] {
            let _ = write!(out, " {:>13.4}", p);
        }
        let _ = writeln!(out);
    }
    out
}

//! Year-by-year simulation of the bibliography, streamed as N-Triples.
//!
//! Each year is planned, populated and rendered in full before the next one
//! starts. Output is grouped into clusters (a journal, a proceedings with its
//! inproceedings, or a single document together with the persons it
//! introduces) and a cluster is written only if it fits under the triple
//! limit. The simulation itself never depends on the limit, so a smaller
//! document is always a byte prefix of a larger one with the same seed.

pub mod citations;
pub mod names;
pub mod population;
pub mod stats;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

pub use stats::{file_stats, peak_rss_bytes, GenerationStats};

use crate::classes::{Attribute, AttributeSet, DocumentClass};
use crate::distributions::{
    attribute_probability, class_count, repeated_attribute_distribution, GaussianParams, RepeatedAttribute, FIRST_YEAR, LAST_YEAR,
};
use crate::error::{GenerateError, ParamError};
use crate::rdfmodel::{document_triples, ntriples, schema_triples, vocab, CitationBag, DocumentRecord, PersonRef, Term, Triple};
use crate::rng::{Purpose, RngState, DEFAULT_SEED};
use citations::{DocKey, RankIndex};
use population::{Authorship, Population};

pub const ERDOES_FIRST_YEAR: i32 = 1940;
pub const ERDOES_LAST_YEAR: i32 = 1996;
pub const ERDOES_PUBLICATIONS: usize = 10;
pub const ERDOES_EDITORSHIPS: usize = 2;

/// Share of articles and inproceedings carrying an abstract.
pub const ABSTRACT_PROBABILITY: f64 = 0.01;
/// Word count of an abstract.
pub const ABSTRACT_WORDS: GaussianParams = GaussianParams { mu: 150.0, sigma: 30.0 };

/// Chance that an outgoing citation slot points into the document.
pub const DEFAULT_TARGET_PROBABILITY: f64 = 0.5;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    Triples(u64),
    /// Last simulated year, inclusive.
    Year(i32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenerationConfig {
    pub limit: Limit,
    pub seed: u64,
    pub citation_target_probability: f64,
    pub rank_capacity: usize,
}

impl GenerationConfig {
    pub fn new(limit: Limit) -> Self {
        Self {
            limit,
            seed: DEFAULT_SEED,
            citation_target_probability: DEFAULT_TARGET_PROBABILITY,
            rank_capacity: citations::DEFAULT_CAPACITY,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

pub fn is_erdoes_year(yr: i32) -> bool {
    (ERDOES_FIRST_YEAR..=ERDOES_LAST_YEAR).contains(&yr)
}

/// Document counts of one year.
#[derive(Debug, Clone, PartialEq)]
pub struct YearPlan {
    pub year: i32,
    /// Indexed by [`DocumentClass::index`].
    pub counts: [u64; 9],
    /// Expected author slots: count times P(author) times mean authors per paper.
    pub expected_author_slots: f64,
}

impl YearPlan {
    pub fn count(&self, class: DocumentClass) -> u64 {
        self.counts[class.index()]
    }
}

/// Class counts of year `yr` including the structural minimums: a
/// proceedings for every year with inproceedings, and two proceedings plus
/// ten articles or inproceedings in every year with the fixed author.
pub fn plan_year(seed: u64, yr: i32) -> Result<YearPlan, ParamError> {
    let mut rng = RngState::substream(seed, yr, Purpose::Plan);
    let mut counts = [0u64; 9];
    for class in DocumentClass::ALL {
        counts[class.index()] = class_count(class, yr, &mut rng)?;
    }
    let proc = DocumentClass::Proceedings.index();
    if counts[DocumentClass::Inproceedings.index()] > 0 {
        counts[proc] = counts[proc].max(1);
    }
    if is_erdoes_year(yr) {
        counts[proc] = counts[proc].max(ERDOES_EDITORSHIPS as u64);
        let papers = counts[DocumentClass::Article.index()] + counts[DocumentClass::Inproceedings.index()];
        if papers < ERDOES_PUBLICATIONS as u64 {
            counts[DocumentClass::Article.index()] += ERDOES_PUBLICATIONS as u64 - papers;
        }
    }
    let per_paper = repeated_attribute_distribution(RepeatedAttribute::Author, yr)?.mean();
    let mut expected = 0.0;
    for class in DocumentClass::TABLE {
        expected += counts[class.index()] as f64 * attribute_probability(class, Attribute::Author)? * per_paper;
    }
    Ok(YearPlan { year: yr, counts, expected_author_slots: expected })
}

#[derive(Debug, Clone)]
struct Doc {
    class: DocumentClass,
    ordinal: u32,
    attrs: AttributeSet,
    paper: u32,
    editors: (u32, u32),
    cites: (u32, u32),
    /// Ordinal of a proceedings of the same year.
    part_of: u32,
    /// Ordinal of a journal of the same year.
    journal: u32,
    erdoes_author: bool,
    erdoes_editor: bool,
    has_abstract: bool,
    cluster_start: bool,
}

impl Doc {
    fn new(class: DocumentClass, ordinal: u32, cluster_start: bool) -> Self {
        Self {
            class,
            ordinal,
            attrs: AttributeSet::empty(),
            paper: NONE,
            editors: (0, 0),
            cites: (0, 0),
            part_of: NONE,
            journal: NONE,
            erdoes_author: false,
            erdoes_editor: false,
            has_abstract: false,
            cluster_start,
        }
    }
}

struct YearData {
    year: i32,
    docs: Vec<Doc>,
    authorship: Authorship,
    editor_ids: Vec<u32>,
    cite_targets: Vec<DocKey>,
    distinct: usize,
}

enum Flow {
    Continue,
    Stop,
}

struct World<W: Write> {
    config: GenerationConfig,
    out: W,
    population: Population,
    index: RankIndex,
    erdoes_introduced: bool,
    schema_written: bool,
    line: String,
    cluster: Vec<Triple>,
    stats: GenerationStats,
}

/// Streams a document to `out` and returns its characteristics.
pub fn generate<W: Write>(config: &GenerationConfig, out: W) -> Result<GenerationStats, GenerateError> {
    if !(0.0..=1.0).contains(&config.citation_target_probability) {
        return Err(ParamError::new("citation target probability outside [0, 1]").into());
    }
    let last_year = match config.limit {
        Limit::Year(y) if !(FIRST_YEAR..=LAST_YEAR).contains(&y) => {
            return Err(ParamError::new(format!("year {y} outside [{FIRST_YEAR}, {LAST_YEAR}]")).into())
        }
        Limit::Year(y) => y,
        Limit::Triples(_) => LAST_YEAR,
    };
    let start = Instant::now();
    let mut world = World {
        config: config.clone(),
        out: BufWriter::with_capacity(1 << 20, out),
        population: Population::new(),
        index: RankIndex::new(config.rank_capacity.max(1)),
        erdoes_introduced: false,
        schema_written: false,
        line: String::new(),
        cluster: Vec::new(),
        stats: GenerationStats::default(),
    };
    for yr in FIRST_YEAR..=last_year {
        let data = world.simulate_year(yr)?;
        let flow = world.emit_year(&data)?;
        if let Flow::Stop = flow {
            break;
        }
        world.finish_year(&data);
    }
    world.out.flush()?;
    let mut stats = world.stats;
    stats.elapsed_secs = start.elapsed().as_secs_f64();
    stats.peak_rss_bytes = peak_rss_bytes();
    Ok(stats)
}

/// [`generate`] into a file at `path`.
pub fn generate_to_path(config: &GenerationConfig, path: &Path) -> Result<GenerationStats, GenerateError> {
    let file = File::create(path)?;
    generate(config, file)
}

fn uniform(rng: &mut RngState, lo: i64, hi: i64) -> i64 {
    rng.uniform_int(lo, hi).expect("constant non-empty range")
}

/// `k` distinct elements of `items`, in random order.
fn sample_without_replacement(items: &mut [usize], k: usize, rng: &mut RngState) -> Vec<usize> {
    let k = k.min(items.len());
    for i in 0..k {
        let j = i + rng.index(items.len() - i);
        items.swap(i, j);
    }
    items[..k].to_vec()
}

impl<W: Write> World<W> {
    fn simulate_year(&mut self, yr: i32) -> Result<YearData, GenerateError> {
        let seed = self.config.seed;
        let plan = plan_year(seed, yr)?;
        let mut attr_rng = RngState::substream(seed, yr, Purpose::Attributes);

        // emission order: journals, each proceedings with its inproceedings,
        // then the remaining classes
        let n_proc = plan.count(DocumentClass::Proceedings) as u32;
        let n_inproc = plan.count(DocumentClass::Inproceedings) as u32;
        let mut docs = Vec::new();
        for p in 1..=n_proc {
            docs.push(Doc::new(DocumentClass::Proceedings, p, true));
            let mut j = p;
            while j <= n_inproc {
                let mut d = Doc::new(DocumentClass::Inproceedings, j, false);
                d.part_of = p;
                docs.push(d);
                j += n_proc;
            }
        }
        for class in [
            DocumentClass::Article,
            DocumentClass::Incollection,
            DocumentClass::Book,
            DocumentClass::PhdThesis,
            DocumentClass::MastersThesis,
            DocumentClass::Www,
        ] {
            for i in 1..=plan.count(class) as u32 {
                docs.push(Doc::new(class, i, true));
            }
        }

        let table: Vec<Vec<(Attribute, f64)>> = DocumentClass::TABLE
            .iter()
            .map(|&c| {
                Attribute::ALL.iter().map(|&a| (a, attribute_probability(c, a).expect("table class"))).filter(|&(_, p)| p > 0.0).collect()
            })
            .collect();
        for doc in &mut docs {
            let row = &table[doc.class.index()];
            for &(a, p) in row {
                if p >= 1.0 || attr_rng.bernoulli(p)? {
                    doc.attrs.insert(a);
                }
            }
            if matches!(doc.class, DocumentClass::Article | DocumentClass::Inproceedings) {
                doc.has_abstract = attr_rng.bernoulli(ABSTRACT_PROBABILITY)?;
            }
        }

        let mut n_journal = plan.count(DocumentClass::Journal) as u32;
        if n_journal == 0 && docs.iter().any(|d| d.attrs.contains(Attribute::Journal)) {
            n_journal = 1;
        }

        // links inside the year
        let mut article_seq = 0;
        for doc in &mut docs {
            if doc.attrs.contains(Attribute::Crossref) {
                doc.part_of = match doc.class {
                    DocumentClass::Inproceedings => doc.part_of,
                    DocumentClass::Proceedings if doc.ordinal > 1 => doc.ordinal - 1,
                    DocumentClass::Proceedings => NONE,
                    _ if n_proc > 0 => 1 + attr_rng.index(n_proc as usize) as u32,
                    _ => NONE,
                };
            } else {
                doc.part_of = NONE;
            }
            if doc.attrs.contains(Attribute::Journal) && n_journal > 0 {
                doc.journal = if doc.class == DocumentClass::Article {
                    article_seq += 1;
                    (article_seq - 1) % n_journal + 1
                } else {
                    1 + attr_rng.index(n_journal as usize) as u32
                };
            }
        }

        if is_erdoes_year(yr) {
            self.place_erdoes(yr, &mut docs);
        }

        // authors
        let d_auth = repeated_attribute_distribution(RepeatedAttribute::Author, yr)?;
        let mut author_rng = RngState::substream(seed, yr, Purpose::Authors);
        let mut targets: Vec<u16> = Vec::new();
        let mut max_n = 0;
        for doc in &mut docs {
            if doc.attrs.contains(Attribute::Author) {
                let n = d_auth.sample(&mut author_rng);
                max_n = max_n.max(n);
                doc.paper = targets.len() as u32;
                targets.push(n as u16);
            }
        }
        let slots: u64 = targets.iter().map(|&t| u64::from(t)).sum();
        let publications = docs.iter().filter(|d| d.class.is_publication()).count();
        let publishing =
            self.population.choose_publishing_authors(yr, slots, max_n, targets.len() as u32, publications as f64, &mut author_rng)?;
        let mut co_rng = RngState::substream(seed, yr, Purpose::Coauthors);
        let authorship = Population::assign_coauthors(&targets, &publishing, &mut co_rng);
        self.population.record(yr, &authorship);

        // editors
        let d_editor = repeated_attribute_distribution(RepeatedAttribute::Editor, yr)?;
        let mut editor_rng = RngState::substream(seed, yr, Purpose::Editors);
        let weights = self.population.editor_weights();
        let mut editor_ids = Vec::new();
        let mut picked = Vec::new();
        for doc in &mut docs {
            if doc.attrs.contains(Attribute::Editor) {
                let m = d_editor.sample(&mut editor_rng);
                self.population.choose_editors(&weights, m, &mut editor_rng, &mut picked);
                let start = editor_ids.len() as u32;
                editor_ids.extend_from_slice(&picked);
                doc.editors = (start, picked.len() as u32);
            }
        }

        // outgoing citations, into documents of earlier years
        let d_cite = repeated_attribute_distribution(RepeatedAttribute::Cite, yr)?;
        let mut cite_rng = RngState::substream(seed, yr, Purpose::Citations);
        let tau = self.config.citation_target_probability;
        let mut cite_targets: Vec<DocKey> = Vec::new();
        for doc in &mut docs {
            if !doc.attrs.contains(Attribute::Cite) {
                continue;
            }
            let start = cite_targets.len();
            let m = d_cite.sample(&mut cite_rng);
            for _ in 0..m {
                if !cite_rng.bernoulli(tau)? || self.index.is_empty() {
                    continue;
                }
                let r = self.index.sample_rank(&mut cite_rng);
                let key = self.index.get(r).0;
                // a repeated target stays untargeted
                if cite_targets[start..].contains(&key) {
                    continue;
                }
                cite_targets.push(key);
                self.index.increment(r);
            }
            doc.cites = (start as u32, (cite_targets.len() - start) as u32);
        }

        let mut all = Vec::with_capacity(docs.len() + n_journal as usize);
        for j in 1..=n_journal {
            let mut d = Doc::new(DocumentClass::Journal, j, true);
            d.attrs = [Attribute::Title, Attribute::Year].into_iter().collect();
            all.push(d);
        }
        all.extend(docs);
        Ok(YearData { year: yr, docs: all, authorship, editor_ids, cite_targets, distinct: publishing.len() })
    }

    /// Picks ten authored articles or inproceedings and two proceedings for
    /// the fixed author, forcing the attributes where the draw fell short.
    fn place_erdoes(&mut self, yr: i32, docs: &mut [Doc]) {
        let mut rng = RngState::substream(self.config.seed, yr, Purpose::Erdoes);
        let is_paper = |d: &Doc| matches!(d.class, DocumentClass::Article | DocumentClass::Inproceedings);
        let mut authored: Vec<usize> =
            (0..docs.len()).filter(|&i| is_paper(&docs[i]) && docs[i].attrs.contains(Attribute::Author)).collect();
        for (i, doc) in docs.iter_mut().enumerate() {
            if authored.len() >= ERDOES_PUBLICATIONS {
                break;
            }
            if is_paper(doc) && !doc.attrs.contains(Attribute::Author) {
                doc.attrs.insert(Attribute::Author);
                authored.push(i);
            }
        }
        for i in sample_without_replacement(&mut authored, ERDOES_PUBLICATIONS, &mut rng) {
            docs[i].erdoes_author = true;
        }

        let is_proc = |d: &Doc| d.class == DocumentClass::Proceedings;
        let mut edited: Vec<usize> = (0..docs.len()).filter(|&i| is_proc(&docs[i]) && docs[i].attrs.contains(Attribute::Editor)).collect();
        for (i, doc) in docs.iter_mut().enumerate() {
            if edited.len() >= ERDOES_EDITORSHIPS {
                break;
            }
            if is_proc(doc) && !doc.attrs.contains(Attribute::Editor) {
                doc.attrs.insert(Attribute::Editor);
                edited.push(i);
            }
        }
        for i in sample_without_replacement(&mut edited, ERDOES_EDITORSHIPS, &mut rng) {
            docs[i].erdoes_editor = true;
        }
    }

    fn emit_year(&mut self, data: &YearData) -> Result<Flow, GenerateError> {
        let mut text_rng = RngState::substream(self.config.seed, data.year, Purpose::Text);
        let mut i = 0;
        while i < data.docs.len() {
            let mut j = i + 1;
            while j < data.docs.len() && !data.docs[j].cluster_start {
                j += 1;
            }
            self.cluster.clear();
            let mut authors = 0u64;
            let mut introduced = 0u64;
            for doc in &data.docs[i..j] {
                let record = self.render(data, doc, &mut text_rng);
                authors += record.authors.len() as u64;
                introduced += record.authors.iter().chain(&record.editors).filter(|p| p.introduce).count() as u64;
                self.cluster.extend(document_triples(&record));
            }
            if !self.write_cluster()? {
                return Ok(Flow::Stop);
            }
            for doc in &data.docs[i..j] {
                self.stats.class_counts[doc.class.index()] += 1;
            }
            self.stats.total_authors += authors;
            self.stats.distinct_authors += introduced;
            self.stats.last_year = Some(data.year);
            i = j;
        }
        Ok(Flow::Continue)
    }

    /// Writes the pending cluster if it fits; the schema goes out with the
    /// first cluster.
    fn write_cluster(&mut self) -> Result<bool, GenerateError> {
        let schema = if self.schema_written { Vec::new() } else { schema_triples() };
        let n = (schema.len() + self.cluster.len()) as u64;
        if let Limit::Triples(limit) = self.config.limit {
            if self.stats.triples + n > limit {
                if !self.schema_written {
                    return Err(GenerateError::LimitTooSmall { limit, minimal: n });
                }
                return Ok(false);
            }
        }
        self.line.clear();
        for t in schema.iter().chain(&self.cluster) {
            ntriples::write_triple(&mut self.line, t);
        }
        self.out.write_all(self.line.as_bytes())?;
        self.schema_written = true;
        self.stats.triples += n;
        Ok(true)
    }

    fn person(&mut self, pool_index: u32) -> PersonRef {
        let author = &mut self.population.authors[pool_index as usize];
        let (name, label) = names::person_name(author.id);
        let introduce = !author.introduced;
        author.introduced = true;
        PersonRef { term: Term::Blank(label), name, introduce }
    }

    fn erdoes(&mut self) -> PersonRef {
        let introduce = !self.erdoes_introduced;
        self.erdoes_introduced = true;
        PersonRef { term: Term::iri(vocab::ERDOES_IRI), name: vocab::ERDOES_NAME.to_string(), introduce }
    }

    fn render(&mut self, data: &YearData, doc: &Doc, rng: &mut RngState) -> DocumentRecord {
        let yr = data.year;
        let mut record = DocumentRecord::new(doc.class, Term::Iri(vocab::document_iri(doc.class, yr, doc.ordinal)));
        for attr in doc.attrs.iter() {
            let value = match attr {
                Attribute::Author | Attribute::Editor | Attribute::Cite | Attribute::Crossref | Attribute::Journal => continue,
                Attribute::Title => match doc.class {
                    DocumentClass::Journal => format!("Journal {} ({yr})", doc.ordinal),
                    DocumentClass::Proceedings => format!("Conference {} ({yr})", doc.ordinal),
                    _ => {
                        let n = uniform(rng, 3, 10) as usize;
                        names::sentence(rng, n)
                    }
                },
                Attribute::Booktitle => match doc.class {
                    DocumentClass::Proceedings => format!("Conference {} ({yr})", doc.ordinal),
                    _ if doc.part_of != NONE => format!("Conference {} ({yr})", doc.part_of),
                    _ => names::sentence(rng, 3),
                },
                Attribute::Year => yr.to_string(),
                Attribute::Address => format!("{} {} Street", uniform(rng, 1, 999), names::capitalized_word(rng)),
                Attribute::Cdrom => format!("cdrom/{}/{yr}/{}.pdf", doc.class.slug(), doc.ordinal),
                Attribute::Chapter => uniform(rng, 1, 30).to_string(),
                Attribute::Ee => {
                    format!("http://www.{}.com/{}/{}/{yr}/{}", names::word(rng), names::word(rng), doc.class.slug(), doc.ordinal)
                }
                Attribute::Isbn => format!(
                    "{}-{}-{:05}-{:03}-{}",
                    uniform(rng, 0, 9),
                    uniform(rng, 0, 99),
                    uniform(rng, 0, 99_999),
                    uniform(rng, 0, 999),
                    uniform(rng, 0, 9)
                ),
                Attribute::Month | Attribute::Number => uniform(rng, 1, 12).to_string(),
                Attribute::Note => {
                    let n = uniform(rng, 2, 6) as usize;
                    names::sentence(rng, n)
                }
                Attribute::Pages => {
                    let first = uniform(rng, 1, 999);
                    format!("{first}-{}", first + uniform(rng, 1, 30))
                }
                Attribute::Publisher => format!("{} Press", names::capitalized_word(rng)),
                Attribute::School => format!("University of {}", names::capitalized_word(rng)),
                Attribute::Series => uniform(rng, 1, 100).to_string(),
                Attribute::Url => format!("http://www.{}.org/{}/{yr}/{}.html", names::word(rng), doc.class.slug(), doc.ordinal),
                Attribute::Volume => uniform(rng, 1, 60).to_string(),
            };
            record.literals.push((attr, value));
        }
        if doc.paper != NONE {
            for &a in data.authorship.authors(doc.paper as usize) {
                let p = self.person(a);
                record.authors.push(p);
            }
        }
        if doc.erdoes_author {
            let p = self.erdoes();
            record.authors.push(p);
        }
        let (start, len) = doc.editors;
        for &e in &data.editor_ids[start as usize..(start + len) as usize] {
            let p = self.person(e);
            record.editors.push(p);
        }
        if doc.erdoes_editor {
            let p = self.erdoes();
            record.editors.push(p);
        }
        if doc.part_of != NONE && doc.attrs.contains(Attribute::Crossref) {
            record.part_of = Some(Term::Iri(vocab::document_iri(DocumentClass::Proceedings, yr, doc.part_of)));
        }
        if doc.journal != NONE {
            record.journal = Some(Term::Iri(vocab::document_iri(DocumentClass::Journal, yr, doc.journal)));
        }
        if doc.attrs.contains(Attribute::Cite) {
            let (start, len) = doc.cites;
            let members = data.cite_targets[start as usize..(start + len) as usize]
                .iter()
                .map(|k| Term::Iri(vocab::document_iri(DocumentClass::ALL[k.class as usize], i32::from(k.year), k.ordinal)))
                .collect();
            record.citations = Some(CitationBag { label: format!("references_{}_{yr}_{}", doc.class.slug(), doc.ordinal), members });
        }
        if doc.has_abstract {
            let z = rng.standard_normal();
            let n = (ABSTRACT_WORDS.mu + ABSTRACT_WORDS.sigma * z).round().max(1.0) as usize;
            record.abstract_text = Some(names::sentence(rng, n));
        }
        record
    }

    /// Makes the year's publications citable and retires authors.
    fn finish_year(&mut self, data: &YearData) {
        let mut rng = RngState::substream(self.config.seed, data.year, Purpose::Retirement);
        for doc in &data.docs {
            if doc.class.is_publication() && doc.class != DocumentClass::Www {
                let key = DocKey { class: doc.class.index() as u8, year: data.year as i16, ordinal: doc.ordinal };
                self.index.insert(key, &mut rng);
            }
        }
        self.population.retire(data.distinct);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(limit: Limit, seed: u64) -> (Vec<u8>, GenerationStats) {
        let mut buf = Vec::new();
        let stats = generate(&GenerationConfig::new(limit).with_seed(seed), &mut buf).unwrap();
        (buf, stats)
    }

    #[test]
    fn plan_1950_has_two_journals() {
        let plan = plan_year(DEFAULT_SEED, 1950).unwrap();
        assert_eq!(plan.count(DocumentClass::Journal), 2);
        assert!(plan.count(DocumentClass::Proceedings) >= 2);
    }

    #[test]
    fn plan_before_onset_has_no_theses() {
        let plan = plan_year(DEFAULT_SEED, 1936).unwrap();
        assert_eq!(plan.count(DocumentClass::PhdThesis), 0);
        assert_eq!(plan.count(DocumentClass::Book), 0);
    }

    #[test]
    fn counter_matches_lines() {
        let (buf, stats) = run(Limit::Triples(5_000), 1);
        let lines = buf.iter().filter(|&&b| b == b'\n').count() as u64;
        assert_eq!(lines, stats.triples);
        assert!(stats.triples <= 5_000 && stats.triples > 4_500);
    }

    #[test]
    fn prefix_property() {
        let (small, _) = run(Limit::Triples(3_000), 9);
        let (large, _) = run(Limit::Triples(8_000), 9);
        assert!(large.starts_with(&small));
    }

    #[test]
    fn tiny_limit_is_rejected() {
        let err = generate(&GenerationConfig::new(Limit::Triples(5)), Vec::new()).unwrap_err();
        assert!(matches!(err, GenerateError::LimitTooSmall { limit: 5, .. }));
    }

    #[test]
    fn year_limit_stops_after_year() {
        let (_, stats) = run(Limit::Year(1941), DEFAULT_SEED);
        assert_eq!(stats.last_year, Some(1941));
        assert!(generate(&GenerationConfig::new(Limit::Year(1900)), Vec::new()).is_err());
    }

    #[test]
    fn every_line_parses() {
        let (buf, _) = run(Limit::Triples(4_000), 2);
        for line in String::from_utf8(buf).unwrap().lines() {
            let t = ntriples::parse_line(line).unwrap().unwrap();
            assert_eq!(ntriples::serialize(&t), line);
        }
    }
}

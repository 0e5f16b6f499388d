//! Statistical and structural properties of a generated 10^6-triple
//! document, measured from the N-Triples text alone.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::BufReader;
use std::sync::OnceLock;

use rdfbench_core::distributions::{attribute_probability, awp_exponent};
use rdfbench_core::rdfmodel::ntriples::Reader;
use rdfbench_core::rdfmodel::vocab::{self, BENCH_ABSTRACT, ERDOES_IRI, RDF_TYPE};
use rdfbench_core::rdfmodel::Term;
use rdfbench_core::worldsim::{generate_to_path, GenerationConfig, Limit, ERDOES_FIRST_YEAR, ERDOES_LAST_YEAR};
use rdfbench_core::{Attribute, DocumentClass};

#[derive(Default)]
struct Doc {
    class: Option<DocumentClass>,
    year: Option<i32>,
    predicates: HashSet<String>,
    authors: Vec<String>,
    editors: Vec<String>,
}

#[derive(Default)]
struct Summary {
    docs: HashMap<String, Doc>,
    subjects: HashSet<String>,
    /// (predicate, object IRI) pairs that must resolve to a subject.
    links: Vec<String>,
    erdoes_subjects: Vec<String>,
    abstract_words: Vec<usize>,
    predicates: HashSet<String>,
    last_year: i32,
}

fn key(t: &Term) -> String {
    match t {
        Term::Iri(i) => i.clone(),
        Term::Blank(b) => format!("_:{b}"),
        Term::Literal { lex, .. } => lex.clone(),
    }
}

fn summary() -> &'static Summary {
    static S: OnceLock<Summary> = OnceLock::new();
    S.get_or_init(|| {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("doc.nt");
        let stats = generate_to_path(&GenerationConfig::new(Limit::Triples(1_000_000)), &path).unwrap();
        let reader = Reader::new(BufReader::new(std::fs::File::open(&path).unwrap()));
        let mut s = Summary { last_year: stats.last_year.unwrap(), ..Summary::default() };
        let (creator, editor) = (vocab::property(Attribute::Author).0, vocab::property(Attribute::Editor).0);
        let issued = vocab::property(Attribute::Year).0;
        let link_props = [vocab::property(Attribute::Crossref).0, vocab::property(Attribute::Journal).0];
        for t in reader {
            let t = t.unwrap();
            let subject = key(&t.subject);
            let p = key(&t.predicate);
            s.subjects.insert(subject.clone());
            s.predicates.insert(p.clone());
            if t.object == Term::iri(ERDOES_IRI) {
                s.erdoes_subjects.push(subject.clone());
            }
            if link_props.contains(&p.as_str()) {
                s.links.push(key(&t.object));
            }
            if p == BENCH_ABSTRACT {
                s.abstract_words.push(key(&t.object).split_whitespace().count());
            }
            if !subject.starts_with(vocab::PUBLICATIONS) {
                continue;
            }
            let doc = s.docs.entry(subject).or_default();
            if p == RDF_TYPE {
                if let Term::Iri(c) = &t.object {
                    doc.class = c.strip_prefix(vocab::BENCH).and_then(DocumentClass::from_local_name);
                }
            } else if p == issued {
                doc.year = key(&t.object).parse().ok();
            } else if p == creator {
                doc.authors.push(key(&t.object));
            } else if p == editor {
                doc.editors.push(key(&t.object));
            }
            doc.predicates.insert(p);
        }
        s
    })
}

fn docs_of(class: DocumentClass) -> impl Iterator<Item = &'static Doc> {
    summary().docs.values().filter(move |d| d.class == Some(class))
}

#[test]
fn erdoes_has_twelve_incoming_edges_per_full_year() {
    let s = summary();
    let mut per_year: BTreeMap<i32, usize> = BTreeMap::new();
    for subject in &s.erdoes_subjects {
        let year = s.docs[subject].year.expect("documents carry a year");
        *per_year.entry(year).or_default() += 1;
    }
    let last_full = ERDOES_LAST_YEAR.min(s.last_year - 1);
    for yr in ERDOES_FIRST_YEAR..=last_full {
        assert_eq!(per_year.get(&yr), Some(&12), "year {yr}");
    }
    assert!(per_year.keys().all(|y| (ERDOES_FIRST_YEAR..=ERDOES_LAST_YEAR).contains(y)));
}

#[test]
fn links_resolve_within_the_document() {
    let s = summary();
    assert!(!s.links.is_empty());
    for target in &s.links {
        assert!(s.subjects.contains(target), "dangling link to {target}");
    }
    // a crossref always points at the proceedings the paper belongs to
    let with_crossref =
        docs_of(DocumentClass::Inproceedings).filter(|d| d.predicates.contains(vocab::property(Attribute::Crossref).0)).count();
    assert!(with_crossref > 0);
}

#[test]
fn attribute_frequencies_follow_the_table() {
    let publisher = vocab::property(Attribute::Publisher).0;
    let mut checked = 0;
    for class in DocumentClass::TABLE {
        let docs: Vec<&Doc> = docs_of(class).collect();
        let n = docs.len() as f64;
        for attr in Attribute::ALL {
            let (prop, _) = vocab::property(attr);
            let mut p = attribute_probability(class, attr).unwrap();
            if prop == publisher {
                // school and publisher share one property
                let other = if attr == Attribute::School { Attribute::Publisher } else { Attribute::School };
                p = 1.0 - (1.0 - p) * (1.0 - attribute_probability(class, other).unwrap());
            }
            if n * p < 1000.0 {
                continue;
            }
            let observed = docs.iter().filter(|d| d.predicates.contains(prop)).count() as f64 / n;
            assert!((observed - p).abs() <= 0.01, "{class} {attr}: observed {observed:.4}, table {p:.4}");
            checked += 1;
        }
    }
    assert!(checked >= 15, "only {checked} cells had enough support");
}

#[test]
fn article_pages_month_isbn() {
    let docs: Vec<&Doc> = docs_of(DocumentClass::Article).collect();
    let n = docs.len() as f64;
    let share = |a: Attribute| docs.iter().filter(|d| d.predicates.contains(vocab::property(a).0)).count() as f64 / n;
    assert!((share(Attribute::Pages) - 0.9261).abs() <= 0.01);
    assert!((share(Attribute::Month) - 0.0065).abs() <= 0.003);
    assert_eq!(share(Attribute::Isbn), 0.0);
}

#[test]
fn abstracts_are_rare_and_about_150_words() {
    let s = summary();
    let eligible = docs_of(DocumentClass::Article).count() + docs_of(DocumentClass::Inproceedings).count();
    let share = s.abstract_words.len() as f64 / eligible as f64;
    assert!((0.007..=0.013).contains(&share), "abstract share {share}");
    let mean = s.abstract_words.iter().sum::<usize>() as f64 / s.abstract_words.len() as f64;
    assert!((mean - 150.0).abs() < 10.0, "mean words {mean}");
}

#[test]
fn every_likely_property_is_used() {
    let s = summary();
    for attr in Attribute::ALL {
        let expected: f64 = DocumentClass::TABLE.iter().map(|&c| docs_of(c).count() as f64 * attribute_probability(c, attr).unwrap()).sum();
        let (prop, _) = vocab::property(attr);
        if expected >= 20.0 {
            assert!(s.predicates.contains(prop), "{attr} ({prop}) never emitted, expected {expected:.0}");
        }
    }
    assert!(s.predicates.contains(BENCH_ABSTRACT));
}

/// Publications per (author, year).
fn yearly_counts(yr: i32) -> HashMap<&'static str, u64> {
    let mut counts = HashMap::new();
    for d in summary().docs.values().filter(|d| d.year == Some(yr)) {
        for a in &d.authors {
            *counts.entry(a.as_str()).or_default() += 1;
        }
    }
    counts
}

#[test]
fn publications_per_author_follow_the_power_law() {
    let yr = summary().last_year - 1;
    let mut hist: BTreeMap<u64, f64> = BTreeMap::new();
    for (_, c) in yearly_counts(yr) {
        *hist.entry(c).or_default() += 1.0;
    }
    // least squares on log-log points with enough support
    let pts: Vec<(f64, f64)> = hist.iter().filter(|(_, &n)| n >= 20.0).map(|(&x, &n)| ((x as f64).ln(), n.ln())).collect();
    assert!(pts.len() >= 3, "{hist:?}");
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let slope = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum::<f64>() / pts.iter().map(|(x, _)| (x - mx).powi(2)).sum::<f64>();
    let expected = -awp_exponent(yr);
    assert!((slope - expected).abs() <= 0.3, "slope {slope:.3}, expected {expected:.3} in {yr}");
}

#[test]
fn leading_author_output_grows() {
    let s = summary();
    let max_in = |yr| yearly_counts(yr).into_values().filter(|_| true).max().unwrap_or(0);
    // exclude the fixed person, whose output is pinned
    let max_excluding_fixed = |yr: i32| yearly_counts(yr).into_iter().filter(|(a, _)| *a != ERDOES_IRI).map(|(_, c)| c).max().unwrap_or(0);
    assert!(max_in(s.last_year - 1) >= max_in(1960));
    assert!(max_excluding_fixed(s.last_year - 1) > max_excluding_fixed(1960));
}

#[test]
fn authors_per_paper_increase_over_time() {
    let s = summary();
    let mean = |yr: i32| {
        let papers: Vec<&Doc> = s.docs.values().filter(|d| d.year == Some(yr) && !d.authors.is_empty()).collect();
        papers.iter().map(|d| d.authors.len()).sum::<usize>() as f64 / papers.len() as f64
    };
    assert!(mean(s.last_year - 1) > mean(1975));
}

#[test]
fn distinct_coauthors_grow_sublinearly() {
    let mut pubs: HashMap<&str, u64> = HashMap::new();
    let mut partners: HashMap<&str, HashSet<&str>> = HashMap::new();
    for d in summary().docs.values() {
        for a in &d.authors {
            *pubs.entry(a).or_default() += 1;
            let set = partners.entry(a).or_default();
            set.extend(d.authors.iter().filter(|b| *b != a).map(String::as_str));
        }
    }
    let mut by_x: BTreeMap<u64, (f64, f64)> = BTreeMap::new();
    for (a, x) in &pubs {
        if *a == ERDOES_IRI {
            continue;
        }
        let e = by_x.entry(*x).or_default();
        e.0 += partners[a].len() as f64;
        e.1 += 1.0;
    }
    let mut checked = 0;
    for (x, (sum, n)) in by_x.range(2..=20) {
        if *n < 50.0 {
            continue;
        }
        let mean = sum / n;
        let target = (*x as f64).powf(0.81);
        assert!((mean / target - 1.0).abs() <= 0.3, "x={x}: mean distinct coauthors {mean:.2}, target {target:.2}");
        checked += 1;
    }
    assert!(checked >= 3);
}

#[test]
fn editors_have_published_more_than_average() {
    let mut pubs: HashMap<&str, u64> = HashMap::new();
    for d in summary().docs.values() {
        for a in &d.authors {
            *pubs.entry(a).or_default() += 1;
        }
    }
    let population = pubs.values().sum::<u64>() as f64 / pubs.len() as f64;
    let editors: Vec<f64> = summary()
        .docs
        .values()
        .flat_map(|d| d.editors.iter())
        .filter(|e| *e != ERDOES_IRI)
        .map(|e| pubs.get(e.as_str()).copied().unwrap_or(0) as f64)
        .collect();
    let editor_mean = editors.iter().sum::<f64>() / editors.len() as f64;
    assert!(editor_mean > population, "editors {editor_mean:.2} vs population {population:.2}");
}

#[test]
fn class_mix_matches_the_bibliography() {
    let count = |c| docs_of(c).count() as f64;
    let publications: f64 = DocumentClass::ALL.iter().filter(|c| c.is_publication()).map(|&c| count(c)).sum();
    let share = (count(DocumentClass::Article) + count(DocumentClass::Inproceedings)) / publications;
    assert!(share > 0.7, "articles and inproceedings {share:.3}");

    let s = summary();
    let late: Vec<i32> = (s.last_year - 5..s.last_year).collect();
    let in_years = |c: DocumentClass| docs_of(c).filter(|d| d.year.is_some_and(|y| late.contains(&y))).count() as f64;
    let ratio = in_years(DocumentClass::Inproceedings) / in_years(DocumentClass::Proceedings);
    assert!((40.0..=80.0).contains(&ratio), "inproceedings per proceedings {ratio:.1}");
}

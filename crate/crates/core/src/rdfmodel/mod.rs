//! RDF rendering of generated documents: terms, the vocabulary mapping, the
//! schema layer and N-Triples I/O.

pub mod ntriples;
pub mod term;
pub mod vocab;

pub use term::{Term, Triple};

use crate::classes::{Attribute, DocumentClass};
use vocab::Range;

/// Person referenced by a document. `introduce` emits the type and name
/// triples alongside the reference.
#[derive(Debug, Clone, PartialEq)]
pub struct PersonRef {
    pub term: Term,
    pub name: String,
    pub introduce: bool,
}

/// Outgoing citations as an `rdf:Bag`; members are numbered `rdf:_1..`.
#[derive(Debug, Clone, PartialEq)]
pub struct CitationBag {
    pub label: String,
    pub members: Vec<Term>,
}

/// Everything needed to render one document.
#[derive(Debug, Clone, PartialEq)]
pub struct DocumentRecord {
    pub class: DocumentClass,
    pub subject: Term,
    /// Literal-valued attributes, typed by the vocabulary range.
    pub literals: Vec<(Attribute, String)>,
    pub authors: Vec<PersonRef>,
    pub editors: Vec<PersonRef>,
    pub part_of: Option<Term>,
    pub journal: Option<Term>,
    pub citations: Option<CitationBag>,
    pub abstract_text: Option<String>,
}

impl DocumentRecord {
    pub fn new(class: DocumentClass, subject: Term) -> Self {
        Self {
            class,
            subject,
            literals: Vec::new(),
            authors: Vec::new(),
            editors: Vec::new(),
            part_of: None,
            journal: None,
            citations: None,
            abstract_text: None,
        }
    }
}

fn iri(s: &str) -> Term {
    Term::Iri(s.to_string())
}

/// One `rdfs:subClassOf foaf:Document` triple per document class.
pub fn schema_triples() -> Vec<Triple> {
    let order = [
        DocumentClass::Journal,
        DocumentClass::Article,
        DocumentClass::Inproceedings,
        DocumentClass::Proceedings,
        DocumentClass::Book,
        DocumentClass::Incollection,
        DocumentClass::PhdThesis,
        DocumentClass::MastersThesis,
        DocumentClass::Www,
    ];
    order
        .into_iter()
        .map(|c| Triple::new(Term::Iri(vocab::class_iri(c)), iri(vocab::RDFS_SUBCLASS_OF), iri(vocab::FOAF_DOCUMENT)))
        .collect()
}

/// Type and name triples of a person.
pub fn person_triples(person: &Term, name: &str) -> [Triple; 2] {
    [
        Triple::new(person.clone(), iri(vocab::RDF_TYPE), iri(vocab::FOAF_PERSON)),
        Triple::new(person.clone(), iri(vocab::FOAF_NAME), Term::string(name)),
    ]
}

fn literal_term(attr: Attribute, value: &str) -> Term {
    match vocab::property(attr).1 {
        Range::Integer => Term::typed(value, vocab::XSD_INTEGER),
        _ => Term::string(value),
    }
}

/// Triples describing `doc`, in a fixed order.
pub fn document_triples(doc: &DocumentRecord) -> Vec<Triple> {
    let mut out = Vec::with_capacity(8 + doc.literals.len() + 3 * doc.authors.len());
    let s = &doc.subject;
    out.push(Triple::new(s.clone(), iri(vocab::RDF_TYPE), Term::Iri(vocab::class_iri(doc.class))));
    for (attr, value) in &doc.literals {
        out.push(Triple::new(s.clone(), iri(vocab::property(*attr).0), literal_term(*attr, value)));
    }
    for (attr, people) in [(Attribute::Author, &doc.authors), (Attribute::Editor, &doc.editors)] {
        let p = vocab::property(attr).0;
        for person in people {
            out.push(Triple::new(s.clone(), iri(p), person.term.clone()));
            if person.introduce {
                out.extend(person_triples(&person.term, &person.name));
            }
        }
    }
    if let Some(target) = &doc.part_of {
        out.push(Triple::new(s.clone(), iri(vocab::property(Attribute::Crossref).0), target.clone()));
    }
    if let Some(journal) = &doc.journal {
        out.push(Triple::new(s.clone(), iri(vocab::property(Attribute::Journal).0), journal.clone()));
    }
    if let Some(bag) = &doc.citations {
        let node = Term::Blank(bag.label.clone());
        out.push(Triple::new(s.clone(), iri(vocab::property(Attribute::Cite).0), node.clone()));
        out.push(Triple::new(node.clone(), iri(vocab::RDF_TYPE), iri(vocab::RDF_BAG)));
        for (i, member) in bag.members.iter().enumerate() {
            out.push(Triple::new(node.clone(), Term::Iri(vocab::member_iri(i + 1)), member.clone()));
        }
    }
    if let Some(text) = &doc.abstract_text {
        out.push(Triple::new(s.clone(), iri(vocab::BENCH_ABSTRACT), Term::string(text.as_str())));
    }
    out
}

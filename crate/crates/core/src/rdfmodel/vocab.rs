//! Namespaces, class IRIs and the attribute-to-property mapping.

use crate::classes::{Attribute, DocumentClass};

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const DC: &str = "http://purl.org/dc/elements/1.1/";
pub const DCTERMS: &str = "http://purl.org/dc/terms/";
pub const FOAF: &str = "http://xmlns.com/foaf/0.1/";
pub const SWRC: &str = "http://swrc.ontoware.org/ontology#";
pub const BENCH: &str = "http://localhost/vocabulary/bench/";
pub const PERSON: &str = "http://localhost/persons/";
pub const PUBLICATIONS: &str = "http://localhost/publications/";

pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDF_BAG: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#Bag";
pub const RDFS_SUBCLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
pub const FOAF_DOCUMENT: &str = "http://xmlns.com/foaf/0.1/Document";
pub const FOAF_PERSON: &str = "http://xmlns.com/foaf/0.1/Person";
pub const FOAF_NAME: &str = "http://xmlns.com/foaf/0.1/name";
pub const BENCH_ABSTRACT: &str = "http://localhost/vocabulary/bench/abstract";

pub const ERDOES_IRI: &str = "http://localhost/persons/Paul_Erdoes";
pub const ERDOES_NAME: &str = "Paul Erdoes";

/// Prefix table used by queries and the manifest.
pub const PREFIXES: [(&str, &str); 10] = [
    ("rdf", RDF),
    ("rdfs", RDFS),
    ("xsd", XSD),
    ("dc", DC),
    ("dcterms", DCTERMS),
    ("foaf", FOAF),
    ("swrc", SWRC),
    ("bench", BENCH),
    ("person", PERSON),
    ("pub", PUBLICATIONS),
];

/// Kind of object an attribute maps to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Range {
    String,
    Integer,
    Person,
    Bag,
    Document,
    Journal,
}

/// Property IRI and range for every attribute.
pub fn property(attr: Attribute) -> (&'static str, Range) {
    use Attribute::*;
    match attr {
        Address => ("http://swrc.ontoware.org/ontology#address", Range::String),
        Author => ("http://purl.org/dc/elements/1.1/creator", Range::Person),
        Booktitle => ("http://localhost/vocabulary/bench/booktitle", Range::String),
        Cdrom => ("http://localhost/vocabulary/bench/cdrom", Range::String),
        Chapter => ("http://swrc.ontoware.org/ontology#chapter", Range::Integer),
        Cite => ("http://purl.org/dc/terms/references", Range::Bag),
        Crossref => ("http://purl.org/dc/terms/partOf", Range::Document),
        Editor => ("http://swrc.ontoware.org/ontology#editor", Range::Person),
        Ee => ("http://www.w3.org/2000/01/rdf-schema#seeAlso", Range::String),
        Isbn => ("http://swrc.ontoware.org/ontology#isbn", Range::String),
        Journal => ("http://swrc.ontoware.org/ontology#journal", Range::Journal),
        Month => ("http://swrc.ontoware.org/ontology#month", Range::Integer),
        Note => ("http://localhost/vocabulary/bench/note", Range::String),
        Number => ("http://swrc.ontoware.org/ontology#number", Range::Integer),
        Pages => ("http://swrc.ontoware.org/ontology#pages", Range::String),
        Publisher => ("http://purl.org/dc/elements/1.1/publisher", Range::String),
        // shares dc:publisher with the publisher attribute
        School => ("http://purl.org/dc/elements/1.1/publisher", Range::String),
        Series => ("http://swrc.ontoware.org/ontology#series", Range::Integer),
        Title => ("http://purl.org/dc/elements/1.1/title", Range::String),
        Url => ("http://xmlns.com/foaf/0.1/homepage", Range::String),
        Volume => ("http://swrc.ontoware.org/ontology#volume", Range::Integer),
        Year => ("http://purl.org/dc/terms/issued", Range::Integer),
    }
}

pub fn class_iri(class: DocumentClass) -> String {
    format!("{BENCH}{}", class.local_name())
}

/// `http://localhost/publications/<class>/<year>/<ordinal>`
pub fn document_iri(class: DocumentClass, year: i32, ordinal: u32) -> String {
    format!("{PUBLICATIONS}{}/{year}/{ordinal}", class.slug())
}

/// `rdf:_n` container membership property.
pub fn member_iri(n: usize) -> String {
    format!("{RDF}_{n}")
}

/// Expands `prefix:local` using [`PREFIXES`].
pub fn expand(curie: &str) -> Option<String> {
    let (prefix, local) = curie.split_once(':')?;
    PREFIXES.iter().find(|(p, _)| *p == prefix).map(|(_, ns)| format!("{ns}{local}"))
}

/// Text dump of the attribute mapping.
pub fn manifest() -> String {
    let mut out = String::from("[vocabulary]\n");
    for attr in Attribute::ALL {
        let (p, r) = property(attr);
        out.push_str(&format!("{:<10} {} {:?}\n", attr.name(), p, r));
    }
    for (prefix, ns) in PREFIXES {
        out.push_str(&format!("prefix {prefix}: <{ns}>\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mapping_matches_named_properties() {
        assert_eq!(property(Attribute::Author).0, format!("{DC}creator"));
        assert_eq!(property(Attribute::Cite).0, format!("{DCTERMS}references"));
        assert_eq!(property(Attribute::Crossref).0, format!("{DCTERMS}partOf"));
        assert_eq!(property(Attribute::Url).0, format!("{FOAF}homepage"));
        assert_eq!(property(Attribute::Year).0, format!("{DCTERMS}issued"));
        assert_eq!(property(Attribute::School).0, property(Attribute::Publisher).0);
    }

    #[test]
    fn iris() {
        assert_eq!(class_iri(DocumentClass::PhdThesis), "http://localhost/vocabulary/bench/PhDThesis");
        assert_eq!(document_iri(DocumentClass::Article, 1950, 3), "http://localhost/publications/article/1950/3");
        assert_eq!(expand("person:Paul_Erdoes").as_deref(), Some(ERDOES_IRI));
        assert_eq!(expand("rdf:type").as_deref(), Some(RDF_TYPE));
        assert_eq!(expand("nope:x"), None);
    }
}

use std::fmt;

use super::vocab::{XSD_INTEGER, XSD_STRING};

/// An RDF node: IRI, blank node, or literal with an optional datatype IRI.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(String),
    Blank(String),
    Literal { lex: String, datatype: Option<String> },
}

impl Term {
    pub fn iri(s: impl Into<String>) -> Self {
        Term::Iri(s.into())
    }

    pub fn blank(label: impl Into<String>) -> Self {
        Term::Blank(label.into())
    }

    pub fn string(lex: impl Into<String>) -> Self {
        Term::Literal { lex: lex.into(), datatype: Some(XSD_STRING.to_string()) }
    }

    pub fn integer(v: i64) -> Self {
        Term::Literal { lex: v.to_string(), datatype: Some(XSD_INTEGER.to_string()) }
    }

    pub fn typed(lex: impl Into<String>, datatype: impl Into<String>) -> Self {
        Term::Literal { lex: lex.into(), datatype: Some(datatype.into()) }
    }

    pub fn plain(lex: impl Into<String>) -> Self {
        Term::Literal { lex: lex.into(), datatype: None }
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal { .. })
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(s) => Some(s),
            _ => None,
        }
    }

    /// Lexical form of a literal, IRI text, or blank label.
    pub fn value(&self) -> &str {
        match self {
            Term::Iri(s) | Term::Blank(s) => s,
            Term::Literal { lex, .. } => lex,
        }
    }

    pub fn datatype(&self) -> Option<&str> {
        match self {
            Term::Literal { datatype, .. } => datatype.as_deref(),
            _ => None,
        }
    }
}

/// Appends the N-Triples form of `t` to `out`.
pub fn write_term(out: &mut String, t: &Term) {
    match t {
        Term::Iri(s) => {
            out.push('<');
            escape_iri(out, s);
            out.push('>');
        }
        Term::Blank(label) => {
            out.push_str("_:");
            out.push_str(label);
        }
        Term::Literal { lex, datatype } => {
            out.push('"');
            escape_literal(out, lex);
            out.push('"');
            if let Some(dt) = datatype {
                out.push_str("^^<");
                escape_iri(out, dt);
                out.push('>');
            }
        }
    }
}

fn escape_literal(out: &mut String, s: &str) {
    for ch in s.chars() {
        match ch {
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 || c == '\u{7f}' => {
                out.push_str(&format!("\\u{:04X}", c as u32));
            }
            c => out.push(c),
        }
    }
}

fn escape_iri(out: &mut String, s: &str) {
    for ch in s.chars() {
        match ch {
            '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\' => {
                out.push_str(&format!("\\u{:04X}", ch as u32));
            }
            c if (c as u32) <= 0x20 => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_term(&mut s, self);
        f.write_str(&s)
    }
}

/// Subject, predicate, object. The predicate is always an IRI and the subject
/// never a literal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Self {
        debug_assert!(!subject.is_literal());
        debug_assert!(predicate.is_iri());
        Self { subject, predicate, object }
    }
}

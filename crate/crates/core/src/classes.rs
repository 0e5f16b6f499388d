//! Document classes and attributes of the bibliography model.

use std::fmt;
use std::str::FromStr;

use crate::error::ParamError;

/// The eight bibliography entry types plus the implicit `Journal` class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DocumentClass {
    Article,
    Inproceedings,
    Proceedings,
    Book,
    Incollection,
    PhdThesis,
    MastersThesis,
    Www,
    Journal,
}

impl DocumentClass {
    pub const ALL: [DocumentClass; 9] = [
        DocumentClass::Article,
        DocumentClass::Inproceedings,
        DocumentClass::Proceedings,
        DocumentClass::Book,
        DocumentClass::Incollection,
        DocumentClass::PhdThesis,
        DocumentClass::MastersThesis,
        DocumentClass::Www,
        DocumentClass::Journal,
    ];

    /// Classes that carry attributes in the probability table.
    pub const TABLE: [DocumentClass; 8] = [
        DocumentClass::Article,
        DocumentClass::Inproceedings,
        DocumentClass::Proceedings,
        DocumentClass::Book,
        DocumentClass::Incollection,
        DocumentClass::PhdThesis,
        DocumentClass::MastersThesis,
        DocumentClass::Www,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Lower-case path segment used in document URIs.
    pub fn slug(self) -> &'static str {
        match self {
            DocumentClass::Article => "article",
            DocumentClass::Inproceedings => "inproceedings",
            DocumentClass::Proceedings => "proceedings",
            DocumentClass::Book => "book",
            DocumentClass::Incollection => "incollection",
            DocumentClass::PhdThesis => "phdthesis",
            DocumentClass::MastersThesis => "mastersthesis",
            DocumentClass::Www => "www",
            DocumentClass::Journal => "journal",
        }
    }

    /// Local name of the class in the `bench` vocabulary.
    pub fn local_name(self) -> &'static str {
        match self {
            DocumentClass::Article => "Article",
            DocumentClass::Inproceedings => "Inproceedings",
            DocumentClass::Proceedings => "Proceedings",
            DocumentClass::Book => "Book",
            DocumentClass::Incollection => "Incollection",
            DocumentClass::PhdThesis => "PhDThesis",
            DocumentClass::MastersThesis => "MastersThesis",
            DocumentClass::Www => "Www",
            DocumentClass::Journal => "Journal",
        }
    }

    pub fn from_local_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.local_name() == name)
    }

    /// Everything except conferences and journals counts as a publication.
    pub fn is_publication(self) -> bool {
        !matches!(self, DocumentClass::Proceedings | DocumentClass::Journal)
    }
}

impl fmt::Display for DocumentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.local_name())
    }
}

impl FromStr for DocumentClass {
    type Err = ParamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        Self::ALL.into_iter().find(|c| c.slug() == lower).ok_or_else(|| ParamError::new(format!("unknown document class {s:?}")))
    }
}

/// The 22 child tags of a bibliography entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Attribute {
    Address,
    Author,
    Booktitle,
    Cdrom,
    Chapter,
    Cite,
    Crossref,
    Editor,
    Ee,
    Isbn,
    Journal,
    Month,
    Note,
    Number,
    Pages,
    Publisher,
    School,
    Series,
    Title,
    Url,
    Volume,
    Year,
}

impl Attribute {
    pub const ALL: [Attribute; 22] = [
        Attribute::Address,
        Attribute::Author,
        Attribute::Booktitle,
        Attribute::Cdrom,
        Attribute::Chapter,
        Attribute::Cite,
        Attribute::Crossref,
        Attribute::Editor,
        Attribute::Ee,
        Attribute::Isbn,
        Attribute::Journal,
        Attribute::Month,
        Attribute::Note,
        Attribute::Number,
        Attribute::Pages,
        Attribute::Publisher,
        Attribute::School,
        Attribute::Series,
        Attribute::Title,
        Attribute::Url,
        Attribute::Volume,
        Attribute::Year,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Attribute::Address => "address",
            Attribute::Author => "author",
            Attribute::Booktitle => "booktitle",
            Attribute::Cdrom => "cdrom",
            Attribute::Chapter => "chapter",
            Attribute::Cite => "cite",
            Attribute::Crossref => "crossref",
            Attribute::Editor => "editor",
            Attribute::Ee => "ee",
            Attribute::Isbn => "isbn",
            Attribute::Journal => "journal",
            Attribute::Month => "month",
            Attribute::Note => "note",
            Attribute::Number => "number",
            Attribute::Pages => "pages",
            Attribute::Publisher => "publisher",
            Attribute::School => "school",
            Attribute::Series => "series",
            Attribute::Title => "title",
            Attribute::Url => "url",
            Attribute::Volume => "volume",
            Attribute::Year => "year",
        }
    }

    /// Whether a document may carry several occurrences.
    pub fn is_repeated(self) -> bool {
        matches!(self, Attribute::Author | Attribute::Editor | Attribute::Cite)
    }
}

impl fmt::Display for Attribute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Attribute {
    type Err = ParamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        let lower = if lower == "page" { "pages".to_string() } else { lower };
        Self::ALL.into_iter().find(|a| a.name() == lower).ok_or_else(|| ParamError::new(format!("unknown attribute {s:?}")))
    }
}

/// Set of attributes present on one document.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct AttributeSet(u32);

impl AttributeSet {
    pub fn empty() -> Self {
        Self(0)
    }

    pub fn insert(&mut self, attr: Attribute) {
        self.0 |= 1 << attr.index();
    }

    pub fn remove(&mut self, attr: Attribute) {
        self.0 &= !(1 << attr.index());
    }

    pub fn contains(self, attr: Attribute) -> bool {
        self.0 & (1 << attr.index()) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Attribute> {
        Attribute::ALL.into_iter().filter(move |a| self.contains(*a))
    }
}

impl FromIterator<Attribute> for AttributeSet {
    fn from_iter<I: IntoIterator<Item = Attribute>>(iter: I) -> Self {
        let mut set = Self::empty();
        for a in iter {
            set.insert(a);
        }
        set
    }
}

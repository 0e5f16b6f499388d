//! Dictionary-encoded triple store with SPO, POS and OSP permutation indices.
//!
//! Every index is a sorted, duplicate-free array of id triples laid out in its
//! own component order, so any combination of bound positions is answered by
//! one contiguous range of exactly one index.

use std::io::BufRead;
use std::path::Path;
use std::time::Instant;

use indexmap::IndexSet;
use rdfbench_core::rdfmodel::ntriples::Reader;
use rdfbench_core::rdfmodel::{Term, Triple};
use rdfbench_core::NTriplesError;

/// Dense identifier of a dictionary term.
pub type TermId = u32;

/// Component order of an index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexKind {
    Spo,
    Pos,
    Osp,
}

impl IndexKind {
    fn to_spo(self, k: [TermId; 3]) -> [TermId; 3] {
        match self {
            IndexKind::Spo => k,
            IndexKind::Pos => [k[2], k[0], k[1]],
            IndexKind::Osp => [k[1], k[2], k[0]],
        }
    }
}

#[derive(Debug, Default)]
pub struct TripleStore {
    dict: IndexSet<Term>,
    spo: Vec<[TermId; 3]>,
    pos: Vec<[TermId; 3]>,
    osp: Vec<[TermId; 3]>,
    load_secs: f64,
}

impl TripleStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a store from triples; duplicates collapse.
    pub fn from_triples<I: IntoIterator<Item = Triple>>(triples: I) -> Self {
        let start = Instant::now();
        let mut b = Builder::default();
        for t in triples {
            b.push(t);
        }
        b.finish(start)
    }

    /// Loads an N-Triples stream.
    pub fn load<R: BufRead>(input: R) -> Result<Self, NTriplesError> {
        let start = Instant::now();
        let mut b = Builder::default();
        for t in Reader::new(input) {
            b.push(t?);
        }
        Ok(b.finish(start))
    }

    pub fn load_path(path: &Path) -> Result<Self, NTriplesError> {
        let f = std::fs::File::open(path)?;
        Self::load(std::io::BufReader::with_capacity(1 << 20, f))
    }

    /// Wall-clock seconds spent building the store.
    pub fn load_secs(&self) -> f64 {
        self.load_secs
    }

    pub fn len(&self) -> usize {
        self.spo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spo.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.dict.len()
    }

    /// Panics on an id that was not issued by this store.
    pub fn term(&self, id: TermId) -> &Term {
        self.dict.get_index(id as usize).expect("term id issued by this store")
    }

    pub fn id(&self, term: &Term) -> Option<TermId> {
        self.dict.get_index_of(term).map(|i| i as TermId)
    }

    fn range(&self, s: Option<TermId>, p: Option<TermId>, o: Option<TermId>) -> (IndexKind, &[[TermId; 3]]) {
        let (kind, index, prefix, n) = match (s, p, o) {
            (Some(s), Some(p), Some(o)) => (IndexKind::Spo, &self.spo, [s, p, o], 3),
            (Some(s), Some(p), None) => (IndexKind::Spo, &self.spo, [s, p, 0], 2),
            (Some(s), None, Some(o)) => (IndexKind::Osp, &self.osp, [o, s, 0], 2),
            (Some(s), None, None) => (IndexKind::Spo, &self.spo, [s, 0, 0], 1),
            (None, Some(p), Some(o)) => (IndexKind::Pos, &self.pos, [p, o, 0], 2),
            (None, Some(p), None) => (IndexKind::Pos, &self.pos, [p, 0, 0], 1),
            (None, None, Some(o)) => (IndexKind::Osp, &self.osp, [o, 0, 0], 1),
            (None, None, None) => (IndexKind::Spo, &self.spo, [0, 0, 0], 0),
        };
        let lo = index.partition_point(|k| k[..n] < prefix[..n]);
        let hi = lo + index[lo..].partition_point(|k| k[..n] == prefix[..n]);
        (kind, &index[lo..hi])
    }

    /// Id triples (in s, p, o order) matching the bound positions.
    pub fn match_ids(&self, s: Option<TermId>, p: Option<TermId>, o: Option<TermId>) -> IdMatches<'_> {
        let (kind, slice) = self.range(s, p, o);
        IdMatches { kind, iter: slice.iter() }
    }

    /// Number of triples matching the bound positions, without enumerating them.
    pub fn count_ids(&self, s: Option<TermId>, p: Option<TermId>, o: Option<TermId>) -> usize {
        self.range(s, p, o).1.len()
    }

    /// Index that answers the given bound positions.
    pub fn index_for(s: bool, p: bool, o: bool) -> IndexKind {
        match (s, p, o) {
            (true, false, true) | (false, false, true) => IndexKind::Osp,
            (false, true, _) => IndexKind::Pos,
            _ => IndexKind::Spo,
        }
    }

    /// Triples matching a pattern of fixed terms and wildcards.
    pub fn match_pattern<'a>(&'a self, s: Option<&Term>, p: Option<&Term>, o: Option<&Term>) -> Box<dyn Iterator<Item = Triple> + 'a> {
        let lookup = |t: Option<&Term>| match t {
            None => Some(None),
            Some(t) => self.id(t).map(Some),
        };
        match (lookup(s), lookup(p), lookup(o)) {
            (Some(s), Some(p), Some(o)) => Box::new(self.match_ids(s, p, o).map(|k| self.decode(k))),
            _ => Box::new(std::iter::empty()),
        }
    }

    pub fn decode(&self, k: [TermId; 3]) -> Triple {
        Triple::new(self.term(k[0]).clone(), self.term(k[1]).clone(), self.term(k[2]).clone())
    }

    /// All triples in SPO order.
    pub fn triples(&self) -> impl Iterator<Item = Triple> + '_ {
        self.spo.iter().map(|&k| self.decode(k))
    }
}

pub struct IdMatches<'a> {
    kind: IndexKind,
    iter: std::slice::Iter<'a, [TermId; 3]>,
}

impl IdMatches<'_> {
    pub fn kind(&self) -> IndexKind {
        self.kind
    }
}

impl Iterator for IdMatches<'_> {
    type Item = [TermId; 3];

    fn next(&mut self) -> Option<Self::Item> {
        self.iter.next().map(|&k| self.kind.to_spo(k))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.iter.size_hint()
    }
}

impl ExactSizeIterator for IdMatches<'_> {}

#[derive(Default)]
struct Builder {
    dict: IndexSet<Term>,
    spo: Vec<[TermId; 3]>,
}

impl Builder {
    fn intern(&mut self, t: Term) -> TermId {
        let id = self.dict.insert_full(t).0;
        TermId::try_from(id).expect("fewer than 2^32 distinct terms")
    }

    fn push(&mut self, t: Triple) {
        let s = self.intern(t.subject);
        let p = self.intern(t.predicate);
        let o = self.intern(t.object);
        self.spo.push([s, p, o]);
    }

    fn finish(self, start: Instant) -> TripleStore {
        let Builder { mut dict, mut spo } = self;
        dict.shrink_to_fit();
        spo.sort_unstable();
        spo.dedup();
        spo.shrink_to_fit();
        let mut pos: Vec<_> = spo.iter().map(|k| [k[1], k[2], k[0]]).collect();
        pos.sort_unstable();
        let mut osp: Vec<_> = spo.iter().map(|k| [k[2], k[0], k[1]]).collect();
        osp.sort_unstable();
        TripleStore { dict, spo, pos, osp, load_secs: start.elapsed().as_secs_f64() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str, p: &str, o: &str) -> Triple {
        Triple::new(Term::iri(s), Term::iri(p), Term::iri(o))
    }

    fn sample() -> TripleStore {
        TripleStore::from_triples(vec![t("a", "p", "b"), t("a", "p", "c"), t("b", "q", "c"), t("c", "p", "a"), t("a", "p", "b")])
    }

    #[test]
    fn empty_stream() {
        let s = TripleStore::load("".as_bytes()).unwrap();
        assert_eq!(s.len(), 0);
        assert!(s.is_empty());
    }

    #[test]
    fn duplicates_collapse() {
        let line = "<http://a> <http://p> \"x\" .\n";
        let s = TripleStore::load(format!("{line}{line}").as_bytes()).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn parse_error_carries_line() {
        let err = TripleStore::load("<http://a> <http://p> <http://o> .\nbogus\n".as_bytes()).unwrap_err();
        assert!(matches!(err, NTriplesError::Syntax { line: 2, .. }), "{err}");
    }

    #[test]
    fn every_binding_combination_matches_scan() {
        let s = sample();
        assert_eq!(s.len(), 4);
        let all: Vec<Triple> = s.triples().collect();
        let terms: Vec<Option<Term>> =
            vec![None, Some(Term::iri("a")), Some(Term::iri("b")), Some(Term::iri("c")), Some(Term::iri("p")), Some(Term::iri("zz"))];
        for ps in &terms {
            for pp in &terms {
                for po in &terms {
                    let mut got: Vec<Triple> = s.match_pattern(ps.as_ref(), pp.as_ref(), po.as_ref()).collect();
                    let mut want: Vec<Triple> = all
                        .iter()
                        .filter(|t| {
                            ps.as_ref().is_none_or(|x| *x == t.subject)
                                && pp.as_ref().is_none_or(|x| *x == t.predicate)
                                && po.as_ref().is_none_or(|x| *x == t.object)
                        })
                        .cloned()
                        .collect();
                    got.sort();
                    want.sort();
                    assert_eq!(got, want, "{ps:?} {pp:?} {po:?}");
                }
            }
        }
    }

    #[test]
    fn index_selection() {
        let s = sample();
        let a = s.id(&Term::iri("a"));
        let p = s.id(&Term::iri("p"));
        assert_eq!(s.match_ids(a, None, None).kind(), IndexKind::Spo);
        assert_eq!(s.match_ids(None, p, None).kind(), IndexKind::Pos);
        assert_eq!(s.match_ids(None, None, a).kind(), IndexKind::Osp);
        assert_eq!(s.match_ids(a, None, a).kind(), IndexKind::Osp);
        assert_eq!(s.count_ids(a, p, None), 2);
        assert_eq!(TripleStore::index_for(true, false, true), IndexKind::Osp);
    }
}

//! Recursive-descent parser for the supported query subset.
//!
//! Group patterns are translated to algebra while parsing: triples blocks form
//! BGPs, `OPTIONAL { P FILTER F }` becomes `LeftJoin(G, P, F)`, and the filters
//! of a group wrap the whole group.

use std::collections::HashMap;

use rdfbench_core::rdfmodel::vocab;
use rdfbench_core::rdfmodel::Term;
use thiserror::Error;

use super::ast::{CmpOp, Expr, GraphPattern, OrderKey, Query, QueryForm, TriplePattern, VarOrTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unsupported construct at byte {position}: {construct} is outside the supported subset")]
    Unsupported { position: usize, construct: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Iri(String),
    PName(String, String),
    Var(String),
    Str(String),
    Number(String, &'static str),
    Word(String),
    Punct(&'static str),
    DataTypeMark,
    LangTag(String),
    Eof,
}

const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
const XSD_DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";

fn syntax(position: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { position, message: message.into() }
}

fn is_pn_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-' || c == '.'
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'#' {
            while i < b.len() && b[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let rest = &text[i..];
        let tok = match c {
            b'<' => {
                // an IRI runs to '>' without whitespace or forbidden characters;
                // otherwise '<' is an operator
                let iri_end = rest[1..]
                    .find(|ch: char| ch == '>' || ch.is_whitespace() || "<\"{}|^`\\".contains(ch))
                    .filter(|&k| rest.as_bytes()[1 + k] == b'>');
                if let Some(k) = iri_end {
                    i += k + 2;
                    Tok::Iri(rest[1..1 + k].to_string())
                } else if rest.starts_with("<=") {
                    i += 2;
                    Tok::Punct("<=")
                } else {
                    i += 1;
                    Tok::Punct("<")
                }
            }
            b'?' | b'$' => {
                let name: String = rest[1..].chars().take_while(|&ch| ch.is_alphanumeric() || ch == '_').collect();
                if name.is_empty() {
                    return Err(syntax(start, "empty variable name"));
                }
                i += 1 + name.len();
                Tok::Var(name)
            }
            b'"' | b'\'' => {
                let (s, len) = lex_string(rest, start)?;
                i += len;
                Tok::Str(s)
            }
            b'^' if rest.starts_with("^^") => {
                i += 2;
                Tok::DataTypeMark
            }
            b'@' => {
                let tag: String = rest[1..].chars().take_while(|&ch| ch.is_ascii_alphanumeric() || ch == '-').collect();
                i += 1 + tag.len();
                Tok::LangTag(tag)
            }
            b'0'..=b'9' => {
                let num: String = rest.chars().take_while(|ch| ch.is_ascii_digit() || *ch == '.').collect();
                let num = num.trim_end_matches('.').to_string();
                let mut len = num.len();
                let mut dt = if num.contains('.') { XSD_DECIMAL } else { vocab::XSD_INTEGER };
                let tail = &rest[len..];
                if tail.starts_with(['e', 'E']) {
                    let exp: String = tail[1..]
                        .chars()
                        .enumerate()
                        .take_while(|(k, ch)| ch.is_ascii_digit() || (*k == 0 && (*ch == '+' || *ch == '-')))
                        .map(|(_, ch)| ch)
                        .collect();
                    len += 1 + exp.len();
                    dt = XSD_DOUBLE;
                }
                i += len;
                Tok::Number(rest[..len].to_string(), dt)
            }
            b'&' if rest.starts_with("&&") => {
                i += 2;
                Tok::Punct("&&")
            }
            b'|' if rest.starts_with("||") => {
                i += 2;
                Tok::Punct("||")
            }
            b'!' if rest.starts_with("!=") => {
                i += 2;
                Tok::Punct("!=")
            }
            b'>' if rest.starts_with(">=") => {
                i += 2;
                Tok::Punct(">=")
            }
            b'{' | b'}' | b'(' | b')' | b'.' | b';' | b',' | b'*' | b'!' | b'=' | b'>' => {
                i += 1;
                Tok::Punct(match c {
                    b'{' => "{",
                    b'}' => "}",
                    b'(' => "(",
                    b')' => ")",
                    b'.' => ".",
                    b';' => ";",
                    b',' => ",",
                    b'*' => "*",
                    b'!' => "!",
                    b'=' => "=",
                    _ => ">",
                })
            }
            _ if c.is_ascii_alphabetic() || c == b':' || c == b'_' || c >= 0x80 => {
                let word: String = rest.chars().take_while(|&ch| is_pn_char(ch) || ch == ':').collect();
                let word = word.trim_end_matches('.');
                i += word.len();
                if let Some((prefix, local)) = word.split_once(':') {
                    if prefix == "_" {
                        return Err(ParseError::Unsupported { position: start, construct: "blank node".into() });
                    }
                    Tok::PName(prefix.to_string(), local.to_string())
                } else {
                    Tok::Word(word.to_string())
                }
            }
            _ => return Err(syntax(start, format!("unexpected character {:?}", rest.chars().next().unwrap_or(' ')))),
        };
        out.push((tok, start));
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

fn lex_string(rest: &str, start: usize) -> Result<(String, usize), ParseError> {
    let quote = rest.chars().next().unwrap_or('"');
    let mut out = String::new();
    let mut chars = rest.char_indices().skip(1);
    while let Some((k, ch)) = chars.next() {
        match ch {
            c if c == quote => return Ok((out, k + 1)),
            '\\' => {
                let (_, e) = chars.next().ok_or_else(|| syntax(start, "unterminated string"))?;
                match e {
                    'n' => out.push('\n'),
                    't' => out.push('\t'),
                    'r' => out.push('\r'),
                    'b' => out.push('\u{8}'),
                    'f' => out.push('\u{c}'),
                    '"' => out.push('"'),
                    '\'' => out.push('\''),
                    '\\' => out.push('\\'),
                    'u' | 'U' => {
                        let n = if e == 'u' { 4 } else { 8 };
                        let hex: String = (0..n).filter_map(|_| chars.next().map(|(_, c)| c)).collect();
                        let cp = u32::from_str_radix(&hex, 16)
                            .ok()
                            .and_then(char::from_u32)
                            .ok_or_else(|| syntax(start, format!("bad escape \\{e}{hex}")))?;
                        out.push(cp);
                    }
                    other => return Err(syntax(start, format!("bad escape \\{other}"))),
                }
            }
            '\n' | '\r' => return Err(syntax(start, "newline in string")),
            c => out.push(c),
        }
    }
    Err(syntax(start, "unterminated string"))
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    prefixes: HashMap<String, String>,
    base: Option<String>,
}

/// Pattern of one group before its filters are applied.
struct Group {
    pattern: GraphPattern,
    filter: Option<Expr>,
}

impl Group {
    fn into_pattern(self) -> GraphPattern {
        match self.filter {
            Some(f) => GraphPattern::Filter(f, Box::new(self.pattern)),
            None => self.pattern,
        }
    }
}

fn join(a: GraphPattern, b: GraphPattern) -> GraphPattern {
    match (a, b) {
        (GraphPattern::Bgp(x), b) if x.is_empty() => b,
        (a, GraphPattern::Bgp(y)) if y.is_empty() => a,
        (GraphPattern::Bgp(mut x), GraphPattern::Bgp(y)) => {
            x.extend(y);
            GraphPattern::Bgp(x)
        }
        (a, b) => GraphPattern::Join(Box::new(a), Box::new(b)),
    }
}

fn and(a: Option<Expr>, b: Expr) -> Option<Expr> {
    Some(match a {
        Some(a) => Expr::And(Box::new(a), Box::new(b)),
        None => b,
    })
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Word(x) if x.eq_ignore_ascii_case(w))
    }

    fn eat_word(&mut self, w: &str) -> bool {
        let hit = self.is_word(w);
        if hit {
            self.bump();
        }
        hit
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Tok::Punct(x) if *x == p)
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        let hit = self.is_punct(p);
        if hit {
            self.bump();
        }
        hit
    }

    fn expect_punct(&mut self, p: &str) -> Result<(), ParseError> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            Err(syntax(self.at(), format!("expected '{p}', found {:?}", self.peek())))
        }
    }

    fn expand(&self, prefix: &str, local: &str, at: usize) -> Result<String, ParseError> {
        self.prefixes.get(prefix).map(|ns| format!("{ns}{local}")).ok_or_else(|| syntax(at, format!("undeclared prefix '{prefix}:'")))
    }

    fn resolve(&self, iri: String) -> String {
        match &self.base {
            Some(b) if !iri.contains(':') => format!("{b}{iri}"),
            _ => iri,
        }
    }

    fn unsupported(&self, what: &str) -> ParseError {
        ParseError::Unsupported { position: self.at(), construct: what.to_string() }
    }

    fn query(&mut self) -> Result<Query, ParseError> {
        loop {
            if self.eat_word("PREFIX") {
                let at = self.at();
                let prefix = match self.bump() {
                    Tok::PName(p, l) if l.is_empty() => p,
                    t => return Err(syntax(at, format!("expected prefix name, found {t:?}"))),
                };
                let at = self.at();
                let iri = match self.bump() {
                    Tok::Iri(i) => self.resolve(i),
                    t => return Err(syntax(at, format!("expected IRI, found {t:?}"))),
                };
                self.prefixes.insert(prefix, iri);
            } else if self.eat_word("BASE") {
                let at = self.at();
                match self.bump() {
                    Tok::Iri(i) => self.base = Some(i),
                    t => return Err(syntax(at, format!("expected IRI, found {t:?}"))),
                }
            } else {
                break;
            }
        }
        for w in ["CONSTRUCT", "DESCRIBE"] {
            if self.is_word(w) {
                return Err(self.unsupported(w));
            }
        }
        let form = if self.eat_word("SELECT") {
            let distinct = self.eat_word("DISTINCT");
            if !distinct {
                self.eat_word("REDUCED");
            }
            let vars = if self.eat_punct("*") {
                None
            } else {
                let mut vs = Vec::new();
                while let Tok::Var(v) = self.peek() {
                    vs.push(v.clone());
                    self.bump();
                }
                if vs.is_empty() {
                    if self.is_punct("(") {
                        return Err(self.unsupported("projection expression"));
                    }
                    return Err(syntax(self.at(), "expected projection variables or '*'"));
                }
                Some(vs)
            };
            QueryForm::Select { vars, distinct }
        } else if self.eat_word("ASK") {
            QueryForm::Ask
        } else {
            return Err(syntax(self.at(), "expected SELECT or ASK"));
        };
        if self.is_word("FROM") {
            return Err(self.unsupported("FROM"));
        }
        self.eat_word("WHERE");
        let pattern = self.group()?.into_pattern();
        let mut order_by = Vec::new();
        if self.eat_word("ORDER") {
            if !self.eat_word("BY") {
                return Err(syntax(self.at(), "expected BY"));
            }
            loop {
                let at = self.at();
                if let Tok::Var(v) = self.peek() {
                    order_by.push(OrderKey { var: v.clone(), descending: false });
                    self.bump();
                } else if self.is_word("ASC") || self.is_word("DESC") {
                    let descending = self.is_word("DESC");
                    self.bump();
                    self.expect_punct("(")?;
                    let var = match self.bump() {
                        Tok::Var(v) => v,
                        _ => return Err(self.unsupported("ORDER BY expression")),
                    };
                    self.expect_punct(")")?;
                    order_by.push(OrderKey { var, descending });
                } else if order_by.is_empty() {
                    return Err(syntax(at, "expected ORDER BY key"));
                } else {
                    break;
                }
            }
        }
        let mut limit = None;
        let mut offset = 0;
        loop {
            if self.eat_word("LIMIT") {
                limit = Some(self.count()?);
            } else if self.eat_word("OFFSET") {
                offset = self.count()?;
            } else {
                break;
            }
        }
        if *self.peek() != Tok::Eof {
            if self.is_word("GROUP") || self.is_word("HAVING") {
                return Err(self.unsupported("aggregation"));
            }
            return Err(syntax(self.at(), format!("unexpected trailing token {:?}", self.peek())));
        }
        if let QueryForm::Select { vars: Some(vs), .. } = &form {
            let mut known = std::collections::BTreeSet::new();
            pattern.vars(&mut known);
            if let Some(v) = vs.iter().find(|v| !known.contains(*v)) {
                return Err(syntax(0, format!("projected variable ?{v} does not occur in the pattern")));
            }
        }
        Ok(Query { form, pattern, order_by, limit, offset })
    }

    fn count(&mut self) -> Result<usize, ParseError> {
        let at = self.at();
        match self.bump() {
            Tok::Number(n, dt) if dt == vocab::XSD_INTEGER => n.parse().map_err(|_| syntax(at, "count out of range")),
            t => Err(syntax(at, format!("expected non-negative integer, found {t:?}"))),
        }
    }

    fn group(&mut self) -> Result<Group, ParseError> {
        self.expect_punct("{")?;
        let mut pattern = GraphPattern::Bgp(Vec::new());
        let mut filter = None;
        loop {
            if self.eat_punct("}") {
                break;
            }
            if self.eat_word("OPTIONAL") {
                let g = self.group()?;
                pattern = GraphPattern::LeftJoin(Box::new(pattern), Box::new(g.pattern), g.filter);
            } else if self.is_punct("{") {
                let mut u = self.group()?.into_pattern();
                while self.eat_word("UNION") {
                    let r = self.group()?.into_pattern();
                    u = GraphPattern::Union(Box::new(u), Box::new(r));
                }
                pattern = join(pattern, u);
            } else if self.eat_word("FILTER") {
                let e = self.constraint()?;
                filter = and(filter, e);
            } else if self.is_word("GRAPH")
                || self.is_word("SERVICE")
                || self.is_word("MINUS")
                || self.is_word("BIND")
                || self.is_word("VALUES")
            {
                let w = match self.peek() {
                    Tok::Word(w) => w.to_ascii_uppercase(),
                    _ => unreachable!(),
                };
                return Err(self.unsupported(&w));
            } else {
                let ts = self.triples_block()?;
                pattern = join(pattern, GraphPattern::Bgp(ts));
                continue;
            }
            self.eat_punct(".");
        }
        Ok(Group { pattern, filter })
    }

    /// Triples up to the next non-triples element; consumes a trailing '.'.
    fn triples_block(&mut self) -> Result<Vec<TriplePattern>, ParseError> {
        let mut out = Vec::new();
        loop {
            let s = self.var_or_term()?;
            loop {
                let p = if self.is_word("a") {
                    self.bump();
                    VarOrTerm::Term(Term::iri(vocab::RDF_TYPE))
                } else {
                    self.var_or_term()?
                };
                if let VarOrTerm::Term(t) = &p {
                    if !t.is_iri() {
                        return Err(syntax(self.at(), "predicate must be an IRI or variable"));
                    }
                }
                loop {
                    let o = self.var_or_term()?;
                    out.push(TriplePattern { s: s.clone(), p: p.clone(), o });
                    if !self.eat_punct(",") {
                        break;
                    }
                }
                if !self.eat_punct(";") {
                    break;
                }
                if self.is_punct(".") || self.is_punct("}") {
                    break;
                }
            }
            if !self.eat_punct(".") {
                return Ok(out);
            }
            if !self.starts_term() {
                return Ok(out);
            }
        }
    }

    fn starts_term(&self) -> bool {
        matches!(self.peek(), Tok::Iri(_) | Tok::PName(..) | Tok::Var(_) | Tok::Str(_) | Tok::Number(..))
            || self.is_word("true")
            || self.is_word("false")
    }

    fn var_or_term(&mut self) -> Result<VarOrTerm, ParseError> {
        if let Tok::Var(v) = self.peek() {
            let v = v.clone();
            self.bump();
            return Ok(VarOrTerm::Var(v));
        }
        self.term().map(VarOrTerm::Term)
    }

    fn iri(&mut self) -> Result<String, ParseError> {
        let at = self.at();
        match self.bump() {
            Tok::Iri(i) => Ok(self.resolve(i)),
            Tok::PName(p, l) => self.expand(&p, &l, at),
            t => Err(syntax(at, format!("expected IRI, found {t:?}"))),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let at = self.at();
        match self.peek().clone() {
            Tok::Iri(_) | Tok::PName(..) => self.iri().map(Term::Iri),
            Tok::Str(s) => {
                self.bump();
                match self.peek() {
                    Tok::DataTypeMark => {
                        self.bump();
                        Ok(Term::typed(s, self.iri()?))
                    }
                    Tok::LangTag(_) => Err(self.unsupported("language-tagged literal")),
                    _ => Ok(Term::plain(s)),
                }
            }
            Tok::Number(n, dt) => {
                self.bump();
                Ok(Term::typed(n, dt))
            }
            Tok::Word(w) if w == "true" || w == "false" => {
                self.bump();
                Ok(Term::typed(w, XSD_BOOLEAN))
            }
            Tok::Punct("[") | Tok::Punct("(") => Err(self.unsupported("collection or blank node syntax")),
            t => Err(syntax(at, format!("expected RDF term, found {t:?}"))),
        }
    }

    fn constraint(&mut self) -> Result<Expr, ParseError> {
        if self.is_punct("(") {
            self.bump();
            let e = self.expr()?;
            self.expect_punct(")")?;
            Ok(e)
        } else if self.is_word("bound") {
            self.primary()
        } else if self.is_word("regex") {
            Err(self.unsupported("REGEX"))
        } else {
            Err(syntax(self.at(), "expected '(' after FILTER"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.and_expr()?;
        while self.eat_punct("||") {
            e = Expr::Or(Box::new(e), Box::new(self.and_expr()?));
        }
        Ok(e)
    }

    fn and_expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.relational()?;
        while self.eat_punct("&&") {
            e = Expr::And(Box::new(e), Box::new(self.relational()?));
        }
        Ok(e)
    }

    fn relational(&mut self) -> Result<Expr, ParseError> {
        let left = self.unary()?;
        let op = match self.peek() {
            Tok::Punct("=") => CmpOp::Eq,
            Tok::Punct("!=") => CmpOp::Ne,
            Tok::Punct("<") => CmpOp::Lt,
            Tok::Punct(">") => CmpOp::Gt,
            Tok::Punct("<=") => CmpOp::Le,
            Tok::Punct(">=") => CmpOp::Ge,
            _ => return Ok(left),
        };
        self.bump();
        let right = self.unary()?;
        Ok(Expr::Cmp(op, Box::new(left), Box::new(right)))
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat_punct("!") {
            return Ok(Expr::Not(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let at = self.at();
        match self.peek().clone() {
            Tok::Punct("(") => {
                self.bump();
                let e = self.expr()?;
                self.expect_punct(")")?;
                Ok(e)
            }
            Tok::Var(v) => {
                self.bump();
                Ok(Expr::Var(v))
            }
            Tok::Word(w) if w.eq_ignore_ascii_case("bound") => {
                self.bump();
                self.expect_punct("(")?;
                let v = match self.bump() {
                    Tok::Var(v) => v,
                    t => return Err(syntax(at, format!("bound() takes a variable, found {t:?}"))),
                };
                self.expect_punct(")")?;
                Ok(Expr::Bound(v))
            }
            Tok::Word(w) if w != "true" && w != "false" => {
                Err(ParseError::Unsupported { position: at, construct: format!("function {w}") })
            }
            _ => self.term().map(Expr::Const),
        }
    }
}

/// Parses query text. Prefixes from the document vocabulary are not implied;
/// queries declare what they use.
pub fn parse(text: &str) -> Result<Query, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, prefixes: HashMap::new(), base: None };
    p.query()
}

#[cfg(test)]
mod tests {
    use super::*;

    const PRE: &str = "PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>\nPREFIX ex: <http://ex/>\n";

    fn q(body: &str) -> Query {
        parse(&format!("{PRE}{body}")).unwrap()
    }

    #[test]
    fn simple_bgp() {
        let query = q("SELECT ?x WHERE { ?x rdf:type ex:C. ?x ex:p \"v\"^^ex:dt }");
        match &query.pattern {
            GraphPattern::Bgp(ts) => {
                assert_eq!(ts.len(), 2);
                assert_eq!(ts[1].o, VarOrTerm::Term(Term::typed("v", "http://ex/dt")));
            }
            p => panic!("{p:?}"),
        }
    }

    #[test]
    fn optional_with_filter_becomes_left_join_condition() {
        let query = q("SELECT ?x WHERE { ?x ex:p ?y OPTIONAL { ?x ex:q ?z FILTER (?z < ?y) } FILTER (!bound(?z)) }");
        match &query.pattern {
            GraphPattern::Filter(Expr::Not(_), inner) => match inner.as_ref() {
                GraphPattern::LeftJoin(_, _, Some(Expr::Cmp(CmpOp::Lt, _, _))) => {}
                p => panic!("{p:?}"),
            },
            p => panic!("{p:?}"),
        }
    }

    #[test]
    fn nested_group_filter_stays_inside_optional() {
        let query = q("SELECT ?x WHERE { ?x ex:p ?y OPTIONAL { { ?x ex:q ?z FILTER (?z < ?y) } } }");
        match &query.pattern {
            GraphPattern::LeftJoin(_, b, None) => assert!(matches!(b.as_ref(), GraphPattern::Filter(..))),
            p => panic!("{p:?}"),
        }
    }

    #[test]
    fn less_than_without_spaces() {
        let query = q("SELECT ?a WHERE { ?a ex:p ?b FILTER (?a<?b) }");
        assert!(matches!(query.pattern, GraphPattern::Filter(Expr::Cmp(CmpOp::Lt, _, _), _)));
    }

    #[test]
    fn union_and_modifiers() {
        let query = q("SELECT DISTINCT ?p WHERE { { ?s ?p ?o } UNION { ?o ?p ?s } } ORDER BY DESC(?p) LIMIT 10 OFFSET 5");
        assert!(matches!(query.pattern, GraphPattern::Union(..)));
        assert_eq!(query.limit, Some(10));
        assert_eq!(query.offset, 5);
        assert!(query.order_by[0].descending);
        assert!(query.is_distinct());
    }

    #[test]
    fn ask_and_a_keyword() {
        let query = q("ASK { ex:x a ex:C }");
        assert_eq!(query.form, QueryForm::Ask);
    }

    #[test]
    fn predicate_object_lists() {
        let query = q("SELECT * { ?x ex:p ?a, ?b ; ex:q ?c . }");
        match &query.pattern {
            GraphPattern::Bgp(ts) => assert_eq!(ts.len(), 3),
            p => panic!("{p:?}"),
        }
        assert_eq!(query.projection(), vec!["a", "b", "c", "x"]);
    }

    #[test]
    fn construct_is_unsupported() {
        let err = parse("CONSTRUCT { ?s ?p ?o } WHERE { ?s ?p ?o }").unwrap_err();
        assert!(matches!(err, ParseError::Unsupported { .. }), "{err}");
        assert!(err.to_string().contains("CONSTRUCT"));
    }

    #[test]
    fn errors_carry_position() {
        let err = parse("SELECT ?x WHERE { ?x ex:p }").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { .. }));
        let err = parse("SELECT ?x WHERE { ?x ?p ?o ").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { .. }), "{err}");
    }

    #[test]
    fn unknown_projection_rejected() {
        assert!(parse("SELECT ?y WHERE { ?x ?p ?o }").is_err());
    }

    #[test]
    fn display_round_trips() {
        let text = "SELECT DISTINCT ?x ?z WHERE { ?x ex:p ?y OPTIONAL { ?x ex:q ?z FILTER (?z < 3 || !bound(?y)) } { ?x ex:r \"a\\\"b\" } UNION { ?x ex:s ?y } FILTER (?x != ex:k) } ORDER BY DESC(?z) ?x LIMIT 3 OFFSET 1";
        let a = q(text);
        let b = parse(&a.to_string()).unwrap();
        assert_eq!(a, b, "{a}");
    }
}

//! Catalog of the 17 benchmark queries.
//!
//! Texts are golden files under `queries/`; Q12a and Q12b are derived from
//! Q5a and Q8 by replacing the SELECT clause with ASK.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Select,
    Ask,
}

/// Expected result behavior on generated documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Behavior {
    /// Fixed row count on every document of at least 10k triples.
    Constant(usize),
    /// Row count increases with document size.
    Grows,
    /// Never returns a row.
    AlwaysEmpty,
    /// Grows until the generated years pass a fixed horizon.
    Stabilizes,
    /// ASK with a fixed answer.
    Answer(bool),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchmarkQuery {
    pub id: &'static str,
    pub form: Form,
    pub text: String,
    pub behavior: Behavior,
    pub description: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown query id '{0}' (expected one of Q1, Q2, Q3a-c, Q4, Q5a-b, Q6-Q11, Q12a-c)")]
pub struct UnknownQuery(pub String);

const Q1: &str = include_str!("../queries/q1.rq");
const Q2: &str = include_str!("../queries/q2.rq");
const Q3A: &str = include_str!("../queries/q3a.rq");
const Q3B: &str = include_str!("../queries/q3b.rq");
const Q3C: &str = include_str!("../queries/q3c.rq");
const Q4: &str = include_str!("../queries/q4.rq");
const Q5A: &str = include_str!("../queries/q5a.rq");
const Q5B: &str = include_str!("../queries/q5b.rq");
const Q6: &str = include_str!("../queries/q6.rq");
const Q7: &str = include_str!("../queries/q7.rq");
const Q8: &str = include_str!("../queries/q8.rq");
const Q9: &str = include_str!("../queries/q9.rq");
const Q10: &str = include_str!("../queries/q10.rq");
const Q11: &str = include_str!("../queries/q11.rq");
const Q12C: &str = include_str!("../queries/q12c.rq");

/// Turns a SELECT query text into the ASK query over the same pattern.
pub fn as_ask(select: &str) -> String {
    let start = select.find("SELECT").expect("SELECT query");
    let body = select[start..].find("WHERE").map(|w| start + w + "WHERE".len()).expect("WHERE clause");
    format!("{}ASK {}", &select[..start], select[body..].trim_start())
}

/// All queries in catalog order.
pub fn all() -> &'static [BenchmarkQuery] {
    static ALL: OnceLock<Vec<BenchmarkQuery>> = OnceLock::new();
    ALL.get_or_init(|| {
        use Behavior::*;
        let q = |id, form, text: &str, behavior, description| BenchmarkQuery { id, form, text: text.to_string(), behavior, description };
        vec![
            q("Q1", Form::Select, Q1, Constant(1), "year of a fixed journal"),
            q("Q2", Form::Select, Q2, Grows, "inproceedings with their attributes, optional abstract, ordered by year"),
            q("Q3a", Form::Select, Q3A, Grows, "articles with property swrc:pages"),
            q("Q3b", Form::Select, Q3B, Grows, "articles with property swrc:month"),
            q("Q3c", Form::Select, Q3C, AlwaysEmpty, "articles with property swrc:isbn"),
            q("Q4", Form::Select, Q4, Grows, "distinct author pairs publishing in the same journal"),
            q("Q5a", Form::Select, Q5A, Grows, "authors of articles and inproceedings, joined on names"),
            q("Q5b", Form::Select, Q5B, Grows, "authors of articles and inproceedings, joined on persons"),
            q("Q6", Form::Select, Q6, Grows, "publications of authors without earlier publications"),
            q("Q7", Form::Select, Q7, Grows, "titles of documents cited by documents that are not cited"),
            q("Q8", Form::Select, Q8, Stabilizes, "authors at distance one or two from the fixed person"),
            q("Q9", Form::Select, Q9, Constant(4), "predicates incident to persons"),
            q("Q10", Form::Select, Q10, Stabilizes, "subjects and predicates pointing at the fixed person"),
            q("Q11", Form::Select, Q11, Constant(10), "ordered electronic editions, window of ten"),
            q("Q12a", Form::Ask, &as_ask(Q5A), Answer(true), "Q5a as ASK"),
            q("Q12b", Form::Ask, &as_ask(Q8), Answer(true), "Q8 as ASK"),
            q("Q12c", Form::Ask, Q12C, Answer(false), "a person that does not exist"),
        ]
    })
}

/// Looks up a query by id, case-insensitively.
pub fn get(id: &str) -> Result<&'static BenchmarkQuery, UnknownQuery> {
    all().iter().find(|q| q.id.eq_ignore_ascii_case(id)).ok_or_else(|| UnknownQuery(id.to_string()))
}

/// Two-line heading of the success matrix, one column per query. The Q12
/// variants are left unlabeled on the second line, as in the reference table.
pub const MATRIX_HEADER: [&str; 2] = ["123  45 6789ABC  ", "  abc ab         "];

/// Column heading of a query in the compact success matrix: the query number
/// in hexadecimal on the first line and the variant letter on the second.
pub fn matrix_heading(id: &str) -> (char, char) {
    let digits: String = id[1..].chars().take_while(char::is_ascii_digit).collect();
    let variant = id[1 + digits.len()..].chars().next();
    let n: u32 = digits.parse().unwrap_or(0);
    let hex = char::from_digit(n, 16).map_or('?', |c| c.to_ascii_uppercase());
    match variant {
        // only the first variant carries the number
        Some('a') | None => (hex, variant.unwrap_or(' ')),
        Some(v) => (' ', v),
    }
}

impl fmt::Display for BenchmarkQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparql::ast::{GraphPattern, QueryForm};
    use crate::sparql::parse;

    #[test]
    fn seventeen_entries_in_order() {
        let ids: Vec<&str> = all().iter().map(|q| q.id).collect();
        assert_eq!(
            ids,
            ["Q1", "Q2", "Q3a", "Q3b", "Q3c", "Q4", "Q5a", "Q5b", "Q6", "Q7", "Q8", "Q9", "Q10", "Q11", "Q12a", "Q12b", "Q12c"]
        );
    }

    #[test]
    fn all_parse_with_declared_form() {
        for q in all() {
            let ast = parse(&q.text).unwrap_or_else(|e| panic!("{}: {e}", q.id));
            assert_eq!(ast.form == QueryForm::Ask, q.form == Form::Ask, "{}", q.id);
        }
    }

    #[test]
    fn lookups() {
        assert_eq!(get("Q1").unwrap().form, Form::Select);
        assert_eq!(get("q12c").unwrap().form, Form::Ask);
        assert!(get("Q13").is_err());
    }

    #[test]
    fn q1_shape() {
        let ast = parse(&get("Q1").unwrap().text).unwrap();
        match &ast.pattern {
            GraphPattern::Bgp(ts) => assert_eq!(ts.len(), 3),
            p => panic!("{p:?}"),
        }
        assert_eq!(ast.projection(), vec!["yr"]);
    }

    #[test]
    fn q11_modifiers() {
        let ast = parse(&get("Q11").unwrap().text).unwrap();
        assert_eq!(ast.order_by.len(), 1);
        assert_eq!(ast.order_by[0].var, "ee");
        assert_eq!(ast.limit, Some(10));
        assert_eq!(ast.offset, 50);
    }

    #[test]
    fn derived_ask_queries_share_patterns() {
        for (ask, select) in [("Q12a", "Q5a"), ("Q12b", "Q8")] {
            let a = parse(&get(ask).unwrap().text).unwrap();
            let s = parse(&get(select).unwrap().text).unwrap();
            assert_eq!(a.pattern, s.pattern);
            assert!(get(ask).unwrap().text.contains("\nASK {"));
        }
    }

    #[test]
    fn matrix_headings_match_legend() {
        let (top, bottom): (String, String) = all().iter().map(|q| matrix_heading(q.id)).unzip();
        assert_eq!(top, "123  45 6789ABC  ");
        assert_eq!(bottom, "  abc ab      abc");
        assert_eq!(top, MATRIX_HEADER[0]);
        assert_eq!(&bottom[..14], &MATRIX_HEADER[1][..14]);
    }
}

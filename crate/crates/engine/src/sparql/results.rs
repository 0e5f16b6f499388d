//! Result serialization: CSV and SPARQL results JSON.

use rdfbench_core::rdfmodel::Term;
use serde_json::{json, Map, Value};

use super::eval::{QueryResult, UNBOUND};
use crate::store::TripleStore;

fn csv_field(out: &mut String, s: &str) {
    if s.contains([',', '"', '\n', '\r']) {
        out.push('"');
        out.push_str(&s.replace('"', "\"\""));
        out.push('"');
    } else {
        out.push_str(s);
    }
}

fn csv_value(t: &Term) -> String {
    match t {
        Term::Blank(l) => format!("_:{l}"),
        t => t.value().to_string(),
    }
}

/// Header row of variable names, then one line per row; unbound cells are
/// empty. ASK results are a single `boolean` column.
pub fn to_csv(result: &QueryResult, store: &TripleStore) -> String {
    let mut out = String::new();
    match result {
        QueryResult::Ask(b) => {
            out.push_str("boolean\r\n");
            out.push_str(if *b { "true\r\n" } else { "false\r\n" });
        }
        QueryResult::Select(s) => {
            for (i, v) in s.vars.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                csv_field(&mut out, v);
            }
            out.push_str("\r\n");
            for row in &s.rows {
                for (i, &id) in row.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    if id != UNBOUND {
                        csv_field(&mut out, &csv_value(store.term(id)));
                    }
                }
                out.push_str("\r\n");
            }
        }
    }
    out
}

/// JSON binding object of one term.
pub fn term_json(t: &Term) -> Value {
    match t {
        Term::Iri(i) => json!({"type": "uri", "value": i}),
        Term::Blank(l) => json!({"type": "bnode", "value": l}),
        Term::Literal { lex, datatype: None } => json!({"type": "literal", "value": lex}),
        Term::Literal { lex, datatype: Some(dt) } => json!({"type": "literal", "value": lex, "datatype": dt}),
    }
}

/// SPARQL 1.1 query results JSON document.
pub fn to_json(result: &QueryResult, store: &TripleStore) -> Value {
    match result {
        QueryResult::Ask(b) => json!({"head": {}, "boolean": b}),
        QueryResult::Select(s) => {
            let bindings: Vec<Value> = s
                .rows
                .iter()
                .map(|row| {
                    let mut m = Map::new();
                    for (v, &id) in s.vars.iter().zip(row.iter()) {
                        if id != UNBOUND {
                            m.insert(v.clone(), term_json(store.term(id)));
                        }
                    }
                    Value::Object(m)
                })
                .collect();
            json!({"head": {"vars": s.vars}, "results": {"bindings": bindings}})
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparql::{evaluate, parse, EvalOptions};
    use rdfbench_core::rdfmodel::Triple;

    fn store() -> TripleStore {
        TripleStore::from_triples(vec![
            Triple::new(Term::iri("http://a"), Term::iri("http://p"), Term::string("x, \"y\"")),
            Triple::new(Term::blank("b0"), Term::iri("http://p"), Term::plain("z")),
        ])
    }

    #[test]
    fn csv_quotes_and_blank_nodes() {
        let s = store();
        let q = parse("SELECT ?s ?o WHERE { ?s <http://p> ?o } ORDER BY ?s").unwrap();
        let r = evaluate(&q, &s, &EvalOptions::default()).unwrap();
        assert_eq!(to_csv(&r, &s), "s,o\r\n_:b0,z\r\nhttp://a,\"x, \"\"y\"\"\"\r\n");
    }

    #[test]
    fn json_shapes() {
        let s = store();
        let q = parse("SELECT ?s ?o WHERE { ?s <http://p> ?o } ORDER BY ?s").unwrap();
        let r = evaluate(&q, &s, &EvalOptions::default()).unwrap();
        let j = to_json(&r, &s);
        assert_eq!(j["head"]["vars"], json!(["s", "o"]));
        assert_eq!(j["results"]["bindings"][0]["s"]["type"], "bnode");
        assert_eq!(j["results"]["bindings"][1]["o"]["datatype"], "http://www.w3.org/2001/XMLSchema#string");
        let ask = to_json(&QueryResult::Ask(true), &s);
        assert_eq!(ask["boolean"], true);
        assert_eq!(to_csv(&QueryResult::Ask(false), &s), "boolean\r\nfalse\r\n");
    }
}

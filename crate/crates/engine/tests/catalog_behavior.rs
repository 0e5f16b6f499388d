//! The benchmark queries behave as catalogued on generated documents.

use std::sync::OnceLock;

use rdfbench_core::worldsim::{generate, GenerationConfig, Limit, ERDOES_FIRST_YEAR};
use rdfbench_engine::queries::{self, Behavior};
use rdfbench_engine::sparql::{evaluate, parse, EvalOptions, QueryResult};
use rdfbench_engine::TripleStore;

fn store(limit: Limit) -> TripleStore {
    let mut buf = Vec::new();
    generate(&GenerationConfig::new(limit), &mut buf).unwrap();
    TripleStore::load(&buf[..]).unwrap()
}

fn small() -> &'static TripleStore {
    static S: OnceLock<TripleStore> = OnceLock::new();
    S.get_or_init(|| store(Limit::Triples(10_000)))
}

fn large() -> &'static TripleStore {
    static S: OnceLock<TripleStore> = OnceLock::new();
    S.get_or_init(|| store(Limit::Triples(50_000)))
}

fn answer(store: &TripleStore, id: &str) -> QueryResult {
    let q = queries::get(id).unwrap();
    evaluate(&parse(&q.text).unwrap(), store, &EvalOptions::default()).unwrap()
}

#[test]
fn fixed_answers_hold_on_both_sizes() {
    for store in [small(), large()] {
        for q in queries::all() {
            let r = answer(store, q.id);
            match q.behavior {
                Behavior::Constant(n) => assert_eq!(r.len(), n, "{}", q.id),
                Behavior::AlwaysEmpty => assert!(r.is_empty(), "{}", q.id),
                Behavior::Answer(b) => assert_eq!(r, QueryResult::Ask(b), "{}", q.id),
                Behavior::Stabilizes => assert!(!r.is_empty(), "{} is empty", q.id),
                Behavior::Grows => {}
            }
        }
    }
}

#[test]
fn growing_queries_grow() {
    for q in queries::all().iter().filter(|q| q.behavior == Behavior::Grows) {
        let (a, b) = (answer(small(), q.id).len(), answer(large(), q.id).len());
        assert!(a < b, "{}: {a} then {b}", q.id);
    }
}

#[test]
fn name_join_and_person_join_agree() {
    for store in [small(), large()] {
        let rows = |id| match answer(store, id) {
            QueryResult::Select(s) => {
                let mut rows = s.to_terms(store);
                rows.sort();
                rows
            }
            QueryResult::Ask(_) => unreachable!(),
        };
        assert_eq!(rows("Q5a"), rows("Q5b"));
    }
}

#[test]
fn fixed_person_links_stop_growing() {
    let by_year = |yr| answer(&store(Limit::Year(yr)), "Q10").len();
    assert_eq!(by_year(1950), 12 * (1950 - ERDOES_FIRST_YEAR + 1) as usize);
    assert_eq!(by_year(1997), by_year(1998));
}

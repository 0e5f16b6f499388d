//! Randomized equivalence of the evaluator and the definitional oracle on
//! tiny stores.

#[path = "support/random_cases.rs"]
mod random_cases;

use std::collections::BTreeSet;

use random_cases::{run_cases, CaseTally, Gen};
use rdfbench_core::RngState;
use rdfbench_engine::sparql::ast::{OrderKey, Query, QueryForm};
use rdfbench_engine::sparql::{evaluate, EvalOptions, QueryResult};

#[test]
fn evaluator_matches_oracle_on_random_queries() {
    let CaseTally { checked, nonempty } = run_cases(0x5eed, 1500).unwrap_or_else(|e| panic!("{e}"));
    assert!(checked >= 1000);
    // guards against a generator that only produces trivially empty cases
    assert!(nonempty > checked / 5, "{nonempty} of {checked} non-empty");
}

#[test]
fn ask_agrees_with_select() {
    let mut g = Gen { rng: RngState::new(77) };
    for _ in 0..300 {
        let store = g.store();
        let mut q = g.query();
        q.form = QueryForm::Select { vars: None, distinct: false };
        q.limit = None;
        q.offset = 0;
        let rows = evaluate(&q, &store, &EvalOptions::default()).unwrap().len();
        q.form = QueryForm::Ask;
        let ask = evaluate(&q, &store, &EvalOptions::default()).unwrap();
        assert_eq!(ask, QueryResult::Ask(rows > 0));
    }
}

#[test]
fn modifiers_laws() {
    let mut g = Gen { rng: RngState::new(91) };
    for _ in 0..300 {
        let store = g.store();
        let mut q = g.query();
        if q.form == QueryForm::Ask {
            continue;
        }
        q.order_by = vec![OrderKey { var: "a".into(), descending: false }];
        q.limit = None;
        q.offset = 0;
        let all = evaluate(&q, &store, &EvalOptions::default()).unwrap();
        let QueryResult::Select(all) = all else { unreachable!() };
        for (limit, offset) in [(Some(2), 0), (None, 1), (Some(1), 2)] {
            let w = Query { limit, offset, ..q.clone() };
            let QueryResult::Select(part) = evaluate(&w, &store, &EvalOptions::default()).unwrap() else { unreachable!() };
            let expected: Vec<_> = all.rows.iter().skip(offset).take(limit.unwrap_or(usize::MAX)).cloned().collect();
            assert_eq!(part.rows, expected);
        }
        if let QueryForm::Select { vars, .. } = &q.form {
            let d = Query { form: QueryForm::Select { vars: vars.clone(), distinct: true }, ..q.clone() };
            let QueryResult::Select(once) = evaluate(&d, &store, &EvalOptions::default()).unwrap() else { unreachable!() };
            let unique: BTreeSet<_> = once.rows.iter().collect();
            assert_eq!(unique.len(), once.rows.len());
        }
    }
}

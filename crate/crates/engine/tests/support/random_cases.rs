//! Random tiny stores and queries in the supported subset, and a checker
//! comparing the evaluator with the definitional oracle.

use std::collections::BTreeSet;

use rdfbench_core::rdfmodel::vocab::XSD_STRING;
use rdfbench_core::rdfmodel::{Term, Triple};
use rdfbench_core::RngState;
use rdfbench_engine::sparql::ast::{CmpOp, Expr, GraphPattern, OrderKey, Query, QueryForm, TriplePattern, VarOrTerm};
use rdfbench_engine::sparql::oracle::{brute_force_evaluate, OracleResult};
use rdfbench_engine::sparql::{evaluate, parse, EvalOptions, QueryResult};
use rdfbench_engine::TripleStore;

const VARS: [&str; 5] = ["a", "b", "c", "d", "e"];

pub struct Gen {
    pub rng: RngState,
}

impl Gen {
    fn pick<T: Clone>(&mut self, xs: &[T]) -> T {
        xs[self.rng.index(xs.len())].clone()
    }

    fn chance(&mut self, p: f64) -> bool {
        self.rng.next_unit() < p
    }

    fn node(&mut self) -> Term {
        match self.rng.index(10) {
            0..=3 => Term::iri(format!("http://ex/e{}", self.rng.index(4))),
            4 => Term::blank(format!("b{}", self.rng.index(2))),
            5 | 6 => Term::integer(self.rng.index(3) as i64 + 1),
            7 => Term::typed("01", "http://www.w3.org/2001/XMLSchema#integer"),
            8 => Term::string(self.pick(&["a", "b", "B"])),
            _ => Term::typed("1", XSD_STRING),
        }
    }

    /// Blank nodes in query text would act as variables, so queries use
    /// only the other node kinds.
    fn query_node(&mut self) -> Term {
        loop {
            let t = self.node();
            if !t.is_blank() {
                return t;
            }
        }
    }

    fn predicate(&mut self) -> Term {
        Term::iri(format!("http://ex/p{}", self.rng.index(3)))
    }

    pub fn store(&mut self) -> TripleStore {
        let n = 8 + self.rng.index(23);
        let triples = (0..n).map(|_| {
            let s = if self.chance(0.8) { Term::iri(format!("http://ex/e{}", self.rng.index(4))) } else { Term::blank("b0") };
            Triple::new(s, self.predicate(), self.node())
        });
        TripleStore::from_triples(triples.collect::<Vec<_>>())
    }

    pub fn var(&mut self) -> String {
        self.pick(&VARS).to_string()
    }

    fn slot(&mut self, term: impl FnOnce(&mut Self) -> Term) -> VarOrTerm {
        if self.chance(0.75) {
            VarOrTerm::Var(self.var())
        } else {
            VarOrTerm::Term(term(self))
        }
    }

    fn bgp(&mut self) -> GraphPattern {
        let n = 1 + self.rng.index(3);
        let ts = (0..n)
            .map(|_| TriplePattern {
                s: self.slot(|g| Term::iri(format!("http://ex/e{}", g.rng.index(4)))),
                p: self.slot(Self::predicate),
                o: self.slot(Self::query_node),
            })
            .collect();
        GraphPattern::Bgp(ts)
    }

    fn operand(&mut self) -> Expr {
        if self.chance(0.7) {
            Expr::Var(self.var())
        } else {
            Expr::Const(self.query_node())
        }
    }

    fn expr(&mut self, depth: u32) -> Expr {
        let k = if depth == 0 { self.rng.index(2) } else { self.rng.index(5) };
        match k {
            0 => {
                let op = self.pick(&[CmpOp::Eq, CmpOp::Ne, CmpOp::Lt, CmpOp::Gt, CmpOp::Le, CmpOp::Ge]);
                Expr::Cmp(op, Box::new(self.operand()), Box::new(self.operand()))
            }
            1 => Expr::Bound(self.var()),
            2 => Expr::Not(Box::new(self.expr(depth - 1))),
            3 => Expr::And(Box::new(self.expr(depth - 1)), Box::new(self.expr(depth - 1))),
            _ => Expr::Or(Box::new(self.expr(depth - 1)), Box::new(self.expr(depth - 1))),
        }
    }

    fn pattern(&mut self, depth: u32) -> GraphPattern {
        if depth == 0 || self.chance(0.3) {
            return self.bgp();
        }
        let d = depth - 1;
        match self.rng.index(4) {
            0 => GraphPattern::Join(Box::new(self.pattern(d)), Box::new(self.pattern(d))),
            1 => {
                let cond = self.chance(0.5).then(|| self.expr(1));
                GraphPattern::LeftJoin(Box::new(self.pattern(d)), Box::new(self.pattern(d)), cond)
            }
            2 => GraphPattern::Union(Box::new(self.pattern(d)), Box::new(self.pattern(d))),
            _ => GraphPattern::Filter(self.expr(2), Box::new(self.pattern(d))),
        }
    }

    pub fn query(&mut self) -> Query {
        let pattern = self.pattern(3);
        let mut vars = BTreeSet::new();
        pattern.vars(&mut vars);
        let vars: Vec<String> = vars.into_iter().collect();
        let form = if self.chance(0.15) {
            QueryForm::Ask
        } else {
            let proj: Vec<String> = vars.iter().filter(|_| self.chance(0.6)).cloned().collect();
            let distinct = self.chance(0.4);
            if proj.is_empty() || self.chance(0.15) {
                QueryForm::Select { vars: None, distinct }
            } else {
                QueryForm::Select { vars: Some(proj), distinct }
            }
        };
        let mut order_by = Vec::new();
        if form != QueryForm::Ask && self.chance(0.4) {
            for _ in 0..1 + self.rng.index(2) {
                order_by.push(OrderKey { var: self.var(), descending: self.chance(0.3) });
            }
        }
        let limit = (form != QueryForm::Ask && self.chance(0.25)).then(|| self.rng.index(5));
        let offset = if form != QueryForm::Ask && self.chance(0.2) { self.rng.index(4) } else { 0 };
        Query { form, pattern, order_by, limit, offset }
    }
}

fn sorted(mut rows: Vec<Vec<Option<Term>>>) -> Vec<Vec<Option<Term>>> {
    rows.sort();
    rows
}

/// Multiset inclusion.
fn is_submultiset(small: &[Vec<Option<Term>>], big: &[Vec<Option<Term>>]) -> bool {
    let mut pool = big.to_vec();
    small.iter().all(|r| match pool.iter().position(|x| x == r) {
        Some(i) => {
            pool.swap_remove(i);
            true
        }
        None => false,
    })
}

pub fn check(query: &Query, store: &TripleStore) -> Result<(), String> {
    let engine = evaluate(query, store, &EvalOptions::default()).map_err(|e| e.to_string())?;
    let oracle = brute_force_evaluate(query, store).map_err(|e| e.to_string())?;
    match (engine, oracle) {
        (QueryResult::Ask(a), OracleResult::Ask(b)) => (a == b).then_some(()).ok_or(format!("ask {a} vs {b}")),
        (QueryResult::Select(s), OracleResult::Select { vars, rows }) => {
            if s.vars != vars {
                return Err(format!("vars {:?} vs {vars:?}", s.vars));
            }
            let got = s.to_terms(store);
            if !query.order_by.is_empty() {
                return (got == rows).then_some(()).ok_or(format!("ordered rows\n{got:?}\nvs\n{rows:?}"));
            }
            if query.limit.is_some() || query.offset > 0 {
                // any window of the unordered sequence is acceptable
                let full = Query { limit: None, offset: 0, ..query.clone() };
                let Ok(OracleResult::Select { rows: all, .. }) = brute_force_evaluate(&full, store) else {
                    return Err("oracle failed on unbounded query".into());
                };
                let expected = all.len().saturating_sub(query.offset).min(query.limit.unwrap_or(usize::MAX));
                if got.len() != expected || !is_submultiset(&got, &all) {
                    return Err(format!("window\n{got:?}\nnot within\n{all:?}"));
                }
                if query.is_distinct() && got.iter().collect::<BTreeSet<_>>().len() != got.len() {
                    return Err("duplicate rows under DISTINCT".into());
                }
                return Ok(());
            }
            let (got, rows) = (sorted(got), sorted(rows));
            (got == rows).then_some(()).ok_or(format!("rows\n{got:?}\nvs\n{rows:?}"))
        }
        (a, b) => Err(format!("form mismatch {a:?} vs {b:?}")),
    }
}

/// Outcome of [`run_cases`].
pub struct CaseTally {
    pub checked: usize,
    pub nonempty: usize,
}

/// Checks `n` random (store, query) cases; the query is evaluated as the
/// parser reads its serialized text.
pub fn run_cases(seed: u64, n: usize) -> Result<CaseTally, String> {
    let mut g = Gen { rng: RngState::new(seed) };
    let mut tally = CaseTally { checked: 0, nonempty: 0 };
    for case in 0..n {
        let store = g.store();
        let text = g.query().to_string();
        let query = parse(&text).map_err(|e| format!("case {case}: {e}\n{text}"))?;
        if let Err(msg) = check(&query, &store) {
            let triples: Vec<String> = store.triples().map(|t| format!("{} {} {}", t.subject, t.predicate, t.object)).collect();
            return Err(format!("case {case}: {msg}\nquery: {text}\nstore:\n{}", triples.join("\n")));
        }
        if evaluate(&query, &store, &EvalOptions::default()).is_ok_and(|r| !r.is_empty()) {
            tally.nonempty += 1;
        }
        tally.checked += 1;
    }
    Ok(tally)
}

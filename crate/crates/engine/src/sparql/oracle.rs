//! Definitional evaluator used as a test oracle.
//!
//! Works on term-valued mappings and applies each algebra operator literally:
//! a BGP is every consistent choice of one store triple per pattern, joins and
//! left joins are nested loops over compatible mappings. Only term-level
//! semantics are shared with the engine.

use std::collections::BTreeMap;

use rdfbench_core::rdfmodel::{Term, Triple};
use thiserror::Error;

use super::ast::{Expr, GraphPattern, Query, QueryForm, TriplePattern, VarOrTerm};
use super::value;
use crate::store::TripleStore;

/// Upper bound on partial triple choices explored for one BGP.
pub const MAX_COMBINATIONS: u64 = 5_000_000;

/// Upper bound on mappings one pattern group may produce.
const MAX_MAPPINGS: u64 = 250_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("oracle size guard exceeded: more than {combinations} partial triple choices for one pattern group")]
pub struct SizeGuardExceeded {
    pub combinations: u64,
}

type Mapping = BTreeMap<String, Term>;
type OracleRow = Vec<Option<Term>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleResult {
    Select { vars: Vec<String>, rows: Vec<Vec<Option<Term>>> },
    Ask(bool),
}

fn compatible(a: &Mapping, b: &Mapping) -> bool {
    a.iter().all(|(k, v)| b.get(k).is_none_or(|w| w == v))
}

fn merged(a: &Mapping, b: &Mapping) -> Mapping {
    let mut m = a.clone();
    m.extend(b.iter().map(|(k, v)| (k.clone(), v.clone())));
    m
}

fn bind(m: &mut Mapping, slot: &VarOrTerm, t: &Term) -> bool {
    match slot {
        VarOrTerm::Term(c) => c == t,
        VarOrTerm::Var(v) => match m.get(v) {
            Some(x) => x == t,
            None => {
                m.insert(v.clone(), t.clone());
                true
            }
        },
    }
}

fn term_value(e: &Expr, m: &Mapping) -> Option<Term> {
    match e {
        Expr::Var(v) => m.get(v).cloned(),
        Expr::Const(t) => Some(t.clone()),
        other => truth(other, m).map(value::boolean),
    }
}

/// Three-valued filter truth; `None` is an error.
fn truth(e: &Expr, m: &Mapping) -> Option<bool> {
    match e {
        Expr::Bound(v) => Some(m.contains_key(v)),
        Expr::Var(v) => value::ebv(m.get(v)?),
        Expr::Const(t) => value::ebv(t),
        Expr::Not(a) => truth(a, m).map(|b| !b),
        Expr::And(a, b) => {
            let (x, y) = (truth(a, m), truth(b, m));
            if x == Some(false) || y == Some(false) {
                Some(false)
            } else if x == Some(true) && y == Some(true) {
                Some(true)
            } else {
                None
            }
        }
        Expr::Or(a, b) => {
            let (x, y) = (truth(a, m), truth(b, m));
            if x == Some(true) || y == Some(true) {
                Some(true)
            } else if x == Some(false) && y == Some(false) {
                Some(false)
            } else {
                None
            }
        }
        Expr::Cmp(op, a, b) => value::compare(*op, &term_value(a, m)?, &term_value(b, m)?),
    }
}

/// Picks one triple per pattern in written order, abandoning a choice as
/// soon as it contradicts an earlier binding.
fn choose(
    patterns: &[TriplePattern],
    triples: &[Triple],
    m: Mapping,
    steps: &mut u64,
    out: &mut Vec<Mapping>,
) -> Result<(), SizeGuardExceeded> {
    let Some((pat, rest)) = patterns.split_first() else {
        // each kept mapping counts too, so the guard also bounds memory
        *steps += MAX_COMBINATIONS / MAX_MAPPINGS;
        if *steps > MAX_COMBINATIONS {
            return Err(SizeGuardExceeded { combinations: *steps });
        }
        out.push(m);
        return Ok(());
    };
    for t in triples {
        *steps += 1;
        if *steps > MAX_COMBINATIONS {
            return Err(SizeGuardExceeded { combinations: *steps });
        }
        let mut next = m.clone();
        if bind(&mut next, &pat.s, &t.subject) && bind(&mut next, &pat.p, &t.predicate) && bind(&mut next, &pat.o, &t.object) {
            choose(rest, triples, next, steps, out)?;
        }
    }
    Ok(())
}

fn eval(p: &GraphPattern, triples: &[Triple]) -> Result<Vec<Mapping>, SizeGuardExceeded> {
    Ok(match p {
        GraphPattern::Bgp(patterns) => {
            let mut out = Vec::new();
            let mut steps = 0;
            choose(patterns, triples, Mapping::new(), &mut steps, &mut out)?;
            out
        }
        GraphPattern::Join(a, b) => {
            let (l, r) = (eval(a, triples)?, eval(b, triples)?);
            let mut out = Vec::new();
            for x in &l {
                for y in &r {
                    if compatible(x, y) {
                        out.push(merged(x, y));
                    }
                }
            }
            out
        }
        GraphPattern::LeftJoin(a, b, f) => {
            let (l, r) = (eval(a, triples)?, eval(b, triples)?);
            let mut out = Vec::new();
            for x in &l {
                let ext: Vec<Mapping> = r
                    .iter()
                    .filter(|y| compatible(x, y))
                    .map(|y| merged(x, y))
                    .filter(|m| f.as_ref().is_none_or(|f| truth(f, m) == Some(true)))
                    .collect();
                if ext.is_empty() {
                    out.push(x.clone());
                } else {
                    out.extend(ext);
                }
            }
            out
        }
        GraphPattern::Union(a, b) => {
            let mut out = eval(a, triples)?;
            out.extend(eval(b, triples)?);
            out
        }
        GraphPattern::Filter(f, a) => eval(a, triples)?.into_iter().filter(|m| truth(f, m) == Some(true)).collect(),
    })
}

/// Evaluates by definition over all triples of the store.
pub fn brute_force_evaluate(query: &Query, store: &TripleStore) -> Result<OracleResult, SizeGuardExceeded> {
    let triples: Vec<Triple> = store.triples().collect();
    let solutions = eval(&query.pattern, &triples)?;
    if query.form == QueryForm::Ask {
        return Ok(OracleResult::Ask(!solutions.is_empty()));
    }
    let vars = query.projection();
    let mut keyed: Vec<(OracleRow, OracleRow)> = solutions
        .into_iter()
        .map(|m| {
            let keys = query.order_by.iter().map(|k| m.get(&k.var).cloned()).collect();
            let row = vars.iter().map(|v| m.get(v).cloned()).collect();
            (keys, row)
        })
        .collect();
    if !query.order_by.is_empty() {
        keyed.sort_by(|(ka, ra), (kb, rb)| {
            for (i, k) in query.order_by.iter().enumerate() {
                let o = value::order(ka[i].as_ref(), kb[i].as_ref());
                let o = if k.descending { o.reverse() } else { o };
                if o.is_ne() {
                    return o;
                }
            }
            ra.iter().zip(rb).map(|(x, y)| value::order(x.as_ref(), y.as_ref())).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
        });
    }
    let mut rows: Vec<Vec<Option<Term>>> = Vec::new();
    for (_, r) in keyed {
        if query.is_distinct() && rows.contains(&r) {
            continue;
        }
        rows.push(r);
    }
    let rows = rows.into_iter().skip(query.offset).take(query.limit.unwrap_or(usize::MAX)).collect();
    Ok(OracleResult::Select { vars, rows })
}

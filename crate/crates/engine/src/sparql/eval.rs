//! Pipelined evaluator over dictionary ids.
//!
//! Every operator evaluates `Join({row}, P)` for one input row and pushes
//! solutions into a sink, so bindings flow left to right into index lookups.
//! Pushing a row into `Filter` or `LeftJoin` is only done when it cannot
//! change what the filter or condition observes; otherwise the operator is
//! materialized once without input and joined with the row.

use std::cell::{Cell, RefCell};
use std::collections::{BTreeSet, HashMap, HashSet};
use std::rc::Rc;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;
use std::time::Instant;

use rdfbench_core::rdfmodel::Term;
use thiserror::Error;

use super::ast::{CmpOp, Expr, GraphPattern, Query, QueryForm, VarOrTerm};
use super::value;
use crate::store::{TermId, TripleStore};

/// Marks an unbound slot in a row.
pub const UNBOUND: TermId = TermId::MAX;

const MAX_VARS: usize = 128;
const POLL_INTERVAL: u32 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("evaluation cancelled")]
    Cancelled,
    #[error("memory budget of {limit} bytes exhausted")]
    MemoryExhausted { limit: usize },
    #[error("query uses more than {MAX_VARS} variables")]
    TooManyVariables,
}

/// Cooperative cancellation: an external flag plus an optional deadline.
#[derive(Debug, Clone, Default)]
pub struct CancelToken {
    flag: Arc<AtomicBool>,
    deadline: Option<Instant>,
}

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_deadline(deadline: Instant) -> Self {
        Self { flag: Arc::default(), deadline: Some(deadline) }
    }

    pub fn cancel(&self) {
        self.flag.store(true, AtomicOrdering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.flag.load(AtomicOrdering::Relaxed) || self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

#[derive(Debug, Clone, Default)]
pub struct EvalOptions {
    pub cancel: CancelToken,
    /// Budget in bytes for materialized intermediate and final results.
    pub memory_limit: Option<usize>,
}

/// Solution sequence over dictionary ids; [`UNBOUND`] marks missing values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solutions {
    pub vars: Vec<String>,
    pub rows: Vec<Box<[TermId]>>,
}

impl Solutions {
    /// Rows with ids resolved to terms.
    pub fn to_terms(&self, store: &TripleStore) -> Vec<Vec<Option<Term>>> {
        self.rows.iter().map(|r| r.iter().map(|&id| (id != UNBOUND).then(|| store.term(id).clone())).collect()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryResult {
    Select(Solutions),
    Ask(bool),
}

impl QueryResult {
    /// Row count of a SELECT result; 1 or 0 for ASK.
    pub fn len(&self) -> usize {
        match self {
            QueryResult::Select(s) => s.rows.len(),
            QueryResult::Ask(b) => usize::from(*b),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

type Mask = u128;
/// A materialized solution row.
type Row = Box<[TermId]>;

fn bit(slot: usize) -> Mask {
    1 << slot
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

type Sink<'s> = dyn FnMut(&[TermId]) -> Result<Flow, EvalError> + 's;

#[derive(Debug, Clone)]
enum Slot {
    Var(usize),
    /// `None` when the term does not occur in the store.
    Const(Option<TermId>),
}

#[derive(Debug, Clone)]
struct CPattern([Slot; 3]);

#[derive(Debug, Clone)]
enum CExpr {
    Var(usize),
    Const(Term),
    Or(Box<CExpr>, Box<CExpr>),
    And(Box<CExpr>, Box<CExpr>),
    Not(Box<CExpr>),
    Cmp(CmpOp, Box<CExpr>, Box<CExpr>),
    Bound(usize),
}

impl CExpr {
    fn vars(&self) -> Mask {
        match self {
            CExpr::Var(v) | CExpr::Bound(v) => bit(*v),
            CExpr::Const(_) => 0,
            CExpr::Or(a, b) | CExpr::And(a, b) | CExpr::Cmp(_, a, b) => a.vars() | b.vars(),
            CExpr::Not(a) => a.vars(),
        }
    }

    fn conjuncts(&self) -> Vec<CExpr> {
        match self {
            CExpr::And(a, b) => {
                let mut v = a.conjuncts();
                v.extend(b.conjuncts());
                v
            }
            e => vec![e.clone()],
        }
    }
}

/// A filter condition split into conjuncts.
#[derive(Debug)]
struct Cond {
    id: usize,
    conjuncts: Vec<CExpr>,
    vars: Mask,
}

#[derive(Debug)]
enum Node {
    Bgp { id: usize, patterns: Vec<CPattern>, vars: Mask, filters: Vec<CExpr> },
    Join(Box<Node>, Box<Node>),
    LeftJoin { id: usize, left: Box<Node>, right: Box<Node>, cond: Option<Cond>, left_certain: Mask, right_vars: Mask },
    Union(Box<Node>, Box<Node>),
    Filter { id: usize, cond: Cond, inner: Box<Node>, inner_certain: Mask },
}

impl Node {
    fn certain(&self) -> Mask {
        match self {
            Node::Bgp { vars, .. } => *vars,
            Node::Join(a, b) => a.certain() | b.certain(),
            Node::LeftJoin { left_certain, .. } => *left_certain,
            Node::Union(a, b) => a.certain() & b.certain(),
            Node::Filter { inner_certain, .. } => *inner_certain,
        }
    }

    fn vars(&self) -> Mask {
        match self {
            Node::Bgp { vars, filters, .. } => filters.iter().fold(*vars, |m, f| m | f.vars()),
            Node::Join(a, b) | Node::Union(a, b) => a.vars() | b.vars(),
            Node::LeftJoin { left, right_vars, .. } => left.vars() | right_vars,
            Node::Filter { cond, inner, .. } => cond.vars | inner.vars(),
        }
    }
}

struct Compiler<'a> {
    store: &'a TripleStore,
    slots: HashMap<String, usize>,
    next_id: usize,
}

impl Compiler<'_> {
    fn slot(&mut self, v: &str) -> Result<usize, EvalError> {
        if let Some(&s) = self.slots.get(v) {
            return Ok(s);
        }
        let s = self.slots.len();
        if s >= MAX_VARS {
            return Err(EvalError::TooManyVariables);
        }
        self.slots.insert(v.to_string(), s);
        Ok(s)
    }

    fn id(&mut self) -> usize {
        self.next_id += 1;
        self.next_id
    }

    fn expr(&mut self, e: &Expr) -> Result<CExpr, EvalError> {
        Ok(match e {
            Expr::Var(v) => CExpr::Var(self.slot(v)?),
            Expr::Bound(v) => CExpr::Bound(self.slot(v)?),
            Expr::Const(t) => CExpr::Const(t.clone()),
            Expr::Or(a, b) => CExpr::Or(Box::new(self.expr(a)?), Box::new(self.expr(b)?)),
            Expr::And(a, b) => CExpr::And(Box::new(self.expr(a)?), Box::new(self.expr(b)?)),
            Expr::Not(a) => CExpr::Not(Box::new(self.expr(a)?)),
            Expr::Cmp(op, a, b) => CExpr::Cmp(*op, Box::new(self.expr(a)?), Box::new(self.expr(b)?)),
        })
    }

    fn cond(&mut self, e: &Expr) -> Result<Cond, EvalError> {
        let c = self.expr(e)?;
        Ok(Cond { id: self.id(), vars: c.vars(), conjuncts: c.conjuncts() })
    }

    fn pattern(&mut self, p: &GraphPattern) -> Result<Node, EvalError> {
        Ok(match p {
            GraphPattern::Bgp(ts) => {
                let mut patterns = Vec::with_capacity(ts.len());
                let mut vars = 0;
                for t in ts {
                    let mut slot = |x: &VarOrTerm| -> Result<Slot, EvalError> {
                        Ok(match x {
                            VarOrTerm::Var(v) => {
                                let s = self.slot(v)?;
                                vars |= bit(s);
                                Slot::Var(s)
                            }
                            VarOrTerm::Term(t) => Slot::Const(self.store.id(t)),
                        })
                    };
                    patterns.push(CPattern([slot(&t.s)?, slot(&t.p)?, slot(&t.o)?]));
                }
                Node::Bgp { id: self.id(), patterns, vars, filters: Vec::new() }
            }
            GraphPattern::Join(a, b) => Node::Join(Box::new(self.pattern(a)?), Box::new(self.pattern(b)?)),
            GraphPattern::Union(a, b) => Node::Union(Box::new(self.pattern(a)?), Box::new(self.pattern(b)?)),
            GraphPattern::LeftJoin(a, b, f) => {
                let left = self.pattern(a)?;
                let right = self.pattern(b)?;
                let cond = f.as_ref().map(|f| self.cond(f)).transpose()?;
                let right_vars = right.vars() | cond.as_ref().map_or(0, |c| c.vars);
                Node::LeftJoin {
                    id: self.id(),
                    left_certain: left.certain(),
                    left: Box::new(left),
                    right: Box::new(right),
                    cond,
                    right_vars,
                }
            }
            GraphPattern::Filter(f, inner) => {
                let cond = self.cond(f)?;
                let inner = self.pattern(inner)?;
                match inner {
                    // a filter over its own variables sees the same values with
                    // or without input bindings
                    Node::Bgp { id, patterns, vars, mut filters } if cond.vars & !vars == 0 => {
                        filters.extend(cond.conjuncts);
                        Node::Bgp { id, patterns, vars, filters }
                    }
                    inner => Node::Filter { id: self.id(), inner_certain: inner.certain(), cond, inner: Box::new(inner) },
                }
            }
        })
    }
}

/// Operand of a comparison.
enum Operand<'a> {
    Id(TermId),
    Term(&'a Term),
    Owned(Term),
}

/// Join order and filter placement of a BGP for one set of bound slots.
#[derive(Debug)]
struct Plan {
    order: Vec<usize>,
    /// `filters_at[k]`: conjuncts checked before pattern `order[k]`
    /// (`k == order.len()` after the last one).
    filters_at: Vec<Vec<usize>>,
    /// `(from, to)`: copy a bound non-numeric value of `from` into unbound `to`.
    seeds: Vec<(usize, usize)>,
    /// `(const, to)` seeds; `None` constants make the BGP empty.
    const_seeds: Vec<(Option<TermId>, usize)>,
}

struct Ctx<'a> {
    store: &'a TripleStore,
    opts: &'a EvalOptions,
    ticks: Cell<u32>,
    used: Cell<usize>,
    plans: RefCell<HashMap<(usize, usize, Mask), Rc<Plan>>>,
    materialized: RefCell<HashMap<usize, Rc<Vec<Row>>>>,
    nvars: usize,
}

fn row_mask(row: &[TermId]) -> Mask {
    row.iter().enumerate().filter(|(_, &v)| v != UNBOUND).fold(0, |m, (i, _)| m | bit(i))
}

fn compatible(a: &[TermId], b: &[TermId]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == UNBOUND || y == UNBOUND || x == y)
}

fn merge(a: &[TermId], b: &[TermId], out: &mut Vec<TermId>) {
    out.clear();
    out.extend(a.iter().zip(b).map(|(&x, &y)| if x == UNBOUND { y } else { x }));
}

/// Slot of a `?x` operand.
fn var_of(e: &CExpr) -> Option<usize> {
    match e {
        CExpr::Var(v) => Some(*v),
        _ => None,
    }
}

impl<'a> Ctx<'a> {
    fn tick(&self) -> Result<(), EvalError> {
        let t = self.ticks.get().wrapping_add(1);
        self.ticks.set(t);
        if t.is_multiple_of(POLL_INTERVAL) && self.opts.cancel.is_cancelled() {
            return Err(EvalError::Cancelled);
        }
        Ok(())
    }

    fn charge(&self, bytes: usize) -> Result<(), EvalError> {
        let used = self.used.get() + bytes;
        self.used.set(used);
        match self.opts.memory_limit {
            Some(limit) if used > limit => Err(EvalError::MemoryExhausted { limit }),
            _ => Ok(()),
        }
    }

    fn row_bytes(&self) -> usize {
        self.nvars * std::mem::size_of::<TermId>() + 32
    }

    fn term(&self, id: TermId) -> &'a Term {
        self.store.term(id)
    }

    fn operand<'e>(&self, e: &'e CExpr, row: &[TermId]) -> Option<Operand<'e>>
    where
        'a: 'e,
    {
        match e {
            CExpr::Var(v) => (row[*v] != UNBOUND).then(|| Operand::Id(row[*v])),
            CExpr::Const(t) => Some(Operand::Term(t)),
            e => self.ebv(e, row).map(|b| Operand::Owned(value::boolean(b))),
        }
    }

    fn resolve<'o>(&self, o: &'o Operand<'o>) -> &'o Term
    where
        'a: 'o,
    {
        match o {
            Operand::Id(id) => self.term(*id),
            Operand::Term(t) => t,
            Operand::Owned(t) => t,
        }
    }

    /// Effective boolean value with errors as `None`.
    fn ebv(&self, e: &CExpr, row: &[TermId]) -> Option<bool> {
        match e {
            CExpr::Bound(v) => Some(row[*v] != UNBOUND),
            CExpr::Var(v) => (row[*v] != UNBOUND).then(|| value::ebv(self.term(row[*v]))).flatten(),
            CExpr::Const(t) => value::ebv(t),
            CExpr::Not(a) => self.ebv(a, row).map(|b| !b),
            CExpr::And(a, b) => match (self.ebv(a, row), self.ebv(b, row)) {
                (Some(false), _) | (_, Some(false)) => Some(false),
                (Some(true), Some(true)) => Some(true),
                _ => None,
            },
            CExpr::Or(a, b) => match (self.ebv(a, row), self.ebv(b, row)) {
                (Some(true), _) | (_, Some(true)) => Some(true),
                (Some(false), Some(false)) => Some(false),
                _ => None,
            },
            CExpr::Cmp(op, a, b) => {
                let x = self.operand(a, row)?;
                let y = self.operand(b, row)?;
                if let (Operand::Id(i), Operand::Id(j), CmpOp::Eq | CmpOp::Ne) = (&x, &y, op) {
                    if i == j && value::numeric_value(self.term(*i)).is_none() {
                        return Some(*op == CmpOp::Eq);
                    }
                }
                value::compare(*op, self.resolve(&x), self.resolve(&y))
            }
        }
    }

    fn passes(&self, conjuncts: &[CExpr], row: &[TermId]) -> bool {
        conjuncts.iter().all(|c| self.ebv(c, row) == Some(true))
    }

    fn is_numeric(&self, id: TermId) -> bool {
        value::numeric_value(self.term(id)).is_some()
    }

    fn eval(&self, node: &Node, row: &[TermId], sink: &mut Sink<'_>) -> Result<Flow, EvalError> {
        match node {
            Node::Bgp { id, patterns, vars, filters } => self.eval_bgp(*id, patterns, *vars, filters, None, row, sink),
            Node::Join(a, b) => self.eval(a, row, &mut |r| self.eval(b, r, sink)),
            Node::Union(a, b) => {
                if self.eval(a, row, sink)? == Flow::Stop {
                    return Ok(Flow::Stop);
                }
                self.eval(b, row, sink)
            }
            Node::LeftJoin { id, left, right, cond, left_certain, right_vars } => {
                if row_mask(row) & right_vars & !left_certain == 0 {
                    self.eval(left, row, &mut |a| self.extend_optional(right, cond.as_ref(), a, sink))
                } else {
                    self.join_materialized(*id, node, row, sink)
                }
            }
            Node::Filter { id, cond, inner, inner_certain } => {
                if row_mask(row) & cond.vars & !inner_certain == 0 {
                    self.eval_filtered(inner, cond, row, sink)
                } else {
                    self.join_materialized(*id, node, row, sink)
                }
            }
        }
    }

    /// Solutions of `inner` joined with `row` on which every conjunct holds.
    fn eval_filtered(&self, inner: &Node, cond: &Cond, row: &[TermId], sink: &mut Sink<'_>) -> Result<Flow, EvalError> {
        match inner {
            Node::Bgp { id, patterns, vars, filters } => self.eval_bgp(*id, patterns, *vars, filters, Some(cond), row, sink),
            Node::LeftJoin { right, cond: lj_cond, left, left_certain, right_vars, .. }
                if row_mask(row) & right_vars & !left_certain == 0 && self.negates_extension(cond, right) =>
            {
                // rows extended by the optional side bind a variable the filter
                // requires unbound; only unextended rows can pass
                self.eval(left, row, &mut |a| {
                    let mut found = false;
                    self.eval_right(right, lj_cond.as_ref(), a, &mut |_| {
                        found = true;
                        Ok(Flow::Stop)
                    })?;
                    if !found && self.passes(&cond.conjuncts, a) {
                        return sink(a);
                    }
                    Ok(Flow::Continue)
                })
            }
            _ => self.eval(inner, row, &mut |r| if self.passes(&cond.conjuncts, r) { sink(r) } else { Ok(Flow::Continue) }),
        }
    }

    fn negates_extension(&self, cond: &Cond, right: &Node) -> bool {
        let certain = right.certain();
        cond.conjuncts.iter().any(|c| match c {
            CExpr::Not(inner) => matches!(inner.as_ref(), CExpr::Bound(v) if certain & bit(*v) != 0),
            _ => false,
        })
    }

    /// Right side of an optional for one left row, restricted by the condition.
    fn eval_right(&self, right: &Node, cond: Option<&Cond>, a: &[TermId], sink: &mut Sink<'_>) -> Result<Flow, EvalError> {
        match cond {
            None => self.eval(right, a, sink),
            // the condition is evaluated on merged rows, so it may see `a`
            Some(c) => self.eval_filtered(right, c, a, sink),
        }
    }

    fn extend_optional(&self, right: &Node, cond: Option<&Cond>, a: &[TermId], sink: &mut Sink<'_>) -> Result<Flow, EvalError> {
        let mut found = false;
        let flow = self.eval_right(right, cond, a, &mut |b| {
            found = true;
            sink(b)
        })?;
        if flow == Flow::Stop {
            return Ok(Flow::Stop);
        }
        if !found {
            return sink(a);
        }
        Ok(Flow::Continue)
    }

    /// Evaluates `node` without input once, then joins its solutions with `row`.
    fn join_materialized(&self, id: usize, node: &Node, row: &[TermId], sink: &mut Sink<'_>) -> Result<Flow, EvalError> {
        let cached = self.materialized.borrow().get(&id).cloned();
        let rows = match cached {
            Some(r) => r,
            None => {
                let empty = vec![UNBOUND; self.nvars];
                let mut rows = Vec::new();
                let bytes = self.row_bytes();
                match node {
                    Node::LeftJoin { left, right, cond, .. } => {
                        self.eval(left, &empty, &mut |a| {
                            self.extend_optional(right, cond.as_ref(), a, &mut |r| {
                                self.charge(bytes)?;
                                rows.push(r.into());
                                Ok(Flow::Continue)
                            })
                        })?;
                    }
                    Node::Filter { cond, inner, .. } => {
                        self.eval_filtered(inner, cond, &empty, &mut |r| {
                            self.charge(bytes)?;
                            rows.push(r.into());
                            Ok(Flow::Continue)
                        })?;
                    }
                    _ => unreachable!("only filters and optionals are materialized"),
                }
                let rows = Rc::new(rows);
                self.materialized.borrow_mut().insert(id, rows.clone());
                rows
            }
        };
        let mut buf = Vec::with_capacity(self.nvars);
        for r in rows.iter() {
            self.tick()?;
            if compatible(row, r) {
                merge(row, r, &mut buf);
                if sink(&buf)? == Flow::Stop {
                    return Ok(Flow::Stop);
                }
            }
        }
        Ok(Flow::Continue)
    }

    fn plan(&self, id: usize, patterns: &[CPattern], vars: Mask, filters: &[CExpr], extra: Option<&Cond>, bound: Mask) -> Rc<Plan> {
        let key = (id, extra.map_or(0, |c| c.id), bound);
        if let Some(p) = self.plans.borrow().get(&key) {
            return p.clone();
        }
        let conjuncts: Vec<&CExpr> = filters.iter().chain(extra.into_iter().flat_map(|c| c.conjuncts.iter())).collect();

        let mut seeds = Vec::new();
        let mut const_seeds = Vec::new();
        for c in &conjuncts {
            if let CExpr::Cmp(CmpOp::Eq, a, b) = c {
                match (var_of(a), var_of(b), a.as_ref(), b.as_ref()) {
                    (Some(x), Some(y), _, _) => {
                        if vars & bit(y) != 0 {
                            seeds.push((x, y));
                        }
                        if vars & bit(x) != 0 {
                            seeds.push((y, x));
                        }
                    }
                    (Some(x), None, _, CExpr::Const(t)) | (None, Some(x), CExpr::Const(t), _)
                        if vars & bit(x) != 0 && value::numeric_value(t).is_none() =>
                    {
                        const_seeds.push((self.store.id(t), x));
                    }
                    _ => {}
                }
            }
        }

        // seeded slots count as bound for ordering only
        let closure = |mut m: Mask| loop {
            let before = m;
            for &(from, to) in &seeds {
                if m & bit(from) != 0 {
                    m |= bit(to);
                }
            }
            if m == before {
                return m;
            }
        };
        let mut seeded = closure(bound | const_seeds.iter().fold(0, |m, &(_, x)| m | bit(x)));
        let mut settled = bound;
        let mut remaining: Vec<usize> = (0..patterns.len()).collect();
        let mut order = Vec::with_capacity(patterns.len());
        let mut filters_at = vec![Vec::new(); patterns.len() + 1];
        let mut placed = vec![false; conjuncts.len()];
        let place = |k: usize, settled: Mask, placed: &mut Vec<bool>, filters_at: &mut Vec<Vec<usize>>| {
            for (i, c) in conjuncts.iter().enumerate() {
                // slots outside the BGP never change here
                if !placed[i] && c.vars() & vars & !settled == 0 {
                    placed[i] = true;
                    filters_at[k].push(i);
                }
            }
        };
        place(0, settled, &mut placed, &mut filters_at);
        while !remaining.is_empty() {
            let (pos, &best) = remaining
                .iter()
                .enumerate()
                .min_by_key(|(_, &i)| {
                    let mut consts = [None; 3];
                    let mut nbound = 0;
                    let mut shares = false;
                    let mut missing = false;
                    for (j, s) in patterns[i].0.iter().enumerate() {
                        match s {
                            Slot::Const(Some(id)) => {
                                consts[j] = Some(*id);
                                nbound += 1;
                            }
                            Slot::Const(None) => missing = true,
                            Slot::Var(v) if seeded & bit(*v) != 0 => {
                                nbound += 1;
                                shares = true;
                            }
                            Slot::Var(_) => {}
                        }
                    }
                    let est = if missing { 0 } else { self.store.count_ids(consts[0], consts[1], consts[2]) };
                    (est != 0, seeded != 0 && !shares, 3 - nbound, est)
                })
                .expect("non-empty");
            remaining.remove(pos);
            order.push(best);
            for s in &patterns[best].0 {
                if let Slot::Var(v) = s {
                    settled |= bit(*v);
                    seeded |= bit(*v);
                }
            }
            seeded = closure(seeded);
            place(order.len(), settled, &mut placed, &mut filters_at);
        }
        let plan = Rc::new(Plan { order, filters_at, seeds, const_seeds });
        self.plans.borrow_mut().insert(key, plan.clone());
        plan
    }

    #[allow(clippy::too_many_arguments)]
    fn eval_bgp(
        &self,
        id: usize,
        patterns: &[CPattern],
        vars: Mask,
        filters: &[CExpr],
        extra: Option<&Cond>,
        row: &[TermId],
        sink: &mut Sink<'_>,
    ) -> Result<Flow, EvalError> {
        if patterns.iter().any(|p| p.0.iter().any(|s| matches!(s, Slot::Const(None)))) {
            return Ok(Flow::Continue);
        }
        let plan = self.plan(id, patterns, vars, filters, extra, row_mask(row));
        let conjuncts: Vec<&CExpr> = filters.iter().chain(extra.into_iter().flat_map(|c| c.conjuncts.iter())).collect();
        let mut buf = row.to_vec();
        let mut seeded = Vec::new();
        for &(c, to) in &plan.const_seeds {
            if buf[to] == UNBOUND {
                match c {
                    None => return Ok(Flow::Continue),
                    Some(c) => {
                        buf[to] = c;
                        seeded.push(to);
                    }
                }
            }
        }
        self.apply_seeds(&plan, &mut buf, &mut seeded);
        let bgp = Bgp { patterns, plan: &plan, conjuncts: &conjuncts };
        self.dfs(&bgp, 0, &mut buf, sink)
    }

    fn apply_seeds(&self, plan: &Plan, buf: &mut [TermId], out: &mut Vec<usize>) {
        loop {
            let mut changed = false;
            for &(from, to) in &plan.seeds {
                if buf[from] != UNBOUND && buf[to] == UNBOUND && !self.is_numeric(buf[from]) {
                    buf[to] = buf[from];
                    out.push(to);
                    changed = true;
                }
            }
            if !changed {
                return;
            }
        }
    }

    fn dfs(&self, bgp: &Bgp<'_>, k: usize, buf: &mut [TermId], sink: &mut Sink<'_>) -> Result<Flow, EvalError> {
        for &f in &bgp.plan.filters_at[k] {
            if self.ebv(bgp.conjuncts[f], buf) != Some(true) {
                return Ok(Flow::Continue);
            }
        }
        if k == bgp.plan.order.len() {
            return sink(buf);
        }
        let pat = &bgp.patterns[bgp.plan.order[k]].0;
        let lookup = |s: &Slot| match s {
            Slot::Const(c) => *c,
            Slot::Var(v) => (buf[*v] != UNBOUND).then_some(buf[*v]),
        };
        let (s, p, o) = (lookup(&pat[0]), lookup(&pat[1]), lookup(&pat[2]));
        let mut newly = Vec::with_capacity(6);
        for t in self.store.match_ids(s, p, o) {
            self.tick()?;
            let mut ok = true;
            for (j, slot) in pat.iter().enumerate() {
                if let Slot::Var(v) = slot {
                    if buf[*v] == UNBOUND {
                        buf[*v] = t[j];
                        newly.push(*v);
                    } else if buf[*v] != t[j] {
                        ok = false;
                        break;
                    }
                }
            }
            let mut flow = Flow::Continue;
            if ok {
                self.apply_seeds(bgp.plan, buf, &mut newly);
                flow = self.dfs(bgp, k + 1, buf, sink)?;
            }
            for v in newly.drain(..) {
                buf[v] = UNBOUND;
            }
            if flow == Flow::Stop {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }
}

struct Bgp<'b> {
    patterns: &'b [CPattern],
    plan: &'b Plan,
    conjuncts: &'b [&'b CExpr],
}

/// Evaluates a query against a store.
pub fn evaluate(query: &Query, store: &TripleStore, opts: &EvalOptions) -> Result<QueryResult, EvalError> {
    let mut compiler = Compiler { store, slots: HashMap::new(), next_id: 0 };
    let root = compiler.pattern(&query.pattern)?;
    let projection = query.projection();
    let proj: Vec<usize> = projection.iter().map(|v| compiler.slot(v)).collect::<Result<_, _>>()?;
    let order: Vec<(usize, bool)> =
        query.order_by.iter().map(|k| Ok((compiler.slot(&k.var)?, k.descending))).collect::<Result<_, EvalError>>()?;
    let nvars = compiler.slots.len();
    let ctx =
        Ctx { store, opts, ticks: Cell::new(0), used: Cell::new(0), plans: RefCell::default(), materialized: RefCell::default(), nvars };
    let empty = vec![UNBOUND; nvars];
    if opts.cancel.is_cancelled() {
        return Err(EvalError::Cancelled);
    }

    if query.form == QueryForm::Ask {
        let mut found = false;
        ctx.eval(&root, &empty, &mut |_| {
            found = true;
            Ok(Flow::Stop)
        })?;
        return Ok(QueryResult::Ask(found));
    }

    let distinct = query.is_distinct();
    let row_bytes = proj.len() * std::mem::size_of::<TermId>() + if distinct { 64 } else { 32 };
    let mut rows: Vec<Box<[TermId]>> = Vec::new();
    let mut seen: HashSet<Box<[TermId]>> = HashSet::new();
    let project = |r: &[TermId]| -> Box<[TermId]> { proj.iter().map(|&s| r[s]).collect() };

    if order.is_empty() {
        let wanted = query.limit.map(|l| l.saturating_add(query.offset));
        let mut skipped = 0;
        if wanted != Some(0) {
            ctx.eval(&root, &empty, &mut |r| {
                let p = project(r);
                if distinct && !seen.insert(p.clone()) {
                    return Ok(Flow::Continue);
                }
                ctx.charge(row_bytes)?;
                if skipped < query.offset {
                    skipped += 1;
                } else {
                    rows.push(p);
                }
                Ok(if wanted.is_some_and(|w| skipped + rows.len() >= w) { Flow::Stop } else { Flow::Continue })
            })?;
        }
    } else {
        // order keys first, then projected columns as tie-breakers
        let key_slots: Vec<usize> = order.iter().map(|&(s, _)| s).chain(proj.iter().copied()).collect();
        let desc: Vec<bool> = order.iter().map(|&(_, d)| d).chain(proj.iter().map(|_| false)).collect();
        let mut keyed: Vec<Box<[TermId]>> = Vec::new();
        let key_bytes = key_slots.len() * std::mem::size_of::<TermId>() + 32;
        ctx.eval(&root, &empty, &mut |r| {
            ctx.charge(key_bytes)?;
            keyed.push(key_slots.iter().map(|&s| r[s]).collect());
            Ok(Flow::Continue)
        })?;
        let term = |id: TermId| (id != UNBOUND).then(|| store.term(id));
        let cmp = |a: &[TermId], b: &[TermId]| {
            for (i, &d) in desc.iter().enumerate() {
                let o = if a[i] == b[i] { std::cmp::Ordering::Equal } else { value::order(term(a[i]), term(b[i])) };
                if o != std::cmp::Ordering::Equal {
                    return if d { o.reverse() } else { o };
                }
            }
            std::cmp::Ordering::Equal
        };
        if !distinct {
            if let Some(l) = query.limit {
                let k = l.saturating_add(query.offset);
                if k < keyed.len() {
                    if k == 0 {
                        keyed.clear();
                    } else {
                        keyed.select_nth_unstable_by(k - 1, |a, b| cmp(a, b));
                        keyed.truncate(k);
                    }
                }
            }
        }
        keyed.sort_by(|a, b| cmp(a, b));
        let nkeys = order.len();
        let mut skipped = 0;
        for k in keyed {
            ctx.tick()?;
            let p: Box<[TermId]> = k[nkeys..].into();
            if distinct && !seen.insert(p.clone()) {
                continue;
            }
            if skipped < query.offset {
                skipped += 1;
                continue;
            }
            if query.limit.is_some_and(|l| rows.len() >= l) {
                break;
            }
            rows.push(p);
        }
    }
    Ok(QueryResult::Select(Solutions { vars: projection, rows }))
}

/// Variables of the pattern as a sorted set.
pub fn pattern_vars(p: &GraphPattern) -> BTreeSet<String> {
    let mut s = BTreeSet::new();
    p.vars(&mut s);
    s
}

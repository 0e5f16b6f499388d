//! Query syntax tree, already translated to algebra form.

use std::collections::BTreeSet;
use std::fmt;

use rdfbench_core::rdfmodel::term::write_term;
use rdfbench_core::rdfmodel::Term;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VarOrTerm {
    Var(String),
    Term(Term),
}

impl VarOrTerm {
    pub fn var(&self) -> Option<&str> {
        match self {
            VarOrTerm::Var(v) => Some(v),
            VarOrTerm::Term(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub s: VarOrTerm,
    pub p: VarOrTerm,
    pub o: VarOrTerm,
}

impl TriplePattern {
    pub fn positions(&self) -> [&VarOrTerm; 3] {
        [&self.s, &self.p, &self.o]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Var(String),
    Const(Term),
    Or(Box<Expr>, Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
    Cmp(CmpOp, Box<Expr>, Box<Expr>),
    Bound(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Gt => ">",
            CmpOp::Le => "<=",
            CmpOp::Ge => ">=",
        }
    }
}

impl Expr {
    pub fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Var(v) | Expr::Bound(v) => {
                out.insert(v.clone());
            }
            Expr::Const(_) => {}
            Expr::Or(a, b) | Expr::And(a, b) | Expr::Cmp(_, a, b) => {
                a.vars(out);
                b.vars(out);
            }
            Expr::Not(a) => a.vars(out),
        }
    }

    /// Top-level `&&` operands.
    pub fn conjuncts(&self) -> Vec<&Expr> {
        match self {
            Expr::And(a, b) => {
                let mut v = a.conjuncts();
                v.extend(b.conjuncts());
                v
            }
            e => vec![e],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphPattern {
    Bgp(Vec<TriplePattern>),
    Join(Box<GraphPattern>, Box<GraphPattern>),
    LeftJoin(Box<GraphPattern>, Box<GraphPattern>, Option<Expr>),
    Union(Box<GraphPattern>, Box<GraphPattern>),
    Filter(Expr, Box<GraphPattern>),
}

impl GraphPattern {
    /// Every variable mentioned anywhere in the pattern.
    pub fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            GraphPattern::Bgp(ts) => {
                for t in ts {
                    for p in t.positions() {
                        if let Some(v) = p.var() {
                            out.insert(v.to_string());
                        }
                    }
                }
            }
            GraphPattern::Join(a, b) | GraphPattern::Union(a, b) => {
                a.vars(out);
                b.vars(out);
            }
            GraphPattern::LeftJoin(a, b, f) => {
                a.vars(out);
                b.vars(out);
                if let Some(f) = f {
                    f.vars(out);
                }
            }
            GraphPattern::Filter(f, p) => {
                f.vars(out);
                p.vars(out);
            }
        }
    }

    /// Variables bound in every solution of the pattern.
    pub fn certain_vars(&self) -> BTreeSet<String> {
        match self {
            GraphPattern::Bgp(_) => {
                let mut s = BTreeSet::new();
                self.vars(&mut s);
                s
            }
            GraphPattern::Join(a, b) => {
                let mut s = a.certain_vars();
                s.extend(b.certain_vars());
                s
            }
            GraphPattern::LeftJoin(a, _, _) | GraphPattern::Filter(_, a) => a.certain_vars(),
            GraphPattern::Union(a, b) => {
                let b = b.certain_vars();
                a.certain_vars().into_iter().filter(|v| b.contains(v)).collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryForm {
    /// `None` projects every pattern variable (`SELECT *`).
    Select {
        vars: Option<Vec<String>>,
        distinct: bool,
    },
    Ask,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderKey {
    pub var: String,
    pub descending: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Query {
    pub form: QueryForm,
    pub pattern: GraphPattern,
    pub order_by: Vec<OrderKey>,
    pub limit: Option<usize>,
    pub offset: usize,
}

impl Query {
    /// Output variables in column order.
    pub fn projection(&self) -> Vec<String> {
        match &self.form {
            QueryForm::Select { vars: Some(v), .. } => v.clone(),
            QueryForm::Select { vars: None, .. } => {
                let mut s = BTreeSet::new();
                self.pattern.vars(&mut s);
                s.into_iter().collect()
            }
            QueryForm::Ask => Vec::new(),
        }
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self.form, QueryForm::Select { distinct: true, .. })
    }
}

// Serialization back to query text, with full IRIs. Parsing the output yields
// an equal tree.

struct TermText<'a>(&'a Term);

impl fmt::Display for TermText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_term(&mut s, self.0);
        f.write_str(&s)
    }
}

impl fmt::Display for VarOrTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarOrTerm::Var(v) => write!(f, "?{v}"),
            VarOrTerm::Term(t) => write!(f, "{}", TermText(t)),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(v) => write!(f, "?{v}"),
            Expr::Const(t) => write!(f, "{}", TermText(t)),
            Expr::Or(a, b) => write!(f, "({a} || {b})"),
            Expr::And(a, b) => write!(f, "({a} && {b})"),
            Expr::Not(a) => write!(f, "!({a})"),
            Expr::Cmp(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Expr::Bound(v) => write!(f, "bound(?{v})"),
        }
    }
}

fn write_group(f: &mut fmt::Formatter<'_>, p: &GraphPattern) -> fmt::Result {
    f.write_str("{ ")?;
    write_inner(f, p)?;
    f.write_str("}")
}

fn write_inner(f: &mut fmt::Formatter<'_>, p: &GraphPattern) -> fmt::Result {
    match p {
        GraphPattern::Bgp(ts) => {
            for t in ts {
                write!(f, "{} {} {} . ", t.s, t.p, t.o)?;
            }
            Ok(())
        }
        GraphPattern::Join(a, b) => {
            write_group(f, a)?;
            f.write_str(" ")?;
            write_group(f, b)?;
            f.write_str(" ")
        }
        GraphPattern::LeftJoin(a, b, e) => {
            write_group(f, a)?;
            f.write_str(" OPTIONAL { ")?;
            write_group(f, b)?;
            if let Some(e) = e {
                write!(f, " FILTER ({e})")?;
            }
            f.write_str(" } ")
        }
        GraphPattern::Union(a, b) => {
            write_group(f, a)?;
            f.write_str(" UNION ")?;
            write_group(f, b)?;
            f.write_str(" ")
        }
        GraphPattern::Filter(e, a) => {
            write_group(f, a)?;
            write!(f, " FILTER ({e}) ")
        }
    }
}

impl fmt::Display for GraphPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_group(f, self)
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            QueryForm::Ask => f.write_str("ASK ")?,
            QueryForm::Select { vars, distinct } => {
                f.write_str("SELECT ")?;
                if *distinct {
                    f.write_str("DISTINCT ")?;
                }
                match vars {
                    None => f.write_str("* ")?,
                    Some(vs) => {
                        for v in vs {
                            write!(f, "?{v} ")?;
                        }
                    }
                }
                f.write_str("WHERE ")?;
            }
        }
        write!(f, "{}", self.pattern)?;
        if !self.order_by.is_empty() {
            f.write_str(" ORDER BY")?;
            for k in &self.order_by {
                if k.descending {
                    write!(f, " DESC(?{})", k.var)?;
                } else {
                    write!(f, " ?{}", k.var)?;
                }
            }
        }
        if let Some(l) = self.limit {
            write!(f, " LIMIT {l}")?;
        }
        if self.offset > 0 {
            write!(f, " OFFSET {}", self.offset)?;
        }
        Ok(())
    }
}

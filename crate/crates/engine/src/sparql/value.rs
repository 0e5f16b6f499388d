//! Term-level semantics shared by the evaluator and the oracle: numeric
//! coercion, comparison operators, effective boolean value, and the total
//! ORDER BY order.

use std::cmp::Ordering;

use rdfbench_core::rdfmodel::vocab::XSD;
use rdfbench_core::rdfmodel::Term;

use super::ast::CmpOp;

const NUMERIC_TYPES: [&str; 16] = [
    "integer",
    "decimal",
    "double",
    "float",
    "int",
    "long",
    "short",
    "byte",
    "nonNegativeInteger",
    "positiveInteger",
    "nonPositiveInteger",
    "negativeInteger",
    "unsignedInt",
    "unsignedLong",
    "unsignedShort",
    "unsignedByte",
];

/// Value of a literal whose datatype is an XSD numeric type and whose lexical
/// form parses.
pub fn numeric_value(t: &Term) -> Option<f64> {
    let Term::Literal { lex, datatype: Some(dt) } = t else {
        return None;
    };
    let local = dt.strip_prefix(XSD)?;
    if !NUMERIC_TYPES.contains(&local) {
        return None;
    }
    lex.trim().parse::<f64>().ok()
}

/// Plain or `xsd:string` literal.
pub fn string_value(t: &Term) -> Option<&str> {
    match t {
        Term::Literal { lex, datatype: None } => Some(lex),
        Term::Literal { lex, datatype: Some(dt) } if dt.strip_prefix(XSD) == Some("string") => Some(lex),
        _ => None,
    }
}

/// `None` is a type error. Numerics compare by value; `=`/`!=` otherwise use
/// term identity; ordering operators also accept two strings (codepoint order).
pub fn compare(op: CmpOp, a: &Term, b: &Term) -> Option<bool> {
    let ord = match (numeric_value(a), numeric_value(b)) {
        (Some(x), Some(y)) => x.partial_cmp(&y),
        _ => match op {
            CmpOp::Eq => return Some(a == b),
            CmpOp::Ne => return Some(a != b),
            _ => match (string_value(a), string_value(b)) {
                (Some(x), Some(y)) => Some(x.cmp(y)),
                _ => None,
            },
        },
    };
    let Some(ord) = ord else {
        // NaN is unequal to everything and unordered
        return match op {
            CmpOp::Eq => Some(false),
            CmpOp::Ne => Some(true),
            _ => None,
        };
    };
    Some(match op {
        CmpOp::Eq => ord == Ordering::Equal,
        CmpOp::Ne => ord != Ordering::Equal,
        CmpOp::Lt => ord == Ordering::Less,
        CmpOp::Gt => ord == Ordering::Greater,
        CmpOp::Le => ord != Ordering::Greater,
        CmpOp::Ge => ord != Ordering::Less,
    })
}

pub const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";

pub fn boolean(b: bool) -> Term {
    Term::typed(if b { "true" } else { "false" }, XSD_BOOLEAN)
}

/// Effective boolean value; `None` is a type error.
pub fn ebv(t: &Term) -> Option<bool> {
    if let Term::Literal { lex, datatype: Some(dt) } = t {
        if dt == XSD_BOOLEAN {
            return match lex.as_str() {
                "true" | "1" => Some(true),
                "false" | "0" => Some(false),
                _ => None,
            };
        }
    }
    if let Some(v) = numeric_value(t) {
        return Some(v != 0.0 && !v.is_nan());
    }
    string_value(t).map(|s| !s.is_empty())
}

fn kind_rank(t: Option<&Term>) -> u8 {
    match t {
        None => 0,
        Some(Term::Blank(_)) => 1,
        Some(Term::Iri(_)) => 2,
        Some(Term::Literal { .. }) => 3,
    }
}

/// Total order: unbound < blank < IRI < literal. Numeric literals precede
/// other literals and are ordered by value; remaining literals by datatype,
/// then lexical form.
pub fn order(a: Option<&Term>, b: Option<&Term>) -> Ordering {
    let (ra, rb) = (kind_rank(a), kind_rank(b));
    if ra != rb {
        return ra.cmp(&rb);
    }
    let (Some(a), Some(b)) = (a, b) else {
        return Ordering::Equal;
    };
    match (a, b) {
        (Term::Literal { lex: la, datatype: da }, Term::Literal { lex: lb, datatype: db }) => match (numeric_value(a), numeric_value(b)) {
            (Some(x), Some(y)) => x.total_cmp(&y).then_with(|| da.cmp(db)).then_with(|| la.cmp(lb)),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => da.cmp(db).then_with(|| la.cmp(lb)),
        },
        _ => a.value().cmp(b.value()),
    }
}

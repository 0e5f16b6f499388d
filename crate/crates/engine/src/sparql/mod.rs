//! SPARQL subset: parsing, algebra evaluation, a definitional oracle, and
//! result serialization.

pub mod ast;
pub mod eval;
pub mod oracle;
pub mod parser;
pub mod results;
pub mod value;

pub use ast::Query;
pub use eval::{evaluate, CancelToken, EvalError, EvalOptions, QueryResult, Solutions, UNBOUND};
pub use parser::{parse, ParseError};

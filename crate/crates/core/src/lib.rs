//! Statistical model, RDF mapping and year-by-year simulation behind the
//! synthetic bibliography documents.

pub mod classes;
pub mod distributions;
pub mod error;
pub mod rdfmodel;
pub mod rng;
pub mod worldsim;

pub use classes::{Attribute, AttributeSet, DocumentClass};
pub use error::{GenerateError, NTriplesError, ParamError};
pub use rng::RngState;

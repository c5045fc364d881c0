//! Four-valued belief querying over RDF-star graphs.

pub mod algebra;
pub mod belief;
pub mod differential;
pub mod fixtures;
pub mod gen;
pub mod logic;
pub mod model;
pub mod oracle;
pub mod semiring;
pub mod syntax;

pub use algebra::{eval, EvalError, EvalMode, FourRelation, Mapping, Query};
pub use belief::BeliefQuery;
pub use logic::{FourOperator, FourValue};
pub use model::{BeliefVocabulary, FourGraph, Iri, StarTriple, Term, TriplePattern, Variable};

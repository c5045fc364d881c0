//! Solution mappings, four-valued relations, and query evaluation.

mod eval;
mod krel;
mod mapping;
mod query;
mod relation;

pub use eval::{eval, query_universe, EvalError, EvalMode, Evaluator, DEFAULT_ENUMERATION_LIMIT};
pub use krel::{eval_k, KGraph, KQuery, KRelation};
pub use mapping::{Assignments, Mapping, Universe};
pub use query::{eval_formula, FilterFormula, IllFormedQuery, Operand, Query, TruthValue3};
pub use relation::{Domain, FourRelation};

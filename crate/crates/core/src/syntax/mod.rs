//! Concrete syntax: graph files, user queries, and result output.

mod desugar;
mod graph;
mod lexer;
mod output;
mod query;

use thiserror::Error;

pub use desugar::{desugar, DesugarError};
pub use graph::{parse_graph, render_graph, GraphError};
pub use lexer::Pos;
pub use output::{serialize_relation, Format, TermStyle};
pub use query::{parse_query, BodyItem, HolderRef, Projection, UserCond, UserQuery};

use crate::algebra::Query;

/// Where parsing stopped, what it wanted there, and what it found.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: expected {expected}, found {found}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    IllFormed(#[from] DesugarError),
}

/// Parses and desugars `text`, resolving local names against `base`.
pub fn compile_query(text: &str, base: &str) -> Result<Query, QueryError> {
    Ok(desugar(&parse_query(text, base)?)?)
}

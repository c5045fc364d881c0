//! Seeded differential runs of an engine against the oracle.

use std::fmt;

use crate::algebra::{EvalError, FourRelation, Query};
use crate::gen::{Fragment, Generator};
use crate::model::{BeliefVocabulary, FourGraph};
use crate::oracle::{diff, oracle_eval_with_cap, Disagreement, OracleError};

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub case: usize,
    pub query: Query,
    pub graph: FourGraph,
    pub problem: Problem,
}

#[derive(Debug, Clone)]
pub enum Problem {
    Disagreements(Vec<Disagreement>),
    EngineError(EvalError),
    Shape(String),
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "case {}", self.case)?;
        writeln!(f, "query: {}", self.query)?;
        writeln!(f, "graph: default {}", self.graph.default_value())?;
        for (t, v) in self.graph.exceptions() {
            writeln!(f, "  {t} -> {v}")?;
        }
        match &self.problem {
            Problem::Disagreements(ds) => {
                writeln!(f, "{} disagreement(s):", ds.len())?;
                for d in ds.iter().take(10) {
                    writeln!(f, "  {d}")?;
                }
                Ok(())
            }
            Problem::EngineError(e) => writeln!(f, "engine failed: {e}"),
            Problem::Shape(s) => writeln!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub agreed: usize,
    pub skipped: usize,
    pub counterexample: Option<Counterexample>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Runs `cases` random (query, graph) pairs drawn from `seed`, stopping at
/// the first case where `engine` and the oracle differ. Cases the oracle
/// cannot tabulate within `cap` rows are skipped.
pub fn run<F>(cases: usize, seed: u64, cap: u64, vocab: &BeliefVocabulary, engine: F) -> Report
where
    F: Fn(&Query, &FourGraph, &BeliefVocabulary) -> Result<FourRelation, EvalError>,
{
    let mut generator = Generator::new(seed, vocab.clone());
    let mut report = Report::default();
    for case in 0..cases {
        let graph = generator.graph(None);
        let query = generator.query(Fragment::Full);
        let dense = match oracle_eval_with_cap(&query, &graph, vocab, cap) {
            Ok(d) => d,
            Err(OracleError::UniverseTooLarge { .. }) => {
                report.skipped += 1;
                continue;
            }
            Err(OracleError::IllFormed(e)) => unreachable!("generator produced an ill-formed query: {e}"),
        };
        let problem = match engine(&query, &graph, vocab) {
            Err(e) => Some(Problem::EngineError(e)),
            Ok(r) => match diff(&r, &dense) {
                Err(e) => Some(Problem::Shape(e.to_string())),
                Ok(ds) if ds.is_empty() => None,
                Ok(ds) => Some(Problem::Disagreements(ds)),
            },
        };
        match problem {
            None => report.agreed += 1,
            Some(problem) => {
                report.counterexample = Some(Counterexample {
                    case,
                    query,
                    graph,
                    problem,
                });
                break;
            }
        }
    }
    report
}

//! Evaluation of eSPARQL queries into [`FourRelation`]s.
//!
//! Relations are kept in default-plus-exceptions form throughout. Each
//! operator computes the default of its result from the defaults of its
//! inputs and then visits only the mappings whose value can differ: the
//! input exceptions, their extensions where a default on the other side
//! does not absorb them, and, for formulas, the mappings that satisfy one of
//! the formula's equality atoms.
//!
//! Open mode evaluates over the active domain plus enough fresh IRIs to
//! witness every equality pattern of a mapping. A relation has finite
//! support over all terms exactly when no exception mentions a fresh IRI;
//! otherwise the value at that mapping repeats for infinitely many others.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use thiserror::Error;

use super::{
    FilterFormula, FourRelation, IllFormedQuery, Mapping, Operand, Query, Universe,
};
use crate::algebra::relation::Domain;
use crate::belief::BeliefQuery;
use crate::logic::{reduce, FourOperator, FourValue};
use crate::model::{BeliefVocabulary, FourGraph, Iri, Term, TriplePattern, Variable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EvalMode {
    /// Mappings range over the terms of the graph and the query.
    #[default]
    ActiveDomain,
    /// Mappings range over all terms; results must have finite support.
    Open,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    IllFormed(#[from] IllFormedQuery),
    #[error("result of {operator} is not finitely supported: {detail}")]
    NonFinitelySupported { operator: &'static str, detail: String },
    #[error("evaluation would enumerate {needed} mappings (limit {limit})")]
    ResourceLimit { needed: u128, limit: u128 },
}

pub const DEFAULT_ENUMERATION_LIMIT: u128 = 50_000_000;

/// Evaluates `q` over `g`.
pub fn eval(
    q: &Query,
    g: &FourGraph,
    vocab: &BeliefVocabulary,
    mode: EvalMode,
) -> Result<FourRelation, EvalError> {
    Evaluator::new(vocab, mode).run(q, g)
}

/// The active domain of `g` extended by the constants of `q`.
pub fn query_universe(q: &Query, g: &FourGraph) -> Universe {
    let constants = q.constants();
    Universe::new(g.active_domain(constants.iter()))
}

pub struct Evaluator<'v> {
    vocab: &'v BeliefVocabulary,
    mode: EvalMode,
    limit: u128,
}

impl<'v> Evaluator<'v> {
    pub fn new(vocab: &'v BeliefVocabulary, mode: EvalMode) -> Self {
        Evaluator {
            vocab,
            mode,
            limit: DEFAULT_ENUMERATION_LIMIT,
        }
    }

    pub fn with_limit(mut self, limit: u128) -> Self {
        self.limit = limit;
        self
    }

    pub fn run(&self, q: &Query, g: &FourGraph) -> Result<FourRelation, EvalError> {
        q.in_scope()?;
        let base = query_universe(q, g);
        let (universe, fresh) = match self.mode {
            EvalMode::ActiveDomain => (base, BTreeSet::new()),
            EvalMode::Open => {
                let fresh = fresh_terms(&base, q.max_scope_width().max(1));
                let all = base.terms().iter().cloned().chain(fresh.iter().cloned());
                (Universe::new(all), fresh)
            }
        };
        let mut run = Run {
            vocab: self.vocab,
            universe,
            fresh,
            limit: self.limit,
            results: HashMap::new(),
            extractions: HashMap::new(),
        };
        let root = Arc::new(g.clone());
        let out = run.eval(q, &root)?;
        let mut out = match self.mode {
            EvalMode::ActiveDomain => out,
            EvalMode::Open => out.with_domain(Domain::Open),
        };
        out.normalize();
        Ok(out)
    }
}

fn fresh_terms(base: &Universe, n: usize) -> BTreeSet<Term> {
    (0..)
        .map(|i| Term::Iri(Iri::new(format!("urn:esparql:fresh:{i}")).unwrap()))
        .filter(|t| !base.contains(t))
        .take(n)
        .collect()
}

type GraphRef = Arc<FourGraph>;

struct Run<'v> {
    vocab: &'v BeliefVocabulary,
    universe: Universe,
    fresh: BTreeSet<Term>,
    limit: u128,
    /// Results of subqueries evaluated under a belief context, keyed by the
    /// query node and the extracted graph.
    results: HashMap<(usize, GraphRef), FourRelation>,
    /// Extracted graphs keyed by ground belief query and context graph.
    extractions: HashMap<(BeliefQuery, usize), GraphRef>,
}

impl Run<'_> {
    fn domain(&self) -> Domain {
        Domain::Active(self.universe.clone())
    }

    fn budget(&self, needed: u128) -> Result<(), EvalError> {
        if needed > self.limit {
            Err(EvalError::ResourceLimit {
                needed,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    fn check_finite(&self, r: &FourRelation, operator: &'static str) -> Result<(), EvalError> {
        if self.fresh.is_empty() {
            return Ok(());
        }
        let witness = r
            .exceptions()
            .iter()
            .find(|(m, _)| m.values().any(|t| self.fresh.contains(t)));
        match witness {
            None => Ok(()),
            Some((_, v)) => Err(EvalError::NonFinitelySupported {
                operator,
                detail: format!(
                    "infinitely many mappings are {} while infinitely many others are {}",
                    v,
                    r.default_value()
                ),
            }),
        }
    }

    fn eval(&mut self, q: &Query, g: &GraphRef) -> Result<FourRelation, EvalError> {
        let (r, name) = match q {
            Query::Pattern(p) => (self.pattern(p, g), "triple pattern"),
            Query::Join(op, q1, q2) => {
                let r1 = self.eval(q1, g)?;
                let r2 = self.eval(q2, g)?;
                (self.join(*op, &r1, &r2)?, "AND")
            }
            Query::Union(op, q1, q2) => {
                let r1 = self.eval(q1, g)?;
                let r2 = self.eval(q2, g)?;
                (union(*op, &r1, &r2), "UNION")
            }
            Query::Filter(op, q1, phi) => {
                let r1 = self.eval(q1, g)?;
                let (id, abs) = (op.identity(), op.absorbing());
                let op = *op;
                let r = self.pointwise_formula(&r1, phi, |value, truth| {
                    op.apply(value, if truth { id } else { abs })
                })?;
                (r, "FILTER")
            }
            Query::MapState {
                query,
                condition,
                then,
                otherwise,
            } => {
                let r1 = self.eval(query, g)?;
                let (a, b) = (*then, *otherwise);
                let r = self.pointwise_formula(&r1, condition, |_, truth| if truth { a } else { b })?;
                (r, "MAP")
            }
            Query::Project(op, w, q1) => {
                let r1 = self.eval(q1, g)?;
                (self.project(*op, w, &r1), "SELECT")
            }
            Query::Belief(e, q1) => (self.belief(e, q1, g)?, "BELIEF"),
        };
        self.check_finite(&r, name)?;
        Ok(r)
    }

    fn pattern(&self, p: &TriplePattern, g: &FourGraph) -> FourRelation {
        let mut r = FourRelation::constant(p.variables(), g.default_value(), self.domain());
        for (t, &v) in g.exceptions() {
            if let Some(m) = p.match_triple(t) {
                if m.values().all(|x| self.universe.contains(x)) {
                    r.insert(m, v);
                }
            }
        }
        r
    }

    fn join(&self, op: FourOperator, r1: &FourRelation, r2: &FourRelation) -> Result<FourRelation, EvalError> {
        let (w1, w2) = (r1.vars(), r2.vars());
        let w: BTreeSet<Variable> = w1.union(w2).cloned().collect();
        let shared: BTreeSet<Variable> = w1.intersection(w2).cloned().collect();
        let (d1, d2) = (r1.default_value(), r2.default_value());
        let d = op.apply(d1, d2);

        let mut by_shared: BTreeMap<Mapping, Vec<&Mapping>> = BTreeMap::new();
        for e2 in r2.exceptions().keys() {
            by_shared.entry(e2.restrict(&shared)).or_default().push(e2);
        }

        let mut candidates: BTreeSet<Mapping> = BTreeSet::new();
        for (e1, &v1) in r1.exceptions() {
            if let Some(partners) = by_shared.get(&e1.restrict(&shared)) {
                candidates.extend(partners.iter().filter_map(|e2| e1.union(e2)));
            }
            if op.apply(v1, d2) != d {
                self.budget(self.universe.count(w2.len() - shared.len()))?;
                candidates.extend(self.universe.extensions(e1.clone(), &w));
            }
        }
        for (e2, &v2) in r2.exceptions() {
            if op.apply(d1, v2) != d {
                self.budget(self.universe.count(w1.len() - shared.len()))?;
                candidates.extend(self.universe.extensions(e2.clone(), &w));
            }
        }

        let mut out = FourRelation::constant(w, d, self.domain());
        for m in candidates {
            let v = op.apply(r1.value_at(&m), r2.value_at(&m));
            out.insert(m, v);
        }
        Ok(out)
    }

    /// Shared machinery of FILTER and MAP: the new value at `μ` is
    /// `f(R(μ), μ ⊨ φ)`.
    fn pointwise_formula(
        &self,
        r: &FourRelation,
        phi: &FilterFormula,
        f: impl Fn(FourValue, bool) -> FourValue,
    ) -> Result<FourRelation, EvalError> {
        let w = r.vars();
        let value = |m: &Mapping, state: FourValue| f(state, phi.eval_with_state(m, state).is_true());

        // A mapping in which every in-scope equality atom is false.
        let generic = {
            let mut constants = BTreeSet::new();
            phi.collect_constants(&mut constants);
            let mut names = (0..)
                .map(|i| Term::Iri(Iri::new(format!("urn:esparql:generic:{i}")).unwrap()))
                .filter(|t| !constants.contains(t));
            w.iter()
                .map(|v| (v.clone(), names.next().unwrap()))
                .collect::<Mapping>()
        };
        let d = value(&generic, r.default_value());

        let mut candidates: BTreeSet<Mapping> = r.exceptions().keys().cloned().collect();
        let mut atoms = Vec::new();
        phi.variable_equalities(&mut atoms);
        for (x, other) in atoms {
            if !w.contains(&x) {
                continue;
            }
            match other {
                Operand::Iri(iri) if self.universe.contains(&Term::Iri(iri.clone())) => {
                    self.budget(self.universe.count(w.len() - 1))?;
                    let base = Mapping::from_pairs([(x, Term::Iri(iri))]);
                    candidates.extend(self.universe.extensions(base, w));
                }
                Operand::Variable(y) if y != x && w.contains(&y) => {
                    self.budget(self.universe.count(w.len() - 1))?;
                    for u in self.universe.terms() {
                        let base = Mapping::from_pairs([(x.clone(), u.clone()), (y.clone(), u.clone())]);
                        candidates.extend(self.universe.extensions(base, w));
                    }
                }
                Operand::Iri(_) | Operand::Variable(_) => {}
            }
        }

        let mut out = FourRelation::constant(w.clone(), d, self.domain());
        for m in candidates {
            let v = value(&m, r.value_at(&m));
            out.insert(m, v);
        }
        Ok(out)
    }

    fn project(&self, op: FourOperator, w: &BTreeSet<Variable>, r: &FourRelation) -> FourRelation {
        let dropped = r.vars().len() - w.len();
        let extensions = self.universe.count(dropped);
        let d1 = r.default_value();
        let d = if extensions > 0 { d1 } else { op.identity() };

        let mut groups: BTreeMap<Mapping, Vec<FourValue>> = BTreeMap::new();
        for (m, &v) in r.exceptions() {
            groups.entry(m.restrict(w)).or_default().push(v);
        }
        let mut out = FourRelation::constant(w.clone(), d, self.domain());
        for (m, mut values) in groups {
            if (values.len() as u128) < extensions {
                values.push(d1);
            }
            out.insert(m, reduce(op, values));
        }
        out
    }

    fn belief(&mut self, e: &BeliefQuery, q: &Query, g: &GraphRef) -> Result<FourRelation, EvalError> {
        let holders = e.variables();
        let inner_scope = q.in_scope()?;
        self.budget(self.universe.count(holders.len()))?;

        let mut per_holder: Vec<(Mapping, FourRelation)> = Vec::new();
        let assignments: Vec<Mapping> = self.universe.mappings(&holders).collect();
        for nu in assignments {
            let r = match e.instantiate(&nu) {
                // A holder bound to a quoted triple holds no information.
                Err(_) => FourRelation::constant(inner_scope.clone(), FourValue::Unknown, self.domain()),
                Ok(ground) => {
                    let context = self.extract(ground, g);
                    self.eval_in_context(q, &context)?
                }
            };
            per_holder.push((nu, r));
        }

        // In open mode a holder bound to a fresh IRI stands for all the
        // unnamed ones, so its default is the only candidate.
        let generic = per_holder
            .iter()
            .find(|(nu, _)| nu.values().any(|t| self.fresh.contains(t)))
            .map(|(_, r)| r.default_value());
        let d = generic.unwrap_or_else(|| {
            let mut counts: BTreeMap<FourValue, usize> = BTreeMap::new();
            for (_, r) in &per_holder {
                *counts.entry(r.default_value()).or_default() += 1;
            }
            counts
                .iter()
                .max_by_key(|(v, c)| (**c, std::cmp::Reverse(**v)))
                .map(|(v, _)| *v)
                .unwrap_or(FourValue::Unknown)
        });

        let w: BTreeSet<Variable> = holders.union(&inner_scope).cloned().collect();
        let mut out = FourRelation::constant(w, d, self.domain());
        for (nu, r) in per_holder {
            if r.default_value() != d && r.default_attained() {
                self.budget(self.universe.count(inner_scope.len()))?;
                for rho in self.universe.mappings(&inner_scope) {
                    if !r.exceptions().contains_key(&rho) {
                        out.insert(nu.union(&rho).expect("disjoint scopes"), r.default_value());
                    }
                }
            }
            for (rho, &v) in r.exceptions() {
                out.insert(nu.union(rho).expect("disjoint scopes"), v);
            }
        }
        Ok(out)
    }

    fn extract(&mut self, ground: BeliefQuery, g: &GraphRef) -> GraphRef {
        let key = (ground, Arc::as_ptr(g) as usize);
        if let Some(hit) = self.extractions.get(&key) {
            return hit.clone();
        }
        let graph = key
            .0
            .extract(g, self.vocab)
            .expect("instantiated belief queries are ground");
        let graph = Arc::new(graph);
        self.extractions.insert(key, graph.clone());
        graph
    }

    fn eval_in_context(&mut self, q: &Query, g: &GraphRef) -> Result<FourRelation, EvalError> {
        let key = (q as *const Query as usize, g.clone());
        if let Some(hit) = self.results.get(&key) {
            return Ok(hit.clone());
        }
        let r = self.eval(q, g)?;
        self.results.insert(key, r.clone());
        Ok(r)
    }
}

fn union(op: FourOperator, r1: &FourRelation, r2: &FourRelation) -> FourRelation {
    let d = op.apply(r1.default_value(), r2.default_value());
    let mut out = FourRelation::constant(r1.vars().clone(), d, r1.domain().clone());
    let keys: BTreeSet<&Mapping> = r1.exceptions().keys().chain(r2.exceptions().keys()).collect();
    for m in keys {
        out.insert(m.clone(), op.apply(r1.value_at(m), r2.value_at(m)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, data, var};
    use crate::logic::FourValue::*;

    fn run(q: &Query) -> FourRelation {
        let vocab = BeliefVocabulary::default();
        eval(q, &fixtures::table1(&vocab), &vocab, EvalMode::ActiveDomain).unwrap()
    }

    fn at(pairs: &[(&str, &str)]) -> Mapping {
        Mapping::from_pairs(pairs.iter().map(|(v, t)| (var(v), Term::Iri(data(t)))))
    }

    #[test]
    fn running_example() {
        let vocab = BeliefVocabulary::default();
        let r = run(&fixtures::running_example(&vocab));
        assert_eq!(r.default_value(), Unknown);
        let rows: Vec<_> = r.exceptions().iter().map(|(m, v)| (m.clone(), *v)).collect();
        assert_eq!(rows, vec![(at(&[("x", "Arius"), ("y", "Jesus")]), True)]);
    }

    #[test]
    fn nested_belief_at_pope() {
        let r = run(&fixtures::nested_belief());
        assert_eq!(r.value_at(&at(&[("x", "PopeDI"), ("y", "Jesus")])), True);
        assert_eq!(r.value_at(&at(&[("x", "Arius"), ("y", "Jesus")])), False);
        assert_eq!(r.value_at(&at(&[("x", "Christianity"), ("y", "Jesus")])), Conflict);
        assert_eq!(r.value_at(&at(&[("x", "Russell"), ("y", "Jesus")])), Unknown);
    }

    #[test]
    fn use_cases() {
        let r = run(&fixtures::u1());
        assert_eq!(r.default_value(), Unknown);
        assert_eq!(r.exceptions().len(), 1);
        assert_eq!(r.value_at(&at(&[("deity", "Jesus")])), True);

        let r = run(&fixtures::u2());
        assert_eq!(r.default_value(), Unknown);
        assert_eq!(r.exceptions().len(), 1);
        assert_eq!(r.value_at(&at(&[("deity", "Jesus")])), Conflict);

        let r = run(&fixtures::u3());
        assert_eq!(r.default_value(), False);
        assert_eq!(r.value_at(&at(&[("x", "Arius")])), True);
        assert_eq!(r.value_at(&at(&[("x", "Christianity")])), True);
        assert_eq!(r.value_at(&at(&[("x", "Russell")])), False);
        assert_eq!(r.value_at(&at(&[("x", "PopeDI")])), False);

        let r = run(&fixtures::u4());
        assert_eq!(r.default_value(), Unknown);
        assert_eq!(r.exceptions().len(), 1);
        assert_eq!(r.value_at(&at(&[("x", "PopeDI")])), False);

        let r = run(&fixtures::u4_mapped());
        assert_eq!(r.value_at(&at(&[("x", "PopeDI")])), True);
    }

    #[test]
    fn open_mode_finiteness() {
        let vocab = BeliefVocabulary::default();
        let (g, q) = fixtures::meet_disjoint();
        assert!(eval(&q, &g, &vocab, EvalMode::ActiveDomain).is_ok());
        assert!(matches!(
            eval(&q, &g, &vocab, EvalMode::Open),
            Err(EvalError::NonFinitelySupported { .. })
        ));

        let g = fixtures::table1(&vocab);
        let r = eval(&fixtures::u1(), &g, &vocab, EvalMode::Open).unwrap();
        assert_eq!(r.exceptions().len(), 1);
        assert_eq!(r.domain(), &Domain::Open);
    }

    #[test]
    fn resource_limit() {
        let vocab = BeliefVocabulary::default();
        let g = fixtures::table1(&vocab);
        let err = Evaluator::new(&vocab, EvalMode::ActiveDomain)
            .with_limit(3)
            .run(&fixtures::u3(), &g)
            .unwrap_err();
        assert!(matches!(err, EvalError::ResourceLimit { .. }));
    }
}

//! Brute-force reference evaluator.
//!
//! Every subquery is materialized as a complete table over all mappings
//! into the active domain, computed row by row from the defining equations.
//! Belief contexts are never materialized either: a belief graph is a view
//! that answers lookups by consulting its parent. Apart from the operator
//! tables in [`crate::logic`], nothing here is shared with the engine.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Domain, FilterFormula, FourRelation, IllFormedQuery, Mapping, Operand, Query};
use crate::belief::{BeliefQuery, Holder};
use crate::logic::{apply, FourValue};
use crate::model::{
    BeliefVocabulary, FourGraph, PredicatePattern, StarTriple, Term, TermPattern, TriplePattern, Variable,
};

pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("a subquery needs {rows} rows, above the cap of {cap}")]
    UniverseTooLarge { rows: u128, cap: u64 },
    #[error(transparent)]
    IllFormed(#[from] IllFormedQuery),
}

/// A relation with one stored value per mapping over `vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseRelation {
    vars: Vec<Variable>,
    universe: Arc<[Term]>,
    rows: Vec<FourValue>,
}

impl DenseRelation {
    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn universe(&self) -> &[Term] {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// The value at a mapping over exactly `vars` into the universe.
    pub fn get(&self, m: &Mapping) -> Option<FourValue> {
        if m.len() != self.vars.len() {
            return None;
        }
        let mut index = 0;
        for v in &self.vars {
            let t = m.get(v)?;
            let digit = self.universe.iter().position(|u| u == t)?;
            index = index * self.universe.len() + digit;
        }
        self.rows.get(index).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Mapping, FourValue)> + '_ {
        let n = self.universe.len();
        let k = self.vars.len();
        self.rows.iter().enumerate().map(move |(index, &v)| {
            let digits = decode(index, n, k);
            let m = self
                .vars
                .iter()
                .zip(digits)
                .map(|(var, d)| (var.clone(), self.universe[d].clone()))
                .collect();
            (m, v)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("shape mismatch: {0}")]
pub struct ShapeMismatch(pub String);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub mapping: Mapping,
    pub engine: FourValue,
    pub oracle: FourValue,
}

impl fmt::Display for Disagreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: engine {}, oracle {}", self.mapping, self.engine, self.oracle)
    }
}

/// Every mapping at which `a` and `b` differ.
pub fn diff(a: &FourRelation, b: &DenseRelation) -> Result<Vec<Disagreement>, ShapeMismatch> {
    let vars: Vec<Variable> = a.vars().iter().cloned().collect();
    if vars != b.vars {
        return Err(ShapeMismatch(format!(
            "variables {:?} against {:?}",
            vars.iter().map(|v| v.name()).collect::<Vec<_>>(),
            b.vars.iter().map(|v| v.name()).collect::<Vec<_>>()
        )));
    }
    match a.domain() {
        Domain::Active(u) if u.terms() == &*b.universe => {}
        Domain::Active(u) => {
            return Err(ShapeMismatch(format!(
                "universes of {} and {} terms differ",
                u.len(),
                b.universe.len()
            )))
        }
        Domain::Open => return Err(ShapeMismatch("open-domain relation".into())),
    }
    Ok(b
        .iter()
        .filter_map(|(m, oracle)| {
            let engine = a.value_at(&m);
            (engine != oracle).then_some(Disagreement {
                mapping: m,
                engine,
                oracle,
            })
        })
        .collect())
}

pub fn oracle_eval(q: &Query, g: &FourGraph, vocab: &BeliefVocabulary) -> Result<DenseRelation, OracleError> {
    oracle_eval_with_cap(q, g, vocab, DEFAULT_CAP)
}

pub fn oracle_eval_with_cap(
    q: &Query,
    g: &FourGraph,
    vocab: &BeliefVocabulary,
    cap: u64,
) -> Result<DenseRelation, OracleError> {
    q.in_scope()?;
    let universe: Arc<[Term]> = oracle_universe(q, g).into_iter().collect();
    let base: HashMap<StarTriple, FourValue> = g.exceptions().clone().into_iter().collect();
    let ctx = Ctx {
        universe: &universe,
        vocab,
        cap,
    };
    let view = View::Base(&base, g.default_value());
    let (vars, rows) = ctx.eval(q, &view)?;
    Ok(DenseRelation {
        vars,
        universe: universe.clone(),
        rows,
    })
}

/// Terms of the graph's stated triples and of the query, with every quoted
/// triple contributing its parts.
pub fn oracle_universe(q: &Query, g: &FourGraph) -> BTreeSet<Term> {
    let mut out = BTreeSet::new();
    for t in g.exceptions().keys() {
        add_triple_parts(t, &mut out);
    }
    add_query_terms(q, &mut out);
    out
}

fn add_term(t: &Term, out: &mut BTreeSet<Term>) {
    out.insert(t.clone());
    if let Term::Triple(inner) = t {
        add_triple_parts(inner, out);
    }
}

fn add_triple_parts(t: &StarTriple, out: &mut BTreeSet<Term>) {
    add_term(&t.subject, out);
    out.insert(Term::Iri(t.predicate.clone()));
    add_term(&t.object, out);
}

fn ground_pattern(p: &TriplePattern) -> Option<StarTriple> {
    let ground = |tp: &TermPattern| match tp {
        TermPattern::Iri(i) => Some(Term::Iri(i.clone())),
        TermPattern::Variable(_) => None,
        TermPattern::Triple(inner) => ground_pattern(inner).map(|t| Term::Triple(Arc::new(t))),
    };
    let predicate = match &p.predicate {
        PredicatePattern::Iri(i) => i.clone(),
        PredicatePattern::Variable(_) => return None,
    };
    Some(StarTriple {
        subject: ground(&p.subject)?,
        predicate,
        object: ground(&p.object)?,
    })
}

fn add_pattern_terms(p: &TriplePattern, out: &mut BTreeSet<Term>) {
    for tp in [&p.subject, &p.object] {
        match tp {
            TermPattern::Iri(i) => {
                out.insert(Term::Iri(i.clone()));
            }
            TermPattern::Variable(_) => {}
            TermPattern::Triple(inner) => match ground_pattern(inner) {
                Some(t) => add_term(&Term::Triple(Arc::new(t)), out),
                None => add_pattern_terms(inner, out),
            },
        }
    }
    if let PredicatePattern::Iri(i) = &p.predicate {
        out.insert(Term::Iri(i.clone()));
    }
}

fn add_formula_terms(phi: &FilterFormula, out: &mut BTreeSet<Term>) {
    match phi {
        FilterFormula::Eq(a, b) => {
            for o in [a, b] {
                if let Operand::Iri(i) = o {
                    out.insert(Term::Iri(i.clone()));
                }
            }
        }
        FilterFormula::Bound(_) | FilterFormula::StateIs(_) => {}
        FilterFormula::Not(f) => add_formula_terms(f, out),
        FilterFormula::And(f, h) | FilterFormula::Or(f, h) => {
            add_formula_terms(f, out);
            add_formula_terms(h, out);
        }
    }
}

fn add_belief_terms(e: &BeliefQuery, out: &mut BTreeSet<Term>) {
    match e {
        BeliefQuery::Atomic { holder, .. } => {
            if let Holder::Iri(i) = holder {
                out.insert(Term::Iri(i.clone()));
            }
        }
        BeliefQuery::Compound { left, right, .. } => {
            add_belief_terms(left, out);
            add_belief_terms(right, out);
        }
    }
}

fn add_query_terms(q: &Query, out: &mut BTreeSet<Term>) {
    match q {
        Query::Pattern(p) => add_pattern_terms(p, out),
        Query::Join(_, a, b) | Query::Union(_, a, b) => {
            add_query_terms(a, out);
            add_query_terms(b, out);
        }
        Query::Filter(_, a, phi) => {
            add_query_terms(a, out);
            add_formula_terms(phi, out);
        }
        Query::MapState { query, condition, .. } => {
            add_query_terms(query, out);
            add_formula_terms(condition, out);
        }
        Query::Project(_, _, a) => add_query_terms(a, out),
        Query::Belief(e, a) => {
            add_belief_terms(e, out);
            add_query_terms(a, out);
        }
    }
}

/// A graph as a function from triples to states.
enum View<'a> {
    Base(&'a HashMap<StarTriple, FourValue>, FourValue),
    Beliefs(&'a View<'a>, BeliefQuery, &'a BeliefVocabulary),
}

impl View<'_> {
    fn lookup(&self, t: &StarTriple) -> FourValue {
        match self {
            View::Base(map, default) => map.get(t).copied().unwrap_or(*default),
            View::Beliefs(parent, e, vocab) => believed(parent, e, vocab, t),
        }
    }
}

fn believed(parent: &View<'_>, e: &BeliefQuery, vocab: &BeliefVocabulary, t: &StarTriple) -> FourValue {
    match e {
        BeliefQuery::Atomic {
            holder: Holder::Iri(a),
            state,
            fallback,
        } => {
            let statement = StarTriple {
                subject: Term::Iri(a.clone()),
                predicate: vocab.predicate(*state).clone(),
                object: Term::Triple(Arc::new(t.clone())),
            };
            match parent.lookup(&statement) {
                FourValue::True | FourValue::Conflict => *state,
                FourValue::False | FourValue::Unknown => *fallback,
            }
        }
        BeliefQuery::Atomic { .. } => unreachable!("views are built from ground belief queries"),
        BeliefQuery::Compound { left, op, right } => apply(
            *op,
            believed(parent, left, vocab, t),
            believed(parent, right, vocab, t),
        ),
    }
}

fn decode(mut index: usize, n: usize, k: usize) -> Vec<usize> {
    let mut digits = vec![0; k];
    for slot in digits.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    digits
}

fn encode(digits: impl Iterator<Item = usize>, n: usize) -> usize {
    digits.fold(0, |acc, d| acc * n + d)
}

/// Positions of `sub` within `vars`.
fn positions(sub: &[Variable], vars: &[Variable]) -> Vec<usize> {
    sub.iter()
        .map(|v| vars.iter().position(|w| w == v).expect("subset"))
        .collect()
}

fn scope(q: &Query) -> Vec<Variable> {
    fn walk(q: &Query) -> BTreeSet<Variable> {
        match q {
            Query::Pattern(p) => {
                let mut out = BTreeSet::new();
                pattern_vars(p, &mut out);
                out
            }
            Query::Join(_, a, b) => walk(a).union(&walk(b)).cloned().collect(),
            Query::Union(_, a, _) => walk(a),
            Query::Filter(_, a, _) => walk(a),
            Query::MapState { query, .. } => walk(query),
            Query::Project(_, w, _) => w.clone(),
            Query::Belief(e, a) => {
                let mut out = walk(a);
                holder_vars(e, &mut out);
                out
            }
        }
    }
    walk(q).into_iter().collect()
}

fn pattern_vars(p: &TriplePattern, out: &mut BTreeSet<Variable>) {
    for tp in [&p.subject, &p.object] {
        match tp {
            TermPattern::Iri(_) => {}
            TermPattern::Variable(v) => {
                out.insert(v.clone());
            }
            TermPattern::Triple(inner) => pattern_vars(inner, out),
        }
    }
    if let PredicatePattern::Variable(v) = &p.predicate {
        out.insert(v.clone());
    }
}

fn holder_vars(e: &BeliefQuery, out: &mut BTreeSet<Variable>) {
    match e {
        BeliefQuery::Atomic { holder, .. } => {
            if let Holder::Variable(v) = holder {
                out.insert(v.clone());
            }
        }
        BeliefQuery::Compound { left, right, .. } => {
            holder_vars(left, out);
            holder_vars(right, out);
        }
    }
}

/// Replaces holder variables; `None` when one is bound to a quoted triple.
fn ground_belief(e: &BeliefQuery, binding: &dyn Fn(&Variable) -> Term) -> Option<BeliefQuery> {
    Some(match e {
        BeliefQuery::Atomic {
            holder,
            state,
            fallback,
        } => {
            let holder = match holder {
                Holder::Iri(i) => Holder::Iri(i.clone()),
                Holder::Variable(v) => match binding(v) {
                    Term::Iri(i) => Holder::Iri(i),
                    Term::Triple(_) => return None,
                },
            };
            BeliefQuery::Atomic {
                holder,
                state: *state,
                fallback: *fallback,
            }
        }
        BeliefQuery::Compound { left, op, right } => BeliefQuery::Compound {
            left: Box::new(ground_belief(left, binding)?),
            op: *op,
            right: Box::new(ground_belief(right, binding)?),
        },
    })
}

/// `μ(φ)`: `None` stands for error.
fn truth(
    phi: &FilterFormula,
    lookup: &dyn Fn(&Variable) -> Option<Term>,
    state: FourValue,
) -> Option<bool> {
    match phi {
        FilterFormula::Eq(a, b) => {
            let value = |o: &Operand| match o {
                Operand::Iri(i) => Some(Term::Iri(i.clone())),
                Operand::Variable(v) => lookup(v),
            };
            Some(value(a)? == value(b)?)
        }
        FilterFormula::Bound(v) => Some(lookup(v).is_some()),
        FilterFormula::StateIs(s) => Some(*s == state),
        FilterFormula::Not(f) => truth(f, lookup, state).map(|b| !b),
        FilterFormula::And(f, h) => match (truth(f, lookup, state), truth(h, lookup, state)) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        },
        FilterFormula::Or(f, h) => match (truth(f, lookup, state), truth(h, lookup, state)) {
            (Some(true), _) | (_, Some(true)) => Some(true),
            (Some(false), Some(false)) => Some(false),
            _ => None,
        },
    }
}

struct Ctx<'a> {
    universe: &'a [Term],
    vocab: &'a BeliefVocabulary,
    cap: u64,
}

type Table = (Vec<Variable>, Vec<FourValue>);

impl Ctx<'_> {
    fn rows(&self, k: usize) -> Result<usize, OracleError> {
        let n = self.universe.len() as u128;
        let rows = (0..k).try_fold(1u128, |acc, _| acc.checked_mul(n)).unwrap_or(u128::MAX);
        if rows > self.cap as u128 {
            Err(OracleError::UniverseTooLarge { rows, cap: self.cap })
        } else {
            Ok(rows as usize)
        }
    }

    fn tabulate(&self, k: usize, mut f: impl FnMut(&[usize]) -> FourValue) -> Result<Vec<FourValue>, OracleError> {
        let rows = self.rows(k)?;
        Ok((0..rows)
            .map(|index| f(&decode(index, self.universe.len(), k)))
            .collect())
    }

    fn eval(&self, q: &Query, view: &View<'_>) -> Result<Table, OracleError> {
        let n = self.universe.len();
        let vars = scope(q);
        let rows = match q {
            Query::Pattern(p) => self.tabulate(vars.len(), |digits| {
                let binding = |v: &Variable| {
                    let i = vars.iter().position(|w| w == v).expect("in scope");
                    self.universe[digits[i]].clone()
                };
                match substitute(p, &binding) {
                    Some(t) => view.lookup(&t),
                    None => view.lookup_default(),
                }
            })?,
            Query::Join(op, a, b) => {
                let (va, ra) = self.eval(a, view)?;
                let (vb, rb) = self.eval(b, view)?;
                let (pa, pb) = (positions(&va, &vars), positions(&vb, &vars));
                self.tabulate(vars.len(), |digits| {
                    let ia = encode(pa.iter().map(|&i| digits[i]), n);
                    let ib = encode(pb.iter().map(|&i| digits[i]), n);
                    apply(*op, ra[ia], rb[ib])
                })?
            }
            Query::Union(op, a, b) => {
                let (_, ra) = self.eval(a, view)?;
                let (_, rb) = self.eval(b, view)?;
                ra.iter().zip(&rb).map(|(&x, &y)| apply(*op, x, y)).collect()
            }
            Query::Filter(op, a, phi) => {
                let (_, ra) = self.eval(a, view)?;
                let (id, abs) = (op.identity(), op.absorbing());
                self.tabulate(vars.len(), |digits| {
                    let i = encode(digits.iter().copied(), n);
                    let holds = self.holds(phi, &vars, digits, ra[i]);
                    apply(*op, ra[i], if holds { id } else { abs })
                })?
            }
            Query::MapState {
                query,
                condition,
                then,
                otherwise,
            } => {
                let (_, ra) = self.eval(query, view)?;
                self.tabulate(vars.len(), |digits| {
                    let i = encode(digits.iter().copied(), n);
                    if self.holds(condition, &vars, digits, ra[i]) {
                        *then
                    } else {
                        *otherwise
                    }
                })?
            }
            Query::Project(op, _, a) => {
                let (va, ra) = self.eval(a, view)?;
                let keep = positions(&vars, &va);
                let mut acc: Vec<Option<FourValue>> = vec![None; self.rows(vars.len())?];
                for (index, &v) in ra.iter().enumerate() {
                    let digits = decode(index, n, va.len());
                    let target = encode(keep.iter().map(|&i| digits[i]), n);
                    acc[target] = Some(match acc[target] {
                        None => v,
                        Some(prev) => apply(*op, prev, v),
                    });
                }
                acc.into_iter().map(|v| v.unwrap_or(op.identity())).collect()
            }
            Query::Belief(e, a) => self.belief(e, a, &vars, view)?,
        };
        Ok((vars, rows))
    }

    fn holds(&self, phi: &FilterFormula, vars: &[Variable], digits: &[usize], state: FourValue) -> bool {
        let lookup = |v: &Variable| {
            vars.iter()
                .position(|w| w == v)
                .map(|i| self.universe[digits[i]].clone())
        };
        truth(phi, &lookup, state) == Some(true)
    }

    fn belief(&self, e: &BeliefQuery, a: &Query, vars: &[Variable], view: &View<'_>) -> Result<Vec<FourValue>, OracleError> {
        let n = self.universe.len();
        let mut holders = BTreeSet::new();
        holder_vars(e, &mut holders);
        let holders: Vec<Variable> = holders.into_iter().collect();
        let inner_vars = scope(a);
        self.rows(vars.len())?;

        let mut per_holder = Vec::new();
        for index in 0..self.rows(holders.len())? {
            let digits = decode(index, n, holders.len());
            let binding = |v: &Variable| {
                let i = holders.iter().position(|w| w == v).expect("holder");
                self.universe[digits[i]].clone()
            };
            let rows = match ground_belief(e, &binding) {
                None => vec![FourValue::Unknown; self.rows(inner_vars.len())?],
                Some(ground) => {
                    let context = View::Beliefs(view, ground, self.vocab);
                    self.eval(a, &context)?.1
                }
            };
            per_holder.push(rows);
        }

        let (ph, pi) = (positions(&holders, vars), positions(&inner_vars, vars));
        self.tabulate(vars.len(), |digits| {
            let h = encode(ph.iter().map(|&i| digits[i]), n);
            let r = encode(pi.iter().map(|&i| digits[i]), n);
            per_holder[h][r]
        })
    }
}

impl View<'_> {
    /// The value of triples no exception mentions.
    fn lookup_default(&self) -> FourValue {
        match self {
            View::Base(_, d) => *d,
            View::Beliefs(parent, e, vocab) => belief_default(parent, e, vocab),
        }
    }
}

fn belief_default(parent: &View<'_>, e: &BeliefQuery, vocab: &BeliefVocabulary) -> FourValue {
    match e {
        BeliefQuery::Atomic { state, fallback, .. } => match parent.lookup_default() {
            FourValue::True | FourValue::Conflict => *state,
            FourValue::False | FourValue::Unknown => *fallback,
        },
        BeliefQuery::Compound { left, op, right } => apply(
            *op,
            belief_default(parent, left, vocab),
            belief_default(parent, right, vocab),
        ),
    }
}

fn substitute(p: &TriplePattern, binding: &dyn Fn(&Variable) -> Term) -> Option<StarTriple> {
    fn term(tp: &TermPattern, binding: &dyn Fn(&Variable) -> Term) -> Option<Term> {
        Some(match tp {
            TermPattern::Iri(i) => Term::Iri(i.clone()),
            TermPattern::Variable(v) => binding(v),
            TermPattern::Triple(inner) => Term::Triple(Arc::new(substitute(inner, binding)?)),
        })
    }
    let predicate = match &p.predicate {
        PredicatePattern::Iri(i) => i.clone(),
        PredicatePattern::Variable(v) => match binding(v) {
            Term::Iri(i) => i,
            Term::Triple(_) => return None,
        },
    };
    Some(StarTriple {
        subject: term(&p.subject, binding)?,
        predicate,
        object: term(&p.object, binding)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{eval, EvalMode};
    use crate::fixtures::{self, data, var};
    use crate::logic::FourOperator;

    fn agree(q: &Query, g: &FourGraph) {
        let vocab = BeliefVocabulary::default();
        let engine = eval(q, g, &vocab, EvalMode::ActiveDomain).unwrap();
        let oracle = oracle_eval(q, g, &vocab).unwrap();
        assert_eq!(diff(&engine, &oracle).unwrap(), vec![], "{q}");
    }

    #[test]
    fn fixtures_agree_with_engine() {
        let vocab = BeliefVocabulary::default();
        let g = fixtures::table1(&vocab);
        for q in [
            fixtures::running_example(&vocab),
            fixtures::nested_belief(),
            fixtures::u1(),
            fixtures::u2(),
            fixtures::u3(),
            fixtures::u3_literal(),
            fixtures::u4(),
            fixtures::u4_mapped(),
        ] {
            agree(&q, &g);
        }
        let (g, q) = fixtures::meet_disjoint();
        agree(&q, &g);
    }

    #[test]
    fn u2_row() {
        let vocab = BeliefVocabulary::default();
        let r = oracle_eval(&fixtures::u2(), &fixtures::table1(&vocab), &vocab).unwrap();
        let m = Mapping::from_pairs([(var("deity"), Term::Iri(data("Jesus")))]);
        assert_eq!(r.get(&m), Some(FourValue::Conflict));
    }

    #[test]
    fn empty_graph_is_constant() {
        let vocab = BeliefVocabulary::default();
        let g = FourGraph::new(FourValue::False);
        let r = oracle_eval(&fixtures::running_example(&vocab), &g, &vocab).unwrap();
        assert!(r.iter().all(|(_, v)| v == FourValue::False));
        assert_eq!(r.len(), r.universe().len().pow(2));
    }

    #[test]
    fn cap_is_enforced() {
        let vocab = BeliefVocabulary::default();
        let g = fixtures::table1(&vocab);
        let err = oracle_eval_with_cap(&fixtures::u3(), &g, &vocab, 100).unwrap_err();
        assert!(matches!(err, OracleError::UniverseTooLarge { .. }));
    }

    #[test]
    fn diff_reports_faults() {
        let vocab = BeliefVocabulary::default();
        let g = fixtures::table1(&vocab);
        let q = fixtures::u1();
        let good = eval(&q, &g, &vocab, EvalMode::ActiveDomain).unwrap();
        let oracle = oracle_eval(&q, &g, &vocab).unwrap();

        let flipped = FourRelation::from_parts(
            good.vars().clone(),
            good.default_value(),
            good.exceptions().iter().map(|(m, _)| (m.clone(), FourValue::False)),
            good.domain().clone(),
        );
        assert_eq!(diff(&flipped, &oracle).unwrap().len(), 1);

        let wrong_default = FourRelation::from_parts(
            good.vars().clone(),
            FourValue::Conflict,
            good.exceptions().iter().map(|(m, v)| (m.clone(), *v)),
            good.domain().clone(),
        );
        assert_eq!(diff(&wrong_default, &oracle).unwrap().len(), oracle.len() - 1);

        let other = FourRelation::constant(BTreeSet::from([var("z")]), FourValue::Unknown, good.domain().clone());
        assert!(diff(&other, &oracle).is_err());
    }

    #[test]
    fn full_projection_is_identity() {
        let vocab = BeliefVocabulary::default();
        let g = fixtures::table1(&vocab);
        let q = fixtures::running_example(&vocab);
        let all = q.in_scope().unwrap();
        let p = Query::project(FourOperator::TruthJoin, all, q.clone());
        assert_eq!(
            oracle_eval(&p, &g, &vocab).unwrap(),
            oracle_eval(&q, &g, &vocab).unwrap()
        );
    }
}

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::{FourRelation, Mapping};
use crate::belief::BeliefQuery;
use crate::logic::{FourOperator, FourValue};
use crate::model::{Iri, Term, TriplePattern, Variable};

/// A query violates one of the construction rules of the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ill-formed query: {rule}")]
pub struct IllFormedQuery {
    pub rule: String,
}

impl IllFormedQuery {
    pub fn new(rule: impl Into<String>) -> Self {
        IllFormedQuery { rule: rule.into() }
    }
}

/// SPARQL's three-valued filter outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthValue3 {
    True,
    False,
    Error,
}

impl TruthValue3 {
    pub fn not(self) -> TruthValue3 {
        match self {
            TruthValue3::True => TruthValue3::False,
            TruthValue3::False => TruthValue3::True,
            TruthValue3::Error => TruthValue3::Error,
        }
    }

    pub fn and(self, other: TruthValue3) -> TruthValue3 {
        use TruthValue3::*;
        match (self, other) {
            (False, _) | (_, False) => False,
            (True, True) => True,
            _ => Error,
        }
    }

    pub fn or(self, other: TruthValue3) -> TruthValue3 {
        use TruthValue3::*;
        match (self, other) {
            (True, _) | (_, True) => True,
            (False, False) => False,
            _ => Error,
        }
    }

    pub fn is_true(self) -> bool {
        self == TruthValue3::True
    }
}

/// Variable or IRI operand of an equality atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operand {
    Variable(Variable),
    Iri(Iri),
}

impl From<Variable> for Operand {
    fn from(v: Variable) -> Self {
        Operand::Variable(v)
    }
}

impl From<Iri> for Operand {
    fn from(iri: Iri) -> Self {
        Operand::Iri(iri)
    }
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Variable(v) => v.fmt(f),
            Operand::Iri(iri) => iri.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FilterFormula {
    Eq(Operand, Operand),
    Bound(Variable),
    StateIs(FourValue),
    Not(Box<FilterFormula>),
    And(Box<FilterFormula>, Box<FilterFormula>),
    Or(Box<FilterFormula>, Box<FilterFormula>),
}

impl FilterFormula {
    pub fn eq(a: impl Into<Operand>, b: impl Into<Operand>) -> FilterFormula {
        FilterFormula::Eq(a.into(), b.into())
    }

    pub fn negate(self) -> FilterFormula {
        FilterFormula::Not(Box::new(self))
    }

    pub fn and(self, other: FilterFormula) -> FilterFormula {
        FilterFormula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: FilterFormula) -> FilterFormula {
        FilterFormula::Or(Box::new(self), Box::new(other))
    }

    /// Truth value of the formula at `m`, where `state` is `R(m)`.
    pub fn eval_with_state(&self, m: &Mapping, state: FourValue) -> TruthValue3 {
        match self {
            FilterFormula::Eq(a, b) => {
                let resolve = |o: &Operand| match o {
                    Operand::Variable(v) => m.get(v).cloned(),
                    Operand::Iri(iri) => Some(Term::Iri(iri.clone())),
                };
                match (resolve(a), resolve(b)) {
                    (Some(x), Some(y)) if x == y => TruthValue3::True,
                    (Some(_), Some(_)) => TruthValue3::False,
                    _ => TruthValue3::Error,
                }
            }
            FilterFormula::Bound(v) => {
                if m.contains(v) {
                    TruthValue3::True
                } else {
                    TruthValue3::False
                }
            }
            FilterFormula::StateIs(alpha) => {
                if state == *alpha {
                    TruthValue3::True
                } else {
                    TruthValue3::False
                }
            }
            FilterFormula::Not(f) => f.eval_with_state(m, state).not(),
            FilterFormula::And(f, g) => f.eval_with_state(m, state).and(g.eval_with_state(m, state)),
            FilterFormula::Or(f, g) => f.eval_with_state(m, state).or(g.eval_with_state(m, state)),
        }
    }

    /// Equality atoms whose truth depends on the mapping.
    pub(crate) fn variable_equalities(&self, out: &mut Vec<(Variable, Operand)>) {
        match self {
            FilterFormula::Eq(Operand::Variable(x), other) => out.push((x.clone(), other.clone())),
            FilterFormula::Eq(other @ Operand::Iri(_), Operand::Variable(x)) => {
                out.push((x.clone(), other.clone()))
            }
            FilterFormula::Eq(..) | FilterFormula::Bound(_) | FilterFormula::StateIs(_) => {}
            FilterFormula::Not(f) => f.variable_equalities(out),
            FilterFormula::And(f, g) | FilterFormula::Or(f, g) => {
                f.variable_equalities(out);
                g.variable_equalities(out);
            }
        }
    }

    pub(crate) fn collect_constants(&self, out: &mut BTreeSet<Term>) {
        match self {
            FilterFormula::Eq(a, b) => {
                for o in [a, b] {
                    if let Operand::Iri(iri) = o {
                        out.insert(Term::Iri(iri.clone()));
                    }
                }
            }
            FilterFormula::Bound(_) | FilterFormula::StateIs(_) => {}
            FilterFormula::Not(f) => f.collect_constants(out),
            FilterFormula::And(f, g) | FilterFormula::Or(f, g) => {
                f.collect_constants(out);
                g.collect_constants(out);
            }
        }
    }
}

/// `μ(φ)` against relation `r`.
pub fn eval_formula(phi: &FilterFormula, m: &Mapping, r: &FourRelation) -> TruthValue3 {
    phi.eval_with_state(m, r.value_at(m))
}

impl fmt::Display for FilterFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilterFormula::Eq(a, b) => write!(f, "{a} = {b}"),
            FilterFormula::Bound(v) => write!(f, "bound({v})"),
            FilterFormula::StateIs(s) => write!(f, "STATE IS {}", s.symbol()),
            FilterFormula::Not(g) => write!(f, "¬{g}"),
            FilterFormula::And(g, h) => write!(f, "({g} ∧ {h})"),
            FilterFormula::Or(g, h) => write!(f, "({g} ∨ {h})"),
        }
    }
}

/// The eSPARQL algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Query {
    Pattern(TriplePattern),
    /// `∘ ∈ {∧, ⊗}`.
    Join(FourOperator, Box<Query>, Box<Query>),
    /// `∘ ∈ {∨, ⊕}`; both sides share their in-scope variables.
    Union(FourOperator, Box<Query>, Box<Query>),
    Filter(FourOperator, Box<Query>, FilterFormula),
    Project(FourOperator, BTreeSet<Variable>, Box<Query>),
    /// `Q MAP φ α β`.
    MapState {
        query: Box<Query>,
        condition: FilterFormula,
        then: FourValue,
        otherwise: FourValue,
    },
    Belief(BeliefQuery, Box<Query>),
}

impl Query {
    pub fn pattern(p: TriplePattern) -> Query {
        Query::Pattern(p)
    }

    pub fn join(op: FourOperator, q1: Query, q2: Query) -> Query {
        Query::Join(op, Box::new(q1), Box::new(q2))
    }

    pub fn union(op: FourOperator, q1: Query, q2: Query) -> Query {
        Query::Union(op, Box::new(q1), Box::new(q2))
    }

    pub fn filter(op: FourOperator, q: Query, phi: FilterFormula) -> Query {
        Query::Filter(op, Box::new(q), phi)
    }

    pub fn project<I>(op: FourOperator, vars: I, q: Query) -> Query
    where
        I: IntoIterator<Item = Variable>,
    {
        Query::Project(op, vars.into_iter().collect(), Box::new(q))
    }

    pub fn map_state(q: Query, condition: FilterFormula, then: FourValue, otherwise: FourValue) -> Query {
        Query::MapState {
            query: Box::new(q),
            condition,
            then,
            otherwise,
        }
    }

    pub fn belief(e: BeliefQuery, q: Query) -> Query {
        Query::Belief(e, Box::new(q))
    }

    /// In-scope variables, checking every construction rule on the way.
    pub fn in_scope(&self) -> Result<BTreeSet<Variable>, IllFormedQuery> {
        match self {
            Query::Pattern(p) => Ok(p.variables()),
            Query::Join(op, q1, q2) => {
                if !op.is_meet() {
                    return Err(IllFormedQuery::new(format!(
                        "join operator must be ∧ or ⊗, found {op}"
                    )));
                }
                let mut w = q1.in_scope()?;
                w.extend(q2.in_scope()?);
                Ok(w)
            }
            Query::Union(op, q1, q2) => {
                if !op.is_join() {
                    return Err(IllFormedQuery::new(format!(
                        "union operator must be ∨ or ⊕, found {op}"
                    )));
                }
                let w1 = q1.in_scope()?;
                let w2 = q2.in_scope()?;
                if w1 != w2 {
                    return Err(IllFormedQuery::new(format!(
                        "union branches must have the same in-scope variables ({} vs {})",
                        fmt_vars(&w1),
                        fmt_vars(&w2)
                    )));
                }
                Ok(w1)
            }
            Query::Filter(_, q, _) => q.in_scope(),
            Query::MapState { query, .. } => query.in_scope(),
            Query::Project(_, w, q) => {
                let inner = q.in_scope()?;
                if let Some(v) = w.iter().find(|v| !inner.contains(*v)) {
                    return Err(IllFormedQuery::new(format!(
                        "projected variable {v} is not in scope (in scope: {})",
                        fmt_vars(&inner)
                    )));
                }
                Ok(w.clone())
            }
            Query::Belief(e, q) => {
                let inner = q.in_scope()?;
                let holders = e.variables();
                if let Some(v) = holders.intersection(&inner).next() {
                    return Err(IllFormedQuery::new(format!(
                        "belief holder variable {v} also occurs in scope of the inner query"
                    )));
                }
                let mut w = holders;
                w.extend(inner);
                Ok(w)
            }
        }
    }

    /// Ground terms mentioned anywhere in the query.
    pub fn constants(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        self.collect_constants(&mut out);
        out
    }

    fn collect_constants(&self, out: &mut BTreeSet<Term>) {
        match self {
            Query::Pattern(p) => p.collect_constants(out),
            Query::Join(_, q1, q2) | Query::Union(_, q1, q2) => {
                q1.collect_constants(out);
                q2.collect_constants(out);
            }
            Query::Filter(_, q, phi) => {
                q.collect_constants(out);
                phi.collect_constants(out);
            }
            Query::MapState { query, condition, .. } => {
                query.collect_constants(out);
                condition.collect_constants(out);
            }
            Query::Project(_, _, q) => q.collect_constants(out),
            Query::Belief(e, q) => {
                out.extend(e.holder_iris().into_iter().map(Term::Iri));
                q.collect_constants(out);
            }
        }
    }

    /// Largest in-scope set over all subqueries. Assumes well-formedness.
    pub fn max_scope_width(&self) -> usize {
        let own = self.in_scope().map(|w| w.len()).unwrap_or(0);
        let children = match self {
            Query::Pattern(_) => 0,
            Query::Join(_, q1, q2) | Query::Union(_, q1, q2) => {
                q1.max_scope_width().max(q2.max_scope_width())
            }
            Query::Filter(_, q, _) | Query::Project(_, _, q) | Query::Belief(_, q) => {
                q.max_scope_width()
            }
            Query::MapState { query, .. } => query.max_scope_width(),
        };
        own.max(children)
    }

    pub fn depth(&self) -> usize {
        match self {
            Query::Pattern(_) => 1,
            Query::Join(_, q1, q2) | Query::Union(_, q1, q2) => 1 + q1.depth().max(q2.depth()),
            Query::Filter(_, q, _) | Query::Project(_, _, q) | Query::Belief(_, q) => 1 + q.depth(),
            Query::MapState { query, .. } => 1 + query.depth(),
        }
    }
}

pub(crate) fn fmt_vars(vars: &BTreeSet<Variable>) -> String {
    let parts: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Pattern(p) => write!(f, "({p})"),
            Query::Join(op, a, b) | Query::Union(op, a, b) => write!(f, "({a} {op} {b})"),
            Query::Filter(op, q, phi) => write!(f, "FILTER{op}({q}, {phi})"),
            Query::Project(op, w, q) => write!(f, "SELECT{op}{}({q})", fmt_vars(w)),
            Query::MapState {
                query,
                condition,
                then,
                otherwise,
            } => write!(
                f,
                "({query} MAP {condition} {} {})",
                then.symbol(),
                otherwise.symbol()
            ),
            Query::Belief(e, q) => write!(f, "({e} BELIEF {q})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::BeliefQuery;
    use crate::model::Iri;

    fn iri(s: &str) -> Iri {
        Iri::new(format!("urn:{s}")).unwrap()
    }

    fn var(s: &str) -> Variable {
        Variable::new(s)
    }

    fn deity_pattern() -> Query {
        Query::pattern(TriplePattern::new(var("deity"), iri("a"), iri("FullDeity")))
    }

    #[test]
    fn pattern_scope() {
        assert_eq!(deity_pattern().in_scope().unwrap(), BTreeSet::from([var("deity")]));
    }

    #[test]
    fn belief_scope_adds_holders() {
        let q = Query::belief(
            BeliefQuery::all_states(var("x"), FourOperator::InfoJoin),
            deity_pattern(),
        );
        assert_eq!(
            q.in_scope().unwrap(),
            BTreeSet::from([var("x"), var("deity")])
        );
    }

    #[test]
    fn union_needs_equal_scopes() {
        let other = Query::pattern(TriplePattern::new(var("x"), iri("a"), iri("Christian")));
        let q = Query::union(FourOperator::TruthJoin, deity_pattern(), other);
        assert!(q.in_scope().unwrap_err().rule.contains("same in-scope"));
    }

    #[test]
    fn operator_kinds_are_checked() {
        let q = Query::join(FourOperator::InfoJoin, deity_pattern(), deity_pattern());
        assert!(q.in_scope().is_err());
        let q = Query::union(FourOperator::InfoMeet, deity_pattern(), deity_pattern());
        assert!(q.in_scope().is_err());
    }

    #[test]
    fn projection_must_stay_in_scope() {
        let q = Query::project(FourOperator::InfoJoin, [var("nope")], deity_pattern());
        assert!(q.in_scope().is_err());
        let q = Query::project(FourOperator::InfoJoin, [var("deity")], deity_pattern());
        assert!(q.in_scope().is_ok());
    }

    #[test]
    fn belief_variables_may_not_shadow() {
        let q = Query::belief(
            BeliefQuery::all_states(var("deity"), FourOperator::InfoJoin),
            deity_pattern(),
        );
        assert!(q.in_scope().is_err());
    }

    #[test]
    fn three_valued_connectives() {
        use TruthValue3::*;
        assert_eq!(Error.not(), Error);
        assert_eq!(True.and(Error), Error);
        assert_eq!(False.and(Error), False);
        assert_eq!(True.or(Error), True);
        assert_eq!(False.or(Error), Error);
    }

    #[test]
    fn formula_examples() {
        let m = Mapping::from_pairs([(var("y"), Term::Iri(iri("Jesus")))]);
        assert_eq!(
            FilterFormula::StateIs(FourValue::True).eval_with_state(&m, FourValue::True),
            TruthValue3::True
        );
        let eq = FilterFormula::eq(var("x"), iri("PopeDI"));
        assert_eq!(eq.eval_with_state(&m, FourValue::True), TruthValue3::Error);
        let phi = eq.or(FilterFormula::Bound(var("y")));
        assert_eq!(phi.eval_with_state(&m, FourValue::True), TruthValue3::True);
        let same = FilterFormula::eq(iri("a"), iri("a"));
        assert_eq!(same.eval_with_state(&m, FourValue::False), TruthValue3::True);
    }
}

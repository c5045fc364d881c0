//! The generic semiring-annotated algebra over finitely supported graphs.
//!
//! Graphs and relations are stored by their support: everything absent is
//! the semiring zero. Every operator maps finite supports to finite
//! supports, so no universe is needed.

use std::collections::{BTreeMap, BTreeSet};

use super::{FilterFormula, IllFormedQuery, Mapping, Query};
use crate::logic::{FourOperator, FourValue};
use crate::model::{FourGraph, StarTriple, TriplePattern, Variable};
use crate::semiring::Semiring;

/// Queries of the plain annotated fragment: patterns, projection, filter,
/// join and union, with the semiring supplying every operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KQuery {
    Pattern(TriplePattern),
    Select(BTreeSet<Variable>, Box<KQuery>),
    Filter(Box<KQuery>, FilterFormula),
    And(Box<KQuery>, Box<KQuery>),
    Union(Box<KQuery>, Box<KQuery>),
}

impl KQuery {
    pub fn in_scope(&self) -> Result<BTreeSet<Variable>, IllFormedQuery> {
        match self {
            KQuery::Pattern(p) => Ok(p.variables()),
            KQuery::Select(w, q) => {
                let inner = q.in_scope()?;
                if !w.is_subset(&inner) {
                    return Err(IllFormedQuery::new("projected variables must be in scope"));
                }
                Ok(w.clone())
            }
            KQuery::Filter(q, phi) => {
                if mentions_state(phi) {
                    return Err(IllFormedQuery::new(
                        "STATE IS is not available in the semiring-annotated fragment",
                    ));
                }
                q.in_scope()
            }
            KQuery::And(a, b) => {
                let mut w = a.in_scope()?;
                w.extend(b.in_scope()?);
                Ok(w)
            }
            KQuery::Union(a, b) => {
                let (wa, wb) = (a.in_scope()?, b.in_scope()?);
                if wa != wb {
                    return Err(IllFormedQuery::new(
                        "union branches must have the same in-scope variables",
                    ));
                }
                Ok(wa)
            }
        }
    }

    /// Reads an eSPARQL query whose operators all come from one lattice
    /// (`info` selects ⊗/⊕, otherwise ∧/∨) as a query of this fragment.
    pub fn from_query(q: &Query, info: bool) -> Result<KQuery, IllFormedQuery> {
        let check = |op: &FourOperator| {
            if op.is_info() == info {
                Ok(())
            } else {
                Err(IllFormedQuery::new(format!(
                    "operator {op} does not belong to the chosen semiring"
                )))
            }
        };
        Ok(match q {
            Query::Pattern(p) => KQuery::Pattern(p.clone()),
            Query::Join(op, a, b) => {
                check(op)?;
                KQuery::And(Box::new(Self::from_query(a, info)?), Box::new(Self::from_query(b, info)?))
            }
            Query::Union(op, a, b) => {
                check(op)?;
                KQuery::Union(Box::new(Self::from_query(a, info)?), Box::new(Self::from_query(b, info)?))
            }
            Query::Filter(op, a, phi) => {
                check(op)?;
                KQuery::Filter(Box::new(Self::from_query(a, info)?), phi.clone())
            }
            Query::Project(op, w, a) => {
                check(op)?;
                KQuery::Select(w.clone(), Box::new(Self::from_query(a, info)?))
            }
            Query::MapState { .. } | Query::Belief(..) => {
                return Err(IllFormedQuery::new(
                    "MAP and BELIEF are not part of the semiring-annotated fragment",
                ))
            }
        })
    }
}

fn mentions_state(phi: &FilterFormula) -> bool {
    match phi {
        FilterFormula::StateIs(_) => true,
        FilterFormula::Eq(..) | FilterFormula::Bound(_) => false,
        FilterFormula::Not(f) => mentions_state(f),
        FilterFormula::And(f, g) | FilterFormula::Or(f, g) => mentions_state(f) || mentions_state(g),
    }
}

/// A finitely supported K-graph.
#[derive(Debug, Clone, PartialEq)]
pub struct KGraph<V> {
    support: BTreeMap<StarTriple, V>,
}

impl<V: Clone + PartialEq> KGraph<V> {
    pub fn new() -> Self {
        KGraph {
            support: BTreeMap::new(),
        }
    }

    pub fn insert<S: Semiring<Value = V>>(&mut self, t: StarTriple, v: V) {
        if v == S::zero() {
            self.support.remove(&t);
        } else {
            self.support.insert(t, v);
        }
    }

    pub fn support(&self) -> &BTreeMap<StarTriple, V> {
        &self.support
    }
}

impl<V: Clone + PartialEq> Default for KGraph<V> {
    fn default() -> Self {
        Self::new()
    }
}

impl KGraph<FourValue> {
    /// `None` unless `g`'s default is the semiring zero.
    pub fn from_four_graph<S: Semiring<Value = FourValue>>(g: &FourGraph) -> Option<Self> {
        (g.default_value() == S::zero()).then(|| KGraph {
            support: g.exceptions().clone(),
        })
    }
}

/// A finitely supported K-relation.
#[derive(Debug, Clone, PartialEq)]
pub struct KRelation<V> {
    pub vars: BTreeSet<Variable>,
    pub support: BTreeMap<Mapping, V>,
}

impl<V: Clone> KRelation<V> {
    pub fn value_at<S: Semiring<Value = V>>(&self, m: &Mapping) -> V {
        self.support.get(m).cloned().unwrap_or_else(S::zero)
    }
}

/// Evaluates `q` over `g` in semiring `S`.
pub fn eval_k<S: Semiring>(q: &KQuery, g: &KGraph<S::Value>) -> Result<KRelation<S::Value>, IllFormedQuery> {
    q.in_scope()?;
    Ok(eval_node::<S>(q, g))
}

fn eval_node<S: Semiring>(q: &KQuery, g: &KGraph<S::Value>) -> KRelation<S::Value> {
    let zero = S::zero();
    let mut support = BTreeMap::new();
    let vars = q.in_scope().expect("checked");
    match q {
        KQuery::Pattern(p) => {
            for (t, v) in &g.support {
                if let Some(m) = p.match_triple(t) {
                    support.insert(m, v.clone());
                }
            }
        }
        KQuery::Select(w, inner) => {
            let r = eval_node::<S>(inner, g);
            for (m, v) in r.support {
                let key = m.restrict(w);
                let acc = support.remove(&key).unwrap_or_else(S::zero);
                support.insert(key, S::add(&acc, &v));
            }
        }
        KQuery::Filter(inner, phi) => {
            let r = eval_node::<S>(inner, g);
            for (m, v) in r.support {
                // the state argument is irrelevant: STATE IS was rejected
                let k = if phi.eval_with_state(&m, FourValue::Unknown).is_true() {
                    S::one()
                } else {
                    S::zero()
                };
                support.insert(m, S::mul(&v, &k));
            }
        }
        KQuery::And(a, b) => {
            let (ra, rb) = (eval_node::<S>(a, g), eval_node::<S>(b, g));
            for (ma, va) in &ra.support {
                for (mb, vb) in &rb.support {
                    if let Some(m) = ma.union(mb) {
                        support.insert(m, S::mul(va, vb));
                    }
                }
            }
        }
        KQuery::Union(a, b) => {
            let (ra, rb) = (eval_node::<S>(a, g), eval_node::<S>(b, g));
            support = ra.support;
            for (m, v) in rb.support {
                let acc = support.remove(&m).unwrap_or_else(S::zero);
                support.insert(m, S::add(&acc, &v));
            }
        }
    }
    support.retain(|_, v| *v != zero);
    KRelation { vars, support }
}

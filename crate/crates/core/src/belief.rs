//! Belief queries: extracting the graph of what one or more holders believe.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::algebra::Mapping;
use crate::logic::{FourOperator, FourValue};
use crate::model::{BeliefVocabulary, FourGraph, Iri, Term, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BeliefError {
    #[error("belief holder variable {0} is not bound")]
    UnboundBeliefVariable(Variable),
    #[error("belief holder variable {0} is bound to a quoted triple, not an IRI")]
    NonIriHolder(Variable),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Holder {
    Iri(Iri),
    Variable(Variable),
}

impl From<Iri> for Holder {
    fn from(iri: Iri) -> Self {
        Holder::Iri(iri)
    }
}

impl From<Variable> for Holder {
    fn from(v: Variable) -> Self {
        Holder::Variable(v)
    }
}

impl fmt::Display for Holder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Holder::Iri(iri) => iri.fmt(f),
            Holder::Variable(v) => v.fmt(f),
        }
    }
}

/// `[u, α, β]` or `(E1 ∘ E2)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BeliefQuery {
    Atomic {
        holder: Holder,
        state: FourValue,
        fallback: FourValue,
    },
    Compound {
        left: Box<BeliefQuery>,
        op: FourOperator,
        right: Box<BeliefQuery>,
    },
}

impl BeliefQuery {
    pub fn atomic(holder: impl Into<Holder>, state: FourValue, fallback: FourValue) -> BeliefQuery {
        BeliefQuery::Atomic {
            holder: holder.into(),
            state,
            fallback,
        }
    }

    pub fn combine(self, op: FourOperator, right: BeliefQuery) -> BeliefQuery {
        BeliefQuery::Compound {
            left: Box::new(self),
            op,
            right: Box::new(right),
        }
    }

    /// The `(u, ∘)` shorthand: all four atomic queries for `u` with the
    /// identity of `∘` as fallback, combined left-associated with `∘`.
    pub fn all_states(holder: impl Into<Holder>, op: FourOperator) -> BeliefQuery {
        let holder = holder.into();
        let fallback = op.identity();
        let states = [
            FourValue::True,
            FourValue::False,
            FourValue::Unknown,
            FourValue::Conflict,
        ];
        states
            .into_iter()
            .map(|s| BeliefQuery::atomic(holder.clone(), s, fallback))
            .reduce(|acc, e| acc.combine(op, e))
            .expect("four states")
    }

    /// `var(E)`.
    pub fn variables(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        self.walk_holders(&mut |h| {
            if let Holder::Variable(v) = h {
                out.insert(v.clone());
            }
        });
        out
    }

    pub fn holder_iris(&self) -> BTreeSet<Iri> {
        let mut out = BTreeSet::new();
        self.walk_holders(&mut |h| {
            if let Holder::Iri(iri) = h {
                out.insert(iri.clone());
            }
        });
        out
    }

    fn walk_holders(&self, f: &mut impl FnMut(&Holder)) {
        match self {
            BeliefQuery::Atomic { holder, .. } => f(holder),
            BeliefQuery::Compound { left, right, .. } => {
                left.walk_holders(f);
                right.walk_holders(f);
            }
        }
    }

    pub fn is_ground(&self) -> bool {
        self.variables().is_empty()
    }

    /// Replaces every holder variable by its IRI binding in `m`.
    pub fn instantiate(&self, m: &Mapping) -> Result<BeliefQuery, BeliefError> {
        match self {
            BeliefQuery::Atomic {
                holder,
                state,
                fallback,
            } => {
                let holder = match holder {
                    Holder::Iri(iri) => Holder::Iri(iri.clone()),
                    Holder::Variable(v) => match m.get(v) {
                        None => return Err(BeliefError::UnboundBeliefVariable(v.clone())),
                        Some(Term::Triple(_)) => return Err(BeliefError::NonIriHolder(v.clone())),
                        Some(Term::Iri(iri)) => Holder::Iri(iri.clone()),
                    },
                };
                Ok(BeliefQuery::atomic(holder, *state, *fallback))
            }
            BeliefQuery::Compound { left, op, right } => {
                Ok(left.instantiate(m)?.combine(*op, right.instantiate(m)?))
            }
        }
    }

    /// `G[E]`, the graph of beliefs selected by a ground belief query.
    ///
    /// An atomic `[a, α, β]` maps `t` to `α` when `G(⟨a, pred(α), t⟩)` is
    /// true or conflicted and to `β` otherwise. Only exception keys of `g`
    /// can differ from its default, so the result's default is decided by
    /// `g`'s default alone and its exceptions come from matching keys.
    pub fn extract(&self, g: &FourGraph, vocab: &BeliefVocabulary) -> Result<FourGraph, BeliefError> {
        match self {
            BeliefQuery::Atomic {
                holder,
                state,
                fallback,
            } => {
                let holder = match holder {
                    Holder::Iri(iri) => iri,
                    Holder::Variable(v) => return Err(BeliefError::UnboundBeliefVariable(v.clone())),
                };
                let select = |v: FourValue| {
                    if matches!(v, FourValue::True | FourValue::Conflict) {
                        *state
                    } else {
                        *fallback
                    }
                };
                let predicate = vocab.predicate(*state);
                let mut out = FourGraph::new(select(g.default_value()));
                for (key, &value) in g.exceptions() {
                    if key.predicate == *predicate && key.subject.as_iri() == Some(holder) {
                        if let Term::Triple(believed) = &key.object {
                            out.insert((**believed).clone(), select(value));
                        }
                    }
                }
                Ok(out)
            }
            BeliefQuery::Compound { left, op, right } => {
                let l = left.extract(g, vocab)?;
                let r = right.extract(g, vocab)?;
                let mut out = FourGraph::new(op.apply(l.default_value(), r.default_value()));
                let keys: BTreeSet<_> = l.exceptions().keys().chain(r.exceptions().keys()).collect();
                for t in keys {
                    out.insert(t.clone(), op.apply(l.lookup(t), r.lookup(t)));
                }
                Ok(out)
            }
        }
    }
}

impl fmt::Display for BeliefQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BeliefQuery::Atomic {
                holder,
                state,
                fallback,
            } => write!(f, "[{holder}, {}, {}]", state.symbol(), fallback.symbol()),
            BeliefQuery::Compound { left, op, right } => write!(f, "({left} {op} {right})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::StarTriple;
    use FourValue::*;

    fn iri(s: &str) -> Iri {
        Iri::new(format!("urn:{s}")).unwrap()
    }

    #[test]
    fn shorthand_expands_to_four_atomics() {
        let e = BeliefQuery::all_states(iri("PopeDI"), FourOperator::InfoJoin);
        let expected = BeliefQuery::atomic(iri("PopeDI"), True, Unknown)
            .combine(FourOperator::InfoJoin, BeliefQuery::atomic(iri("PopeDI"), False, Unknown))
            .combine(FourOperator::InfoJoin, BeliefQuery::atomic(iri("PopeDI"), Unknown, Unknown))
            .combine(FourOperator::InfoJoin, BeliefQuery::atomic(iri("PopeDI"), Conflict, Unknown));
        assert_eq!(e, expected);

        let x = Variable::new("x");
        let e = BeliefQuery::all_states(x.clone(), FourOperator::TruthMeet);
        let mut fallbacks = Vec::new();
        let mut ops = Vec::new();
        fn walk(e: &BeliefQuery, fb: &mut Vec<FourValue>, ops: &mut Vec<FourOperator>) {
            match e {
                BeliefQuery::Atomic { fallback, .. } => fb.push(*fallback),
                BeliefQuery::Compound { left, op, right } => {
                    ops.push(*op);
                    walk(left, fb, ops);
                    walk(right, fb, ops);
                }
            }
        }
        walk(&e, &mut fallbacks, &mut ops);
        assert_eq!(fallbacks, vec![True; 4]);
        assert_eq!(ops, vec![FourOperator::TruthMeet; 3]);
        assert_eq!(e.variables(), BTreeSet::from([x]));
    }

    #[test]
    fn instantiate_substitutes_holders() {
        let x = Variable::new("x");
        let e = BeliefQuery::atomic(x.clone(), True, Unknown);
        let m = Mapping::from_pairs([(x.clone(), Term::Iri(iri("PopeDI")))]);
        assert_eq!(
            e.instantiate(&m).unwrap(),
            BeliefQuery::atomic(iri("PopeDI"), True, Unknown)
        );

        let e = BeliefQuery::all_states(x.clone(), FourOperator::InfoJoin);
        let m = Mapping::from_pairs([(x.clone(), Term::Iri(iri("Arius")))]);
        assert_eq!(
            e.instantiate(&m).unwrap(),
            BeliefQuery::all_states(iri("Arius"), FourOperator::InfoJoin)
        );
    }

    #[test]
    fn instantiate_errors() {
        let x = Variable::new("x");
        let e = BeliefQuery::atomic(x.clone(), True, Unknown);
        let m = Mapping::from_pairs([(Variable::new("y"), Term::Iri(iri("PopeDI")))]);
        assert_eq!(
            e.instantiate(&m),
            Err(BeliefError::UnboundBeliefVariable(x.clone()))
        );
        let quoted = StarTriple::new(iri("a"), iri("b"), iri("c"));
        let m = Mapping::from_pairs([(x.clone(), Term::from(quoted))]);
        assert_eq!(e.instantiate(&m), Err(BeliefError::NonIriHolder(x)));
    }

    #[test]
    fn conflicted_belief_counts_as_held() {
        let vocab = BeliefVocabulary::default();
        let t = StarTriple::new(iri("s"), iri("p"), iri("o"));
        let belief = StarTriple::new(iri("h"), vocab.to_be_true.clone(), t.clone());
        let g = FourGraph::from_parts(Unknown, [(belief, Conflict)]);
        let out = BeliefQuery::atomic(iri("h"), True, Unknown)
            .extract(&g, &vocab)
            .unwrap();
        assert_eq!(out.lookup(&t), True);
    }

    #[test]
    fn quoted_holders_are_ignored() {
        let vocab = BeliefVocabulary::default();
        let t = StarTriple::new(iri("s"), iri("p"), iri("o"));
        let holder = StarTriple::new(iri("h"), iri("q"), iri("r"));
        let belief = StarTriple::new(holder, vocab.to_be_true.clone(), t);
        let g = FourGraph::from_asserted([belief]);
        let out = BeliefQuery::atomic(iri("h"), True, Unknown)
            .extract(&g, &vocab)
            .unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn true_default_base_graph_flips_fallback() {
        // Every unlisted belief triple is true, so every statement is believed.
        let vocab = BeliefVocabulary::default();
        let t = StarTriple::new(iri("s"), iri("p"), iri("o"));
        let denied = StarTriple::new(iri("h"), vocab.to_be_true.clone(), t.clone());
        let g = FourGraph::from_parts(True, [(denied, False)]);
        let out = BeliefQuery::atomic(iri("h"), True, Unknown)
            .extract(&g, &vocab)
            .unwrap();
        assert_eq!(out.default_value(), True);
        assert_eq!(out.lookup(&t), Unknown);
    }
}

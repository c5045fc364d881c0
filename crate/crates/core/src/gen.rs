//! Seeded random graphs and well-formed queries for differential and
//! property testing.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{FilterFormula, Operand, Query};
use crate::belief::BeliefQuery;
use crate::logic::{FourOperator, FourValue};
use crate::model::{
    BeliefVocabulary, FourGraph, Iri, PredicatePattern, StarTriple, Term, TermPattern, TriplePattern, Variable,
};

pub const MAX_EXCEPTIONS: usize = 12;
pub const MAX_IRIS: usize = 6;
pub const MAX_NESTING: usize = 2;
pub const MAX_DEPTH: usize = 4;

const VARIABLES: [&str; 3] = ["x", "y", "z"];

/// Which operators a generated query may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fragment {
    /// Everything the algebra offers.
    Full,
    /// Patterns, ⊗-joins and unions: finitely supported over graphs whose
    /// default is unknown.
    Positive,
    /// Patterns, projection, filter without `STATE IS`, join and union,
    /// with every operator taken from one lattice.
    Annotated { info: bool },
}

pub struct Generator {
    rng: ChaCha8Rng,
    iris: Vec<Iri>,
    vocab: BeliefVocabulary,
}

impl Generator {
    pub fn new(seed: u64, vocab: BeliefVocabulary) -> Generator {
        let iris = (0..MAX_IRIS)
            .map(|i| Iri::new(format!("https://esparql.dev/gen#e{i}")).unwrap())
            .collect();
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            iris,
            vocab,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn iri(&mut self) -> Iri {
        self.iris.choose(&mut self.rng).unwrap().clone()
    }

    fn state(&mut self) -> FourValue {
        *FourValue::ALL.choose(&mut self.rng).unwrap()
    }

    fn belief_predicate(&mut self) -> Iri {
        let s = self.state();
        self.vocab.predicate(s).clone()
    }

    fn term(&mut self, nesting: usize) -> Term {
        if nesting > 0 && self.rng.gen_bool(0.3) {
            Term::from(self.triple(nesting - 1))
        } else {
            Term::Iri(self.iri())
        }
    }

    fn triple(&mut self, nesting: usize) -> StarTriple {
        if self.rng.gen_bool(0.4) {
            let holder = self.iri();
            let predicate = self.belief_predicate();
            let believed = self.triple(nesting.saturating_sub(1));
            if nesting > 0 {
                return StarTriple::new(holder, predicate, believed);
            }
            return StarTriple::new(holder, predicate, self.iri());
        }
        let s = self.term(nesting);
        let p = self.iri();
        let o = self.term(nesting);
        StarTriple::new(s, p, o)
    }

    /// A graph with at most [`MAX_EXCEPTIONS`] stated triples. `default`
    /// fixes the graph default; otherwise it is drawn, mostly unknown.
    pub fn graph(&mut self, default: Option<FourValue>) -> FourGraph {
        let default = default.unwrap_or_else(|| {
            if self.rng.gen_bool(0.7) {
                FourValue::Unknown
            } else {
                self.state()
            }
        });
        let n = self.rng.gen_range(0..=MAX_EXCEPTIONS);
        let mut g = FourGraph::new(default);
        for _ in 0..n {
            let t = self.triple(MAX_NESTING);
            let v = self.state();
            g.insert(t, v);
        }
        g
    }

    fn variable(&mut self) -> Variable {
        Variable::new(VARIABLES.choose(&mut self.rng).unwrap())
    }

    fn term_pattern(&mut self, nesting: usize) -> TermPattern {
        let roll: f64 = self.rng.gen();
        if nesting > 0 && roll < 0.25 {
            TermPattern::Triple(Box::new(self.pattern(nesting - 1)))
        } else if roll < 0.65 {
            TermPattern::Variable(self.variable())
        } else {
            TermPattern::Iri(self.iri())
        }
    }

    fn pattern(&mut self, nesting: usize) -> TriplePattern {
        let subject = self.term_pattern(nesting);
        let roll: f64 = self.rng.gen();
        let predicate = if roll < 0.25 {
            PredicatePattern::Variable(self.variable())
        } else if roll < 0.55 {
            PredicatePattern::Iri(self.belief_predicate())
        } else {
            PredicatePattern::Iri(self.iri())
        };
        let object = self.term_pattern(nesting);
        TriplePattern {
            subject,
            predicate,
            object,
        }
    }

    fn formula(&mut self, depth: usize, with_state: bool) -> FilterFormula {
        let roll = self.rng.gen_range(0..if depth > 0 { 6 } else { 3 });
        match roll {
            0 => {
                let x = self.variable();
                let other = if self.rng.gen_bool(0.5) {
                    Operand::Variable(self.variable())
                } else {
                    Operand::Iri(self.iri())
                };
                FilterFormula::Eq(Operand::Variable(x), other)
            }
            1 => FilterFormula::Bound(self.variable()),
            2 if with_state => FilterFormula::StateIs(self.state()),
            2 => FilterFormula::Bound(self.variable()),
            3 => self.formula(depth - 1, with_state).negate(),
            4 => {
                let a = self.formula(depth - 1, with_state);
                a.and(self.formula(depth - 1, with_state))
            }
            _ => {
                let a = self.formula(depth - 1, with_state);
                a.or(self.formula(depth - 1, with_state))
            }
        }
    }

    fn operator(&mut self, info: Option<bool>, meet: bool) -> FourOperator {
        let info = info.unwrap_or_else(|| self.rng.gen_bool(0.5));
        match (info, meet) {
            (false, true) => FourOperator::TruthMeet,
            (false, false) => FourOperator::TruthJoin,
            (true, true) => FourOperator::InfoMeet,
            (true, false) => FourOperator::InfoJoin,
        }
    }

    fn any_operator(&mut self) -> FourOperator {
        let meet = self.rng.gen_bool(0.5);
        self.operator(None, meet)
    }

    fn belief_query(&mut self, inner_scope: &std::collections::BTreeSet<Variable>) -> BeliefQuery {
        let free: Vec<Variable> = VARIABLES
            .iter()
            .map(Variable::new)
            .filter(|v| !inner_scope.contains(v))
            .collect();
        let holder = |g: &mut Generator| -> crate::belief::Holder {
            match free.choose(&mut g.rng) {
                Some(v) if g.rng.gen_bool(0.6) => v.clone().into(),
                _ => g.iri().into(),
            }
        };
        let atom = |g: &mut Generator| {
            let h = holder(g);
            if g.rng.gen_bool(0.6) {
                BeliefQuery::all_states(h, FourOperator::InfoJoin)
            } else {
                BeliefQuery::atomic(h, g.state(), g.state())
            }
        };
        let first = atom(self);
        if self.rng.gen_bool(0.3) {
            let op = self.any_operator();
            first.combine(op, atom(self))
        } else {
            first
        }
    }

    /// A well-formed query of depth at most [`MAX_DEPTH`].
    pub fn query(&mut self, fragment: Fragment) -> Query {
        let depth = self.rng.gen_range(1..=MAX_DEPTH);
        let q = self.query_of_depth(depth, fragment);
        debug_assert!(q.in_scope().is_ok(), "generated ill-formed query {q}");
        q
    }

    fn query_of_depth(&mut self, depth: usize, fragment: Fragment) -> Query {
        if depth <= 1 {
            return Query::pattern(self.pattern(1));
        }
        let info = match fragment {
            Fragment::Annotated { info } => Some(info),
            Fragment::Positive | Fragment::Full => None,
        };
        let choices: &[u8] = match fragment {
            Fragment::Full => &[0, 1, 2, 3, 4, 5],
            Fragment::Positive => &[0, 1],
            Fragment::Annotated { .. } => &[0, 1, 2, 3],
        };
        match *choices.choose(&mut self.rng).unwrap() {
            0 => {
                let a = self.query_of_depth(depth - 1, fragment);
                let b = self.query_of_depth(depth - 1, fragment);
                let op = match fragment {
                    Fragment::Positive => FourOperator::InfoMeet,
                    _ => self.operator(info, true),
                };
                Query::join(op, a, b)
            }
            1 => {
                let op = self.operator(info, false);
                // aligning scopes costs one level of projection
                let aligned = depth >= 3 && !matches!(fragment, Fragment::Positive);
                let child = if aligned { depth - 2 } else { depth - 1 };
                let a = self.query_of_depth(child, fragment);
                let b = self.query_of_depth(child, fragment);
                let (wa, wb) = (a.in_scope().unwrap(), b.in_scope().unwrap());
                if wa == wb {
                    return Query::union(op, a, b);
                }
                if !aligned {
                    let meet = self.operator(info, true);
                    let meet = if matches!(fragment, Fragment::Positive) { FourOperator::InfoMeet } else { meet };
                    return Query::join(meet, a, b);
                }
                let common: Vec<Variable> = wa.intersection(&wb).cloned().collect();
                let pa = Query::project(self.operator(info, false), common.clone(), a);
                let pb = Query::project(self.operator(info, false), common, b);
                Query::union(op, pa, pb)
            }
            2 => {
                let a = self.query_of_depth(depth - 1, fragment);
                let op = match fragment {
                    Fragment::Annotated { .. } => self.operator(info, true),
                    _ => self.any_operator(),
                };
                let phi = self.formula(2, matches!(fragment, Fragment::Full));
                Query::filter(op, a, phi)
            }
            3 => {
                let a = self.query_of_depth(depth - 1, fragment);
                let scope: Vec<Variable> = a.in_scope().unwrap().into_iter().collect();
                let keep: Vec<Variable> = scope.into_iter().filter(|_| self.rng.gen_bool(0.5)).collect();
                let op = match fragment {
                    Fragment::Annotated { .. } => self.operator(info, false),
                    _ => self.any_operator(),
                };
                Query::project(op, keep, a)
            }
            4 => {
                let a = self.query_of_depth(depth - 1, fragment);
                let phi = self.formula(2, true);
                let (then, otherwise) = (self.state(), self.state());
                Query::map_state(a, phi, then, otherwise)
            }
            _ => {
                let a = self.query_of_depth(depth - 1, fragment);
                let e = self.belief_query(&a.in_scope().unwrap());
                Query::belief(e, a)
            }
        }
    }
}

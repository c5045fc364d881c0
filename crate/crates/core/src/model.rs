//! RDF-star terms, quoted triples, triple patterns, and four-valued graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::Mapping;
use crate::logic::FourValue;

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const DEFAULT_VOCAB_NAMESPACE: &str = "https://esparql.dev/vocab#";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IriError {
    #[error("IRI must not be empty")]
    Empty,
    #[error("IRI `{0}` contains whitespace or angle brackets")]
    InvalidCharacter(String),
}

/// An opaque IRI. Compared by exact text; never resolved.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(text: impl AsRef<str>) -> Result<Iri, IriError> {
        let text = text.as_ref();
        if text.is_empty() {
            return Err(IriError::Empty);
        }
        if text
            .chars()
            .any(|c| c.is_whitespace() || c == '<' || c == '>')
        {
            return Err(IriError::InvalidCharacter(text.to_owned()));
        }
        Ok(Iri(Arc::from(text)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn rdf_type() -> Iri {
        Iri(Arc::from(RDF_TYPE))
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

/// A query variable, stored without its leading `?`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(Arc<str>);

impl Variable {
    /// Panics on an empty name.
    pub fn new(name: impl AsRef<str>) -> Variable {
        let name = name.as_ref().trim_start_matches('?');
        assert!(!name.is_empty(), "variable name must not be empty");
        Variable(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?{}", self.0)
    }
}

/// A value a variable can be bound to: an IRI or a quoted triple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    Triple(Arc<StarTriple>),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            Term::Triple(_) => None,
        }
    }

    pub fn as_triple(&self) -> Option<&StarTriple> {
        match self {
            Term::Triple(t) => Some(t),
            Term::Iri(_) => None,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Iri(_) => 0,
            Term::Triple(t) => 1 + t.subject.depth().max(t.object.depth()),
        }
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Term {
        Term::Iri(iri)
    }
}

impl From<StarTriple> for Term {
    fn from(t: StarTriple) -> Term {
        Term::Triple(Arc::new(t))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => iri.fmt(f),
            Term::Triple(t) => write!(f, "<< {t} >>"),
        }
    }
}

/// A ground RDF-star triple. Only subject and object may nest.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StarTriple {
    pub subject: Term,
    pub predicate: Iri,
    pub object: Term,
}

impl StarTriple {
    pub fn new(subject: impl Into<Term>, predicate: Iri, object: impl Into<Term>) -> StarTriple {
        StarTriple {
            subject: subject.into(),
            predicate,
            object: object.into(),
        }
    }

    /// Every term at any position, recursively, including nested triples
    /// themselves but not `self`.
    pub fn collect_terms(&self, out: &mut BTreeSet<Term>) {
        collect_term(&self.subject, out);
        out.insert(Term::Iri(self.predicate.clone()));
        collect_term(&self.object, out);
    }
}

fn collect_term(term: &Term, out: &mut BTreeSet<Term>) {
    if out.insert(term.clone()) {
        if let Term::Triple(t) = term {
            t.collect_terms(out);
        }
    }
}

/// Canonical form: `s p o` without the enclosing quotes.
impl fmt::Display for StarTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.subject, self.predicate, self.object)
    }
}

/// Subject or object position of a triple pattern.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermPattern {
    Iri(Iri),
    Variable(Variable),
    Triple(Box<TriplePattern>),
}

/// Predicate position of a triple pattern; never a quoted pattern.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PredicatePattern {
    Iri(Iri),
    Variable(Variable),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriplePattern {
    pub subject: TermPattern,
    pub predicate: PredicatePattern,
    pub object: TermPattern,
}

impl From<Iri> for TermPattern {
    fn from(iri: Iri) -> Self {
        TermPattern::Iri(iri)
    }
}

impl From<Variable> for TermPattern {
    fn from(v: Variable) -> Self {
        TermPattern::Variable(v)
    }
}

impl From<TriplePattern> for TermPattern {
    fn from(p: TriplePattern) -> Self {
        TermPattern::Triple(Box::new(p))
    }
}

impl From<Iri> for PredicatePattern {
    fn from(iri: Iri) -> Self {
        PredicatePattern::Iri(iri)
    }
}

impl From<Variable> for PredicatePattern {
    fn from(v: Variable) -> Self {
        PredicatePattern::Variable(v)
    }
}

impl From<&Term> for TermPattern {
    fn from(term: &Term) -> Self {
        match term {
            Term::Iri(iri) => TermPattern::Iri(iri.clone()),
            Term::Triple(t) => TermPattern::Triple(Box::new(TriplePattern::from(&**t))),
        }
    }
}

impl From<&StarTriple> for TriplePattern {
    fn from(t: &StarTriple) -> Self {
        TriplePattern {
            subject: (&t.subject).into(),
            predicate: PredicatePattern::Iri(t.predicate.clone()),
            object: (&t.object).into(),
        }
    }
}

impl TermPattern {
    fn collect_variables(&self, out: &mut BTreeSet<Variable>) {
        match self {
            TermPattern::Iri(_) => {}
            TermPattern::Variable(v) => {
                out.insert(v.clone());
            }
            TermPattern::Triple(p) => p.collect_variables(out),
        }
    }

    fn substitute(&self, mapping: &Mapping) -> Option<Term> {
        match self {
            TermPattern::Iri(iri) => Some(Term::Iri(iri.clone())),
            TermPattern::Variable(v) => mapping.get(v).cloned(),
            TermPattern::Triple(p) => p.substitute(mapping).map(Term::from),
        }
    }

    fn match_term(&self, term: &Term, bindings: &mut BTreeMap<Variable, Term>) -> bool {
        match (self, term) {
            (TermPattern::Iri(a), Term::Iri(b)) => a == b,
            (TermPattern::Variable(v), _) => bind(bindings, v, term),
            (TermPattern::Triple(p), Term::Triple(t)) => p.match_into(t, bindings),
            _ => false,
        }
    }

    /// Ground terms the pattern mentions; ground quoted sub-patterns count
    /// as quoted triples.
    fn collect_constants(&self, out: &mut BTreeSet<Term>) {
        match self {
            TermPattern::Iri(iri) => {
                out.insert(Term::Iri(iri.clone()));
            }
            TermPattern::Variable(_) => {}
            TermPattern::Triple(p) => {
                if let Some(t) = p.to_ground() {
                    collect_term(&Term::from(t), out);
                } else {
                    p.collect_constants(out);
                }
            }
        }
    }

    fn to_ground(&self) -> Option<Term> {
        match self {
            TermPattern::Iri(iri) => Some(Term::Iri(iri.clone())),
            TermPattern::Variable(_) => None,
            TermPattern::Triple(p) => p.to_ground().map(Term::from),
        }
    }
}

fn bind(bindings: &mut BTreeMap<Variable, Term>, v: &Variable, term: &Term) -> bool {
    match bindings.get(v) {
        Some(existing) => existing == term,
        None => {
            bindings.insert(v.clone(), term.clone());
            true
        }
    }
}

impl TriplePattern {
    pub fn new(
        subject: impl Into<TermPattern>,
        predicate: impl Into<PredicatePattern>,
        object: impl Into<TermPattern>,
    ) -> TriplePattern {
        TriplePattern {
            subject: subject.into(),
            predicate: predicate.into(),
            object: object.into(),
        }
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<Variable>) {
        self.subject.collect_variables(out);
        if let PredicatePattern::Variable(v) = &self.predicate {
            out.insert(v.clone());
        }
        self.object.collect_variables(out);
    }

    /// Replaces variables by their bindings. `None` when a variable is
    /// unbound or the predicate would become a quoted triple; such a
    /// substitution does not denote an RDF-star triple.
    pub fn substitute(&self, mapping: &Mapping) -> Option<StarTriple> {
        let predicate = match &self.predicate {
            PredicatePattern::Iri(iri) => iri.clone(),
            PredicatePattern::Variable(v) => mapping.get(v)?.as_iri()?.clone(),
        };
        Some(StarTriple {
            subject: self.subject.substitute(mapping)?,
            predicate,
            object: self.object.substitute(mapping)?,
        })
    }

    /// The unique mapping over `self.variables()` that substitutes to `t`.
    pub fn match_triple(&self, t: &StarTriple) -> Option<Mapping> {
        let mut bindings = BTreeMap::new();
        self.match_into(t, &mut bindings)
            .then(|| Mapping::from_map(bindings))
    }

    fn match_into(&self, t: &StarTriple, bindings: &mut BTreeMap<Variable, Term>) -> bool {
        let predicate_ok = match &self.predicate {
            PredicatePattern::Iri(iri) => *iri == t.predicate,
            PredicatePattern::Variable(v) => bind(bindings, v, &Term::Iri(t.predicate.clone())),
        };
        predicate_ok
            && self.subject.match_term(&t.subject, bindings)
            && self.object.match_term(&t.object, bindings)
    }

    pub fn collect_constants(&self, out: &mut BTreeSet<Term>) {
        self.subject.collect_constants(out);
        if let PredicatePattern::Iri(iri) = &self.predicate {
            out.insert(Term::Iri(iri.clone()));
        }
        self.object.collect_constants(out);
    }

    pub fn to_ground(&self) -> Option<StarTriple> {
        let predicate = match &self.predicate {
            PredicatePattern::Iri(iri) => iri.clone(),
            PredicatePattern::Variable(_) => return None,
        };
        Some(StarTriple {
            subject: self.subject.to_ground()?,
            predicate,
            object: self.object.to_ground()?,
        })
    }
}

impl fmt::Display for TermPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermPattern::Iri(iri) => iri.fmt(f),
            TermPattern::Variable(v) => v.fmt(f),
            TermPattern::Triple(p) => write!(f, "<< {p} >>"),
        }
    }
}

impl fmt::Display for PredicatePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredicatePattern::Iri(iri) => iri.fmt(f),
            PredicatePattern::Variable(v) => v.fmt(f),
        }
    }
}

impl fmt::Display for TriplePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.subject, self.predicate, self.object)
    }
}

/// A total function from RDF-star triples to [`FourValue`], stored as a
/// default value plus a finite table of exceptions.
///
/// Invariant: no exception carries the default value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FourGraph {
    default: FourValue,
    exceptions: BTreeMap<StarTriple, FourValue>,
}

impl Default for FourGraph {
    /// The empty open-world graph: everything unknown.
    fn default() -> Self {
        FourGraph::new(FourValue::Unknown)
    }
}

impl FourGraph {
    pub fn new(default: FourValue) -> FourGraph {
        FourGraph {
            default,
            exceptions: BTreeMap::new(),
        }
    }

    /// Open-world reading of a plain RDF-star graph: listed triples are
    /// true, everything else unknown.
    pub fn from_asserted<I>(triples: I) -> FourGraph
    where
        I: IntoIterator<Item = StarTriple>,
    {
        let mut g = FourGraph::default();
        for t in triples {
            g.insert(t, FourValue::True);
        }
        g
    }

    pub fn from_parts<I>(default: FourValue, entries: I) -> FourGraph
    where
        I: IntoIterator<Item = (StarTriple, FourValue)>,
    {
        let mut g = FourGraph::new(default);
        for (t, v) in entries {
            g.insert(t, v);
        }
        g
    }

    pub fn default_value(&self) -> FourValue {
        self.default
    }

    pub fn lookup(&self, t: &StarTriple) -> FourValue {
        self.exceptions.get(t).copied().unwrap_or(self.default)
    }

    /// Sets `G(t) = v` in place, keeping the canonical form.
    pub fn insert(&mut self, t: StarTriple, v: FourValue) {
        if v == self.default {
            self.exceptions.remove(&t);
        } else {
            self.exceptions.insert(t, v);
        }
    }

    /// Persistent variant of [`FourGraph::insert`].
    pub fn set(&self, t: StarTriple, v: FourValue) -> FourGraph {
        let mut g = self.clone();
        g.insert(t, v);
        g
    }

    pub fn exceptions(&self) -> &BTreeMap<StarTriple, FourValue> {
        &self.exceptions
    }

    pub fn len(&self) -> usize {
        self.exceptions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exceptions.is_empty()
    }

    /// Terms occurring at any position of any exception key, recursively,
    /// together with `extra` (closed under sub-triple extraction as well).
    pub fn active_domain<'a, I>(&self, extra: I) -> BTreeSet<Term>
    where
        I: IntoIterator<Item = &'a Term>,
    {
        let mut out = BTreeSet::new();
        for t in self.exceptions.keys() {
            t.collect_terms(&mut out);
        }
        for term in extra {
            collect_term(term, &mut out);
        }
        out
    }
}

/// The four predicates that encode beliefs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BeliefVocabulary {
    pub to_be_true: Iri,
    pub to_be_false: Iri,
    pub to_be_unknown: Iri,
    pub to_be_conflicted: Iri,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VocabularyError {
    #[error(transparent)]
    Iri(#[from] IriError),
    #[error("belief predicates must be pairwise distinct")]
    NotDistinct,
}

impl Default for BeliefVocabulary {
    fn default() -> Self {
        BeliefVocabulary::with_namespace(DEFAULT_VOCAB_NAMESPACE)
            .expect("default namespace is a valid IRI prefix")
    }
}

impl BeliefVocabulary {
    pub fn new(
        to_be_true: Iri,
        to_be_false: Iri,
        to_be_unknown: Iri,
        to_be_conflicted: Iri,
    ) -> Result<BeliefVocabulary, VocabularyError> {
        let all = [&to_be_true, &to_be_false, &to_be_unknown, &to_be_conflicted];
        let distinct: BTreeSet<_> = all.iter().collect();
        if distinct.len() != 4 {
            return Err(VocabularyError::NotDistinct);
        }
        Ok(BeliefVocabulary {
            to_be_true,
            to_be_false,
            to_be_unknown,
            to_be_conflicted,
        })
    }

    /// `<ns>believesToBeTrue` and so on.
    pub fn with_namespace(ns: &str) -> Result<BeliefVocabulary, VocabularyError> {
        let iri = |local: &str| Iri::new(format!("{ns}{local}"));
        BeliefVocabulary::new(
            iri("believesToBeTrue")?,
            iri("believesToBeFalse")?,
            iri("believesToBeUnknown")?,
            iri("believesToBeConflicted")?,
        )
    }

    pub fn predicate(&self, state: FourValue) -> &Iri {
        match state {
            FourValue::True => &self.to_be_true,
            FourValue::False => &self.to_be_false,
            FourValue::Unknown => &self.to_be_unknown,
            FourValue::Conflict => &self.to_be_conflicted,
        }
    }

    pub fn state_of(&self, predicate: &Iri) -> Option<FourValue> {
        FourValue::ALL
            .into_iter()
            .find(|&s| self.predicate(s) == predicate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Iri {
        Iri::new(format!("http://ex.org/{s}")).unwrap()
    }

    fn triple(s: impl Into<Term>, p: &str, o: impl Into<Term>) -> StarTriple {
        StarTriple::new(s, iri(p), o)
    }

    #[test]
    fn iri_validation() {
        assert_eq!(Iri::new(""), Err(IriError::Empty));
        assert!(Iri::new("a b").is_err());
        assert!(Iri::new("a<b").is_err());
        assert!(Iri::new("urn:x").is_ok());
    }

    #[test]
    fn set_then_lookup() {
        let t = triple(iri("a"), "p", iri("b"));
        let g = FourGraph::default().set(t.clone(), FourValue::Conflict);
        assert_eq!(g.lookup(&t), FourValue::Conflict);
        let g = g.set(t.clone(), FourValue::False);
        assert_eq!(g.lookup(&t), FourValue::False);
        let g = g.set(t.clone(), FourValue::Unknown);
        assert!(g.exceptions().is_empty());
    }

    #[test]
    fn empty_graph_answers_default() {
        let g = FourGraph::default();
        assert_eq!(g.lookup(&triple(iri("x"), "y", iri("z"))), FourValue::Unknown);
    }

    #[test]
    fn asserted_triples_are_true_elsewhere_unknown() {
        let t = triple(iri("PopeDI"), "a", iri("Christian"));
        let g = FourGraph::from_asserted([t.clone()]);
        assert_eq!(g.len(), 1);
        assert_eq!(g.lookup(&t), FourValue::True);
        assert_eq!(g.default_value(), FourValue::Unknown);
        assert_eq!(FourGraph::from_asserted([]), FourGraph::default());
    }

    #[test]
    fn active_domain_unfolds_nesting() {
        let t9 = triple(iri("Jesus"), "a", iri("FullDeity"));
        let t1 = triple(iri("PopeDI"), "bTT", t9.clone());
        let t5 = triple(iri("Russell"), "bTT", t1.clone());
        let g = FourGraph::from_asserted([t5.clone()]);
        let dom = g.active_domain([]);
        let expected: BTreeSet<Term> = [
            Term::from(iri("Russell")),
            iri("bTT").into(),
            t1.into(),
            iri("PopeDI").into(),
            t9.into(),
            iri("Jesus").into(),
            iri("a").into(),
            iri("FullDeity").into(),
        ]
        .into_iter()
        .collect();
        assert_eq!(dom, expected);
        assert!(!dom.contains(&Term::from(t5)));
    }

    #[test]
    fn active_domain_of_empty_graph_is_extra() {
        let x = Term::from(iri("x"));
        let dom = FourGraph::default().active_domain([&x]);
        assert_eq!(dom.into_iter().collect::<Vec<_>>(), vec![x]);
    }

    #[test]
    fn pattern_match_and_substitute_agree() {
        let t9 = triple(iri("Jesus"), "a", iri("FullDeity"));
        let t2 = triple(iri("Arius"), "bTF", t9);
        let p = TriplePattern::new(
            Variable::new("x"),
            iri("bTF"),
            TriplePattern::new(Variable::new("y"), iri("a"), iri("FullDeity")),
        );
        let m = p.match_triple(&t2).unwrap();
        assert_eq!(m.get(&Variable::new("x")), Some(&Term::from(iri("Arius"))));
        assert_eq!(p.substitute(&m), Some(t2));
    }

    #[test]
    fn repeated_variable_must_agree() {
        let p = TriplePattern::new(Variable::new("x"), iri("p"), Variable::new("x"));
        assert!(p.match_triple(&triple(iri("a"), "p", iri("b"))).is_none());
        assert!(p.match_triple(&triple(iri("a"), "p", iri("a"))).is_some());
    }

    #[test]
    fn quoted_predicate_binding_does_not_substitute() {
        let p = TriplePattern::new(iri("s"), Variable::new("p"), iri("o"));
        let m = Mapping::from_pairs([(
            Variable::new("p"),
            Term::from(triple(iri("a"), "b", iri("c"))),
        )]);
        assert_eq!(p.substitute(&m), None);
    }

    #[test]
    fn vocabulary_lookup() {
        let v = BeliefVocabulary::default();
        for s in FourValue::ALL {
            assert_eq!(v.state_of(v.predicate(s)), Some(s));
        }
        assert_eq!(
            v.to_be_true.as_str(),
            "https://esparql.dev/vocab#believesToBeTrue"
        );
        let dup = iri("p");
        assert_eq!(
            BeliefVocabulary::new(dup.clone(), dup, iri("q"), iri("r")),
            Err(VocabularyError::NotDistinct)
        );
    }
}

//! The running-example graph and the algebraic use-case queries, built in
//! code so that tests and benchmarks do not depend on the parser.

use crate::algebra::{FilterFormula, Query};
use crate::belief::BeliefQuery;
use crate::logic::{FourOperator, FourValue};
use crate::model::{BeliefVocabulary, FourGraph, Iri, StarTriple, TriplePattern, Variable};

/// The shipped fixture files.
pub mod files {
    pub const TABLE1: &str = include_str!("../../../fixtures/table1.f4s");
    pub const RUNNING_EXAMPLE: &str = include_str!("../../../fixtures/running-example.esq");
    pub const U1: &str = include_str!("../../../fixtures/u1.esq");
    pub const U2: &str = include_str!("../../../fixtures/u2.esq");
    pub const U3: &str = include_str!("../../../fixtures/u3.esq");
    pub const U4: &str = include_str!("../../../fixtures/u4.esq");
    pub const U4_MAPPED: &str = include_str!("../../../fixtures/u4-mapped.esq");
    pub const MEET_DISJOINT: &str = include_str!("../../../fixtures/meet-disjoint.esq");
}

/// Base IRI that bare names such as `<PopeDI>` resolve against.
pub const DATA_BASE: &str = "https://esparql.dev/data#";

pub fn data(name: &str) -> Iri {
    Iri::new(format!("{DATA_BASE}{name}")).expect("valid local name")
}

pub fn var(name: &str) -> Variable {
    Variable::new(name)
}

/// `<Jesus> a <FullDeity>`.
pub fn t9() -> StarTriple {
    StarTriple::new(data("Jesus"), Iri::rdf_type(), data("FullDeity"))
}

/// `<Zeus> a <FullDeity>`.
pub fn t11() -> StarTriple {
    StarTriple::new(data("Zeus"), Iri::rdf_type(), data("FullDeity"))
}

/// `<PopeDI> believesToBeFalse t11`.
pub fn t10(vocab: &BeliefVocabulary) -> StarTriple {
    StarTriple::new(data("PopeDI"), vocab.predicate(FourValue::False).clone(), t11())
}

/// t1 through t8, in order.
pub fn table1_triples(vocab: &BeliefVocabulary) -> Vec<StarTriple> {
    let believes = |holder: &str, state: FourValue, t: StarTriple| {
        StarTriple::new(data(holder), vocab.predicate(state).clone(), t)
    };
    let t1 = believes("PopeDI", FourValue::True, t9());
    vec![
        t1.clone(),
        believes("Arius", FourValue::False, t9()),
        believes("Christianity", FourValue::Conflict, t9()),
        believes("Russell", FourValue::Unknown, t9()),
        believes("Russell", FourValue::True, t1),
        believes("Russell", FourValue::True, t10(vocab)),
        StarTriple::new(data("PopeDI"), Iri::rdf_type(), data("Christian")),
        StarTriple::new(data("Arius"), Iri::rdf_type(), data("Christian")),
    ]
}

/// The running-example graph: t1..t8 true, everything else unknown.
pub fn table1(vocab: &BeliefVocabulary) -> FourGraph {
    FourGraph::from_asserted(table1_triples(vocab))
}

fn type_pattern(subject: &str, class: &str) -> TriplePattern {
    TriplePattern::new(var(subject), Iri::rdf_type(), data(class))
}

/// `?x believesToBeFalse << ?y a FullDeity >>`.
pub fn running_example(vocab: &BeliefVocabulary) -> Query {
    let inner = type_pattern("y", "FullDeity");
    Query::pattern(TriplePattern::new(
        var("x"),
        vocab.predicate(FourValue::False).clone(),
        inner,
    ))
}

/// `(x,⊕) BELIEF (?y a FullDeity)`.
pub fn nested_belief() -> Query {
    Query::belief(
        BeliefQuery::all_states(var("x"), FourOperator::InfoJoin),
        Query::pattern(type_pattern("y", "FullDeity")),
    )
}

/// U1 as displayed: `(PopeDI,⊕) BELIEF (?deity a FullDeity)`.
pub fn u1() -> Query {
    Query::belief(
        BeliefQuery::all_states(data("PopeDI"), FourOperator::InfoJoin),
        Query::pattern(type_pattern("deity", "FullDeity")),
    )
}

/// U2 as displayed.
pub fn u2() -> Query {
    let christians = Query::map_state(
        Query::pattern(type_pattern("x", "Christian")),
        FilterFormula::StateIs(FourValue::True),
        FourValue::Conflict,
        FourValue::Unknown,
    );
    let beliefs = Query::belief(
        BeliefQuery::all_states(var("x"), FourOperator::InfoJoin),
        Query::pattern(type_pattern("deity", "FullDeity")),
    );
    Query::project(
        FourOperator::InfoJoin,
        [var("deity")],
        Query::join(FourOperator::InfoMeet, christians, beliefs),
    )
}

/// The body of U3 as displayed, without an outer projection.
pub fn u3_literal() -> Query {
    let holders = BeliefQuery::all_states(data("PopeDI"), FourOperator::InfoJoin)
        .combine(FourOperator::InfoJoin, BeliefQuery::all_states(var("x"), FourOperator::InfoJoin));
    let spo = TriplePattern::new(var("s"), var("p"), var("o"));
    Query::map_state(
        Query::belief(holders, Query::pattern(spo)),
        FilterFormula::StateIs(FourValue::Conflict),
        FourValue::True,
        FourValue::False,
    )
}

/// U3 with the outer `SELECT ?x` the prose describes.
pub fn u3() -> Query {
    Query::project(FourOperator::TruthJoin, [var("x")], u3_literal())
}

/// U4 as displayed.
pub fn u4() -> Query {
    let zeus = TriplePattern::new(data("Zeus"), Iri::rdf_type(), data("FullDeity"));
    let inner = Query::belief(
        BeliefQuery::all_states(var("x"), FourOperator::InfoJoin),
        Query::pattern(zeus),
    );
    let outer = Query::belief(BeliefQuery::all_states(var("y"), FourOperator::InfoJoin), inner);
    Query::project(FourOperator::InfoJoin, [var("x")], outer)
}

/// U4 with a final MAP turning a false answer into true, which is what the
/// use-case description asks for.
pub fn u4_mapped() -> Query {
    Query::map_state(
        u4(),
        FilterFormula::StateIs(FourValue::False),
        FourValue::True,
        FourValue::Unknown,
    )
}

/// A meet join of two single-variable patterns whose result has no finite
/// support over an unbounded domain: one side has a true and a false
/// mapping, the other a true mapping, and the graph default is true.
pub fn meet_disjoint() -> (FourGraph, Query) {
    let p = data("p");
    let q = data("q");
    let g = FourGraph::from_parts(
        FourValue::True,
        [
            (StarTriple::new(data("a"), p.clone(), data("o")), FourValue::True),
            (StarTriple::new(data("b"), p.clone(), data("o")), FourValue::False),
            (StarTriple::new(data("c"), q.clone(), data("o")), FourValue::True),
        ],
    );
    let left = Query::pattern(TriplePattern::new(var("x"), p, data("o")));
    let right = Query::pattern(TriplePattern::new(var("y"), q, data("o")));
    (g, Query::join(FourOperator::InfoMeet, left, right))
}

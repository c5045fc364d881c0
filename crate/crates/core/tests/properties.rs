use esparql_core::algebra::FilterFormula;
use esparql_core::gen::{Fragment, Generator};
use esparql_core::logic::{leq_info, leq_truth, reduce};
use esparql_core::semiring::{BooleanSemiring, CountingSemiring, InfoSemiring, Semiring, TruthSemiring};
use esparql_core::syntax::{parse_graph, render_graph};
use esparql_core::{eval, BeliefVocabulary, EvalMode, FourGraph, FourOperator, FourRelation, FourValue, Query};
use proptest::prelude::*;
use proptest::sample::select;

fn value() -> impl Strategy<Value = FourValue> {
    select(FourValue::ALL.to_vec())
}

fn operator() -> impl Strategy<Value = FourOperator> {
    select(FourOperator::ALL.to_vec())
}

fn meet() -> impl Strategy<Value = FourOperator> {
    select(vec![FourOperator::TruthMeet, FourOperator::InfoMeet])
}

fn dual(op: FourOperator) -> FourOperator {
    match op {
        FourOperator::TruthMeet => FourOperator::TruthJoin,
        FourOperator::TruthJoin => FourOperator::TruthMeet,
        FourOperator::InfoMeet => FourOperator::InfoJoin,
        FourOperator::InfoJoin => FourOperator::InfoMeet,
    }
}

fn case(seed: u64, fragment: Fragment) -> (FourGraph, Query, Query, BeliefVocabulary) {
    let vocab = BeliefVocabulary::default();
    let mut g = Generator::new(seed, vocab.clone());
    let graph = g.graph(None);
    let q1 = g.query(fragment);
    let q2 = g.query(fragment);
    (graph, q1, q2, vocab)
}

fn run(q: &Query, g: &FourGraph, vocab: &BeliefVocabulary) -> FourRelation {
    eval(q, g, vocab, EvalMode::ActiveDomain).expect("generated queries evaluate")
}

fn semiring_laws<S: Semiring>(a: S::Value, b: S::Value, c: S::Value) {
    assert_eq!(S::add(&a, &b), S::add(&b, &a));
    assert_eq!(S::mul(&a, &b), S::mul(&b, &a));
    assert_eq!(S::add(&S::add(&a, &b), &c), S::add(&a, &S::add(&b, &c)));
    assert_eq!(S::mul(&S::mul(&a, &b), &c), S::mul(&a, &S::mul(&b, &c)));
    assert_eq!(S::add(&a, &S::zero()), a);
    assert_eq!(S::mul(&a, &S::one()), a);
    assert_eq!(S::mul(&a, &S::zero()), S::zero());
    assert_eq!(S::mul(&a, &S::add(&b, &c)), S::add(&S::mul(&a, &b), &S::mul(&a, &c)));
}

proptest! {
    #[test]
    fn lattice_laws(op in operator(), a in value(), b in value(), c in value()) {
        prop_assert_eq!(op.apply(a, b), op.apply(b, a));
        prop_assert_eq!(op.apply(op.apply(a, b), c), op.apply(a, op.apply(b, c)));
        prop_assert_eq!(op.apply(a, a), a);
        prop_assert_eq!(op.apply(a, dual(op).apply(a, b)), a);
        prop_assert_eq!(op.apply(a, op.identity()), a);
        prop_assert_eq!(op.apply(a, op.absorbing()), op.absorbing());
    }

    #[test]
    fn interlaced_distributivity(f in operator(), g in operator(), a in value(), b in value(), c in value()) {
        prop_assume!(f != g);
        prop_assert_eq!(f.apply(a, g.apply(b, c)), g.apply(f.apply(a, b), f.apply(a, c)));
    }

    #[test]
    fn operators_respect_both_orders(op in operator(), a in value(), b in value(), c in value()) {
        if leq_truth(a, b) {
            prop_assert!(leq_truth(op.apply(a, c), op.apply(b, c)));
        }
        if leq_info(a, b) {
            prop_assert!(leq_info(op.apply(a, c), op.apply(b, c)));
        }
    }

    #[test]
    fn semirings(a in value(), b in value(), c in value(), x in 0u64..1000, y in 0u64..1000, z in 0u64..1000,
                 p: bool, q: bool, r: bool) {
        semiring_laws::<TruthSemiring>(a, b, c);
        semiring_laws::<InfoSemiring>(a, b, c);
        semiring_laws::<CountingSemiring>(x, y, z);
        semiring_laws::<BooleanSemiring>(p, q, r);
    }

    #[test]
    fn reduce_ignores_order(op in operator(), values in proptest::collection::vec(value(), 0..20), k in 0usize..20) {
        let mut rotated = values.clone();
        if !rotated.is_empty() {
            let n = rotated.len();
            rotated.rotate_left(k % n);
        }
        prop_assert_eq!(reduce(op, values.iter().copied()), reduce(op, rotated));
        let mut sorted = values.clone();
        sorted.sort();
        prop_assert_eq!(reduce(op, values), reduce(op, sorted));
    }

    #[test]
    fn graphs_survive_a_round_trip(seed: u64) {
        let mut g = Generator::new(seed, BeliefVocabulary::default());
        let graph = g.graph(None);
        let text = render_graph(&graph);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &graph);
        prop_assert_eq!(render_graph(&back), text);
    }

    #[test]
    fn join_and_union_commute(seed: u64, op in meet()) {
        let (g, q1, q2, vocab) = case(seed, Fragment::Full);
        let union_op = dual(op);
        let joined = run(&Query::join(op, q1.clone(), q2.clone()), &g, &vocab);
        prop_assert!(joined.equivalent(&run(&Query::join(op, q2.clone(), q1.clone()), &g, &vocab)));
        if q1.in_scope() == q2.in_scope() {
            let u = run(&Query::union(union_op, q1.clone(), q2.clone()), &g, &vocab);
            prop_assert!(u.equivalent(&run(&Query::union(union_op, q2, q1), &g, &vocab)));
        }
    }

    #[test]
    fn idempotent_union_and_join(seed: u64, op in meet()) {
        let (g, q, _, vocab) = case(seed, Fragment::Full);
        let r = run(&q, &g, &vocab);
        prop_assert!(run(&Query::union(dual(op), q.clone(), q.clone()), &g, &vocab).equivalent(&r));
        prop_assert!(run(&Query::join(op, q.clone(), q.clone()), &g, &vocab).equivalent(&r));
    }

    #[test]
    fn tautological_filter_and_full_projection_are_identities(seed: u64, op in operator()) {
        let (g, q, _, vocab) = case(seed, Fragment::Full);
        let r = run(&q, &g, &vocab);
        let always = FilterFormula::StateIs(FourValue::True).or(FilterFormula::StateIs(FourValue::True).negate());
        prop_assert!(run(&Query::filter(op, q.clone(), always), &g, &vocab).equivalent(&r));
        let scope = q.in_scope().unwrap();
        prop_assert!(run(&Query::project(op, scope, q), &g, &vocab).equivalent(&r));
    }
}

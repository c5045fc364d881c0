//! Commutative semirings used to annotate graphs and relations.

use std::fmt::Debug;

use crate::logic::{FourOperator, FourValue};

/// A commutative semiring `(K, +, ×, 0, 1)`.
///
/// No subtraction; annotated evaluation only covers the monotone fragment.
pub trait Semiring {
    type Value: Clone + PartialEq + Debug;

    fn zero() -> Self::Value;
    fn one() -> Self::Value;
    fn add(a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(a: &Self::Value, b: &Self::Value) -> Self::Value;

    fn sum<'a, I>(values: I) -> Self::Value
    where
        I: IntoIterator<Item = &'a Self::Value>,
        Self::Value: 'a,
    {
        values
            .into_iter()
            .fold(Self::zero(), |acc, v| Self::add(&acc, v))
    }
}

/// `(FOUR, ∨, ∧, ⊥, ⊤)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct TruthSemiring;

/// `(FOUR, ⊕, ⊗, ⊢, ⊣)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct InfoSemiring;

#[derive(Debug, Clone, Copy, Default)]
pub struct BooleanSemiring;

/// Natural numbers under `+` and `·`; annotations count derivations.
#[derive(Debug, Clone, Copy, Default)]
pub struct CountingSemiring;

impl Semiring for TruthSemiring {
    type Value = FourValue;

    fn zero() -> FourValue {
        FourOperator::TruthJoin.identity()
    }
    fn one() -> FourValue {
        FourOperator::TruthMeet.identity()
    }
    fn add(a: &FourValue, b: &FourValue) -> FourValue {
        FourOperator::TruthJoin.apply(*a, *b)
    }
    fn mul(a: &FourValue, b: &FourValue) -> FourValue {
        FourOperator::TruthMeet.apply(*a, *b)
    }
}

impl Semiring for InfoSemiring {
    type Value = FourValue;

    fn zero() -> FourValue {
        FourOperator::InfoJoin.identity()
    }
    fn one() -> FourValue {
        FourOperator::InfoMeet.identity()
    }
    fn add(a: &FourValue, b: &FourValue) -> FourValue {
        FourOperator::InfoJoin.apply(*a, *b)
    }
    fn mul(a: &FourValue, b: &FourValue) -> FourValue {
        FourOperator::InfoMeet.apply(*a, *b)
    }
}

impl Semiring for BooleanSemiring {
    type Value = bool;

    fn zero() -> bool {
        false
    }
    fn one() -> bool {
        true
    }
    fn add(a: &bool, b: &bool) -> bool {
        *a || *b
    }
    fn mul(a: &bool, b: &bool) -> bool {
        *a && *b
    }
}

impl Semiring for CountingSemiring {
    type Value = u64;

    fn zero() -> u64 {
        0
    }
    fn one() -> u64 {
        1
    }
    fn add(a: &u64, b: &u64) -> u64 {
        a + b
    }
    fn mul(a: &u64, b: &u64) -> u64 {
        a * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::FourValue::*;

    #[test]
    fn four_instances_use_the_lattice_bounds() {
        assert_eq!(TruthSemiring::zero(), False);
        assert_eq!(TruthSemiring::one(), True);
        assert_eq!(InfoSemiring::zero(), Unknown);
        assert_eq!(InfoSemiring::one(), Conflict);
        assert_eq!(InfoSemiring::add(&True, &False), Conflict);
    }

    #[test]
    fn sum_of_nothing_is_zero() {
        assert_eq!(CountingSemiring::sum([]), 0);
        assert_eq!(CountingSemiring::sum(&[2, 3]), 5);
        assert!(!BooleanSemiring::sum([]));
    }
}

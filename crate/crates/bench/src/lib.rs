//! Workloads shared by the benchmarks.

use esparql_core::gen::{Fragment, Generator};
use esparql_core::{BeliefVocabulary, FourGraph, Query};

/// `n` random graph/query pairs from the differential-test generator.
pub fn random_cases(seed: u64, n: usize, vocab: &BeliefVocabulary) -> Vec<(FourGraph, Query)> {
    let mut generator = Generator::new(seed, vocab.clone());
    (0..n)
        .map(|_| {
            let g = generator.graph(None);
            let q = generator.query(Fragment::Full);
            (g, q)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cases_are_reproducible() {
        let vocab = BeliefVocabulary::default();
        assert_eq!(random_cases(3, 5, &vocab), random_cases(3, 5, &vocab));
    }
}

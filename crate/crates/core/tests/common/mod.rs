#![allow(dead_code)]

use bott_core::linalg::int;
use bott_core::IntegralSequence;
use proptest::prelude::*;

/// Sequences of height `1..=max_n` with entries in `lo..=hi`.
pub fn sequence(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntegralSequence> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(lo..=hi, n * n).prop_map(move |vals| {
            IntegralSequence::from_fn(n, |i, j| int(vals[(i - 1) * n + (j - 1)])).unwrap()
        })
    })
}

/// Like [`sequence`] but with height at least `min_n`.
pub fn sequence_between(min_n: usize, max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntegralSequence> {
    (min_n..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(lo..=hi, n * n).prop_map(move |vals| {
            IntegralSequence::from_fn(n, |i, j| int(vals[(i - 1) * n + (j - 1)])).unwrap()
        })
    })
}

pub fn seq(n: usize, entries: &[(usize, usize, i64)]) -> IntegralSequence {
    IntegralSequence::new(n, entries.iter().map(|&(i, j, v)| ((i, j), int(v)))).unwrap()
}

mod common;

use bott_core::linalg::{int, IntMatrix};
use bott_core::poset::Poset;
use bott_core::{
    bott_matrix, bott_number, bott_number_moebius, c_matrix, lemma_identities, BinaryCode, Error, IndexSet,
    IntegralSequence,
};
use common::seq;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn set(v: &[usize]) -> IndexSet {
    IndexSet::new(v.to_vec()).unwrap()
}

/// `-C(I)^{-1}` by exact rational elimination, independent of the recursion.
fn inverse_oracle(c: &IntegralSequence, s: &IndexSet) -> IntMatrix {
    let inv = c_matrix(c, s).unwrap().as_matrix().rational_inverse().unwrap();
    let rows: Vec<Vec<BigInt>> = inv
        .iter()
        .map(|row| {
            row.iter()
                .map(|q: &BigRational| {
                    assert!(q.is_integer());
                    -q.to_integer()
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows)
}

#[test]
fn c_matrix_examples() {
    let zero = IntegralSequence::zero(3).unwrap();
    assert!(c_matrix(&zero, &set(&[1, 2, 3])).unwrap().is_identity());

    let flag = IntegralSequence::bounded_flag(3).unwrap();
    let m = c_matrix(&flag, &set(&[1, 2, 3])).unwrap();
    assert_eq!(*m.as_matrix(), IntMatrix::from_i64_rows(&[&[1, -1, 0], &[0, 1, -1], &[0, 0, 1]]));
    assert!(c_matrix(&flag, &set(&[1, 3])).unwrap().is_identity());

    assert_eq!(c_matrix(&flag, &set(&[2, 4])), Err(Error::IndexOutOfRange { index: 4, bound: 3 }));
}

#[test]
fn bott_matrix_examples() {
    let zero = IntegralSequence::zero(5).unwrap();
    let b = bott_matrix(&zero, &set(&[1, 3, 4])).unwrap();
    assert_eq!(*b.as_matrix(), IntMatrix::from_i64_rows(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]));

    let flag = IntegralSequence::bounded_flag(5).unwrap();
    let all = set(&[1, 2, 3, 4, 5]);
    let b = bott_matrix(&flag, &all).unwrap();
    assert_eq!(*b.as_matrix(), inverse_oracle(&flag, &all));
    for r in 0..5 {
        for s in r..5 {
            assert_eq!(b.get(r, s), &int(-1));
        }
    }

    let chain = IntegralSequence::chain(5).unwrap();
    let b = bott_matrix(&chain, &all).unwrap();
    assert_eq!(*b.as_matrix(), inverse_oracle(&chain, &all));
    for r in 0..5 {
        for s in r..5 {
            let want = match s - r {
                0 => -1,
                1 => 1,
                _ => 0,
            };
            assert_eq!(b.get(r, s), &int(want), "entry ({r},{s})");
        }
    }
}

#[test]
fn bott_number_examples() {
    let c = seq(4, &[(1, 2, 7)]);
    assert_eq!(bott_number(&c, &set(&[3])).unwrap(), int(-1));
    assert_eq!(bott_number(&c, &set(&[1, 2])).unwrap(), int(7));
    let flag = IntegralSequence::bounded_flag(6).unwrap();
    for m in 2..=6 {
        let s = IndexSet::interval(1, m).unwrap();
        assert_eq!(bott_number(&flag, &s).unwrap(), int(-1));
    }
    assert_eq!(IndexSet::new(vec![]), Err(Error::EmptyIndexSet));
}

#[test]
fn moebius_examples() {
    let c = seq(2, &[(1, 2, -4)]);
    assert_eq!(bott_number_moebius(&c, &set(&[1, 2])).unwrap(), int(-4));
    let zero = IntegralSequence::zero(6).unwrap();
    assert_eq!(bott_number_moebius(&zero, &set(&[1, 3, 6])).unwrap(), int(0));
    assert_eq!(bott_number_moebius(&c, &set(&[2])), Err(Error::IndexSetTooSmall(1)));
}

#[test]
fn lemma_examples() {
    let c = seq(5, &[(1, 2, 3), (1, 4, -2), (2, 5, 5), (3, 4, 1), (1, 5, -1)]);
    let zeros = BinaryCode::zeros(5).unwrap();
    for i in 1..5 {
        for j in i + 1..=5 {
            assert_eq!(lemma_identities(&c, &zeros, i, j).unwrap(), (int(0), int(0)));
        }
    }
    let flag = IntegralSequence::bounded_flag(6).unwrap();
    let w: BinaryCode = "101010".parse().unwrap();
    assert_eq!(lemma_identities(&flag, &w, 1, 6).unwrap(), (int(0), int(0)));
    assert!(lemma_identities(&flag, &w, 3, 3).is_err());
    assert!(lemma_identities(&flag, &w, 0, 3).is_err());
}

#[test]
fn poset_examples() {
    let anti = Poset::antichain(5).unwrap();
    assert!(anti.to_sequence().off_diagonal().all(|(_, _, v)| *v == int(0)));
    assert!(anti.moebius_matrix().is_identity());

    let chain = Poset::chain(4).unwrap();
    let b = bott_matrix(&chain.to_sequence(), &IndexSet::interval(1, 4).unwrap()).unwrap();
    assert_eq!(b, chain.moebius_matrix().neg());
    assert_eq!(b.get(0, 1), &int(1));

    let diamond = Poset::new(4, [(1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
    assert_eq!(diamond.moebius_matrix().get(0, 3), &int(1));
    let b = bott_matrix(&diamond.to_sequence(), &IndexSet::interval(1, 4).unwrap()).unwrap();
    assert_eq!(b.get(0, 3), &int(-1));

    assert!(matches!(Poset::new(2, [(2, 1)]), Err(Error::NotLinearExtension(2, 1))));
}

fn subset_strategy(n: usize) -> impl Strategy<Value = IndexSet> {
    proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), 1..=n).prop_map(|v| IndexSet::new(v).unwrap())
}

fn with_subset(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = (IntegralSequence, IndexSet)> {
    common::sequence(max_n, lo, hi).prop_flat_map(|c| {
        let n = c.height();
        (Just(c), subset_strategy(n))
    })
}

proptest! {
    #[test]
    fn recursion_inverts_c_matrix((c, s) in with_subset(10, -9, 9)) {
        let b = bott_matrix(&c, &s).unwrap();
        let product = c_matrix(&c, &s).unwrap().mul(&b.neg());
        prop_assert!(product.is_identity());
        for r in 0..s.len() {
            prop_assert_eq!(b.get(r, r), &int(-1));
        }
    }

    #[test]
    fn oracle_agrees((c, s) in with_subset(9, -5, 5)) {
        prop_assume!(s.len() >= 2);
        prop_assert_eq!(bott_number(&c, &s).unwrap(), bott_number_moebius(&c, &s).unwrap());
    }

    #[test]
    fn entries_depend_on_the_interval_only(c in common::sequence(8, -6, 6)) {
        let n = c.height();
        let b = bott_matrix(&c, &IndexSet::interval(1, n).unwrap()).unwrap();
        for i in 1..=n {
            for j in i..=n {
                prop_assert_eq!(b.get(i - 1, j - 1), &bott_number(&c, &IndexSet::interval(i, j).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn lemma_vanishes(
        c in common::sequence_between(2, 8, -7, 7),
        bits in proptest::collection::vec(any::<bool>(), 8),
        a in 0usize..64,
        b in 0usize..64,
    ) {
        let n = c.height();
        let w = BinaryCode::new(bits[..n].to_vec()).unwrap();
        let i = a % (n - 1) + 1;
        let j = i + 1 + b % (n - i);
        prop_assert_eq!(lemma_identities(&c, &w, i, j).unwrap(), (int(0), int(0)));
    }

    #[test]
    fn poset_bridge(n in 1usize..=7, bits in proptest::collection::vec(any::<bool>(), 21)) {
        let pairs = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)));
        let rel: Vec<_> = pairs.zip(&bits).filter(|(_, &b)| b).map(|(p, _)| p).collect();
        let p = Poset::new(n, rel).unwrap();
        let b = bott_matrix(&p.to_sequence(), &IndexSet::interval(1, n).unwrap()).unwrap();
        prop_assert_eq!(b, p.moebius_matrix().neg());
    }
}

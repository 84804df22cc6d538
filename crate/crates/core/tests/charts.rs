mod common;

use bott_core::charts::is_standard;
use bott_core::linalg::{dot, int, ints, IntMatrix};
use bott_core::{build_fan, chart, chart_ring, dual_generators, index_sets, prefix_set, transition, BinaryCode};
use common::seq;
use proptest::prelude::*;

fn code(s: &str) -> BinaryCode {
    s.parse().unwrap()
}

#[test]
fn index_set_examples() {
    let w = code("0000");
    for i in 1..4 {
        for j in i + 1..=4 {
            assert_eq!(index_sets(&w, i, j).unwrap(), (vec![], (i + 1..j).collect()));
        }
    }
    assert_eq!(index_sets(&code("1011"), 1, 4).unwrap(), (vec![3], vec![2]));
    assert_eq!(prefix_set(&code("1011"), 4).unwrap(), vec![1, 3]);
}

#[test]
fn dual_generator_examples() {
    let c = seq(3, &[(1, 2, 4), (1, 3, -2), (2, 3, 3)]);
    assert!(is_standard(&chart(&c, 3, &code("000")).unwrap()));

    let hz = seq(2, &[(1, 2, 6)]);
    let ups = dual_generators(&hz, 2, &code("10")).unwrap();
    assert_eq!(ups, vec![ints(&[-1, 0]), ints(&[6, 1])]);
    let fan = build_fan(&hz, 2).unwrap();
    let cone = fan.cone_of(&code("10"));
    let pairing: Vec<Vec<_>> = ups.iter().map(|u| cone.iter().map(|&g| dot(u, &fan.generators()[g])).collect()).collect();
    assert_eq!(IntMatrix::from_rows(&pairing), IntMatrix::identity(2));

    let zero = seq(4, &[]);
    let ups = dual_generators(&zero, 4, &code("1111")).unwrap();
    for (j, u) in ups.iter().enumerate() {
        let mut want = vec![int(0); 4];
        want[j] = int(-1);
        assert_eq!(u, &want);
    }
}

#[test]
fn chart_ring_examples() {
    let hz = seq(2, &[(1, 2, -5)]);
    let phi = chart_ring(&hz, 2, &code("10")).unwrap();
    assert_eq!(phi[0].exponents(), ints(&[-1, 0]).as_slice());
    assert_eq!(phi[1].exponents(), ints(&[-5, 1]).as_slice());
    let standard = chart_ring(&hz, 2, &code("00")).unwrap();
    assert_eq!(standard[0].exponents(), ints(&[1, 0]).as_slice());
}

#[test]
fn transition_examples() {
    let hz = seq(2, &[(1, 2, 3)]);
    let t = transition(&hz, 2, &code("00"), &code("10")).unwrap();
    assert_eq!(t, IntMatrix::from_i64_rows(&[&[-1, 0], &[3, 1]]));
    for w in BinaryCode::all(2) {
        assert!(transition(&hz, 2, &w, &w).unwrap().is_identity());
    }
    let back = transition(&hz, 2, &code("10"), &code("00")).unwrap();
    assert!(t.mul(&back).is_identity());
}

fn with_code(max_n: usize) -> impl Strategy<Value = (bott_core::IntegralSequence, BinaryCode)> {
    common::sequence(max_n, -6, 6).prop_flat_map(|c| {
        let k = c.height();
        (Just(c), proptest::collection::vec(any::<bool>(), k).prop_map(|b| BinaryCode::new(b).unwrap()))
    })
}

proptest! {
    #[test]
    fn dual_basis((c, w) in with_code(8)) {
        let k = c.height();
        let fan = build_fan(&c, k).unwrap();
        let ups = dual_generators(&c, k, &w).unwrap();
        for (i, u) in ups.iter().enumerate() {
            for j in 1..=k {
                let a = fan.generator(j, w.gamma(j));
                prop_assert_eq!(dot(u, a), int((i + 1 == j) as i64));
            }
        }
        prop_assert!(chart(&c, k, &w).unwrap().exponent_matrix().is_unimodular());
    }

    #[test]
    fn transitions_form_a_cocycle((c, w) in with_code(6), a in any::<u64>(), b in any::<u64>()) {
        let k = c.height();
        let w1 = BinaryCode::from_value(k, a % (1 << k)).unwrap();
        let w2 = BinaryCode::from_value(k, b % (1 << k)).unwrap();
        let direct = transition(&c, k, &w, &w2).unwrap();
        let via = transition(&c, k, &w1, &w2).unwrap().mul(&transition(&c, k, &w, &w1).unwrap());
        prop_assert_eq!(direct, via);
    }
}

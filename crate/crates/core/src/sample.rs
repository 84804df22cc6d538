//! Random instances for property tests and self-checks.

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::code::BinaryCode;
use crate::fan::UnimodularMap;
use crate::linalg::IntMatrix;
use crate::poset::Poset;
use crate::sequence::IntegralSequence;

/// Entries drawn uniformly from `lo..=hi`.
pub fn sequence<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: i64, hi: i64) -> IntegralSequence {
    IntegralSequence::from_fn(n, |_, _| BigInt::from(rng.random_range(lo..=hi))).expect("n >= 1")
}

pub fn code<R: Rng + ?Sized>(rng: &mut R, k: usize) -> BinaryCode {
    BinaryCode::new((0..k).map(|_| rng.random_bool(0.5)).collect()).expect("k >= 1")
}

/// A product of `steps` elementary shears `e_r += s e_c`, `|s| <= 2`, with a
/// random sign change and coordinate permutation.
pub fn unimodular<R: Rng + ?Sized>(rng: &mut R, k: usize, steps: usize) -> UnimodularMap {
    let mut m = IntMatrix::identity(k);
    if k > 1 {
        for _ in 0..steps {
            let r = rng.random_range(0..k);
            let mut c = rng.random_range(0..k - 1);
            if c >= r {
                c += 1;
            }
            let s = BigInt::from(rng.random_range(-2i64..=2));
            for col in 0..k {
                let add = &m[(c, col)] * &s;
                m[(r, col)] += add;
            }
        }
    }
    let mut perm: Vec<usize> = (0..k).collect();
    perm.shuffle(rng);
    let rows: Vec<Vec<BigInt>> = perm
        .iter()
        .map(|&p| {
            let row = m.row(p).to_vec();
            if rng.random_bool(0.5) {
                row.into_iter().map(|x| -x).collect()
            } else {
                row
            }
        })
        .collect();
    UnimodularMap::new(IntMatrix::from_rows(&rows)).expect("product of elementary maps")
}

/// Each pair `i < j` is related with probability `density` before closure.
pub fn poset<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Poset {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .filter(|_| rng.random_bool(density))
        .collect();
    Poset::new(n, pairs).expect("upward pairs always close to a labeled poset")
}

/// A uniformly random permutation of `0..n`.
pub fn permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

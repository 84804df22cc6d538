//! Finite posets whose identity labeling is a linear extension, and the
//! bridge from their zeta matrix to an integral sequence.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bott::TriangularMatrix;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::sequence::IntegralSequence;

/// A partial order on `{1, ..., n}` with `i <=_P j  =>  i <= j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    // leq[(i-1)*n + (j-1)]
    leq: Vec<bool>,
}

impl Poset {
    /// Accepts covering pairs or the full relation; the reflexive-transitive
    /// closure is taken before validation.
    pub fn new(n: usize, relation: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyTower);
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (i, j) in relation {
            for x in [i, j] {
                if x == 0 || x > n {
                    return Err(Error::IndexOutOfRange { index: x, bound: n });
                }
            }
            leq[(i - 1) * n + (j - 1)] = true;
        }
        // Warshall
        for m in 0..n {
            for i in 0..n {
                if !leq[i * n + m] {
                    continue;
                }
                for j in 0..n {
                    if leq[m * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::NotPartialOrder(i + 1, j + 1));
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                if leq[i * n + j] {
                    return Err(Error::NotLinearExtension(i + 1, j + 1));
                }
            }
        }
        Ok(Poset { n, leq })
    }

    pub fn antichain(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn chain(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i, i + 1)))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `i <=_P j`, 1-based.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[(i - 1) * self.n + (j - 1)]
    }

    /// All related pairs `i < j` (strict part of the relation).
    pub fn strict_pairs(&self) -> BTreeSet<(usize, usize)> {
        let n = self.n;
        (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.leq(i, j))
            .collect()
    }

    /// Pairs `i <_P j` with nothing strictly between them.
    pub fn covering_pairs(&self) -> BTreeSet<(usize, usize)> {
        self.strict_pairs()
            .into_iter()
            .filter(|&(i, j)| !(i + 1..j).any(|m| self.leq(i, m) && self.leq(m, j)))
            .collect()
    }

    pub fn zeta_matrix(&self) -> TriangularMatrix {
        let n = self.n;
        let mut m = IntMatrix::zeros(n, n);
        for i in 1..=n {
            for j in i..=n {
                if self.leq(i, j) {
                    m[(i - 1, j - 1)] = BigInt::one();
                }
            }
        }
        TriangularMatrix::from_matrix(m).expect("linear extension keeps zeta upper triangular")
    }

    /// Möbius function by `μ(i, i) = 1`, `μ(i, j) = -Σ_{i <=_P m <_P j} μ(i, m)`.
    pub fn moebius_matrix(&self) -> TriangularMatrix {
        let n = self.n;
        let mut mu = IntMatrix::zeros(n, n);
        for i in 1..=n {
            mu[(i - 1, i - 1)] = BigInt::one();
            for j in i + 1..=n {
                if !self.leq(i, j) {
                    continue;
                }
                let mut acc = BigInt::zero();
                for m in i..j {
                    if self.leq(i, m) && self.leq(m, j) {
                        acc += &mu[(i - 1, m - 1)];
                    }
                }
                mu[(i - 1, j - 1)] = -acc;
            }
        }
        TriangularMatrix::from_matrix(mu).expect("upper triangular by construction")
    }

    /// The sequence with `C(n) = Z(P)`.
    pub fn to_sequence(&self) -> IntegralSequence {
        IntegralSequence::from_fn(self.n, |i, j| {
            if self.leq(i, j) {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
        .expect("n >= 1")
    }
}

pub fn poset_to_sequence(p: &Poset) -> IntegralSequence {
    p.to_sequence()
}

pub fn moebius_matrix(p: &Poset) -> TriangularMatrix {
    p.moebius_matrix()
}

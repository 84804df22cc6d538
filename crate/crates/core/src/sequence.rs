//! Integral sequences `c(i, j)` and the index sets they are evaluated on.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{check_stage, Error, Result};

/// The twist numbers `c(i, j)`, `1 <= i < j <= n`, of a Bott tower of height `n`.
///
/// The diagonal `c(i, i) = 1` is implicit and entries below it read as zero.
/// Internally the full upper-triangular matrix is stored densely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegralSequence {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntegralSequence {
    /// Builds a sequence from `((i, j), c(i, j))` pairs; unlisted entries are zero.
    pub fn new<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), BigInt)>,
    {
        let mut seq = Self::zero(n)?;
        let mut seen = vec![false; n * n];
        for ((i, j), v) in entries {
            if !(1 <= i && i < j && j <= n) {
                return Err(Error::InvalidSequenceEntry { i, j, n });
            }
            let at = (i - 1) * n + (j - 1);
            if core::mem::replace(&mut seen[at], true) {
                return Err(Error::DuplicateSequenceEntry { i, j });
            }
            seq.entries[at] = v;
        }
        Ok(seq)
    }

    /// All twists zero: the tower of products of projective lines.
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyTower);
        }
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        Ok(IntegralSequence { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Result<Self> {
        let mut seq = Self::zero(n)?;
        for i in 1..=n {
            for j in i + 1..=n {
                seq.entries[(i - 1) * n + (j - 1)] = f(i, j);
            }
        }
        Ok(seq)
    }

    /// `c_k = (0, ..., 0, -1, 1)` for every `k`: the tower of bounded flag manifolds.
    pub fn bounded_flag(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| if j == i + 1 { BigInt::from(-1) } else { BigInt::zero() })
    }

    /// Height-2 tower with `c(1, 2) = twist`.
    pub fn hirzebruch(twist: BigInt) -> Self {
        Self::new(2, [((1, 2), twist)]).expect("valid height-2 entry")
    }

    /// The zeta matrix of a chain `1 < 2 < ... < n`: every `c(i, j) = 1`.
    pub fn chain(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| BigInt::one())
    }

    pub fn height(&self) -> usize {
        self.n
    }

    /// `c(i, j)` with the conventions `c(i, i) = 1` and zero below the diagonal.
    ///
    /// Panics when an index is outside `1..=n`.
    pub fn c(&self, i: usize, j: usize) -> &BigInt {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "c({i},{j}) outside a height-{} tower",
            self.n
        );
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn get(&self, i: usize, j: usize) -> Result<&BigInt> {
        for x in [i, j] {
            if x == 0 || x > self.n {
                return Err(Error::IndexOutOfRange { index: x, bound: self.n });
            }
        }
        Ok(self.c(i, j))
    }

    /// The strictly-above-diagonal entries in lexicographic `(i, j)` order.
    pub fn off_diagonal(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        (1..=self.n).flat_map(move |i| (i + 1..=self.n).map(move |j| (i, j, self.c(i, j))))
    }

    /// `(c(1, j), ..., c(j - 1, j))`.
    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (1..j).map(|i| self.c(i, j).clone()).collect()
    }

    /// The first `k` stages `(c_1, ..., c_k)`.
    pub fn restrict(&self, k: usize) -> Result<Self> {
        check_stage(k, self.n)?;
        Self::from_fn(k, |i, j| self.c(i, j).clone())
    }

    /// Appends stage `n + 1` with `c(i, n + 1) = column[i - 1]`.
    pub fn extend(&self, column: &[BigInt]) -> Result<Self> {
        if column.len() != self.n {
            return Err(Error::DimensionMismatch(column.len(), self.n));
        }
        Self::from_fn(self.n + 1, |i, j| {
            if j == self.n + 1 {
                column[i - 1].clone()
            } else {
                self.c(i, j).clone()
            }
        })
    }
}

/// Strictly increasing, nonempty list of 1-based tower indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::IndexSetNotIncreasing);
        }
        if indices[0] == 0 {
            return Err(Error::IndexOutOfRange { index: 0, bound: usize::MAX });
        }
        Ok(IndexSet(indices))
    }

    /// The interval `[i, j]`.
    pub fn interval(i: usize, j: usize) -> Result<Self> {
        Self::new((i..=j).collect())
    }

    /// `{i} ∪ inner ∪ {j}` for an increasing `inner` strictly between `i` and `j`.
    pub fn with_endpoints(i: usize, inner: &[usize], j: usize) -> Result<Self> {
        let mut v = Vec::with_capacity(inner.len() + 2);
        v.push(i);
        v.extend_from_slice(inner);
        if j != i {
            v.push(j);
        }
        Self::new(v)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> usize {
        self.0[0]
    }

    pub fn max(&self) -> usize {
        self.0[self.0.len() - 1]
    }

    pub(crate) fn check_within(&self, n: usize) -> Result<()> {
        if self.max() > n {
            Err(Error::IndexOutOfRange { index: self.max(), bound: n })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_and_conventions() {
        let c = IntegralSequence::new(3, [((1, 3), BigInt::from(4))]).unwrap();
        assert_eq!(c.c(2, 2), &BigInt::one());
        assert_eq!(c.c(3, 1), &BigInt::zero());
        assert_eq!(c.c(1, 3), &BigInt::from(4));
        assert!(c.get(0, 1).is_err());
        assert_eq!(c.column(3), vec![BigInt::from(4), BigInt::zero()]);
    }

    #[test]
    fn rejects_bad_keys() {
        assert!(matches!(
            IntegralSequence::new(3, [((2, 2), BigInt::one())]),
            Err(Error::InvalidSequenceEntry { .. })
        ));
        assert!(matches!(
            IntegralSequence::new(3, [((1, 4), BigInt::one())]),
            Err(Error::InvalidSequenceEntry { .. })
        ));
        assert!(matches!(
            IntegralSequence::new(3, [((1, 2), BigInt::one()), ((1, 2), BigInt::zero())]),
            Err(Error::DuplicateSequenceEntry { .. })
        ));
        assert_eq!(IntegralSequence::zero(0), Err(Error::EmptyTower));
    }

    #[test]
    fn restrict_then_extend_is_identity() {
        let c = IntegralSequence::from_fn(4, |i, j| BigInt::from(i as i64 * 10 + j as i64)).unwrap();
        let low = c.restrict(3).unwrap();
        assert_eq!(low.extend(&c.column(4)).unwrap(), c);
    }

    #[test]
    fn index_set_validation() {
        assert_eq!(IndexSet::new(vec![]), Err(Error::EmptyIndexSet));
        assert_eq!(IndexSet::new(vec![2, 2]), Err(Error::IndexSetNotIncreasing));
        assert_eq!(IndexSet::with_endpoints(1, &[3], 5).unwrap().as_slice(), &[1, 3, 5]);
        assert_eq!(IndexSet::with_endpoints(2, &[], 2).unwrap().as_slice(), &[2]);
    }
}

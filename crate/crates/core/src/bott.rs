//! Bott matrices and Bott numbers.
//!
//! For an index set `I = {i_1 < ... < i_m}` the matrix `C(I)` collects the
//! entries `c(i_r, i_s)` and the Bott matrix is `B(I) = -C(I)^{-1}`. Its
//! top-right corner is the Bott number `b(I)`. Two independent routes are
//! provided: the triangular recursion ([`bott_matrix`]) and an enumeration
//! of chains through the interior of `I` ([`bott_number_moebius`]).

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::code::BinaryCode;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::sequence::{IndexSet, IntegralSequence};

/// Square upper-triangular integer matrix, 0-based rows and columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriangularMatrix(IntMatrix);

impl TriangularMatrix {
    fn zeros(m: usize) -> Self {
        TriangularMatrix(IntMatrix::zeros(m, m))
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn get(&self, r: usize, s: usize) -> &BigInt {
        &self.0[(r, s)]
    }

    pub fn as_matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }

    /// Wraps a square matrix, returning `None` if anything sits below the diagonal.
    pub fn from_matrix(m: IntMatrix) -> Option<Self> {
        let n = m.rows();
        let ok = m.is_square() && (0..n).all(|r| (0..r).all(|s| m[(r, s)].is_zero()));
        ok.then_some(TriangularMatrix(m))
    }

    pub fn top_right(&self) -> &BigInt {
        let m = self.size();
        self.get(0, m - 1)
    }

    pub fn neg(&self) -> Self {
        let m = self.size();
        let mut out = Self::zeros(m);
        for r in 0..m {
            for s in r..m {
                out.0[(r, s)] = -self.get(r, s);
            }
        }
        out
    }

    pub fn mul(&self, other: &TriangularMatrix) -> Self {
        TriangularMatrix(self.0.mul(&other.0))
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }
}

/// `C(I)`: entry `(r, s)` is `c(i_r, i_s)` for `r <= s`, zero below.
pub fn c_matrix(c: &IntegralSequence, set: &IndexSet) -> Result<TriangularMatrix> {
    set.check_within(c.height())?;
    let idx = set.as_slice();
    let m = idx.len();
    let mut out = TriangularMatrix::zeros(m);
    for r in 0..m {
        for s in r..m {
            out.0[(r, s)] = c.c(idx[r], idx[s]).clone();
        }
    }
    Ok(out)
}

/// `B(I)` by the recursion `b(r, s) = -Σ_{r < t <= s} c(i_r, i_t) b(t, s)`,
/// `b(r, r) = -1`.
pub fn bott_matrix(c: &IntegralSequence, set: &IndexSet) -> Result<TriangularMatrix> {
    set.check_within(c.height())?;
    let idx = set.as_slice();
    let m = idx.len();
    let mut b = TriangularMatrix::zeros(m);
    for s in 0..m {
        b.0[(s, s)] = -BigInt::one();
        for r in (0..s).rev() {
            let mut acc = BigInt::zero();
            for t in r + 1..=s {
                let ct = c.c(idx[r], idx[t]);
                if !ct.is_zero() {
                    acc += ct * &b.0[(t, s)];
                }
            }
            b.0[(r, s)] = -acc;
        }
    }
    Ok(b)
}

/// The Bott number `b(I)`; `b({i}) = -1`.
pub fn bott_number(c: &IntegralSequence, set: &IndexSet) -> Result<BigInt> {
    set.check_within(c.height())?;
    let idx = set.as_slice();
    let m = idx.len();
    // only the last column of B(I) is needed
    let mut col: Vec<BigInt> = alloc::vec![BigInt::zero(); m];
    col[m - 1] = -BigInt::one();
    for r in (0..m - 1).rev() {
        let mut acc = BigInt::zero();
        for t in r + 1..m {
            let ct = c.c(idx[r], idx[t]);
            if !ct.is_zero() {
                acc += ct * &col[t];
            }
        }
        col[r] = -acc;
    }
    Ok(core::mem::take(&mut col[0]))
}

/// `b({i} ∪ inner ∪ {j})`, the reading used for `b(𝕆_i^j)` everywhere.
pub fn bott_number_through(
    c: &IntegralSequence,
    i: usize,
    inner: &[usize],
    j: usize,
) -> Result<BigInt> {
    bott_number(c, &IndexSet::with_endpoints(i, inner, j)?)
}

/// `b(I)` as the signed sum over chains `i_1 = l_0 < l_1 < ... < l_p = i_m`
/// through the interior of `I`: `Σ_L (-1)^{|L|} c(i_1, l_1) c(l_1, l_2) ⋯ c(l_p, i_m)`.
///
/// Exponential in `|I|`; this is the independent check on [`bott_number`].
pub fn bott_number_moebius(c: &IntegralSequence, set: &IndexSet) -> Result<BigInt> {
    set.check_within(c.height())?;
    let idx = set.as_slice();
    if idx.len() <= 1 {
        return Err(Error::IndexSetTooSmall(idx.len()));
    }
    let (first, last) = (idx[0], idx[idx.len() - 1]);
    let interior = &idx[1..idx.len() - 1];
    assert!(interior.len() < 63, "interior too large to enumerate");
    let mut total = BigInt::zero();
    for mask in 0u64..(1u64 << interior.len()) {
        let mut prev = first;
        let mut product = BigInt::one();
        for (bit, &l) in interior.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                product *= c.c(prev, l);
                prev = l;
                if product.is_zero() {
                    break;
                }
            }
        }
        if product.is_zero() {
            continue;
        }
        product *= c.c(prev, last);
        if mask.count_ones() % 2 == 0 {
            total += product;
        } else {
            total -= product;
        }
    }
    Ok(total)
}

/// Left-hand sides of the two Bott-number identities for the code `w`:
///
/// * `Σ_{l ∈ 𝕀_i^j ∪ {i}} b(𝕆_l^j) b(i, l) + b(i, j)`
/// * `Σ_{l ∈ 𝕀_i^j ∪ {j}} b(𝕆_i^l) b(l, j) + b(i, j)`
///
/// with `b(𝕆_l^j)` read as `b({l} ∪ 𝕆_l^j ∪ {j})`. Both are zero for every
/// valid input; a nonzero value is a bug.
pub fn lemma_identities(
    c: &IntegralSequence,
    w: &BinaryCode,
    i: usize,
    j: usize,
) -> Result<(BigInt, BigInt)> {
    let k = w.len();
    if k > c.height() {
        return Err(Error::IndexOutOfRange { index: k, bound: c.height() });
    }
    if i == 0 || j > k || i >= j {
        return Err(Error::IndexOutOfRange { index: if i == 0 { i } else { j }, bound: k });
    }
    let b = |a: usize, z: usize| bott_number(c, &IndexSet::interval(a, z)?);
    let zeros_between = |a: usize, z: usize| -> Vec<usize> { (a + 1..z).filter(|&l| !w.bit(l)).collect() };
    let ones: Vec<usize> = (i + 1..j).filter(|&l| w.bit(l)).collect();
    let bij = b(i, j)?;

    let mut first = bij.clone();
    for l in core::iter::once(i).chain(ones.iter().copied()) {
        first += bott_number_through(c, l, &zeros_between(l, j), j)? * b(i, l)?;
    }
    let mut second = bij;
    for l in ones.iter().copied().chain(core::iter::once(j)) {
        second += bott_number_through(c, i, &zeros_between(i, l), l)? * b(l, j)?;
    }
    Ok((first, second))
}

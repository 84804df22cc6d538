//! Dual cones and the affine charts of `X_{Σ(k)}`.
//!
//! Chart `w` has coordinate ring `C[φ_1, ..., φ_k]` with `φ_j = z^{υ_{j,w_j}}`;
//! a chart is therefore fully described by the integer exponent vectors
//! `υ_{j,w_j}`, and a change of chart by an integer matrix.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bott::bott_number_through;
use crate::code::BinaryCode;
use crate::error::{check_stage, Error, Result};
use crate::linalg::{unit, IntMatrix, Vector};
use crate::sequence::IntegralSequence;

/// `z^e = z_1^{e_1} ⋯ z_k^{e_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentMonomial(pub Vector);

impl LaurentMonomial {
    pub fn exponents(&self) -> &[BigInt] {
        &self.0
    }
}

/// The dual cone of `σ(w)` with its generators and chart monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualChart {
    pub code: BinaryCode,
    pub upsilon: Vec<Vector>,
    pub phi: Vec<LaurentMonomial>,
}

/// `(𝕀_i^j, 𝕆_i^j)`: the positions strictly between `i` and `j` where `w` is 1, resp. 0.
pub fn index_sets(w: &BinaryCode, i: usize, j: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if i == 0 || i >= j || j > w.len() {
        return Err(Error::IndexOutOfRange { index: if i == 0 { i } else { j }, bound: w.len() });
    }
    Ok((i + 1..j).partition(|&l| w.bit(l)))
}

/// `𝕀(j)`: positions `l < j` with `w_l = 1`.
pub fn prefix_set(w: &BinaryCode, j: usize) -> Result<Vec<usize>> {
    if j == 0 || j > w.len() {
        return Err(Error::IndexOutOfRange { index: j, bound: w.len() });
    }
    Ok((1..j).filter(|&l| w.bit(l)).collect())
}

/// `υ_{j,w_j} = (-1)^{w_j} ( Σ_{i ∈ 𝕀(j)} b(𝕆_i^j) e_i + e_j )`, `j = 1..k`,
/// with `b(𝕆_i^j)` evaluated on `{i} ∪ 𝕆_i^j ∪ {j}`.
pub fn dual_generators(c: &IntegralSequence, k: usize, w: &BinaryCode) -> Result<Vec<Vector>> {
    check_stage(k, c.height())?;
    w.expect_len(k)?;
    let mut out = Vec::with_capacity(k);
    for j in 1..=k {
        let mut v = unit(k, j - 1);
        for i in prefix_set(w, j)? {
            let (_, zeros) = index_sets(w, i, j)?;
            v[i - 1] = bott_number_through(c, i, &zeros, j)?;
        }
        if w.bit(j) {
            for x in v.iter_mut() {
                *x = -core::mem::take(x);
            }
        }
        out.push(v);
    }
    Ok(out)
}

pub fn chart(c: &IntegralSequence, k: usize, w: &BinaryCode) -> Result<DualChart> {
    let upsilon = dual_generators(c, k, w)?;
    let phi = upsilon.iter().cloned().map(LaurentMonomial).collect();
    Ok(DualChart { code: w.clone(), upsilon, phi })
}

/// `φ_1, ..., φ_k` for chart `w`.
pub fn chart_ring(c: &IntegralSequence, k: usize, w: &BinaryCode) -> Result<Vec<LaurentMonomial>> {
    Ok(chart(c, k, w)?.phi)
}

impl DualChart {
    /// Rows are the exponent vectors `υ_{j,w_j}`.
    pub fn exponent_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.upsilon)
    }
}

/// `T` with `φ'_i = Π_j φ_j^{T_ij}`, i.e. `T = U' U^{-1}` for the exponent
/// matrices `U` of `w` and `U'` of `w_to`.
pub fn transition(c: &IntegralSequence, k: usize, w: &BinaryCode, w_to: &BinaryCode) -> Result<IntMatrix> {
    let u = chart(c, k, w)?.exponent_matrix();
    let u_to = chart(c, k, w_to)?.exponent_matrix();
    let inv = u.integer_inverse().ok_or(Error::NotUnimodular)?;
    Ok(u_to.mul(&inv))
}

/// Whether `φ` is the standard torus chart `z_1, ..., z_k`.
pub fn is_standard(chart: &DualChart) -> bool {
    chart.upsilon.iter().enumerate().all(|(j, v)| {
        v.iter().enumerate().all(|(i, x)| if i == j { *x == BigInt::from(1) } else { x.is_zero() })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, ints};
    use alloc::vec;

    fn code(s: &str) -> BinaryCode {
        s.parse().unwrap()
    }

    #[test]
    fn index_set_examples() {
        assert_eq!(index_sets(&code("0000"), 1, 4).unwrap(), (vec![], vec![2, 3]));
        assert_eq!(index_sets(&code("1011"), 1, 4).unwrap(), (vec![3], vec![2]));
        assert_eq!(prefix_set(&code("1011"), 4).unwrap(), vec![1, 3]);
        assert!(index_sets(&code("1011"), 2, 2).is_err());
        assert!(prefix_set(&code("1011"), 5).is_err());
    }

    #[test]
    fn zero_code_chart_is_standard() {
        let c = IntegralSequence::from_fn(4, |i, j| int((i * j) as i64 - 3)).unwrap();
        let ch = chart(&c, 4, &code("0000")).unwrap();
        assert!(is_standard(&ch));
    }

    #[test]
    fn hirzebruch_chart_10() {
        let c = IntegralSequence::hirzebruch(int(3));
        let ups = dual_generators(&c, 2, &code("10")).unwrap();
        assert_eq!(ups, vec![ints(&[-1, 0]), ints(&[3, 1])]);
        let phi = chart_ring(&c, 2, &code("10")).unwrap();
        assert_eq!(phi[1].exponents(), ints(&[3, 1]).as_slice());
        let t = transition(&c, 2, &code("00"), &code("10")).unwrap();
        assert_eq!(t, IntMatrix::from_i64_rows(&[&[-1, 0], &[3, 1]]));
    }

    #[test]
    fn all_ones_on_trivial_sequence() {
        let c = IntegralSequence::zero(3).unwrap();
        let ups = dual_generators(&c, 3, &code("111")).unwrap();
        for (j, v) in ups.iter().enumerate() {
            let want: Vector = unit(3, j).into_iter().map(|x| -x).collect();
            assert_eq!(v, &want);
        }
    }

    #[test]
    fn length_mismatch() {
        let c = IntegralSequence::zero(3).unwrap();
        assert_eq!(
            dual_generators(&c, 3, &code("10")),
            Err(Error::CodeLengthMismatch { expected: 3, actual: 2 })
        );
    }
}

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A binary code `w = w_1 ... w_k`, naming one maximal cone `σ(w)`.
///
/// Codes order by their value read with `w_1` as the most significant bit,
/// which is also the lexicographic order of their string form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryCode(Vec<bool>);

impl BinaryCode {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyCode);
        }
        Ok(BinaryCode(bits))
    }

    pub fn zeros(k: usize) -> Result<Self> {
        Self::new(alloc::vec![false; k])
    }

    pub fn ones(k: usize) -> Result<Self> {
        Self::new(alloc::vec![true; k])
    }

    /// The code of length `k` whose value is `value`. Panics if `k > 63`.
    pub fn from_value(k: usize, value: u64) -> Result<Self> {
        assert!(k < 64, "codes longer than 63 bits are not enumerable");
        Self::new((1..=k).map(|i| value >> (k - i) & 1 == 1).collect())
    }

    /// All `2^k` codes in increasing value.
    pub fn all(k: usize) -> impl Iterator<Item = BinaryCode> {
        assert!(k >= 1 && k < 64, "code length {k} not enumerable");
        (0..1u64 << k).map(move |v| BinaryCode::from_value(k, v).expect("k >= 1"))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `w_i`, 1-based. Panics when out of range.
    pub fn bit(&self, i: usize) -> bool {
        self.0[i - 1]
    }

    /// `w_i` as `0` or `1`.
    pub fn gamma(&self, i: usize) -> u8 {
        self.bit(i) as u8
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn value(&self) -> u64 {
        self.0.iter().fold(0, |acc, &b| acc << 1 | b as u64)
    }

    pub fn expect_len(&self, k: usize) -> Result<()> {
        if self.len() == k {
            Ok(())
        } else {
            Err(Error::CodeLengthMismatch { expected: k, actual: self.len() })
        }
    }
}

impl fmt::Display for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|&b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl FromStr for BinaryCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidCodeChar(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits)
    }
}

//! `H*(N_k; Z) = Z[x_1, ..., x_k] / (x_j ℓ_j)` with
//! `ℓ_j = x_j + c(1,j) x_1 + ... + c(j-1,j) x_{j-1}`.
//!
//! Classes are kept in the squarefree basis: `x_j^2` is rewritten to
//! `-x_j (c(1,j) x_1 + ... + c(j-1,j) x_{j-1})` until no square remains.
//! The divisor of the ray `a_{j,0}` is `x_j` and that of `a_{j,1}` is
//! `z_j = ℓ_j`.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{check_stage, Error, Result};
use crate::sequence::IntegralSequence;

/// Largest supported `k`; squarefree monomials are `u32` bitmasks.
pub const MAX_RANK: usize = 31;

/// The linear forms `ℓ_1, ..., ℓ_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPresentation {
    pub k: usize,
    /// `relations[j-1] = [c(1,j), ..., c(j-1,j), 1]`, the coefficients of `ℓ_j`.
    pub relations: Vec<Vec<BigInt>>,
}

pub fn presentation(c: &IntegralSequence, k: usize) -> Result<RingPresentation> {
    check_stage(k, c.height())?;
    let relations = (1..=k)
        .map(|j| {
            let mut l = c.column(j);
            l.push(BigInt::one());
            l
        })
        .collect();
    Ok(RingPresentation { k, relations })
}

/// An integer polynomial in `x_1, ..., x_k`, keyed by exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    k: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Polynomial {
    pub fn zero(k: usize) -> Self {
        Polynomial { k, terms: BTreeMap::new() }
    }

    pub fn constant(k: usize, v: BigInt) -> Self {
        let mut p = Self::zero(k);
        p.add_term(vec![0; k], v);
        p
    }

    pub fn one(k: usize) -> Self {
        Self::constant(k, BigInt::one())
    }

    /// `x_j`, 1-based.
    pub fn variable(k: usize, j: usize) -> Self {
        assert!(j >= 1 && j <= k, "variable x_{j} out of range");
        let mut e = vec![0; k];
        e[j - 1] = 1;
        let mut p = Self::zero(k);
        p.add_term(e, BigInt::one());
        p
    }

    /// Sums `coeff · x^exponents` over the given terms.
    pub fn from_terms(k: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(k);
        for (e, v) in terms {
            if e.len() != k {
                return Err(Error::PolynomialArity { expected: k, actual: e.len() });
            }
            p.add_term(e, v);
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, v)| (e.as_slice(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, v: BigInt) {
        if v.is_zero() {
            return;
        }
        accumulate(&mut self.terms, e, v);
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.k, other.k, "polynomials in different rings");
        let mut out = self.clone();
        for (e, v) in &other.terms {
            out.add_term(e.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, s: &BigInt) -> Polynomial {
        let mut out = Self::zero(self.k);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * s);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.k, other.k, "polynomials in different rings");
        let mut out = Self::zero(self.k);
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, u * v);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        (0..n).fold(Self::one(self.k), |acc, _| acc.mul(self))
    }
}

/// A reduced class: squarefree monomial bitmask (bit `j-1` for `x_j`) to coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CohomologyClass {
    k: usize,
    terms: BTreeMap<u32, BigInt>,
}

impl CohomologyClass {
    pub fn zero(k: usize) -> Self {
        CohomologyClass { k, terms: BTreeMap::new() }
    }

    pub fn one(k: usize) -> Self {
        Self::monomial(k, 0, BigInt::one())
    }

    pub fn monomial(k: usize, mask: u32, coeff: BigInt) -> Self {
        let mut c = Self::zero(k);
        c.add_term(mask, coeff);
        c
    }

    /// Builds a class from `(indices, coefficient)` pairs with 1-based,
    /// distinct indices. Repeated keys are summed.
    pub fn from_terms(k: usize, terms: impl IntoIterator<Item = (Vec<usize>, BigInt)>) -> Result<Self> {
        let mut c = Self::zero(k);
        for (set, v) in terms {
            let mut mask = 0u32;
            for j in set {
                if j == 0 || j > k {
                    return Err(Error::IndexOutOfRange { index: j, bound: k });
                }
                if mask & 1 << (j - 1) != 0 {
                    return Err(Error::IndexSetNotIncreasing);
                }
                mask |= 1 << (j - 1);
            }
            c.add_term(mask, v);
        }
        Ok(c)
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    fn add_term(&mut self, mask: u32, v: BigInt) {
        if v.is_zero() {
            return;
        }
        accumulate(&mut self.terms, mask, v);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mask: u32) -> BigInt {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    /// `(increasing 1-based index list, coefficient)` in increasing mask order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &BigInt)> + '_ {
        self.terms.iter().map(|(&m, v)| (mask_indices(m), v))
    }

    pub fn masks(&self) -> impl Iterator<Item = (u32, &BigInt)> + '_ {
        self.terms.iter().map(|(&m, v)| (m, v))
    }

    /// The part of cohomological degree `2d`.
    pub fn homogeneous(&self, d: u32) -> CohomologyClass {
        CohomologyClass {
            k: self.k,
            terms: self.terms.iter().filter(|(m, _)| m.count_ones() == d).map(|(&m, v)| (m, v.clone())).collect(),
        }
    }

    /// Half the cohomological degree, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.count_ones());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn add(&self, other: &CohomologyClass) -> Result<CohomologyClass> {
        if self.k != other.k {
            return Err(Error::MismatchedRing(self.k, other.k));
        }
        let mut out = self.clone();
        for (&m, v) in &other.terms {
            out.add_term(m, v.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> CohomologyClass {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, s: &BigInt) -> CohomologyClass {
        let mut out = Self::zero(self.k);
        for (&m, v) in &self.terms {
            out.add_term(m, v * s);
        }
        out
    }

    /// The same class read as a polynomial.
    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero(self.k);
        for (&m, v) in &self.terms {
            p.add_term((0..self.k).map(|i| m >> i & 1).collect(), v.clone());
        }
        p
    }
}

fn accumulate<K: Ord>(terms: &mut BTreeMap<K, BigInt>, key: K, v: BigInt) {
    match terms.entry(key) {
        Entry::Vacant(slot) => {
            slot.insert(v);
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += v;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

fn mask_indices(m: u32) -> Vec<usize> {
    (0..32).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Which squared variable to rewrite first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionOrder {
    HighestFirst,
    LowestFirst,
}

/// `H*(N_k; Z)` for a fixed sequence and stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyRing {
    presentation: RingPresentation,
}

impl CohomologyRing {
    pub fn new(c: &IntegralSequence, k: usize) -> Result<Self> {
        if k > MAX_RANK {
            return Err(Error::RankTooLarge(k));
        }
        Ok(CohomologyRing { presentation: presentation(c, k)? })
    }

    pub fn k(&self) -> usize {
        self.presentation.k
    }

    pub fn presentation(&self) -> &RingPresentation {
        &self.presentation
    }

    fn check(&self, a: &CohomologyClass) -> Result<()> {
        if a.k == self.k() {
            Ok(())
        } else {
            Err(Error::MismatchedRing(self.k(), a.k))
        }
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<CohomologyClass> {
        self.normal_form_with(p, ReductionOrder::HighestFirst)
    }

    pub fn normal_form_with(&self, p: &Polynomial, order: ReductionOrder) -> Result<CohomologyClass> {
        let k = self.k();
        if p.k != k {
            return Err(Error::PolynomialArity { expected: k, actual: p.k });
        }
        let mut pending = p.terms.clone();
        let mut out = CohomologyClass::zero(k);
        while let Some((e, v)) = pending.pop_first() {
            let squared = match order {
                ReductionOrder::HighestFirst => (0..k).rev().find(|&j| e[j] >= 2),
                ReductionOrder::LowestFirst => (0..k).find(|&j| e[j] >= 2),
            };
            let Some(j) = squared else {
                let mask = e.iter().enumerate().fold(0u32, |m, (i, &x)| m | (x << i));
                out.add_term(mask, v);
                continue;
            };
            // x_j^2 -> -Σ_{i<j} c(i,j) x_i x_j
            let rel = &self.presentation.relations[j];
            for (i, ci) in rel[..j].iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                let mut f = e.clone();
                f[j] -= 1;
                f[i] += 1;
                accumulate(&mut pending, f, -(ci * &v));
            }
        }
        Ok(out)
    }

    pub fn multiply(&self, a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass> {
        self.check(a)?;
        self.check(b)?;
        self.normal_form(&a.to_polynomial().mul(&b.to_polynomial()))
    }

    /// `x_j`, the class of the divisor of `a_{j,0}`.
    pub fn x(&self, j: usize) -> CohomologyClass {
        assert!(j >= 1 && j <= self.k(), "x_{j} out of range");
        CohomologyClass::monomial(self.k(), 1 << (j - 1), BigInt::one())
    }

    /// `z_j = ℓ_j`, the class of the divisor of `a_{j,1}`.
    pub fn z(&self, j: usize) -> CohomologyClass {
        assert!(j >= 1 && j <= self.k(), "z_{j} out of range");
        let mut out = CohomologyClass::zero(self.k());
        for (i, v) in self.presentation.relations[j - 1].iter().enumerate() {
            out.add_term(1 << i, v.clone());
        }
        out
    }

    /// Divisor class of the generator `a_{j,γ}`.
    pub fn ray_class(&self, j: usize, gamma: u8) -> CohomologyClass {
        if gamma == 0 {
            self.x(j)
        } else {
            self.z(j)
        }
    }

    /// Ranks of `H^0, H^2, ..., H^{2k}`.
    pub fn betti(&self) -> Vec<u64> {
        let k = self.k() as u64;
        let mut row = vec![1u64];
        for i in 1..=k {
            let prev = row[row.len() - 1];
            row.push(prev * (k - i + 1) / i);
        }
        row
    }

    /// Coefficient of `x_1 ⋯ x_k`.
    pub fn integrate(&self, a: &CohomologyClass) -> Result<BigInt> {
        self.check(a)?;
        Ok(a.coefficient(full_mask(self.k())))
    }

    /// `Π_j (1 + x_j + z_j)`, reduced.
    pub fn total_chern_class(&self) -> CohomologyClass {
        let k = self.k();
        let mut acc = CohomologyClass::one(k);
        for j in 1..=k {
            let factor = CohomologyClass::one(k).add(&self.x(j)).and_then(|f| f.add(&self.z(j))).expect("same ring");
            acc = self.multiply(&acc, &factor).expect("same ring");
        }
        acc
    }

    pub fn top_chern_class(&self) -> CohomologyClass {
        self.total_chern_class().homogeneous(self.k() as u32)
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.integrate(&self.top_chern_class()).expect("same ring")
    }
}

fn full_mask(k: usize) -> u32 {
    if k == 0 {
        0
    } else {
        u32::MAX >> (32 - k)
    }
}

//! Line bundles as torus characters on the quotient presentation
//! `(C^2 \ 0)^k / (C^*)^k`, and support functions on `Σ(k)`.
//!
//! A bundle is its exponent vector `(b_1, ..., b_k)`: the torus acts on the
//! fibre by `t_1^{b_1} ⋯ t_k^{b_k}`. Tensor product adds exponents and the
//! conjugate bundle negates them.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Neg};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bott::bott_number;
use crate::code::BinaryCode;
use crate::error::{check_stage, Error, Result};
use crate::fan::{build_fan, BottFan, Fan, UnimodularMap};
use crate::linalg::{dot, solve_integral, IntMatrix, Vector};
use crate::sequence::{IndexSet, IntegralSequence};

/// Exponents of a torus character, one per stage.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacterBundle(pub Vector);

impl CharacterBundle {
    pub fn trivial(k: usize) -> Self {
        CharacterBundle(vec![BigInt::zero(); k])
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn conjugate(&self) -> Self {
        -self.clone()
    }

    /// `self^{⊗ n}`.
    pub fn power(&self, n: &BigInt) -> Self {
        CharacterBundle(self.0.iter().map(|x| x * n).collect())
    }

    /// Pull-back along the projection `N_k → N_j`: pad with zeros.
    pub fn pull_back(&self, k: usize) -> Self {
        assert!(k >= self.0.len(), "cannot pull back to a lower stage");
        let mut v = self.0.clone();
        v.resize(k, BigInt::zero());
        CharacterBundle(v)
    }
}

impl Add for CharacterBundle {
    type Output = CharacterBundle;

    fn add(self, rhs: CharacterBundle) -> CharacterBundle {
        assert_eq!(self.rank(), rhs.rank(), "characters of different stages");
        CharacterBundle(self.0.into_iter().zip(rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Neg for CharacterBundle {
    type Output = CharacterBundle;

    fn neg(self) -> CharacterBundle {
        CharacterBundle(self.0.into_iter().map(|x| -x).collect())
    }
}

/// `(C^2 \ 0)^k` modulo the torus cut out by the kernel of `π_Σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPresentation {
    pub k: usize,
    /// `k` vectors of length `2k`; coordinates ordered `x_1, y_1, ..., x_k, y_k`.
    pub kernel_generators: Vec<Vector>,
    /// Weight of each coordinate `x_1, y_1, ..., x_k, y_k` as a `k`-vector.
    pub action_weights: Vec<Vector>,
}

pub fn quotient_presentation(c: &IntegralSequence, k: usize) -> Result<QuotientPresentation> {
    check_stage(k, c.height())?;
    let kernel_generators = (1..=k)
        .map(|r| {
            let mut v = vec![BigInt::zero(); 2 * k];
            v[2 * (r - 1)] = BigInt::one();
            for s in r..=k {
                v[2 * (s - 1) + 1] = c.c(r, s).clone();
            }
            v
        })
        .collect();
    let mut action_weights = Vec::with_capacity(2 * k);
    for r in 1..=k {
        let mut x = vec![BigInt::zero(); k];
        x[r - 1] = BigInt::one();
        action_weights.push(x);
        action_weights.push((1..=k).map(|i| if i <= r { c.c(i, r).clone() } else { BigInt::zero() }).collect());
    }
    Ok(QuotientPresentation { k, kernel_generators, action_weights })
}

impl QuotientPresentation {
    /// `π_Σ : Z^{2k} → Z^k`, `e_{2r-1} ↦ a_{r,0}`, `e_{2r} ↦ a_{r,1}`.
    pub fn projection(fan: &BottFan) -> IntMatrix {
        IntMatrix::from_columns(fan.generators())
    }

    /// Coordinate `m` of a kernel generator is the exponent of `t_r` in the
    /// weight of coordinate `m`, so the weights are the transposed generators.
    pub fn weights_match_kernel(&self) -> bool {
        (0..2 * self.k).all(|m| (0..self.k).all(|r| self.kernel_generators[r][m] == self.action_weights[m][r]))
    }
}

/// `ξ_k = (c(1, k+1), ..., c(k, k+1))` over `N_k`; needs `k < n`.
pub fn xi_bundle(c: &IntegralSequence, k: usize) -> Result<CharacterBundle> {
    if k == 0 || k >= c.height() {
        return Err(Error::StageOutOfRange { k, n: c.height().saturating_sub(1) });
    }
    Ok(CharacterBundle(c.column(k + 1)))
}

/// The tautological bundle `λ(k)` over `N_k`: `t_k^{-1}`.
pub fn canonical_lambda(k: usize) -> CharacterBundle {
    assert!(k >= 1, "stages start at 1");
    let mut v = vec![BigInt::zero(); k];
    v[k - 1] = -BigInt::one();
    CharacterBundle(v)
}

/// `λ(k)^⊥ = (c(1, k), ..., c(k-1, k), 1)` over `N_k`.
pub fn lambda_perp(c: &IntegralSequence, k: usize) -> Result<CharacterBundle> {
    check_stage(k, c.height())?;
    let mut v = c.column(k);
    v.push(BigInt::one());
    Ok(CharacterBundle(v))
}

/// The `2k` hyperplane bundles of `N_k`, in ray order:
/// `conj λ(j)` for `a_{j,0}` and `λ(j)^⊥` for `a_{j,1}`, `j = 1..k`.
pub fn tangent_splitting(c: &IntegralSequence, k: usize) -> Result<Vec<CharacterBundle>> {
    check_stage(k, c.height())?;
    let mut out = Vec::with_capacity(2 * k);
    for j in 1..=k {
        out.push(canonical_lambda(j).conjugate().pull_back(k));
        out.push(lambda_perp(c, j)?.pull_back(k));
    }
    Ok(out)
}

/// Sum of all hyperplane bundles.
pub fn anticanonical_character(c: &IntegralSequence, k: usize) -> Result<CharacterBundle> {
    Ok(tangent_splitting(c, k)?.into_iter().fold(CharacterBundle::trivial(k), |a, b| a + b))
}

/// A `Σ(k)`-linear support function: integer values on the generators and,
/// for every code `w`, the vector `r(w)` with `<r(w), a_{i,w_i}> = h(a_{i,w_i})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportFunctionData {
    k: usize,
    generators: Vec<Vector>,
    values: Vec<BigInt>,
    cone_vectors: Vec<Vector>,
}

/// Per-cone vectors of the piecewise linear function taking `values[r]` on ray `r`.
///
/// Fails on the first cone where no integral vector exists.
pub fn cone_vectors<F: Fan + ?Sized>(fan: &F, values: &[BigInt]) -> Result<Vec<Vector>> {
    assert_eq!(values.len(), fan.rays().len(), "one value per ray");
    (0..fan.cone_count())
        .map(|ci| {
            let cone = fan.cone(ci);
            let rows = fan.cone_matrix(ci).transpose();
            let rhs: Vec<BigInt> = cone.iter().map(|&r| values[r].clone()).collect();
            solve_integral(&rows, &rhs).ok_or(Error::NotSupportFunction { cone: ci })
        })
        .collect()
}

/// Validates values `(i, γ, h(a_{i,γ}))` on every generator of `fan` and
/// solves for the per-cone vectors.
pub fn support_function(
    fan: &BottFan,
    values: impl IntoIterator<Item = (usize, u8, BigInt)>,
) -> Result<SupportFunctionData> {
    let k = fan.k();
    let mut slots: Vec<Option<BigInt>> = vec![None; 2 * k];
    for (i, gamma, v) in values {
        if i == 0 || i > k || gamma > 1 {
            return Err(Error::IndexOutOfRange { index: i, bound: k });
        }
        let slot = &mut slots[2 * (i - 1) + gamma as usize];
        match slot {
            Some(old) if *old != v => return Err(Error::ConflictingSupportValue { i, gamma }),
            _ => *slot = Some(v),
        }
    }
    let values = slots
        .into_iter()
        .enumerate()
        .map(|(idx, v)| v.ok_or(Error::MissingSupportValue { i: idx / 2 + 1, gamma: (idx % 2) as u8 }))
        .collect::<Result<Vec<_>>>()?;
    let cone_vectors = cone_vectors(fan, &values)?;
    Ok(SupportFunctionData { k, generators: fan.generators().to_vec(), values, cone_vectors })
}

/// `h_k`: zero on every `a_{i,0}` and `b(i, k+1)` on `a_{i,1}`; needs `k < n`.
pub fn hk_support(c: &IntegralSequence, k: usize) -> Result<SupportFunctionData> {
    if k == 0 || k >= c.height() {
        return Err(Error::StageOutOfRange { k, n: c.height().saturating_sub(1) });
    }
    let fan = build_fan(c, k)?;
    let mut values = Vec::with_capacity(2 * k);
    for i in 1..=k {
        values.push((i, 0, BigInt::zero()));
        values.push((i, 1, bott_number(c, &IndexSet::interval(i, k + 1)?)?));
    }
    support_function(&fan, values)
}

impl SupportFunctionData {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    /// `h(a_{i,γ})`.
    pub fn value(&self, i: usize, gamma: u8) -> &BigInt {
        &self.values[2 * (i - 1) + gamma as usize]
    }

    pub fn value_at(&self, ray: usize) -> &BigInt {
        &self.values[ray]
    }

    /// `(i, γ, value)` triples in generator order.
    pub fn values(&self) -> impl Iterator<Item = (usize, u8, &BigInt)> {
        self.values.iter().enumerate().map(|(idx, v)| (idx / 2 + 1, (idx % 2) as u8, v))
    }

    /// `r(w)`.
    pub fn cone_vector(&self, w: &BinaryCode) -> &Vector {
        &self.cone_vectors[w.value() as usize]
    }

    pub fn cone_vectors(&self) -> &[Vector] {
        &self.cone_vectors
    }

    /// Rechecks `<r(w), a_{i,w_i}> = h(a_{i,w_i})` on every cone of `fan`.
    pub fn verify(&self, fan: &BottFan) -> Result<()> {
        if fan.generators() != self.generators.as_slice() {
            return Err(Error::SupportFunctionMismatch);
        }
        for ci in 0..fan.cone_count() {
            for r in fan.cone(ci) {
                if dot(&self.cone_vectors[ci], &fan.rays()[r]) != self.values[r] {
                    return Err(Error::NotSupportFunction { cone: ci });
                }
            }
        }
        Ok(())
    }

    /// `h + <m, ·>` for a global linear functional `m`.
    pub fn add_linear(&self, m: &[BigInt]) -> SupportFunctionData {
        assert_eq!(m.len(), self.k, "functional of the wrong dimension");
        SupportFunctionData {
            k: self.k,
            generators: self.generators.clone(),
            values: self.values.iter().zip(&self.generators).map(|(v, a)| v + dot(m, a)).collect(),
            cone_vectors: self
                .cone_vectors
                .iter()
                .map(|r| r.iter().zip(m).map(|(a, b)| a + b).collect())
                .collect(),
        }
    }

    /// `X_i = h(a_{i,0})`.
    pub fn offsets(&self) -> Vector {
        (1..=self.k).map(|i| self.value(i, 0).clone()).collect()
    }

    /// The shear `e_i ↦ e_i + X_i e_{k+1}`, `e_{k+1} ↦ e_{k+1}`, i.e. the
    /// identity with bottom row `(X_1, ..., X_k, 1)`.
    pub fn shear(&self) -> UnimodularMap {
        let k = self.k;
        let mut m = IntMatrix::identity(k + 1);
        for (i, x) in self.offsets().into_iter().enumerate() {
            m[(k, i)] = x;
        }
        UnimodularMap::new(m).expect("unipotent")
    }
}

/// The column `c(i, k+1) = X_i - r^1_i` of the stage-`(k+1)` sequence whose
/// fan, sheared by [`SupportFunctionData::shear`], is the lift of `Σ(k)` by `h`.
pub fn extend_sequence(c: &IntegralSequence, k: usize, h: &SupportFunctionData) -> Result<Vector> {
    let fan = build_fan(c, k)?;
    h.verify(&fan)?;
    let r1 = h.cone_vector(&BinaryCode::ones(k)?);
    Ok(h.offsets().into_iter().zip(r1).map(|(x, r)| x - r).collect())
}

//! Recognising Bott-tower fans among smooth complete crosspolytope fans.
//!
//! The fan is peeled from the top: a pair `{x, x̂}` with `x + x̂ = 0` is moved
//! to `±e_m` by a unimodular map, the star of `x` is projected to `Z^{m-1}`,
//! the quotient is classified recursively, and the last coordinates of the
//! remaining rays are read back as a support function on the quotient. Its
//! [`extend_sequence`] column is the next column of the answer.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bundles::{extend_sequence, support_function};
use crate::code::BinaryCode;
use crate::error::{Error, Result};
use crate::fan::{
    build_fan, is_complete_with_seed, is_smooth, non_unimodular_cone, Fan, GeneralFan, UnimodularMap,
    DEFAULT_PROBE_SEED,
};
use crate::linalg::{unimodular_to_last_axis, IntMatrix};
use crate::sequence::IntegralSequence;

/// Why a fan is not (recognisably) the fan of a Bott tower.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RejectionCode {
    RayCountOdd,
    NoValidPairing,
    ConeSetNotFullBinaryCube,
    NotSmooth,
    DegenerateCone,
    NotComplete,
    NoZeroSumPair,
}

impl RejectionCode {
    pub fn as_str(self) -> &'static str {
        match self {
            RejectionCode::RayCountOdd => "ray_count_odd",
            RejectionCode::NoValidPairing => "no_valid_pairing",
            RejectionCode::ConeSetNotFullBinaryCube => "cone_set_not_full_binary_cube",
            RejectionCode::NotSmooth => "not_smooth",
            RejectionCode::DegenerateCone => "degenerate_cone",
            RejectionCode::NotComplete => "not_complete",
            RejectionCode::NoZeroSumPair => "no_zero_sum_pair",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            RejectionCode::RayCountOdd,
            RejectionCode::NoValidPairing,
            RejectionCode::ConeSetNotFullBinaryCube,
            RejectionCode::NotSmooth,
            RejectionCode::DegenerateCone,
            RejectionCode::NotComplete,
            RejectionCode::NoZeroSumPair,
        ]
        .into_iter()
        .find(|c| c.as_str() == s)
    }

    /// The condition the input violates.
    pub fn reason(self) -> &'static str {
        match self {
            RejectionCode::RayCountOdd => "a crosspolytope fan has an even number of rays",
            RejectionCode::NoValidPairing => "rays do not split into non-adjacent pairs",
            RejectionCode::ConeSetNotFullBinaryCube => "maximal cones are not all one-ray-per-pair choices",
            RejectionCode::NotSmooth => "some maximal cone is not unimodular",
            RejectionCode::DegenerateCone => "some maximal cone has linearly dependent rays",
            RejectionCode::NotComplete => "the cones do not cover the space",
            RejectionCode::NoZeroSumPair => {
                "no pair with x + x̂ = 0: fan cannot be smooth projective of crosspolytope type"
            }
        }
    }
}

impl fmt::Display for RejectionCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The offending object of a rejection, by 0-based index into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    None,
    Ray(usize),
    Cone(usize),
    RayCount(usize),
    /// A binary-code choice of one ray per pair that is not a cone.
    MissingCone(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub code: RejectionCode,
    pub witness: Witness,
}

impl Rejection {
    fn new(code: RejectionCode, witness: Witness) -> Self {
        Rejection { code, witness }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.code.reason())?;
        match &self.witness {
            Witness::None => Ok(()),
            Witness::Ray(r) => write!(f, " (ray {r})"),
            Witness::Cone(c) => write!(f, " (cone {c})"),
            Witness::RayCount(n) => write!(f, " ({n} rays)"),
            Witness::MissingCone(rays) => write!(f, " (missing cone {rays:?})"),
        }
    }
}

/// A recovered tower: `map · a_g = fan.rays[rays[g]]` for every generator
/// index `g` of `build_fan(sequence, n)`, and `order[i-1]` is the input pair
/// index realised by stage `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub sequence: IntegralSequence,
    pub order: Vec<usize>,
    pub rays: Vec<usize>,
    pub map: UnimodularMap,
}

impl Classification {
    /// Whether `map` carries `build_fan(sequence)` onto `fan` ray for ray and
    /// cone for cone.
    pub fn reproduces<F: Fan + ?Sized>(&self, fan: &F) -> bool {
        let n = self.sequence.height();
        let Ok(model) = build_fan(&self.sequence, n) else {
            return false;
        };
        if fan.dim() != n || fan.rays().len() != 2 * n || self.rays.len() != 2 * n {
            return false;
        }
        let rays_ok = model
            .generators()
            .iter()
            .zip(&self.rays)
            .all(|(a, &r)| r < fan.rays().len() && self.map.apply(a) == fan.rays()[r]);
        if !rays_ok {
            return false;
        }
        let target: BTreeSet<Vec<usize>> = fan.cones().into_iter().collect();
        let image: BTreeSet<Vec<usize>> = model
            .cones()
            .into_iter()
            .map(|c| {
                let mut v: Vec<usize> = c.into_iter().map(|g| self.rays[g]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        target == image
    }
}

/// Pairs `(x, x̂)` with `x < x̂`, sorted by `x`, such that no cone contains
/// both and every one-per-pair choice is a maximal cone.
pub fn crosspolytope_check<F: Fan + ?Sized>(fan: &F) -> core::result::Result<Vec<(usize, usize)>, Rejection> {
    let n_rays = fan.rays().len();
    let cones = fan.cones();
    let mut adjacent = vec![vec![false; n_rays]; n_rays];
    for cone in &cones {
        for &a in cone {
            for &b in cone {
                adjacent[a][b] = true;
            }
        }
    }
    let partners: Vec<Vec<usize>> = (0..n_rays)
        .map(|a| (0..n_rays).filter(|&b| b != a && !adjacent[a][b]).collect())
        .collect();
    if let Some(r) = partners.iter().position(Vec::is_empty) {
        return Err(Rejection::new(RejectionCode::NoValidPairing, Witness::Ray(r)));
    }
    if n_rays % 2 == 1 {
        return Err(Rejection::new(RejectionCode::RayCountOdd, Witness::RayCount(n_rays)));
    }
    let mut matchings = Vec::new();
    let mut current = Vec::new();
    let mut used = vec![false; n_rays];
    perfect_matchings(&partners, &mut used, &mut current, &mut matchings);
    let Some(first) = matchings.first() else {
        return Err(Rejection::new(RejectionCode::NoValidPairing, Witness::None));
    };
    let present: BTreeSet<&Vec<usize>> = cones.iter().collect();
    let missing_cone = |pairs: &[(usize, usize)]| -> Option<Witness> {
        let n = pairs.len();
        if n != fan.dim() || n >= 64 {
            return Some(Witness::None);
        }
        if let Some(c) = BinaryCode::all(n).map(|w| cube_cone(pairs, &w)).find(|c| !present.contains(c)) {
            return Some(Witness::MissingCone(c));
        }
        (cones.len() != 1 << n).then_some(Witness::None)
    };
    if let Some(pairs) = matchings.iter().find(|m| missing_cone(m).is_none()) {
        return Ok(pairs.clone());
    }
    let witness = missing_cone(first).unwrap_or(Witness::None);
    Err(Rejection::new(RejectionCode::ConeSetNotFullBinaryCube, witness))
}

/// Cap on the pairings tried when rays have several non-adjacent candidates.
const MAX_MATCHINGS: usize = 4096;

// Lowest unmatched ray first, candidates in increasing order, so the first
// matching found is the same on every run.
fn perfect_matchings(
    partners: &[Vec<usize>],
    used: &mut [bool],
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if out.len() >= MAX_MATCHINGS {
        return;
    }
    let Some(a) = used.iter().position(|u| !u) else {
        out.push(current.clone());
        return;
    };
    used[a] = true;
    for &b in &partners[a] {
        if !used[b] {
            used[b] = true;
            current.push((a, b));
            perfect_matchings(partners, used, current, out);
            current.pop();
            used[b] = false;
        }
    }
    used[a] = false;
}

fn cube_cone(pairs: &[(usize, usize)], w: &BinaryCode) -> Vec<usize> {
    let mut c: Vec<usize> = pairs.iter().enumerate().map(|(i, &(a, b))| if w.bit(i + 1) { b } else { a }).collect();
    c.sort_unstable();
    c
}

fn is_zero_sum<F: Fan + ?Sized>(fan: &F, (a, b): (usize, usize)) -> bool {
    fan.rays()[a].iter().zip(&fan.rays()[b]).all(|(x, y)| (x + y).is_zero())
}

/// Smallest pair index whose rays sum to zero.
pub fn find_opposite_pair<F: Fan + ?Sized>(fan: &F) -> core::result::Result<usize, Rejection> {
    let pairs = crosspolytope_check(fan)?;
    pairs
        .iter()
        .position(|&p| is_zero_sum(fan, p))
        .ok_or(Rejection::new(RejectionCode::NoZeroSumPair, Witness::None))
}

struct Projection {
    fan: GeneralFan,
    /// Parent ray index of each projected ray.
    parents: Vec<usize>,
    /// Last coordinate of each projected ray before dropping it.
    heights: Vec<BigInt>,
    basis: IntMatrix,
}

fn project_pair(fan: &GeneralFan, (x, x_hat): (usize, usize)) -> Result<Projection> {
    let m = fan.dim();
    if m < 2 {
        return Err(Error::ZeroDimension);
    }
    let basis = unimodular_to_last_axis(&fan.rays()[x]).ok_or(Error::NonPrimitiveRay(x))?;
    let parents: Vec<usize> = (0..fan.rays().len()).filter(|&r| r != x && r != x_hat).collect();
    let mut rays = Vec::with_capacity(parents.len());
    let mut heights = Vec::with_capacity(parents.len());
    for &p in &parents {
        let mut v = basis.mul_vec(&fan.rays()[p]);
        heights.push(v.pop().expect("m >= 2"));
        rays.push(v);
    }
    let cones = fan
        .cone_list()
        .iter()
        .filter(|c| c.contains(&x))
        .map(|c| c.iter().filter(|&&r| r != x).map(|r| parents.binary_search(r).expect("pair rays excluded")).collect())
        .collect();
    Ok(Projection { fan: GeneralFan::new(m - 1, rays, cones)?, parents, heights, basis })
}

/// The quotient of `fan` by the star of the zero-sum pair `pair_index`,
/// in coordinates where that pair is `±e_m`. Rays keep their input order
/// with the pair removed.
pub fn project(fan: &GeneralFan, pair_index: usize) -> Result<GeneralFan> {
    let pairs = crosspolytope_check(fan).map_err(|r| Error::NotCrosspolytope(format!("{r}")))?;
    let &pair = pairs.get(pair_index).ok_or(Error::PairOutOfRange(pair_index))?;
    if !is_zero_sum(fan, pair) {
        return Err(Error::NotZeroSumPair(pair_index));
    }
    Ok(project_pair(fan, pair)?.fan)
}

struct Peeled {
    sequence: IntegralSequence,
    /// Generator index to ray index of the fan at this level.
    rays: Vec<usize>,
    map: IntMatrix,
}

fn peel(fan: &GeneralFan) -> core::result::Result<Peeled, Rejection> {
    let pairs = crosspolytope_check(fan)?;
    let m = fan.dim();
    if m == 1 {
        let (a, b) = pairs[0];
        let (pos, neg) = if fan.rays()[a][0].is_one() { (a, b) } else { (b, a) };
        return Ok(Peeled {
            sequence: IntegralSequence::zero(1).expect("n = 1"),
            rays: vec![pos, neg],
            map: IntMatrix::identity(1),
        });
    }
    let pi = pairs
        .iter()
        .position(|&p| is_zero_sum(fan, p))
        .ok_or(Rejection::new(RejectionCode::NoZeroSumPair, Witness::None))?;
    let (x, x_hat) = pairs[pi];
    let proj = project_pair(fan, (x, x_hat)).map_err(internal)?;
    let low = peel(&proj.fan)?;
    let k = m - 1;
    let low_fan = build_fan(&low.sequence, k).map_err(internal)?;
    let values = (0..2 * k).map(|g| (g / 2 + 1, (g % 2) as u8, proj.heights[low.rays[g]].clone()));
    let h = support_function(&low_fan, values).map_err(internal)?;
    let column = extend_sequence(&low.sequence, k, &h).map_err(internal)?;
    let sequence = low.sequence.extend(&column).map_err(internal)?;

    let mut block = IntMatrix::identity(m);
    for r in 0..k {
        for c in 0..k {
            block[(r, c)] = low.map[(r, c)].clone();
        }
    }
    let inverse = proj.basis.integer_inverse().expect("unimodular basis change");
    let map = inverse.mul(&block).mul(h.shear().matrix());
    let mut rays: Vec<usize> = low.rays.iter().map(|&r| proj.parents[r]).collect();
    rays.push(x);
    rays.push(x_hat);
    Ok(Peeled { sequence, rays, map })
}

fn internal(e: Error) -> Rejection {
    // only reachable on inputs the earlier checks should have excluded
    let code = match e {
        Error::DegenerateCone(_) => RejectionCode::DegenerateCone,
        _ => RejectionCode::NotSmooth,
    };
    Rejection::new(code, Witness::None)
}

pub fn classify(fan: &GeneralFan) -> core::result::Result<Classification, Rejection> {
    classify_with_seed(fan, DEFAULT_PROBE_SEED)
}

/// [`classify`] with an explicit seed for the completeness probe.
pub fn classify_with_seed(fan: &GeneralFan, seed: u64) -> core::result::Result<Classification, Rejection> {
    let pairs = crosspolytope_check(fan)?;
    match is_smooth(fan) {
        Err(Error::DegenerateCone(c)) => return Err(Rejection::new(RejectionCode::DegenerateCone, Witness::Cone(c))),
        Err(e) => return Err(internal(e)),
        Ok(false) => {
            let c = non_unimodular_cone(fan).expect("some cone is not unimodular");
            return Err(Rejection::new(RejectionCode::NotSmooth, Witness::Cone(c)));
        }
        Ok(true) => {}
    }
    if !is_complete_with_seed(fan, seed) {
        return Err(Rejection::new(RejectionCode::NotComplete, Witness::None));
    }
    let peeled = peel(fan)?;
    let map = UnimodularMap::new(peeled.map).map_err(internal)?;
    let order = (0..peeled.sequence.height())
        .map(|i| {
            let r = peeled.rays[2 * i];
            pairs.iter().position(|&(a, b)| a == r || b == r).expect("every ray is paired")
        })
        .collect();
    let result = Classification { sequence: peeled.sequence, order, rays: peeled.rays, map };
    if result.reproduces(fan) {
        Ok(result)
    } else {
        Err(internal(Error::SupportFunctionMismatch))
    }
}

/// `(P^1)^k`: rays `±e_i` ordered `e_1, -e_1, e_2, -e_2, ...`.
pub fn product_of_lines(k: usize) -> Result<GeneralFan> {
    build_fan(&IntegralSequence::zero(k)?, k).map(|f| f.to_general())
}

//! Fans: the structured fan `Σ(k)` of a Bott tower and unstructured
//! simplicial fans, with the checks and maps that relate them.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bott::bott_matrix;
use crate::bundles::SupportFunctionData;
use crate::code::BinaryCode;
use crate::error::{check_stage, Error, Result};
use crate::linalg::{dot, is_primitive, is_zero_vector, solve_rational, unit, IntMatrix, Vector};
use crate::sequence::{IndexSet, IntegralSequence};

/// Seed of the containment probe used by [`is_complete`].
pub const DEFAULT_PROBE_SEED: u64 = 0x0b07_7e25;
/// Number of random vectors the containment probe tests.
pub const PROBE_COUNT: usize = 100;
const PROBE_RANGE: i64 = 100;

/// A complete-or-not simplicial fan given by its rays and maximal cones.
pub trait Fan {
    fn dim(&self) -> usize;
    fn rays(&self) -> &[Vector];
    fn cone_count(&self) -> usize;
    /// Ray indices of maximal cone `index`, increasing.
    fn cone(&self, index: usize) -> Vec<usize>;

    /// Matrix whose columns are the rays of cone `index`.
    fn cone_matrix(&self, index: usize) -> IntMatrix {
        let rays = self.rays();
        let cols: Vec<&[BigInt]> = self.cone(index).into_iter().map(|r| rays[r].as_slice()).collect();
        IntMatrix::from_columns(&cols)
    }

    fn cones(&self) -> Vec<Vec<usize>> {
        (0..self.cone_count()).map(|i| self.cone(i)).collect()
    }
}

/// The fan `Σ(k)` of stage `k` of the tower of `c`.
///
/// Generators: `a_{i,0} = e_i` and `a_{i,1} = (0, ..., 0, b(i,i), ..., b(i,k))`,
/// stored at ray index `2(i - 1) + γ`. The `2^k` maximal cones
/// `σ(w) = cone(a_{1,w_1}, ..., a_{k,w_k})` are enumerated on demand in
/// binary-code order and never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BottFan {
    sequence: IntegralSequence,
    k: usize,
    generators: Vec<Vector>,
}

pub fn build_fan(c: &IntegralSequence, k: usize) -> Result<BottFan> {
    check_stage(k, c.height())?;
    let b = bott_matrix(c, &IndexSet::interval(1, k)?)?;
    let mut generators = Vec::with_capacity(2 * k);
    for i in 0..k {
        generators.push(unit(k, i));
        let mut a = vec![BigInt::zero(); k];
        for (s, slot) in a.iter_mut().enumerate().skip(i) {
            *slot = b.get(i, s).clone();
        }
        generators.push(a);
    }
    Ok(BottFan { sequence: c.clone(), k, generators })
}

impl BottFan {
    pub fn k(&self) -> usize {
        self.k
    }

    /// The sequence the fan was built from (possibly taller than `k`).
    pub fn sequence(&self) -> &IntegralSequence {
        &self.sequence
    }

    /// `a_{i,γ}`, `i` 1-based.
    pub fn generator(&self, i: usize, gamma: u8) -> &Vector {
        assert!((1..=self.k).contains(&i) && gamma <= 1, "no generator a({i},{gamma})");
        &self.generators[2 * (i - 1) + gamma as usize]
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    /// Ray indices of `σ(w)`.
    pub fn cone_of(&self, w: &BinaryCode) -> Vec<usize> {
        (1..=w.len()).map(|i| 2 * (i - 1) + w.gamma(i) as usize).collect()
    }

    /// The `k` primitive collections `{a_{i,0}, a_{i,1}}` as ray-index pairs.
    pub fn primitive_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.k).map(|i| (2 * i, 2 * i + 1)).collect()
    }

    pub fn to_general(&self) -> GeneralFan {
        GeneralFan {
            dim: self.k,
            rays: self.generators.clone(),
            cones: self.cones(),
        }
    }
}

impl Fan for BottFan {
    fn dim(&self) -> usize {
        self.k
    }

    fn rays(&self) -> &[Vector] {
        &self.generators
    }

    fn cone_count(&self) -> usize {
        1 << self.k
    }

    fn cone(&self, index: usize) -> Vec<usize> {
        let w = BinaryCode::from_value(self.k, index as u64).expect("k >= 1");
        self.cone_of(&w)
    }
}

/// An unstructured simplicial fan: primitive rays and full-dimensional
/// maximal cones given by ray indices.
///
/// Construction enforces shape, primitivity and distinctness; linear
/// independence of each cone's rays is reported by [`is_smooth`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralFan {
    dim: usize,
    rays: Vec<Vector>,
    cones: Vec<Vec<usize>>,
}

impl GeneralFan {
    pub fn new(dim: usize, rays: Vec<Vector>, cones: Vec<Vec<usize>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        for (index, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::RayDimension { index, expected: dim, actual: r.len() });
            }
            if is_zero_vector(r) {
                return Err(Error::ZeroRay(index));
            }
            if !is_primitive(r) {
                return Err(Error::NonPrimitiveRay(index));
            }
        }
        let mut seen: BTreeMap<&Vector, usize> = BTreeMap::new();
        for (index, r) in rays.iter().enumerate() {
            if let Some(&first) = seen.get(r) {
                return Err(Error::DuplicateRay(first, index));
            }
            seen.insert(r, index);
        }
        if cones.is_empty() {
            return Err(Error::NoCones);
        }
        let mut sorted_cones = Vec::with_capacity(cones.len());
        let mut seen_cones: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (cone, mut ids) in cones.into_iter().enumerate() {
            if ids.len() != dim {
                return Err(Error::ConeSize { cone, expected: dim, actual: ids.len() });
            }
            if let Some(&ray) = ids.iter().find(|&&r| r >= rays.len()) {
                return Err(Error::ConeRayOutOfRange { cone, ray });
            }
            ids.sort_unstable();
            if ids.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::ConeRepeatsRay(cone));
            }
            if let Some(&first) = seen_cones.get(&ids) {
                return Err(Error::DuplicateCone(first, cone));
            }
            seen_cones.insert(ids.clone(), cone);
            sorted_cones.push(ids);
        }
        Ok(GeneralFan { dim, rays, cones: sorted_cones })
    }

    pub fn cone_list(&self) -> &[Vec<usize>] {
        &self.cones
    }

    /// Drops maximal cone `index`.
    pub fn without_cone(&self, index: usize) -> Result<Self> {
        let mut cones = self.cones.clone();
        cones.remove(index);
        GeneralFan::new(self.dim, self.rays.clone(), cones)
    }

    /// Reorders rays: new ray `t` is old ray `order[t]`.
    pub fn relabel(&self, order: &[usize]) -> Result<Self> {
        assert_eq!(order.len(), self.rays.len(), "relabeling must be a permutation");
        let mut inverse = vec![usize::MAX; order.len()];
        for (t, &old) in order.iter().enumerate() {
            inverse[old] = t;
        }
        assert!(inverse.iter().all(|&x| x != usize::MAX), "relabeling must be a permutation");
        let rays = order.iter().map(|&old| self.rays[old].clone()).collect();
        let cones = self.cones.iter().map(|c| c.iter().map(|&r| inverse[r]).collect()).collect();
        GeneralFan::new(self.dim, rays, cones)
    }
}

impl Fan for GeneralFan {
    fn dim(&self) -> usize {
        self.dim
    }

    fn rays(&self) -> &[Vector] {
        &self.rays
    }

    fn cone_count(&self) -> usize {
        self.cones.len()
    }

    fn cone(&self, index: usize) -> Vec<usize> {
        self.cones[index].clone()
    }
}

/// Integer matrix with determinant ±1, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularMap(IntMatrix);

impl UnimodularMap {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if m.is_unimodular() {
            Ok(UnimodularMap(m))
        } else {
            Err(Error::NotUnimodular)
        }
    }

    pub fn identity(k: usize) -> Self {
        UnimodularMap(IntMatrix::identity(k))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn apply(&self, v: &[BigInt]) -> Vector {
        self.0.mul_vec(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &UnimodularMap) -> UnimodularMap {
        UnimodularMap(self.0.mul(&other.0))
    }

    pub fn inverse(&self) -> UnimodularMap {
        UnimodularMap(self.0.integer_inverse().expect("unimodular matrices invert over Z"))
    }
}

/// Every maximal cone unimodular. A cone with dependent rays is an error,
/// not a `false`.
pub fn is_smooth<F: Fan + ?Sized>(fan: &F) -> Result<bool> {
    let mut smooth = true;
    for idx in 0..fan.cone_count() {
        let det = fan.cone_matrix(idx).det();
        if det.is_zero() {
            return Err(Error::DegenerateCone(idx));
        }
        if !det.abs().is_one() {
            smooth = false;
        }
    }
    Ok(smooth)
}

/// Index of the first cone with dependent rays, if any.
pub fn degenerate_cone<F: Fan + ?Sized>(fan: &F) -> Option<usize> {
    (0..fan.cone_count()).find(|&i| fan.cone_matrix(i).det().is_zero())
}

/// First cone whose determinant is not ±1.
pub fn non_unimodular_cone<F: Fan + ?Sized>(fan: &F) -> Option<usize> {
    (0..fan.cone_count()).find(|&i| !fan.cone_matrix(i).det().abs().is_one())
}

pub fn is_complete<F: Fan + ?Sized>(fan: &F) -> bool {
    is_complete_with_seed(fan, DEFAULT_PROBE_SEED)
}

/// Completeness of a simplicial fan: every facet shared by exactly two maximal
/// cones, the facet-adjacency graph connected, and [`PROBE_COUNT`] random
/// integer vectors each contained in some maximal cone.
pub fn is_complete_with_seed<F: Fan + ?Sized>(fan: &F, seed: u64) -> bool {
    let k = fan.dim();
    let n_cones = fan.cone_count();
    if n_cones == 0 {
        return false;
    }
    let cones = fan.cones();
    if cones.iter().any(|c| c.len() != k) {
        return false;
    }

    let mut facets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (ci, cone) in cones.iter().enumerate() {
        for drop in 0..k {
            let mut f = cone.clone();
            f.remove(drop);
            facets.entry(f).or_default().push(ci);
        }
    }
    if facets.values().any(|owners| owners.len() != 2) {
        return false;
    }

    let mut adjacency = vec![Vec::new(); n_cones];
    for owners in facets.values() {
        adjacency[owners[0]].push(owners[1]);
        adjacency[owners[1]].push(owners[0]);
    }
    let mut visited = vec![false; n_cones];
    let mut queue = VecDeque::from([0usize]);
    visited[0] = true;
    while let Some(c) = queue.pop_front() {
        for &d in &adjacency[c] {
            if !visited[d] {
                visited[d] = true;
                queue.push_back(d);
            }
        }
    }
    if visited.iter().any(|v| !v) {
        return false;
    }

    // x ∈ cone  <=>  sign(det) · adj(R) · x >= 0
    let mut tests = Vec::with_capacity(n_cones);
    for ci in 0..n_cones {
        let r = fan.cone_matrix(ci);
        let det = r.det();
        if det.is_zero() {
            return false;
        }
        let inv = r.rational_inverse().expect("nonzero determinant");
        let scale = BigRational::from_integer(det.abs());
        let rows: Vec<Vector> = inv
            .iter()
            .map(|row| row.iter().map(|q| (q * &scale).to_integer()).collect())
            .collect();
        tests.push(IntMatrix::from_rows(&rows));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut probes = 0;
    while probes < PROBE_COUNT {
        let v: Vector = (0..k).map(|_| BigInt::from(rng.random_range(-PROBE_RANGE..=PROBE_RANGE))).collect();
        if is_zero_vector(&v) {
            continue;
        }
        probes += 1;
        let covered = tests
            .iter()
            .any(|t| (0..k).all(|r| !dot(t.row(r), &v).is_negative()));
        if !covered {
            return false;
        }
    }
    true
}

fn mask_of(ids: &[usize]) -> u64 {
    ids.iter().fold(0u64, |m, &r| m | 1 << r)
}

/// All faces (subsets of maximal cones) as sorted ray bitmasks.
fn face_masks<F: Fan + ?Sized>(fan: &F) -> Vec<u64> {
    let mut faces: BTreeSet<u64> = BTreeSet::new();
    let mut stack: Vec<u64> = Vec::new();
    for ci in 0..fan.cone_count() {
        let m = mask_of(&fan.cone(ci));
        if faces.insert(m) {
            stack.push(m);
        }
    }
    while let Some(m) = stack.pop() {
        let mut rest = m;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest ^= bit;
            let sub = m ^ bit;
            if faces.insert(sub) {
                stack.push(sub);
            }
        }
    }
    faces.into_iter().collect()
}

/// Minimal subsets of rays not contained in any maximal cone, by enumeration.
/// Each is returned as increasing ray indices; the list is sorted.
pub fn minimal_non_faces<F: Fan + ?Sized>(fan: &F) -> Vec<Vec<usize>> {
    let n_rays = fan.rays().len();
    assert!(n_rays <= 64, "non-face enumeration supports at most 64 rays");
    let faces = face_masks(fan);
    let is_face = |m: u64| faces.binary_search(&m).is_ok();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for &f in &faces {
        let start = if f == 0 { 0 } else { 64 - f.leading_zeros() as usize };
        for x in start..n_rays {
            let s = f | 1 << x;
            if is_face(s) {
                continue;
            }
            let mut rest = s;
            let mut minimal = true;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                if !is_face(s ^ bit) {
                    minimal = false;
                    break;
                }
            }
            if minimal {
                found.insert((0..n_rays).filter(|&r| s >> r & 1 == 1).collect());
            }
        }
    }
    found.into_iter().collect()
}

/// The primitive collections, required to be a perfect pairing of the rays.
pub fn primitive_collections<F: Fan + ?Sized>(fan: &F) -> Result<Vec<(usize, usize)>> {
    let k = fan.dim();
    if k > 12 {
        return Err(Error::NotCrosspolytope(format!("dimension {k} exceeds enumeration limit 12")));
    }
    let n_rays = fan.rays().len();
    let collections = minimal_non_faces(fan);
    let mut covered = vec![false; n_rays];
    let mut pairs = Vec::new();
    for c in &collections {
        if c.len() != 2 {
            return Err(Error::NotCrosspolytope(format!("minimal non-face {c:?} is not a pair")));
        }
        for &r in c {
            if core::mem::replace(&mut covered[r], true) {
                return Err(Error::NotCrosspolytope(format!("ray {r} lies in two minimal non-faces")));
            }
        }
        pairs.push((c[0], c[1]));
    }
    if let Some(r) = covered.iter().position(|c| !c) {
        return Err(Error::NotCrosspolytope(format!("ray {r} lies in no minimal non-face")));
    }
    if pairs.len() != k {
        return Err(Error::NotCrosspolytope(format!("{} pairs in dimension {k}", pairs.len())));
    }
    Ok(pairs)
}

/// Strict convexity of the anticanonical support function.
///
/// Convention: on each maximal cone `σ` the vector `m_σ` solves
/// `<m_σ, v> = -1` for the rays `v` of `σ`; the fan is Fano iff
/// `<m_σ, v> > -1` for every ray `v` outside `σ`.
pub fn is_fano<F: Fan + ?Sized>(fan: &F) -> Result<bool> {
    if !is_complete(fan) {
        return Err(Error::NotComplete);
    }
    let k = fan.dim();
    let minus_one = BigRational::from_integer(-BigInt::one());
    let rhs = vec![-BigInt::one(); k];
    for ci in 0..fan.cone_count() {
        let rows = fan.cone_matrix(ci).transpose();
        let m = solve_rational(&rows, &rhs).ok_or(Error::DegenerateCone(ci))?;
        let cone = fan.cone(ci);
        for (ri, ray) in fan.rays().iter().enumerate() {
            if cone.contains(&ri) {
                continue;
            }
            let value = m
                .iter()
                .zip(ray)
                .map(|(a, b)| a * BigRational::from_integer(b.clone()))
                .fold(BigRational::zero(), |s, t| s + t);
            if value <= minus_one {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The join of `{y ↦ (y, h(y))}(Σ(k))` with `{cone(e_{k+1}), cone(-e_{k+1})}`.
///
/// Rays come in generator order: `(a_{i,γ}, h(a_{i,γ}))` for `i <= k`, then
/// `e_{k+1}` and `-e_{k+1}`; cones follow binary-code order in dimension
/// `k + 1`. With `h = h_k` this is exactly `Σ(k + 1)`.
pub fn lift_with_support_function(fan: &BottFan, h: &SupportFunctionData) -> Result<GeneralFan> {
    if h.generators() != fan.generators() {
        return Err(Error::SupportFunctionMismatch);
    }
    h.verify(fan)?;
    let k = fan.k();
    let mut rays = Vec::with_capacity(2 * k + 2);
    for (idx, a) in fan.generators().iter().enumerate() {
        let mut v = a.clone();
        v.push(h.value_at(idx).clone());
        rays.push(v);
    }
    rays.push(unit(k + 1, k));
    rays.push({
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = -BigInt::one();
        v
    });
    let cones = BinaryCode::all(k + 1)
        .map(|w| (1..=k + 1).map(|i| 2 * (i - 1) + w.gamma(i) as usize).collect())
        .collect();
    GeneralFan::new(k + 1, rays, cones)
}

/// Image of `fan` under `m`, cone structure unchanged.
pub fn apply_unimodular<F: Fan + ?Sized>(fan: &F, m: &UnimodularMap) -> Result<GeneralFan> {
    if m.dim() != fan.dim() {
        return Err(Error::DimensionMismatch(m.dim(), fan.dim()));
    }
    let rays = fan.rays().iter().map(|r| m.apply(r)).collect();
    GeneralFan::new(fan.dim(), rays, fan.cones())
}

/// Witness that `map · first.rays[i] = second.rays[ray_map[i]]` for every ray,
/// carrying maximal cones onto maximal cones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanIsomorphism {
    pub ray_map: Vec<usize>,
    pub map: UnimodularMap,
}

/// Largest dimension [`fans_isomorphic`] accepts.
pub const MAX_ISOMORPHISM_DIM: usize = 6;

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Searches for a lattice isomorphism `first → second`.
///
/// The first maximal cone of `first` is anchored onto every ordering of every
/// maximal cone of `second`; each anchoring fixes a candidate matrix, which is
/// then checked for integrality, unimodularity and on all rays and cones.
pub fn fans_isomorphic<F, G>(first: &F, second: &G) -> Result<Option<FanIsomorphism>>
where
    F: Fan + ?Sized,
    G: Fan + ?Sized,
{
    let k = first.dim();
    if k > MAX_ISOMORPHISM_DIM || second.dim() > MAX_ISOMORPHISM_DIM {
        return Err(Error::IsomorphismSearchTooLarge(k.max(second.dim())));
    }
    if k != second.dim()
        || first.rays().len() != second.rays().len()
        || first.cone_count() != second.cone_count()
    {
        return Ok(None);
    }
    let anchor = first.cone_matrix(0);
    let det = anchor.det();
    if det.is_zero() {
        return Err(Error::DegenerateCone(0));
    }
    // anchor^{-1} = adj / det
    let inv = anchor.rational_inverse().expect("nonzero determinant");
    let det_q = BigRational::from_integer(det.clone());
    let adj_rows: Vec<Vector> = inv.iter().map(|row| row.iter().map(|q| (q * &det_q).to_integer()).collect()).collect();
    let adj = IntMatrix::from_rows(&adj_rows);

    let target_rays: BTreeMap<&Vector, usize> =
        second.rays().iter().enumerate().map(|(i, r)| (r, i)).collect();
    let target_cones: BTreeSet<Vec<usize>> = second.cones().into_iter().collect();
    let source_cones = first.cones();
    let orders = permutations(k);

    for ci in 0..second.cone_count() {
        let cone = second.cone(ci);
        for order in &orders {
            let cols: Vec<&[BigInt]> = order.iter().map(|&p| second.rays()[cone[p]].as_slice()).collect();
            let product = IntMatrix::from_columns(&cols).mul(&adj);
            let mut m = IntMatrix::zeros(k, k);
            let mut integral = true;
            'entries: for r in 0..k {
                for c in 0..k {
                    let (q, rem) = product[(r, c)].div_rem(&det);
                    if !rem.is_zero() {
                        integral = false;
                        break 'entries;
                    }
                    m[(r, c)] = q;
                }
            }
            if !integral || !m.is_unimodular() {
                continue;
            }
            let mut ray_map = Vec::with_capacity(first.rays().len());
            for ray in first.rays() {
                match target_rays.get(&m.mul_vec(ray)) {
                    Some(&t) => ray_map.push(t),
                    None => break,
                }
            }
            if ray_map.len() != first.rays().len() {
                continue;
            }
            let all_cones = source_cones.iter().all(|c| {
                let mut image: Vec<usize> = c.iter().map(|&r| ray_map[r]).collect();
                image.sort_unstable();
                target_cones.contains(&image)
            });
            if all_cones {
                return Ok(Some(FanIsomorphism { ray_map, map: UnimodularMap(m) }));
            }
        }
    }
    Ok(None)
}

use alloc::string::String;

/// Errors raised by the core operations.
///
/// Mathematical rejections of the classifier are not errors; they are
/// reported through [`crate::classify::Rejection`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("index set is empty")]
    EmptyIndexSet,
    #[error("index set is not strictly increasing")]
    IndexSetNotIncreasing,
    #[error("sequence entry c({i},{j}) is not above the diagonal of a height-{n} tower")]
    InvalidSequenceEntry { i: usize, j: usize, n: usize },
    #[error("sequence entry c({i},{j}) given twice")]
    DuplicateSequenceEntry { i: usize, j: usize },
    #[error("tower height must be positive")]
    EmptyTower,
    #[error("the subset formula needs at least two indices, got {0}")]
    IndexSetTooSmall(usize),
    #[error("stage {k} out of range 1..={n}")]
    StageOutOfRange { k: usize, n: usize },
    #[error("binary code is empty")]
    EmptyCode,
    #[error("binary code has length {actual}, expected {expected}")]
    CodeLengthMismatch { expected: usize, actual: usize },
    #[error("invalid binary code character {0:?}")]
    InvalidCodeChar(char),
    #[error("relation is not a partial order: ({0}, {1}) and ({1}, {0}) both hold")]
    NotPartialOrder(usize, usize),
    #[error("identity labeling is not a linear extension: {0} <= {1} in the poset")]
    NotLinearExtension(usize, usize),
    #[error("fan dimension must be positive")]
    ZeroDimension,
    #[error("ray {index} has length {actual}, expected {expected}")]
    RayDimension { index: usize, expected: usize, actual: usize },
    #[error("ray {0} is the zero vector")]
    ZeroRay(usize),
    #[error("ray {0} is not primitive")]
    NonPrimitiveRay(usize),
    #[error("rays {0} and {1} coincide")]
    DuplicateRay(usize, usize),
    #[error("cone {cone} has {actual} rays, expected {expected}")]
    ConeSize { cone: usize, expected: usize, actual: usize },
    #[error("cone {cone} refers to missing ray {ray}")]
    ConeRayOutOfRange { cone: usize, ray: usize },
    #[error("cone {0} repeats a ray")]
    ConeRepeatsRay(usize),
    #[error("cones {0} and {1} coincide")]
    DuplicateCone(usize, usize),
    #[error("fan has no maximal cones")]
    NoCones,
    #[error("degenerate cone {0}: its rays are linearly dependent")]
    DegenerateCone(usize),
    #[error("fan is not complete")]
    NotComplete,
    #[error("not crosspolytope combinatorics: {0}")]
    NotCrosspolytope(String),
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("isomorphism search is limited to dimension 6, got {0}")]
    IsomorphismSearchTooLarge(usize),
    #[error("support function value for a({i},{gamma}) missing")]
    MissingSupportValue { i: usize, gamma: u8 },
    #[error("support function value for a({i},{gamma}) given with conflicting values")]
    ConflictingSupportValue { i: usize, gamma: u8 },
    #[error("not linear on cone {cone}: no integral vector reproduces the values")]
    NotSupportFunction { cone: usize },
    #[error("support function belongs to a different fan")]
    SupportFunctionMismatch,
    #[error("pair {0} is not a zero-sum pair")]
    NotZeroSumPair(usize),
    #[error("pair index {0} out of range")]
    PairOutOfRange(usize),
    #[error("classes live in rings of different rank: {0} vs {1}")]
    MismatchedRing(usize, usize),
    #[error("polynomial has {actual} variables, ring has {expected}")]
    PolynomialArity { expected: usize, actual: usize },
    #[error("rank {0} exceeds the supported 32 generators")]
    RankTooLarge(usize),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn check_stage(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        Err(Error::StageOutOfRange { k, n })
    } else {
        Ok(())
    }
}

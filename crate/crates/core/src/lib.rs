//! Bott towers as smooth projective toric varieties.
//!
//! Everything here is exact integer combinatorics over arbitrary-precision
//! integers. The crate is `no_std` and only needs `alloc`; file formats,
//! the command line and rendering live in the `bott` companion crate.
//!
//! Indexing conventions used throughout:
//!
//! * tower stages `i, j, l` (the indices of `c(i, j)`, of binary-code bits and
//!   of generators `a_{i,γ}`) are **1-based**, as in the mathematics;
//! * ray indices, cone indices, pair indices and matrix rows/columns are
//!   **0-based**. The generator `a_{i,γ}` of a [`BottFan`] has ray index
//!   `2(i - 1) + γ`.

#![no_std]

extern crate alloc;

pub mod bott;
pub mod bundles;
pub mod charts;
pub mod classify;
pub mod code;
pub mod cohomology;
pub mod error;
pub mod fan;
pub mod linalg;
pub mod poset;
pub mod sample;
pub mod sequence;

pub use bott::{
    bott_matrix, bott_number, bott_number_moebius, c_matrix, lemma_identities, TriangularMatrix,
};
pub use bundles::{
    canonical_lambda, extend_sequence, hk_support, lambda_perp, quotient_presentation,
    support_function, tangent_splitting, xi_bundle, CharacterBundle, QuotientPresentation,
    SupportFunctionData,
};
pub use charts::{chart, chart_ring, dual_generators, index_sets, prefix_set, transition, DualChart, LaurentMonomial};
pub use classify::{
    classify_with_seed, product_of_lines, Witness,
    classify, crosspolytope_check, find_opposite_pair, project, Classification, Rejection,
    RejectionCode,
};
pub use code::BinaryCode;
pub use cohomology::{CohomologyClass, CohomologyRing, Polynomial, ReductionOrder, RingPresentation};
pub use error::{Error, Result};
pub use fan::{
    apply_unimodular, build_fan, fans_isomorphic, is_complete, is_fano, is_smooth,
    lift_with_support_function, primitive_collections, BottFan, Fan, FanIsomorphism, GeneralFan,
    UnimodularMap,
};
pub use linalg::{Int, IntMatrix, Vector};
pub use poset::Poset;
pub use sequence::{IndexSet, IntegralSequence};

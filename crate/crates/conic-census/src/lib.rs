//! Census of everywhere-locally-soluble diagonal plane conics over bounded
//! coefficient boxes, together with the exact local identities and the
//! Euler-product leading constants the counts converge to.
//!
//! The crate is organized around the pipeline:
//!
//! * [`arith`] — smallest-prime-factor sieve, bulk factorization, Jacobi
//!   symbols and the small multiplicative functions;
//! * [`hilbert`] — Hilbert symbols at every place of Q and the product-formula
//!   self-check;
//! * [`conic`] — solubility of diagonal ternary conics over each completion
//!   and over Q, with a Holzer-bounded rational-point oracle;
//! * [`detector`] — the exact detector identities converting solubility into
//!   Hilbert/Jacobi-symbol sums, and the M/E decomposition;
//! * [`census`] — the parallel counting loops;
//! * [`constants`] — exact local densities and the leading-constant
//!   evaluators.

pub mod arith;
pub mod census;
pub mod conic;
pub mod constants;
pub mod detector;
pub mod error;
pub mod hilbert;
pub mod verify;

pub use arith::{factor, jacobi, FactorSieve, Factorization};
pub use census::{
    count_all_conics, count_generalized, count_norm_form, count_primitive_conics,
    count_two_squares, CountRecord, FamilyParams, HomogeneousPoly,
};
pub use conic::{
    norm_representable, rational_point_oracle, reduce, soluble_at, soluble_at_2_congruence,
    soluble_q, DiagonalConic, ReducedConic,
};
pub use detector::{
    detector_jacobi_sum, detector_lhs, me_decomposition_check, reciprocity_rearrangement_check,
    DetectorInput, RearrangementInput,
};
pub use error::{Error, Result};
pub use hilbert::{hilbert, hilbert_product_check, Place};

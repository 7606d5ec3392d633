//! Rank-2 tensors `φ: E^{⊗s} → M` over ℙ¹ with `E = O(a) ⊕ O(b)` split.
//!
//! Everything is in the affine coordinate `x` of ℙ¹: a section of `O(k)` is
//! a polynomial of degree at most `k`. A line subbundle is given by a
//! coprime section `(p, q)` of `E ⊗ L^{-1}`, and its degree is recovered
//! from the degrees of `p` and `q`.

mod bundle;
mod stability;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use bundle::{validate_tensor, LineSubbundle, Rank2Tensor, RawTensor, SplitBundle};
pub use stability::{
    candidate_sections, destabilizing_value, epsilon_both, epsilon_of, hn_from_report, hn_subsheaf, k_polynomial,
    stability, stability_with_jobs, Candidate, CorrectedPolys, HnResult, StabilityReport, Verdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("coefficient a_{index} has degree {degree}, above its bound {bound}")]
    DegreeMismatch { index: usize, degree: usize, bound: i64 },
    #[error("the tensor is identically zero")]
    ZeroTensor,
    #[error("expected {expected} coefficients, found {found}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("tensor degree s must be positive")]
    ZeroDegree,
    #[error("tau must be positive")]
    NonpositiveTau,
    #[error("delta must be nonzero with positive leading coefficient")]
    InvalidDelta,
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("the tensor is not unstable")]
    NotUnstable,
    #[error("{count} candidates tie at the maximal value (complete search: {complete})")]
    TieAnomaly { count: usize, complete: bool },
    #[error("candidate search incomplete: the form has factors without roots in Q(x)")]
    IncompleteSearch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

//! Weighted filtrations, the envelope maximizer of `μ_v`, and the Kempf
//! function of a filtration of section spaces.

pub mod envelope;
pub mod graph;
pub mod multi_index;
pub mod signed;

use thiserror::Error;

use crate::algebra::Rational;

pub use envelope::{envelope_maximize, primitive_direction, EnvelopeResult, WeightedVector};
pub use graph::{build_graph, kempf_function, kempf_gamma, FiltrationData, FiltrationGraph, KempfParameters};
pub use multi_index::{
    all_multi_indexes, epsilon_from_index, epsilon_from_oracle, gamma_coordinate, mu_closed_form,
    MultiIndexEpsilon,
};
pub use signed::SignedSquare;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KempfError {
    #[error("empty input")]
    Empty,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("weight {index} is not positive")]
    NonpositiveWeight { index: usize },
    #[error("the value vector is zero")]
    ZeroVector,
    #[error("weighted sum of values is {balance}, expected 0")]
    Unbalanced { balance: Rational },
    #[error("ranks must be positive and nondecreasing")]
    InvalidRanks,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("weight n_{index} is not positive")]
    InvalidWeights { index: usize },
    #[error("the tensor vanishes on the all-top multi-index")]
    DegenerateTensor,
}

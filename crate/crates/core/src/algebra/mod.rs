//! Exact arithmetic: ℚ, ℚ[x], binary forms over ℚ[x], and the factorization
//! machinery the stability code needs.

pub mod binary_form;
pub mod bivariate;
pub mod factor;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod roots;

use thiserror::Error;

pub use binary_form::{fiber_root_multiplicity, BinaryForm};
pub use bivariate::TPoly;
pub use factor::{divisors, factor_rational, rational_roots, squarefree_decompose, Factored};
pub use parse::parse_poly;
pub use poly::{eventual_compare, poly_gcd, Degree, EventualOrder, RationalPoly};
pub use rational::{parse_rational, rat, ratio, Rational};
pub use roots::{rational_function_roots, FunctionFieldRoots, FunctionRoot};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("a binary form needs at least one coefficient")]
    EmptyForm,
    #[error("polar derivative of a degree-0 form")]
    DegreeZero,
    #[error("polar derivative in the zero direction")]
    ZeroDirection,
}

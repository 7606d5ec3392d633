//! The degree-`s` covering cut out by a tensor inside the ruled surface
//! `ℙ(E)`, seen through intersection numbers of sections.
//!
//! After twisting `E` so that its largest summand is `O(0)`, the surface has
//! invariant `e = −deg E'` and a section `D` from a subbundle of degree
//! `deg σ` meets the minimal section `C₀` in `C₀·D = −e − deg σ`.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebra::{rat, squarefree_decompose, Rational};
use crate::tensor::{
    candidate_sections, stability, LineSubbundle, Rank2Tensor, TensorError, Verdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoveringError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("every coefficient vanishes at x = {x0}")]
    DegenerateFiber { x0: Rational },
}

/// A tensor twisted so that `max(a, b) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedTensor {
    pub tensor: Rank2Tensor,
    /// `E' = E ⊗ O(twist)`.
    pub twist: i64,
}

impl NormalizedTensor {
    /// `e = −deg E' ≥ 0`.
    pub fn e(&self) -> i64 {
        -self.tensor.bundle().degree()
    }
}

pub fn normalize(t: &Rank2Tensor) -> NormalizedTensor {
    let k = -t.bundle().a();
    NormalizedTensor {
        tensor: t.twisted(k),
        twist: k,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionDivisor {
    pub section: LineSubbundle,
    pub deg_sigma: i64,
    pub c0_dot_d: i64,
    /// `s − ε(L)`: branches of the covering lying along `D`.
    pub branches: u32,
}

/// Intersection data for a subbundle of the normalized bundle.
pub fn intersection_numbers(l: &LineSubbundle, n: &NormalizedTensor) -> Result<SectionDivisor, TensorError> {
    let eps = crate::tensor::epsilon_of(l, &n.tensor)?;
    Ok(section_divisor(l, eps, n))
}

fn section_divisor(l: &LineSubbundle, eps: u32, n: &NormalizedTensor) -> SectionDivisor {
    SectionDivisor {
        section: l.clone(),
        deg_sigma: l.degree(),
        c0_dot_d: -n.e() - l.degree(),
        branches: n.tensor.s() as u32 - eps,
    }
}

/// `−2 C₀·D − e + τ(s − 2ε(D))`.
pub fn section_value(d: &SectionDivisor, e: i64, s: usize, tau: &Rational) -> Rational {
    let eps = s as i64 - d.branches as i64;
    rat(-2 * d.c0_dot_d - e) + tau * rat(s as i64 - 2 * eps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberVerdict {
    Stable,
    Semistable,
    Unstable,
}

impl FiberVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            FiberVerdict::Stable => "stable",
            FiberVerdict::Semistable => "semistable",
            FiberVerdict::Unstable => "unstable",
        }
    }
}

/// The `s` points of a fiber as a configuration on ℙ¹.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberSample {
    pub x0: Rational,
    /// Largest multiplicity of a point over ℂ.
    pub max_multiplicity: u32,
    pub verdict: FiberVerdict,
}

impl FiberSample {
    pub fn unstable(&self) -> bool {
        self.verdict == FiberVerdict::Unstable
    }
}

/// Classifies the fiber at `x = x0`: unstable iff some point has
/// multiplicity above `s/2`, semistable iff the maximum is exactly `s/2`.
pub fn fiber_point_stability(t: &Rank2Tensor, x0: &Rational) -> Result<FiberSample, CoveringError> {
    let coeffs = t.form().specialize(x0);
    let s = t.s();
    let Some(top) = coeffs.iter().rposition(|c| !c.is_zero()) else {
        return Err(CoveringError::DegenerateFiber { x0: x0.clone() });
    };
    let at_infinity = (s - top) as u32;
    let f = crate::algebra::RationalPoly::new(coeffs);
    let finite = squarefree_decompose(&f)
        .map_err(TensorError::from)?
        .factors
        .iter()
        .map(|(_, m)| *m)
        .max()
        .unwrap_or(0);
    let mu = at_infinity.max(finite);
    let twice = 2 * mu as usize;
    let verdict = if twice > s {
        FiberVerdict::Unstable
    } else if twice == s {
        FiberVerdict::Semistable
    } else {
        FiberVerdict::Stable
    };
    Ok(FiberSample {
        x0: x0.clone(),
        max_multiplicity: mu,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringReport {
    pub verdict: Verdict,
    pub hn_section: Option<SectionDivisor>,
    pub value: Rational,
    pub e: i64,
    pub twist: i64,
    /// Every candidate section with its value.
    pub sections: Vec<(SectionDivisor, Rational)>,
    pub complete: bool,
    pub fiber_samples: Vec<FiberSample>,
}

/// Normalizes, evaluates every candidate section through intersection
/// numbers, and samples the given fibers.
pub fn covering_stability(
    t: &Rank2Tensor,
    tau: &Rational,
    fibers: &[Rational],
) -> Result<CoveringReport, CoveringError> {
    if !tau.is_positive() {
        return Err(TensorError::NonpositiveTau.into());
    }
    let n = normalize(t);
    let e = n.e();
    let (cands, complete) = candidate_sections(&n.tensor)?;
    let sections: Vec<(SectionDivisor, Rational)> = cands
        .iter()
        .map(|(l, eps)| {
            let d = section_divisor(l, *eps, &n);
            let v = section_value(&d, e, n.tensor.s(), tau);
            (d, v)
        })
        .collect();
    let value = sections.iter().map(|(_, v)| v).max().cloned().expect("nonempty");
    let verdict = if value.is_positive() {
        Verdict::Unstable
    } else if value.is_zero() {
        Verdict::Semistable
    } else {
        Verdict::Stable
    };
    let hn_section = (verdict == Verdict::Unstable)
        .then(|| sections.iter().find(|(_, v)| *v == value).map(|(d, _)| d.clone()))
        .flatten();
    let fiber_samples = fibers
        .iter()
        .map(|x0| fiber_point_stability(t, x0))
        .collect::<Result<_, _>>()?;
    Ok(CoveringReport {
        verdict,
        hn_section,
        value,
        e,
        twist: n.twist,
        sections,
        complete,
        fiber_samples,
    })
}

/// The covering verdict must match the bundle-side verdict; used by tests
/// and the self-check.
pub fn covering_agrees(t: &Rank2Tensor, tau: &Rational) -> Result<bool, CoveringError> {
    let cov = covering_stability(t, tau, &[])?;
    let bun = stability(t, tau)?;
    let witness = cov.hn_section.as_ref().map(|d| d.section.twisted(-cov.twist));
    Ok(cov.verdict == bun.verdict
        && cov.value == bun.value
        && (bun.verdict != Verdict::Unstable || witness == bun.witness))
}

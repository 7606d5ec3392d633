use std::fmt;

use super::TensorError;
use crate::algebra::{poly_gcd, BinaryForm, Degree, RationalPoly};

/// `E = O(a) ⊕ O(b)` with `a ≥ b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SplitBundle {
    a: i64,
    b: i64,
}

impl SplitBundle {
    /// Orders the summands so that `a ≥ b`.
    pub fn new(a: i64, b: i64) -> Self {
        SplitBundle {
            a: a.max(b),
            b: a.min(b),
        }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn degree(&self) -> i64 {
        self.a + self.b
    }

    pub fn rank(&self) -> u32 {
        2
    }

    pub fn twisted(&self, k: i64) -> Self {
        SplitBundle {
            a: self.a + k,
            b: self.b + k,
        }
    }
}

impl fmt::Display for SplitBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({}) + O({})", self.a, self.b)
    }
}

/// Saturated line subbundle `O(c) → E` given by the section `(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LineSubbundle {
    p: RationalPoly,
    q: RationalPoly,
    c: i64,
}

impl LineSubbundle {
    /// Saturates and normalizes `(p, q)`: the common factor is removed, `q`
    /// is made monic, and `(p, 0)` becomes `(1, 0)`.
    pub fn new(p: RationalPoly, q: RationalPoly, bundle: &SplitBundle) -> Result<Self, TensorError> {
        if p.is_zero() && q.is_zero() {
            return Err(TensorError::InvalidSection("both components are zero".into()));
        }
        let g = poly_gcd(&p, &q);
        let (mut p, mut q) = (p.exact_div(&g).unwrap(), q.exact_div(&g).unwrap());
        if q.is_zero() {
            p = RationalPoly::one();
        } else {
            let lc = q.leading_coeff();
            p = p.scale(&lc.recip());
            q = q.monic();
        }
        let c = saturated_degree(&p, &q, bundle);
        Ok(LineSubbundle { p, q, c })
    }

    /// The first summand `O(a)`.
    pub fn first_factor(bundle: &SplitBundle) -> Self {
        LineSubbundle {
            p: RationalPoly::one(),
            q: RationalPoly::zero(),
            c: bundle.a,
        }
    }

    /// The second summand `O(b)`.
    pub fn second_factor(bundle: &SplitBundle) -> Self {
        LineSubbundle {
            p: RationalPoly::zero(),
            q: RationalPoly::one(),
            c: bundle.b,
        }
    }

    pub fn p(&self) -> &RationalPoly {
        &self.p
    }

    pub fn q(&self) -> &RationalPoly {
        &self.q
    }

    /// Degree of the subbundle.
    pub fn degree(&self) -> i64 {
        self.c
    }

    /// `L ⊗ O(k)` inside `E ⊗ O(k)`: same section, degree shifted.
    pub fn twisted(&self, k: i64) -> Self {
        LineSubbundle {
            c: self.c + k,
            ..self.clone()
        }
    }
}

impl fmt::Display for LineSubbundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) deg {}", self.p, self.q, self.c)
    }
}

/// `c = min(a − deg p, b − deg q)`, where a zero component imposes no bound.
fn saturated_degree(p: &RationalPoly, q: &RationalPoly, bundle: &SplitBundle) -> i64 {
    let from = |d: Degree, bound: i64| d.subtracted_from(bound).unwrap_or(i64::MAX);
    from(p.degree(), bundle.a).min(from(q.degree(), bundle.b))
}

/// Unchecked input: `coeffs[i]` multiplies `X0^i X1^(s-i)` and `X0` is the
/// coordinate of the `O(a)` summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTensor {
    pub a: i64,
    pub b: i64,
    pub s: usize,
    pub m_degree: i64,
    pub coeffs: Vec<RationalPoly>,
}

/// A checked tensor with `a ≥ b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank2Tensor {
    bundle: SplitBundle,
    s: usize,
    m_degree: i64,
    form: BinaryForm,
    swapped: bool,
}

/// Checks the coefficient degree bounds `deg a_i ≤ M − i a − (s−i) b` and
/// orders the summands so that `a ≥ b`, reversing the form if it swaps them.
pub fn validate_tensor(raw: &RawTensor) -> Result<Rank2Tensor, TensorError> {
    if raw.s == 0 {
        return Err(TensorError::ZeroDegree);
    }
    if raw.coeffs.len() != raw.s + 1 {
        return Err(TensorError::CoefficientCount {
            expected: raw.s + 1,
            found: raw.coeffs.len(),
        });
    }
    if raw.coeffs.iter().all(RationalPoly::is_zero) {
        return Err(TensorError::ZeroTensor);
    }
    for (i, ai) in raw.coeffs.iter().enumerate() {
        let bound = coefficient_bound(raw.m_degree, raw.a, raw.b, raw.s, i);
        if let Some(d) = ai.degree().finite() {
            if (d as i64) > bound {
                return Err(TensorError::DegreeMismatch {
                    index: i,
                    degree: d,
                    bound,
                });
            }
        }
    }
    let form = BinaryForm::new(raw.coeffs.clone())?;
    let swapped = raw.a < raw.b;
    Ok(Rank2Tensor {
        bundle: SplitBundle::new(raw.a, raw.b),
        s: raw.s,
        m_degree: raw.m_degree,
        form: if swapped { form.reversed() } else { form },
        swapped,
    })
}

fn coefficient_bound(m_degree: i64, a: i64, b: i64, s: usize, i: usize) -> i64 {
    m_degree - i as i64 * a - (s - i) as i64 * b
}

impl Rank2Tensor {
    pub fn bundle(&self) -> &SplitBundle {
        &self.bundle
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn m_degree(&self) -> i64 {
        self.m_degree
    }

    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    /// True when the input listed the summands with `a < b`.
    pub fn swapped(&self) -> bool {
        self.swapped
    }

    /// Degree bound for `a_i` in normalized coordinates.
    pub fn bound(&self, i: usize) -> i64 {
        coefficient_bound(self.m_degree, self.bundle.a, self.bundle.b, self.s, i)
    }

    /// `(E ⊗ O(k), φ)` with `M ⊗ O(sk)`; the coefficient polynomials are unchanged.
    pub fn twisted(&self, k: i64) -> Self {
        Rank2Tensor {
            bundle: self.bundle.twisted(k),
            m_degree: self.m_degree + self.s as i64 * k,
            ..self.clone()
        }
    }

    /// The checked data in normalized coordinates.
    pub fn to_raw(&self) -> RawTensor {
        RawTensor {
            a: self.bundle.a,
            b: self.bundle.b,
            s: self.s,
            m_degree: self.m_degree,
            coeffs: self.form.coeffs().to_vec(),
        }
    }

    /// Maps a section given in input coordinates to normalized coordinates.
    pub fn section(&self, p: RationalPoly, q: RationalPoly) -> Result<LineSubbundle, TensorError> {
        if self.swapped {
            LineSubbundle::new(q, p, &self.bundle)
        } else {
            LineSubbundle::new(p, q, &self.bundle)
        }
    }

    /// Whether `F` is not an `s`-th power of a linear form over ℚ(x), i.e.
    /// no direction has multiplicity `s`.
    pub fn nondegenerate(&self) -> bool {
        let s = self.s as u32;
        match crate::algebra::rational_function_roots(&self.form) {
            Ok(r) => r.roots.iter().all(|root| root.multiplicity < s),
            Err(_) => false,
        }
    }
}

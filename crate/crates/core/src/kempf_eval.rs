//! One-step filtrations `H⁰(L(m)) ⊂ H⁰(E(m))` of a tensor over ℙ¹ and the
//! Kempf function on them, next to the closed form
//! `m^{n/2+1} · r / (√P (P − sδ)) · K(m)`.
//!
//! The Kempf function normalizes `Γ` by `Σ dim V^i Γ_i = 0` while the closed
//! form uses `Σ r^i γ_i = 0`; the two differ by the positive factor
//! `P / (r √(P_L P_{E/L}))`, so the check is
//! `μ² · r² · P_L · P_{E/L} = closed² · P²` with equal signs.

use num_traits::Signed;
use thiserror::Error;

use crate::algebra::{rat, Rational, RationalPoly};
use crate::kempf::{
    build_graph, envelope_maximize, kempf_function, FiltrationData, KempfError, KempfParameters,
    SignedSquare,
};
use crate::tensor::{
    candidate_sections, hn_subsheaf, k_polynomial, LineSubbundle, Rank2Tensor, TensorError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Kempf(#[from] KempfError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KempfRow {
    pub section: LineSubbundle,
    pub epsilon: u32,
    /// `h⁰(L(m))` and `h⁰(E/L(m))`.
    pub dims: (Rational, Rational),
    /// `m^{n/2+1} · μ(V_•, n_•)`.
    pub kempf: SignedSquare,
    /// `μ_v(Γ_v)` from the envelope of the graph.
    pub envelope: SignedSquare,
    /// `K(m)`.
    pub k_value: Rational,
    /// `m^{n/2+1} · r / (√P (P − sδ)) · K(m)`.
    pub closed_form: SignedSquare,
    pub proportional: bool,
    pub envelope_agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KempfEvaluation {
    pub m: i64,
    pub hilbert: Rational,
    pub rows: Vec<KempfRow>,
    /// Index into `rows` of the HN subbundle, for unstable tensors.
    pub witness: Option<usize>,
}

/// Evaluates every candidate subbundle at `m` with weight `n1`. The HN
/// subbundle is determined with `τ = δ(m)`.
pub fn kempf_eval(
    t: &Rank2Tensor,
    delta: &RationalPoly,
    m: i64,
    n1: &Rational,
) -> Result<KempfEvaluation, EvalError> {
    let r = 2u32;
    let s = t.s() as u32;
    let d = t.bundle().degree();
    let hilbert = RationalPoly::from_i64s(&[d + 2, 2]);
    let params = KempfParameters::new(r, s, delta.clone(), hilbert.clone(), 1)?;
    params.ratio_at(m)?;
    let mm = rat(m);
    let p = hilbert.eval(&mm);
    let delta_m = delta.eval(&mm);
    let denom = &p - &delta_m * rat(s as i64);
    let m_cubed = &mm * &mm * &mm;

    let (sections, _) = candidate_sections(t)?;
    let mut rows = Vec::with_capacity(sections.len());
    for (l, eps) in sections {
        let p1 = rat(m + l.degree() + 1);
        let p2 = &p - &p1;
        if !p1.is_positive() || !p2.is_positive() {
            return Err(KempfError::InvalidParameters(format!(
                "m = {m} is too small for the subbundle {l}"
            ))
            .into());
        }
        let data = FiltrationData::new(vec![p1.clone(), p2.clone()], vec![1, 1], vec![eps, s - eps])?;
        let kempf = kempf_function(&data, std::slice::from_ref(n1), &params, m)?.scale_by_root(&m_cubed);
        let envelope = match build_graph(&data, &params, m)?.weighted_vector() {
            Ok(wv) => envelope_maximize(&wv).mu,
            Err(KempfError::ZeroVector) => SignedSquare::zero(),
            Err(e) => return Err(e.into()),
        };
        let k_value = k_polynomial(&l, t, delta, 0)?.eval(&mm);
        let closed_form = SignedSquare::from_ratio_over_root(
            &(rat(r as i64) * &k_value),
            &(&p * &denom * &denom),
        )
        .scale_by_root(&m_cubed);
        let r2 = rat((r * r) as i64);
        let proportional = kempf.sign() == closed_form.sign()
            && kempf.square() * &r2 * &p1 * &p2 == closed_form.square() * &p * &p;
        let envelope_agrees = if kempf.is_positive() {
            envelope == kempf
        } else {
            envelope.sign() == 0
        };
        rows.push(KempfRow {
            section: l,
            epsilon: eps,
            dims: (p1, p2),
            kempf,
            envelope,
            k_value,
            closed_form,
            proportional,
            envelope_agrees,
        });
    }
    let witness = if delta_m.is_positive() {
        match hn_subsheaf(t, &delta_m) {
            Ok(hn) => rows.iter().position(|row| row.section == hn.subbundle),
            Err(TensorError::NotUnstable) | Err(TensorError::TieAnomaly { .. }) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    Ok(KempfEvaluation {
        m,
        hilbert: p,
        rows,
        witness,
    })
}

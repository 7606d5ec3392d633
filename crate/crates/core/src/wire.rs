//! JSON wire format. Rationals travel as strings `"p/q"` (integers may also
//! be given as JSON integers on input); objects serialize with sorted keys.

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::rational::to_wire;
use crate::algebra::{parse_poly, parse_rational, AlgebraError, Rational, RationalPoly};
use crate::coverings::{CoveringReport, FiberSample, SectionDivisor};
use crate::kempf::{EnvelopeResult, KempfError, SignedSquare, WeightedVector};
use crate::kempf_eval::{KempfEvaluation, KempfRow};
use crate::tensor::{
    Candidate, HnResult, LineSubbundle, Rank2Tensor, RawTensor, StabilityReport, TensorError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WireError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("missing field {0:?}")]
    Missing(&'static str),
    #[error("field {field:?}: {reason}")]
    Invalid { field: String, reason: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Kempf(#[from] KempfError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

fn invalid(field: impl Into<String>, reason: impl Into<String>) -> WireError {
    WireError::Invalid {
        field: field.into(),
        reason: reason.into(),
    }
}

pub fn parse_json(text: &str) -> Result<Value, WireError> {
    serde_json::from_str(text).map_err(|e| WireError::Json(e.to_string()))
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render(v: &Value) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("values always serialize");
    out.push('\n');
    out
}

fn field<'a>(obj: &'a Value, name: &'static str) -> Result<&'a Value, WireError> {
    obj.get(name).ok_or(WireError::Missing(name))
}

pub fn rational_from(v: &Value, name: &str) -> Result<Rational, WireError> {
    match v {
        Value::String(s) => Ok(parse_rational(s)?),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(parse_rational(&n.to_string())?),
        _ => Err(invalid(name, "expected an exact rational string or an integer")),
    }
}

fn poly_from(v: &Value, name: &str) -> Result<RationalPoly, WireError> {
    match v {
        Value::String(s) => Ok(parse_poly(s)?),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(parse_poly(&n.to_string())?),
        _ => Err(invalid(name, "expected a polynomial string")),
    }
}

fn int_from(v: &Value, name: &str) -> Result<i64, WireError> {
    match v {
        Value::Number(n) => n.as_i64().ok_or_else(|| invalid(name, "expected an integer")),
        Value::String(s) => s.trim().parse().map_err(|_| invalid(name, "expected an integer")),
        _ => Err(invalid(name, "expected an integer")),
    }
}

fn rational_list(v: &Value, name: &str) -> Result<Vec<Rational>, WireError> {
    v.as_array()
        .ok_or_else(|| invalid(name, "expected an array"))?
        .iter()
        .map(|x| rational_from(x, name))
        .collect()
}

fn q(x: &Rational) -> Value {
    Value::String(to_wire(x))
}

fn qs(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(q).collect())
}

fn poly(p: &RationalPoly) -> Value {
    Value::String(p.to_string())
}

/// `{"b": [...], "v": [...]}`.
pub fn graph_from_json(v: &Value) -> Result<WeightedVector, WireError> {
    let b = rational_list(field(v, "b")?, "b")?;
    let vv = rational_list(field(v, "v")?, "v")?;
    Ok(WeightedVector::new(b, vv)?)
}

pub fn envelope_to_json(r: &EnvelopeResult) -> Value {
    json!({
        "gamma": qs(&r.gamma),
        "mu_squared": q(r.mu.square()),
        "sign": r.mu.sign(),
        "envelope": r.envelope.iter().map(|(b, w)| json!([q(b), q(w)])).collect::<Vec<_>>(),
    })
}

/// Parsed tensor document: the tensor and the optional `tau` and `fibers`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorInput {
    pub raw: RawTensor,
    pub tau: Option<Rational>,
    pub fibers: Vec<Rational>,
}

/// Accepts `coeffs` either as polynomial strings listed from `i = s` down to
/// `i = 0`, or as keyed objects `{"i": 2, "poly": "1"}` (absent keys are 0).
pub fn tensor_from_json(v: &Value) -> Result<TensorInput, WireError> {
    let bundle = field(v, "bundle")?;
    let a = int_from(field(bundle, "a")?, "bundle.a")?;
    let b = int_from(field(bundle, "b")?, "bundle.b")?;
    let s = int_from(field(v, "s")?, "s")?;
    if s < 1 {
        return Err(invalid("s", "must be at least 1"));
    }
    let s = s as usize;
    let m_degree = int_from(field(v, "M_degree")?, "M_degree")?;
    let list = field(v, "coeffs")?
        .as_array()
        .ok_or_else(|| invalid("coeffs", "expected an array"))?;

    let keyed = list.iter().any(Value::is_object);
    let coeffs = if keyed {
        let mut out: Vec<Option<RationalPoly>> = vec![None; s + 1];
        for entry in list {
            let i = int_from(field(entry, "i")?, "coeffs.i")?;
            if i < 0 || i as usize > s {
                return Err(invalid("coeffs.i", format!("index {i} outside 0..={s}")));
            }
            let slot = &mut out[i as usize];
            if slot.is_some() {
                return Err(invalid("coeffs.i", format!("index {i} given twice")));
            }
            *slot = Some(poly_from(field(entry, "poly")?, "coeffs.poly")?);
        }
        out.into_iter().map(Option::unwrap_or_default).collect()
    } else {
        let mut out = list
            .iter()
            .map(|c| poly_from(c, "coeffs"))
            .collect::<Result<Vec<_>, _>>()?;
        out.reverse();
        out
    };

    let tau = v.get("tau").map(|t| rational_from(t, "tau")).transpose()?;
    let fibers = match v.get("fibers") {
        Some(f) => rational_list(f, "fibers")?,
        None => Vec::new(),
    };
    Ok(TensorInput {
        raw: RawTensor {
            a,
            b,
            s,
            m_degree,
            coeffs,
        },
        tau,
        fibers,
    })
}

/// Canonical keyed form of a raw tensor, zero coefficients omitted.
pub fn raw_tensor_to_json(raw: &RawTensor) -> Value {
    let coeffs: Vec<Value> = raw
        .coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| json!({"i": i, "poly": poly(c)}))
        .collect();
    json!({
        "bundle": {"a": raw.a, "b": raw.b},
        "s": raw.s,
        "M_degree": raw.m_degree,
        "coeffs": coeffs,
    })
}

pub fn tensor_to_json(t: &Rank2Tensor) -> Value {
    let mut v = raw_tensor_to_json(&t.to_raw());
    v["swapped"] = Value::Bool(t.swapped());
    v
}

pub fn section_to_json(l: &LineSubbundle) -> Value {
    json!({"p": poly(l.p()), "q": poly(l.q()), "degree": l.degree()})
}

fn candidate_to_json(c: &Candidate) -> Value {
    json!({
        "section": section_to_json(&c.section),
        "epsilon": c.epsilon,
        "value": q(&c.value),
        "root": c.root,
    })
}

pub fn stability_to_json(r: &StabilityReport) -> Value {
    json!({
        "verdict": r.verdict.as_str(),
        "value": q(&r.value),
        "tau": q(&r.tau),
        "witness": r.witness.as_ref().map(section_to_json),
        "candidates": r.candidates.iter().map(candidate_to_json).collect::<Vec<_>>(),
        "complete": r.complete,
        "maximizers": r.maximizers,
        "nondegenerate": r.nondegenerate,
    })
}

pub fn hn_to_json(h: &HnResult) -> Value {
    let c = &h.corrected;
    json!({
        "subbundle": section_to_json(&h.subbundle),
        "epsilon": h.epsilon,
        "value": q(&h.value),
        "corrected": {
            "p_bar_e": poly(&c.p_bar_e),
            "p_bar_l": poly(&c.p_bar_l),
            "p_bar_quotient": poly(&c.p_bar_quotient),
            "excess": poly(&c.excess()),
        },
    })
}

fn divisor_to_json(d: &SectionDivisor) -> Value {
    json!({
        "section": section_to_json(&d.section),
        "deg_sigma": d.deg_sigma,
        "c0_dot_d": d.c0_dot_d,
        "branches": d.branches,
    })
}

pub fn fiber_to_json(f: &FiberSample) -> Value {
    json!({
        "x": q(&f.x0),
        "max_multiplicity": f.max_multiplicity,
        "verdict": f.verdict.as_str(),
    })
}

pub fn covering_to_json(r: &CoveringReport) -> Value {
    let sections: Vec<Value> = r
        .sections
        .iter()
        .map(|(d, v)| {
            let mut o = divisor_to_json(d);
            o["value"] = q(v);
            o
        })
        .collect();
    json!({
        "verdict": r.verdict.as_str(),
        "value": q(&r.value),
        "e": r.e,
        "twist": r.twist,
        "hn_section": r.hn_section.as_ref().map(divisor_to_json),
        "sections": sections,
        "complete": r.complete,
        "fibers": r.fiber_samples.iter().map(fiber_to_json).collect::<Vec<_>>(),
    })
}

fn signed_to_json(x: &SignedSquare) -> Value {
    json!({"sign": x.sign(), "square": q(x.square())})
}

fn kempf_row_to_json(r: &KempfRow) -> Value {
    json!({
        "section": section_to_json(&r.section),
        "epsilon": r.epsilon,
        "dims": [q(&r.dims.0), q(&r.dims.1)],
        "kempf": signed_to_json(&r.kempf),
        "envelope": signed_to_json(&r.envelope),
        "k_value": q(&r.k_value),
        "closed_form": signed_to_json(&r.closed_form),
        "proportional": r.proportional,
        "envelope_agrees": r.envelope_agrees,
    })
}

pub fn kempf_to_json(e: &KempfEvaluation) -> Value {
    json!({
        "m": e.m,
        "hilbert": q(&e.hilbert),
        "witness": e.witness,
        "rows": e.rows.iter().map(kempf_row_to_json).collect::<Vec<_>>(),
    })
}

//! `ε(L)`, the destabilizing value `2 deg L − deg E + τ(s − 2ε(L))`, and the
//! candidate search that decides stability and finds the HN subbundle.
//!
//! Why the candidate list suffices: a subbundle with `ε(L) < s` kills `F` in
//! its direction, so its section is a root of `F` over the function field.
//! A subbundle with `ε(L) = s` has value `2c − deg E − τs`, which only grows
//! with `c`; the largest `c` is `a` through `(1, 0)` when that direction is
//! not a root, and otherwise `b`, since `c > b` forces `q ≡ 0`.
//!
//! A root defined only over an extension of ℚ(x) is not listed. Its Galois
//! conjugates share its value, so by uniqueness of the maximizer it can
//! never be the unique destabilizing subbundle; it can only turn a "stable"
//! verdict into "semistable". Reports carry `complete = false` in that case.

use std::fmt;

use num_traits::{Signed, Zero};

use super::bundle::{LineSubbundle, Rank2Tensor};
use super::TensorError;
use crate::algebra::{rat, rational_function_roots, Rational, RationalPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Stable,
    Semistable,
    Unstable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Stable => "stable",
            Verdict::Semistable => "semistable",
            Verdict::Unstable => "unstable",
        }
    }

    fn from_value(v: &Rational) -> Self {
        if v.is_positive() {
            Verdict::Unstable
        } else if v.is_zero() {
            Verdict::Semistable
        } else {
            Verdict::Stable
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `(ε via iterated polarization, s − multiplicity of the linear factor)`.
pub fn epsilon_both(l: &LineSubbundle, t: &Rank2Tensor) -> Result<(u32, u32), TensorError> {
    let form = t.form();
    let polar = form
        .polar_order(l.p(), l.q())?
        .ok_or(TensorError::ZeroTensor)? as u32;
    let mult = form.root_multiplicity(l.p(), l.q());
    Ok((polar, t.s() as u32 - mult))
}

/// `ε(L)`: the largest `k` with `φ` nonzero on `L^{⊗k} ⊗ E^{⊗(s−k)}`.
pub fn epsilon_of(l: &LineSubbundle, t: &Rank2Tensor) -> Result<u32, TensorError> {
    let (polar, by_mult) = epsilon_both(l, t)?;
    assert_eq!(polar, by_mult, "polarization and factor multiplicity disagree for {l}");
    Ok(polar)
}

fn value_with(c: i64, deg: i64, s: usize, eps: u32, tau: &Rational) -> Rational {
    rat(2 * c - deg) + tau * rat(s as i64 - 2 * eps as i64)
}

/// `2 deg L − deg E + τ(s − 2ε(L))`.
pub fn destabilizing_value(l: &LineSubbundle, t: &Rank2Tensor, tau: &Rational) -> Result<Rational, TensorError> {
    if !tau.is_positive() {
        return Err(TensorError::NonpositiveTau);
    }
    let eps = epsilon_of(l, t)?;
    Ok(value_with(l.degree(), t.bundle().degree(), t.s(), eps, tau))
}

/// `K(m) = 2P_L − P_E + δ(m)(s − 2ε(L))` on a curve of genus `g`, where the
/// `m`-terms cancel and leave `(2c − d) + δ(m)(s − 2ε)`.
pub fn k_polynomial(
    l: &LineSubbundle,
    t: &Rank2Tensor,
    delta: &RationalPoly,
    genus: u32,
) -> Result<RationalPoly, TensorError> {
    if delta.is_zero() || !delta.leading_coeff().is_positive() {
        return Err(TensorError::InvalidDelta);
    }
    let eps = epsilon_of(l, t)?;
    let (pl, pe) = curve_hilbert(l.degree(), t.bundle().degree(), genus);
    let k = &(&pl.scale(&rat(2)) - &pe) + &delta.scale(&rat(t.s() as i64 - 2 * eps as i64));
    Ok(k)
}

/// `(P_L, P_E)` by Riemann–Roch: `P(m) = r m + d + r(1 − g)`.
fn curve_hilbert(c: i64, d: i64, genus: u32) -> (RationalPoly, RationalPoly) {
    let g = genus as i64;
    (
        RationalPoly::from_i64s(&[c + 1 - g, 1]),
        RationalPoly::from_i64s(&[d + 2 * (1 - g), 2]),
    )
}

/// One row of the candidate table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub section: LineSubbundle,
    pub epsilon: u32,
    pub value: Rational,
    /// False for the `ε = s` representative.
    pub root: bool,
}

/// Root sections of `F` over ℚ(x) with `ε = s − multiplicity`, then one
/// maximal-degree section with `ε = s`. The flag is false when `F` has
/// factors without roots in ℚ(x).
pub fn candidate_sections(t: &Rank2Tensor) -> Result<(Vec<(LineSubbundle, u32)>, bool), TensorError> {
    let form = t.form();
    let bundle = t.bundle();
    let s = t.s() as u32;
    let roots = rational_function_roots(form)?;
    let mut out: Vec<(LineSubbundle, u32)> = Vec::with_capacity(roots.roots.len() + 1);
    for r in &roots.roots {
        let l = LineSubbundle::new(r.p.clone(), r.q.clone(), bundle)?;
        out.push((l, s - r.multiplicity));
    }
    let is_root = |p: &RationalPoly, q: &RationalPoly| form.evaluate(p, q).is_zero();
    let top = LineSubbundle::first_factor(bundle);
    if !is_root(top.p(), top.q()) {
        out.push((top, s));
    } else {
        // constant sections (λ, 1) have degree b; λ runs 0, 1, −1, 2, −2, …
        let one = RationalPoly::one();
        let generic = (0i64..)
            .map(|k| if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) })
            .map(|lam| RationalPoly::constant(rat(lam)))
            .find(|p| !is_root(p, &one))
            .expect("a nonzero form has finitely many roots");
        out.push((LineSubbundle::new(generic, one, bundle)?, s));
    }
    Ok((out, roots.complete()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub verdict: Verdict,
    /// A maximizing candidate, present when the maximal value is ≥ 0.
    pub witness: Option<LineSubbundle>,
    pub value: Rational,
    pub candidates: Vec<Candidate>,
    pub complete: bool,
    /// Number of candidates attaining the maximal value.
    pub maximizers: usize,
    pub nondegenerate: bool,
    pub tau: Rational,
}

impl StabilityReport {
    /// True when more than one candidate attains a positive maximum.
    pub fn tie(&self) -> bool {
        self.verdict == Verdict::Unstable && self.maximizers > 1
    }

    /// Whether the verdict could change once roots over extensions of ℚ(x)
    /// are taken into account.
    pub fn incomplete(&self) -> bool {
        !self.complete && self.verdict != Verdict::Unstable
    }

    /// `Err(IncompleteSearch)` for an undecided report.
    pub fn require_complete(&self) -> Result<&Self, TensorError> {
        if self.incomplete() {
            Err(TensorError::IncompleteSearch)
        } else {
            Ok(self)
        }
    }
}

pub fn stability(t: &Rank2Tensor, tau: &Rational) -> Result<StabilityReport, TensorError> {
    stability_with_jobs(t, tau, 1)
}

/// As [`stability`], evaluating candidates on up to `jobs` threads. The
/// report does not depend on `jobs`.
pub fn stability_with_jobs(t: &Rank2Tensor, tau: &Rational, jobs: usize) -> Result<StabilityReport, TensorError> {
    if !tau.is_positive() {
        return Err(TensorError::NonpositiveTau);
    }
    let (sections, complete) = candidate_sections(t)?;
    let root_count = sections.len() - 1;
    let evaluate = |(i, (l, eps)): (usize, &(LineSubbundle, u32))| -> Result<Candidate, TensorError> {
        let computed = epsilon_of(l, t)?;
        assert_eq!(computed, *eps, "candidate ε disagrees with its root multiplicity");
        Ok(Candidate {
            value: value_with(l.degree(), t.bundle().degree(), t.s(), *eps, tau),
            section: l.clone(),
            epsilon: *eps,
            root: i < root_count,
        })
    };

    let jobs = jobs.max(1).min(sections.len());
    let candidates: Vec<Candidate> = if jobs <= 1 {
        sections.iter().enumerate().map(evaluate).collect::<Result<_, _>>()?
    } else {
        let chunk = sections.len().div_ceil(jobs);
        let indexed: Vec<_> = sections.iter().enumerate().collect();
        let parts: Vec<Result<Vec<Candidate>, TensorError>> = std::thread::scope(|scope| {
            let handles: Vec<_> = indexed
                .chunks(chunk)
                .map(|part| scope.spawn(move || part.iter().map(|&x| evaluate(x)).collect()))
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        let mut all = Vec::with_capacity(sections.len());
        for part in parts {
            all.extend(part?);
        }
        all
    };

    let value = candidates
        .iter()
        .map(|c| &c.value)
        .max()
        .cloned()
        .expect("at least one candidate");
    let maximizers = candidates.iter().filter(|c| c.value == value).count();
    let verdict = Verdict::from_value(&value);
    let witness = if value.is_negative() {
        None
    } else {
        candidates.iter().find(|c| c.value == value).map(|c| c.section.clone())
    };
    Ok(StabilityReport {
        verdict,
        witness,
        value,
        candidates,
        complete,
        maximizers,
        nondegenerate: t.nondegenerate(),
        tau: tau.clone(),
    })
}

/// `P̄_E = P_E − δs`, `P̄_L = P_L − δε(L)` and their difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectedPolys {
    pub p_bar_e: RationalPoly,
    pub p_bar_l: RationalPoly,
    pub p_bar_quotient: RationalPoly,
}

impl CorrectedPolys {
    pub fn new(l: &LineSubbundle, eps: u32, t: &Rank2Tensor, delta: &RationalPoly) -> Self {
        let (pl, pe) = curve_hilbert(l.degree(), t.bundle().degree(), 0);
        let p_bar_e = &pe - &delta.scale(&rat(t.s() as i64));
        let p_bar_l = &pl - &delta.scale(&rat(eps as i64));
        let p_bar_quotient = &p_bar_e - &p_bar_l;
        CorrectedPolys {
            p_bar_e,
            p_bar_l,
            p_bar_quotient,
        }
    }

    /// `2P̄_L − P̄_E`, positive exactly for the destabilizing subbundle.
    pub fn excess(&self) -> RationalPoly {
        &self.p_bar_l.scale(&rat(2)) - &self.p_bar_e
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnResult {
    pub subbundle: LineSubbundle,
    pub epsilon: u32,
    pub value: Rational,
    pub corrected: CorrectedPolys,
}

/// The unique maximizing subbundle of an unstable tensor.
pub fn hn_subsheaf(t: &Rank2Tensor, tau: &Rational) -> Result<HnResult, TensorError> {
    let report = stability(t, tau)?;
    hn_from_report(t, &report)
}

/// HN data from an already computed report.
pub fn hn_from_report(t: &Rank2Tensor, report: &StabilityReport) -> Result<HnResult, TensorError> {
    if report.verdict != Verdict::Unstable {
        return Err(TensorError::NotUnstable);
    }
    if report.maximizers > 1 {
        return Err(TensorError::TieAnomaly {
            count: report.maximizers,
            complete: report.complete,
        });
    }
    let best = report
        .candidates
        .iter()
        .find(|c| c.value == report.value)
        .expect("maximizer present");
    let delta = RationalPoly::constant(report.tau.clone());
    Ok(HnResult {
        subbundle: best.section.clone(),
        epsilon: best.epsilon,
        value: best.value.clone(),
        corrected: CorrectedPolys::new(&best.section, best.epsilon, t, &delta),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, ratio};
    use crate::tensor::{validate_tensor, RawTensor};

    /// Coefficients listed `a_0, a_1, …, a_s`.
    fn tensor(a: i64, b: i64, m: i64, cs: &[&str]) -> Rank2Tensor {
        validate_tensor(&RawTensor {
            a,
            b,
            s: cs.len() - 1,
            m_degree: m,
            coeffs: cs.iter().map(|c| parse_poly(c).unwrap()).collect(),
        })
        .unwrap()
    }

    fn sec(t: &Rank2Tensor, p: &str, q: &str) -> LineSubbundle {
        t.section(parse_poly(p).unwrap(), parse_poly(q).unwrap()).unwrap()
    }

    #[test]
    fn epsilon_examples() {
        let x0sq = tensor(0, 0, 0, &["0", "0", "1"]);
        assert_eq!(epsilon_of(&sec(&x0sq, "0", "1"), &x0sq).unwrap(), 0);
        assert_eq!(epsilon_of(&sec(&x0sq, "1", "1"), &x0sq).unwrap(), 2);
        let x0x1 = tensor(0, 0, 0, &["0", "1", "0"]);
        assert_eq!(epsilon_of(&sec(&x0x1, "1", "0"), &x0x1).unwrap(), 1);
    }

    #[test]
    fn value_examples() {
        let x0sq = tensor(0, 0, 0, &["0", "0", "1"]);
        let tau = ratio(5, 7);
        assert_eq!(destabilizing_value(&sec(&x0sq, "0", "1"), &x0sq, &tau).unwrap(), ratio(10, 7));
        let x0x1 = tensor(0, 0, 0, &["0", "1", "0"]);
        assert_eq!(destabilizing_value(&sec(&x0x1, "1", "0"), &x0x1, &tau).unwrap(), rat(0));
        assert_eq!(
            destabilizing_value(&sec(&x0x1, "1", "0"), &x0x1, &rat(0)),
            Err(TensorError::NonpositiveTau)
        );
    }

    #[test]
    fn k_polynomial_examples() {
        let x0sq = tensor(0, 0, 0, &["0", "0", "1"]);
        let l = sec(&x0sq, "0", "1");
        assert_eq!(k_polynomial(&l, &x0sq, &RationalPoly::constant(rat(3)), 0).unwrap(), RationalPoly::constant(rat(6)));
        assert_eq!(k_polynomial(&l, &x0sq, &RationalPoly::x(), 2).unwrap(), RationalPoly::from_i64s(&[0, 2]));
        assert_eq!(
            k_polynomial(&l, &x0sq, &RationalPoly::from_i64s(&[1, -1]), 0),
            Err(TensorError::InvalidDelta)
        );
    }

    #[test]
    fn candidates_of_x0_squared() {
        let t = tensor(0, 0, 0, &["0", "0", "1"]);
        let (c, complete) = candidate_sections(&t).unwrap();
        assert!(complete);
        assert_eq!(c, vec![(sec(&t, "0", "1"), 0), (sec(&t, "1", "0"), 2)]);
    }

    #[test]
    fn candidates_with_rational_function_root() {
        // F = x X0² + X0 X1 on O(0)+O(0), M = 2
        let t = tensor(0, 0, 2, &["0", "1", "x"]);
        let (c, _) = candidate_sections(&t).unwrap();
        assert!(c.contains(&(sec(&t, "0", "1"), 1)));
        let r = sec(&t, "-1", "x");
        assert_eq!(r.degree(), -1);
        assert!(c.contains(&(r, 1)));
        assert!(c.contains(&(sec(&t, "1", "0"), 2)));
    }

    #[test]
    fn candidates_with_double_root_at_one() {
        // (X0 − X1)² = X0² − 2 X0 X1 + X1²
        let t = tensor(0, 0, 0, &["1", "-2", "1"]);
        let (c, _) = candidate_sections(&t).unwrap();
        assert_eq!(c, vec![(sec(&t, "1", "1"), 0), (sec(&t, "1", "0"), 2)]);
    }

    #[test]
    fn verdict_examples() {
        let x0sq = tensor(0, 0, 0, &["0", "0", "1"]);
        let r = stability(&x0sq, &rat(1)).unwrap();
        assert_eq!(r.verdict, Verdict::Unstable);
        assert_eq!(r.witness, Some(sec(&x0sq, "0", "1")));
        assert_eq!(r.value, rat(2));

        let x0x1 = tensor(0, 0, 0, &["0", "1", "0"]);
        let r = stability(&x0x1, &rat(1)).unwrap();
        assert_eq!(r.verdict, Verdict::Semistable);
        let mut values: Vec<_> = r.candidates.iter().map(|c| c.value.clone()).collect();
        values.sort();
        assert_eq!(values, vec![rat(-2), rat(0), rat(0)]);

        // X1 on O(0)+O(-2), M = -2
        let t = tensor(0, -2, -2, &["1", "0"]);
        let r = stability(&t, &rat(1)).unwrap();
        assert_eq!(r.verdict, Verdict::Unstable);
        assert_eq!(r.witness, Some(sec(&t, "1", "0")));
        assert_eq!(r.value, rat(3));
    }

    #[test]
    fn hn_examples() {
        let x0sq = tensor(0, 0, 0, &["0", "0", "1"]);
        let hn = hn_subsheaf(&x0sq, &rat(1)).unwrap();
        assert_eq!(hn.subbundle, sec(&x0sq, "0", "1"));
        assert_eq!(hn.value, rat(2));
        assert_eq!(hn.corrected.p_bar_l, RationalPoly::from_i64s(&[1, 1]));
        assert_eq!(hn.corrected.p_bar_e, RationalPoly::from_i64s(&[0, 2]));
        assert_eq!(hn.corrected.excess(), RationalPoly::constant(rat(2)));

        // X1² on O(3)+O(0), M = 0
        let t = tensor(3, 0, 0, &["1", "0", "0"]);
        let r = stability(&t, &ratio(1, 4)).unwrap();
        assert_eq!(r.candidates.len(), 2);
        assert_eq!(r.candidates[1].value, ratio(-7, 2));
        let hn = hn_subsheaf(&t, &ratio(1, 4)).unwrap();
        assert_eq!(hn.subbundle, LineSubbundle::first_factor(t.bundle()));
        assert_eq!(hn.value, ratio(7, 2));

        let x0x1 = tensor(0, 0, 0, &["0", "1", "0"]);
        assert_eq!(hn_subsheaf(&x0x1, &rat(1)), Err(TensorError::NotUnstable));
    }

    #[test]
    fn incomplete_flag() {
        // X0² + X1²: no roots in Q(x)
        let t = tensor(0, 0, 0, &["1", "0", "1"]);
        let r = stability(&t, &rat(1)).unwrap();
        assert!(!r.complete);
        assert_eq!(r.verdict, Verdict::Stable);
        assert_eq!(r.require_complete(), Err(TensorError::IncompleteSearch));
    }

    #[test]
    fn jobs_do_not_change_report() {
        let t = tensor(1, -1, 4, &["x", "1", "0", "x + 1"]);
        let a = stability(&t, &ratio(2, 3)).unwrap();
        for jobs in [2, 3, 8] {
            assert_eq!(stability_with_jobs(&t, &ratio(2, 3), jobs).unwrap(), a);
        }
    }
}

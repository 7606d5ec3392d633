//! The graph of a filtration `0 ⊂ V_1 ⊂ … ⊂ V_{t+1} = V` of section spaces
//! and the Kempf function evaluated on it.
//!
//! Per step `i`: `b^i = dim V^i / mⁿ` and
//! `w^i = (m / dim V)·[r dim V^i − r^i dim V + a (s dim V^i − ε^i dim V)]`
//! with `a = r δ(m) / (P(m) − s δ(m))`.

use num_traits::{Signed, Zero};

use super::envelope::WeightedVector;
use super::signed::SignedSquare;
use super::KempfError;
use crate::algebra::{rat, Rational, RationalPoly};

/// Rank, tensor degree, `δ`, Hilbert polynomial and dimension of the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KempfParameters {
    pub rank: u32,
    pub s: u32,
    pub delta: RationalPoly,
    pub hilbert: RationalPoly,
    pub dim_x: u32,
}

impl KempfParameters {
    pub fn new(
        rank: u32,
        s: u32,
        delta: RationalPoly,
        hilbert: RationalPoly,
        dim_x: u32,
    ) -> Result<Self, KempfError> {
        if rank == 0 || s == 0 {
            return Err(KempfError::InvalidParameters("rank and s must be positive".into()));
        }
        if delta.is_zero() || !delta.leading_coeff().is_positive() {
            return Err(KempfError::InvalidParameters(
                "delta needs a positive leading coefficient".into(),
            ));
        }
        Ok(KempfParameters {
            rank,
            s,
            delta,
            hilbert,
            dim_x,
        })
    }

    /// Curve case: `P(m) = r m + d + r` on ℙ¹ and `δ = τ`.
    pub fn curve(rank: u32, s: u32, degree: i64, tau: Rational) -> Result<Self, KempfError> {
        let r = rank as i64;
        let hilbert = RationalPoly::from_i64s(&[degree + r, r]);
        Self::new(rank, s, RationalPoly::constant(tau), hilbert, 1)
    }

    /// `a₂/a₁ = r δ(m) / (P(m) − s δ(m))`.
    pub fn ratio_at(&self, m: i64) -> Result<Rational, KempfError> {
        let mm = rat(m);
        let d = self.delta.eval(&mm);
        let den = self.hilbert.eval(&mm) - &d * rat(self.s as i64);
        if !den.is_positive() {
            return Err(KempfError::InvalidParameters(format!(
                "P(m) - s*delta(m) = {den} is not positive at m = {m}"
            )));
        }
        Ok(d * rat(self.rank as i64) / den)
    }
}

/// Per-step data of a filtration: `dim V^i`, `r^i`, `ε^i` for `i = 1..=t+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationData {
    pub dims: Vec<Rational>,
    pub ranks_step: Vec<u32>,
    pub eps_step: Vec<u32>,
}

impl FiltrationData {
    pub fn new(dims: Vec<Rational>, ranks_step: Vec<u32>, eps_step: Vec<u32>) -> Result<Self, KempfError> {
        if dims.is_empty() {
            return Err(KempfError::Empty);
        }
        for other in [ranks_step.len(), eps_step.len()] {
            if other != dims.len() {
                return Err(KempfError::LengthMismatch {
                    expected: dims.len(),
                    found: other,
                });
            }
        }
        if let Some(i) = dims.iter().position(|d| !d.is_positive()) {
            return Err(KempfError::InvalidFiltration(format!("dim V^{} is not positive", i + 1)));
        }
        Ok(FiltrationData {
            dims,
            ranks_step,
            eps_step,
        })
    }

    pub fn steps(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> Rational {
        self.dims.iter().sum()
    }

    fn check_totals(&self, params: &KempfParameters) -> Result<(), KempfError> {
        let r: u32 = self.ranks_step.iter().sum();
        let s: u32 = self.eps_step.iter().sum();
        if r != params.rank {
            return Err(KempfError::InvalidFiltration(format!(
                "rank steps sum to {r}, expected {}",
                params.rank
            )));
        }
        if s != params.s {
            return Err(KempfError::InvalidFiltration(format!(
                "epsilon steps sum to {s}, expected {}",
                params.s
            )));
        }
        Ok(())
    }

    /// `r dim V^i − r^i dim V + a (s dim V^i − ε^i dim V)`, unscaled.
    fn bracket(&self, params: &KempfParameters, a: &Rational) -> Vec<Rational> {
        let dim = self.total_dim();
        let r = rat(params.rank as i64);
        let s = rat(params.s as i64);
        (0..self.steps())
            .map(|i| {
                let di = &self.dims[i];
                let ri = rat(self.ranks_step[i] as i64);
                let ei = rat(self.eps_step[i] as i64);
                &r * di - ri * &dim + a * (&s * di - ei * &dim)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationGraph {
    b: Vec<Rational>,
    w: Vec<Rational>,
}

impl FiltrationGraph {
    /// Step weights `b^i`.
    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    /// Step heights `w^i`.
    pub fn w(&self) -> &[Rational] {
        &self.w
    }

    /// `v_i = −w^i / b^i`; the segment slopes are `−v_i`.
    pub fn values(&self) -> Vec<Rational> {
        self.b.iter().zip(&self.w).map(|(b, w)| -(w / b)).collect()
    }

    /// Cumulative points `(b_i, w_i)` from the origin.
    pub fn points(&self) -> Vec<(Rational, Rational)> {
        let mut out = vec![(Rational::zero(), Rational::zero())];
        let (mut x, mut y) = (Rational::zero(), Rational::zero());
        for (b, w) in self.b.iter().zip(&self.w) {
            x += b;
            y += w;
            out.push((x.clone(), y.clone()));
        }
        out
    }

    /// The `(b, v)` pair fed to the envelope. Fails with `ZeroVector` for a
    /// flat graph.
    pub fn weighted_vector(&self) -> Result<WeightedVector, KempfError> {
        WeightedVector::new(self.b.clone(), self.values())
    }
}

/// Builds the graph at `m`. The endpoint `w_{t+1}` is exactly 0.
pub fn build_graph(
    data: &FiltrationData,
    params: &KempfParameters,
    m: i64,
) -> Result<FiltrationGraph, KempfError> {
    if m <= 0 {
        return Err(KempfError::InvalidParameters("m must be positive".into()));
    }
    data.check_totals(params)?;
    let a = params.ratio_at(m)?;
    let scale = rat(m) / data.total_dim();
    let mpow = rat(m).pow(params.dim_x as i32);
    let b = data.dims.iter().map(|d| d / &mpow).collect();
    let w = data
        .bracket(params, &a)
        .into_iter()
        .map(|x| x * &scale)
        .collect();
    Ok(FiltrationGraph { b, w })
}

/// `Γ` from weights: `Γ_{i+1} − Γ_i = n_i dim V` and `Σ dim V^i Γ_i = 0`.
pub fn kempf_gamma(data: &FiltrationData, weights: &[Rational]) -> Result<Vec<Rational>, KempfError> {
    if weights.len() + 1 != data.steps() {
        return Err(KempfError::LengthMismatch {
            expected: data.steps() - 1,
            found: weights.len(),
        });
    }
    if let Some(i) = weights.iter().position(|n| !n.is_positive()) {
        return Err(KempfError::InvalidWeights { index: i + 1 });
    }
    let dim = data.total_dim();
    let mut raw = vec![Rational::zero()];
    for n in weights {
        let next = raw.last().unwrap() + n * &dim;
        raw.push(next);
    }
    let shift: Rational = raw.iter().zip(&data.dims).map(|(g, d)| g * d).sum::<Rational>() / &dim;
    Ok(raw.into_iter().map(|g| g - &shift).collect())
}

/// The Kempf function
/// `Σ_i Γ_i/dim V · (r^i dim V − r dim V^i + a(ε^i dim V − s dim V^i)) / √(Σ dim V^i Γ_i²)`
/// as a signed square. A trivial filtration (`t = 0`) gives zero.
pub fn kempf_function(
    data: &FiltrationData,
    weights: &[Rational],
    params: &KempfParameters,
    m: i64,
) -> Result<SignedSquare, KempfError> {
    data.check_totals(params)?;
    let gamma = kempf_gamma(data, weights)?;
    let a = params.ratio_at(m)?;
    let dim = data.total_dim();
    let num: Rational = gamma
        .iter()
        .zip(data.bracket(params, &a))
        .map(|(g, x)| -(g * x) / &dim)
        .sum();
    let norm2: Rational = gamma.iter().zip(&data.dims).map(|(g, d)| d * g * g).sum();
    if norm2.is_zero() {
        return Ok(SignedSquare::zero());
    }
    Ok(SignedSquare::from_ratio_over_root(&num, &norm2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use crate::kempf::envelope::envelope_maximize;

    fn curve_params(tau: Rational) -> KempfParameters {
        KempfParameters::curve(2, 2, 0, tau).unwrap()
    }

    fn one_step(p1: i64, p: i64, eps: u32) -> FiltrationData {
        FiltrationData::new(vec![rat(p1), rat(p - p1)], vec![1, 1], vec![eps, 2 - eps]).unwrap()
    }

    #[test]
    fn trivial_filtration_is_flat() {
        let data = FiltrationData::new(vec![rat(22)], vec![2], vec![2]).unwrap();
        let g = build_graph(&data, &curve_params(rat(1)), 10).unwrap();
        assert_eq!(g.points().last().unwrap().1, rat(0));
        assert_eq!(kempf_function(&data, &[], &curve_params(rat(1)), 10).unwrap(), SignedSquare::zero());
    }

    #[test]
    fn endpoint_vanishes() {
        let data = FiltrationData::new(vec![rat(3), rat(5), rat(4)], vec![1, 0, 1], vec![0, 1, 1]).unwrap();
        let g = build_graph(&data, &curve_params(ratio(1, 3)), 5).unwrap();
        assert_eq!(g.points().last().unwrap().1, rat(0));
    }

    #[test]
    fn one_step_value_ignores_weight() {
        // X0^2 on O(0)+O(0), L the second factor: P_L = m + 1, ε = 0
        let params = curve_params(rat(1));
        let data = one_step(11, 22, 0);
        let vals: Vec<_> = [rat(1), rat(2), ratio(7, 3)]
            .iter()
            .map(|n| kempf_function(&data, std::slice::from_ref(n), &params, 10).unwrap())
            .collect();
        assert!(vals[0].is_positive());
        assert!(vals.iter().all(|v| v == &vals[0]));
    }

    #[test]
    fn identification_with_envelope() {
        let params = curve_params(rat(1));
        let data = one_step(11, 22, 0);
        let m = 10;
        let mu = kempf_function(&data, &[rat(1)], &params, m).unwrap();
        let env = envelope_maximize(&build_graph(&data, &params, m).unwrap().weighted_vector().unwrap());
        // m^{n+2} μ² = μ_v²
        assert_eq!(mu.scale_by_root(&rat(m * m * m)), env.mu);
    }

    #[test]
    fn scaling_dims_keeps_slope_signs() {
        let params = curve_params(ratio(1, 2));
        let a = build_graph(&one_step(3, 10, 1), &params, 4).unwrap();
        let b = FiltrationData::new(vec![rat(9), rat(21)], vec![1, 1], vec![1, 1]).unwrap();
        let b = build_graph(&b, &params, 4).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            assert_eq!(x.signum(), y.signum());
        }
    }

    #[test]
    fn parameter_guard() {
        // P(m) − 2τ = 2m + 2 − 2τ ≤ 0 at m = 1 when τ = 2
        let params = curve_params(rat(2));
        assert!(matches!(params.ratio_at(1), Err(KempfError::InvalidParameters(_))));
        assert!(params.ratio_at(2).is_ok());
    }
}

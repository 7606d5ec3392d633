//! Maximizing `μ_v(Γ) = (Γ, v) / ‖Γ‖` over the closed monotone cone
//! `x_1 ≤ … ≤ x_{t+1}` for the diagonal inner product with weights `b^i`.
//!
//! Orientation: the cumulative graph joins `(b_i, w_i)` with `w^i = -b^i v_i`,
//! so each segment has slope `-v_i`. The maximizer comes from the least
//! concave majorant of that graph (the upper envelope, lying above it);
//! its slopes are `-Γ_i`, hence `Γ` is nondecreasing. This is the usual
//! Harder–Narasimhan polygon convention.

use num_traits::{One, Signed, Zero};

use super::signed::SignedSquare;
use super::KempfError;
use crate::algebra::Rational;

/// Weights `b^i > 0` and values `v_i` with `Σ b^i v_i = 0` and `v ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedVector {
    b: Vec<Rational>,
    v: Vec<Rational>,
}

impl WeightedVector {
    pub fn new(b: Vec<Rational>, v: Vec<Rational>) -> Result<Self, KempfError> {
        if b.is_empty() {
            return Err(KempfError::Empty);
        }
        if b.len() != v.len() {
            return Err(KempfError::LengthMismatch {
                expected: b.len(),
                found: v.len(),
            });
        }
        if let Some(i) = b.iter().position(|x| !x.is_positive()) {
            return Err(KempfError::NonpositiveWeight { index: i + 1 });
        }
        if v.iter().all(Zero::is_zero) {
            return Err(KempfError::ZeroVector);
        }
        let balance: Rational = b.iter().zip(&v).map(|(bi, vi)| bi * vi).sum();
        if !balance.is_zero() {
            return Err(KempfError::Unbalanced { balance });
        }
        Ok(WeightedVector { b, v })
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn v(&self) -> &[Rational] {
        &self.v
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    /// Cumulative points `(b_i, w_i)`, `i = 0..=t+1`, starting at the origin.
    pub fn cumulative(&self) -> Vec<(Rational, Rational)> {
        let mut pts = Vec::with_capacity(self.len() + 1);
        let (mut bx, mut wy) = (Rational::zero(), Rational::zero());
        pts.push((bx.clone(), wy.clone()));
        for (bi, vi) in self.b.iter().zip(&self.v) {
            bx += bi;
            wy -= bi * vi;
            pts.push((bx.clone(), wy.clone()));
        }
        pts
    }

    pub fn inner(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.b
            .iter()
            .zip(x.iter().zip(y))
            .map(|(bi, (xi, yi))| bi * xi * yi)
            .sum()
    }

    /// `μ_v(Γ)` as a signed square. `Γ = 0` gives zero.
    pub fn mu(&self, gamma: &[Rational]) -> SignedSquare {
        let norm2 = self.inner(gamma, gamma);
        if norm2.is_zero() {
            return SignedSquare::zero();
        }
        SignedSquare::from_ratio_over_root(&self.inner(gamma, &self.v), &norm2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopeResult {
    /// Points `(b_i, w̃_i)` for `i = 0..=t+1`.
    pub envelope: Vec<(Rational, Rational)>,
    pub gamma: Vec<Rational>,
    /// `μ_v(Γ_v)`; zero when no direction in the cone has `μ_v > 0`.
    pub mu: SignedSquare,
}

impl EnvelopeResult {
    /// Maximal runs of equal `Γ_i`, as half-open index ranges into `gamma`.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.gamma.len() {
            if i == self.gamma.len() || self.gamma[i] != self.gamma[start] {
                out.push(start..i);
                start = i;
            }
        }
        out
    }
}

/// `Γ_v` from the least concave majorant of the cumulative graph.
///
/// Collinear envelope vertices are dropped, so equal adjacent slopes end up
/// in one block. `Γ` is returned unscaled; it satisfies `Σ b^i Γ_i = 0` and
/// `(Γ_v, v) = ‖Γ_v‖²`, so `μ_v(Γ_v)² = ‖Γ_v‖²`.
pub fn envelope_maximize(wv: &WeightedVector) -> EnvelopeResult {
    let pts = wv.cumulative();
    let hull = upper_hull(&pts);

    // interpolate the hull at every b_i
    let mut env = Vec::with_capacity(pts.len());
    let mut seg = 0;
    for (bx, _) in &pts {
        while seg + 1 < hull.len() - 1 && &pts[hull[seg + 1]].0 < bx {
            seg += 1;
        }
        let (x0, y0) = &pts[hull[seg]];
        let (x1, y1) = &pts[hull[(seg + 1).min(hull.len() - 1)]];
        let y = if x1 == x0 {
            y0.clone()
        } else {
            y0 + (y1 - y0) * (bx - x0) / (x1 - x0)
        };
        env.push((bx.clone(), y));
    }

    let gamma: Vec<Rational> = wv
        .b
        .iter()
        .enumerate()
        .map(|(i, bi)| -(&env[i + 1].1 - &env[i].1) / bi)
        .collect();
    let mu = wv.mu(&gamma);
    EnvelopeResult {
        envelope: env,
        gamma,
        mu,
    }
}

/// Indices of the upper hull vertices of points with increasing x.
fn upper_hull(pts: &[(Rational, Rational)]) -> Vec<usize> {
    let mut hull: Vec<usize> = Vec::with_capacity(pts.len());
    for i in 0..pts.len() {
        while hull.len() >= 2 {
            let a = &pts[hull[hull.len() - 2]];
            let b = &pts[hull[hull.len() - 1]];
            let c = &pts[i];
            // drop b unless it lies strictly above segment ac
            let cross = (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0);
            if !cross.is_negative() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    hull
}

/// `Γ` scaled so its entries are coprime integers (first nonzero entry keeps
/// its sign). Zero stays zero. Useful for comparing directions.
pub fn primitive_direction(gamma: &[Rational]) -> Vec<Rational> {
    use num_integer::Integer;
    let lcm = gamma
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, g| acc.lcm(g.denom()));
    let ints: Vec<num_bigint::BigInt> = gamma
        .iter()
        .map(|g| (g * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return gamma.to_vec();
    }
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    fn wv(b: &[i64], v: &[i64]) -> WeightedVector {
        WeightedVector::new(b.iter().map(|&x| rat(x)).collect(), v.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    #[test]
    fn increasing_vector_is_its_own_maximizer() {
        let r = envelope_maximize(&wv(&[1, 2, 1], &[-3, 0, 3]));
        assert_eq!(r.gamma, vec![rat(-3), rat(0), rat(3)]);
        assert_eq!(r.mu, SignedSquare::new(1, rat(18)));
    }

    #[test]
    fn pooled_example() {
        let r = envelope_maximize(&wv(&[1, 1, 1], &[1, -2, 1]));
        assert_eq!(r.gamma, vec![ratio(-1, 2), ratio(-1, 2), rat(1)]);
        assert_eq!(r.mu, SignedSquare::new(1, ratio(3, 2)));
        assert_eq!(r.blocks(), vec![0..2, 2..3]);
        // envelope lies above the graph
        for ((_, w), (_, wt)) in wv(&[1, 1, 1], &[1, -2, 1]).cumulative().iter().zip(&r.envelope) {
            assert!(wt >= w);
        }
    }

    #[test]
    fn decreasing_vector_has_no_destabilizing_direction() {
        let r = envelope_maximize(&wv(&[1, 1], &[1, -1]));
        assert_eq!(r.gamma, vec![rat(0), rat(0)]);
        assert_eq!(r.mu.sign(), 0);
    }

    #[test]
    fn constructor_rejections() {
        assert_eq!(WeightedVector::new(vec![], vec![]), Err(KempfError::Empty));
        assert!(matches!(
            WeightedVector::new(vec![rat(1), rat(1)], vec![rat(1), rat(1)]),
            Err(KempfError::Unbalanced { .. })
        ));
        assert_eq!(
            WeightedVector::new(vec![rat(1), rat(0)], vec![rat(0), rat(0)]),
            Err(KempfError::NonpositiveWeight { index: 2 })
        );
        assert_eq!(
            WeightedVector::new(vec![rat(1), rat(2)], vec![rat(0), rat(0)]),
            Err(KempfError::ZeroVector)
        );
    }

    #[test]
    fn primitive_direction_scales() {
        let d = primitive_direction(&[ratio(-1, 2), ratio(-1, 2), rat(1)]);
        assert_eq!(d, vec![rat(-1), rat(-1), rat(2)]);
    }
}

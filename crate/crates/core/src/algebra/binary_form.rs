//! Binary forms `Σ a_i(x) X0^i X1^(s-i)` with ℚ[x] coefficients.

use num_traits::Zero;

use super::bivariate::TPoly;
use super::poly::RationalPoly;
use super::rational::{rat, Rational};
use super::AlgebraError;

/// Homogeneous form of degree `s` in `(X0, X1)`; `coeffs[i]` multiplies
/// `X0^i X1^(s-i)`. May be the zero form (e.g. after polarization).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<RationalPoly>,
}

impl BinaryForm {
    /// `coeffs` must have length `s + 1 ≥ 1`.
    pub fn new(coeffs: Vec<RationalPoly>) -> Result<Self, AlgebraError> {
        if coeffs.is_empty() {
            return Err(AlgebraError::EmptyForm);
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RationalPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &RationalPoly {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RationalPoly::is_zero)
    }

    /// `(q X0 - p X1)`.
    pub fn linear(p: &RationalPoly, q: &RationalPoly) -> Self {
        BinaryForm {
            coeffs: vec![-p, q.clone()],
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![RationalPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BinaryForm {
            coeffs: vec![RationalPoly::one()],
        };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `p ∂F/∂X0 + q ∂F/∂X1`: one slot of the symmetric multilinear form
    /// filled with the vector `(p, q)`.
    pub fn polar_derivative(&self, p: &RationalPoly, q: &RationalPoly) -> Result<Self, AlgebraError> {
        let s = self.degree();
        if s == 0 {
            return Err(AlgebraError::DegreeZero);
        }
        if p.is_zero() && q.is_zero() {
            return Err(AlgebraError::ZeroDirection);
        }
        let coeffs = (0..s)
            .map(|j| {
                let d0 = self.coeffs[j + 1].scale(&rat((j + 1) as i64));
                let d1 = self.coeffs[j].scale(&rat((s - j) as i64));
                &(p * &d0) + &(q * &d1)
            })
            .collect();
        Ok(BinaryForm { coeffs })
    }

    /// `F(p, q) = Σ a_i p^i q^(s-i)`.
    pub fn evaluate(&self, p: &RationalPoly, q: &RationalPoly) -> RationalPoly {
        self.dehomogenize().eval_homogeneous(p, q, self.degree())
    }

    /// `f(t) = F(t, 1)`.
    pub fn dehomogenize(&self) -> TPoly {
        TPoly::new(self.coeffs.clone())
    }

    /// Swaps the roles of `X0` and `X1`.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        BinaryForm { coeffs }
    }

    /// Coefficients of the fiber form at `x = x0`.
    pub fn specialize(&self, x0: &Rational) -> Vec<Rational> {
        self.coeffs.iter().map(|a| a.eval(x0)).collect()
    }

    /// Multiplicity of `(q X0 - p X1)` as a factor over ℚ(x). `(p, q)` must
    /// be coprime and not both zero. The zero form reports `u32::MAX`.
    pub fn root_multiplicity(&self, p: &RationalPoly, q: &RationalPoly) -> u32 {
        if self.is_zero() {
            return u32::MAX;
        }
        let f = self.dehomogenize();
        if q.is_zero() {
            // factor X1: counted by missing top coefficients
            return (self.degree() - f.degree().unwrap()) as u32;
        }
        let lin = TPoly::linear(p, q).primitive_part();
        let mut rest = f;
        let mut m = 0;
        while let Some(next) = rest.exact_div(&lin) {
            rest = next;
            m += 1;
        }
        m
    }

    /// Largest `k` such that the `k`-fold polar derivative in direction
    /// `(p, q)` is not identically zero. `None` for the zero form.
    pub fn polar_order(&self, p: &RationalPoly, q: &RationalPoly) -> Result<Option<usize>, AlgebraError> {
        if self.is_zero() {
            return Ok(None);
        }
        let mut current = self.clone();
        let mut k = 0;
        while current.degree() > 0 {
            let next = current.polar_derivative(p, q)?;
            if next.is_zero() {
                break;
            }
            current = next;
            k += 1;
        }
        Ok(Some(k))
    }
}

/// Multiplicity of the point `[p0 : q0]` as a root of a binary form over ℚ.
pub fn fiber_root_multiplicity(coeffs: &[Rational], p0: &Rational, q0: &Rational) -> Option<u32> {
    let s = coeffs.len() - 1;
    if coeffs.iter().all(|c| c.is_zero()) {
        return None;
    }
    if q0.is_zero() {
        let top = coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        return Some((s - top) as u32);
    }
    let f = RationalPoly::new(coeffs.to_vec());
    let lin = RationalPoly::new(vec![-(p0 / q0), rat(1)]);
    let mut rest = f;
    let mut m = 0;
    while let Some(next) = rest.exact_div(&lin) {
        rest = next;
        m += 1;
    }
    Some(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    fn form(cs: &[&str]) -> BinaryForm {
        BinaryForm::new(cs.iter().map(|s| parse_poly(s).unwrap()).collect()).unwrap()
    }

    fn c(s: &str) -> RationalPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn polar_examples() {
        // X0², direction (0,1): ∂/∂X1 kills it
        let f = form(&["0", "0", "1"]);
        let d = f.polar_derivative(&c("0"), &c("1")).unwrap();
        assert_eq!(d.degree(), 1);
        assert!(d.is_zero());
        // X0 X1, direction (1,0) → X1
        let f = form(&["0", "1", "0"]);
        assert_eq!(f.polar_derivative(&c("1"), &c("0")).unwrap(), form(&["1", "0"]));
    }

    #[test]
    fn polar_errors() {
        let f = form(&["1"]);
        assert_eq!(f.polar_derivative(&c("1"), &c("0")), Err(AlgebraError::DegreeZero));
        let f = form(&["1", "x"]);
        assert_eq!(f.polar_derivative(&c("0"), &c("0")), Err(AlgebraError::ZeroDirection));
    }

    #[test]
    fn s_fold_polar_extracts_top_coefficient() {
        // D_{(1,0)}^s F = s! a_s
        let f = form(&["x", "3", "x^2-1", "2*x+5"]);
        let mut cur = f.clone();
        for _ in 0..3 {
            cur = cur.polar_derivative(&c("1"), &c("0")).unwrap();
        }
        assert_eq!(cur, form(&["12*x + 30"]));
    }

    #[test]
    fn evaluate_at_section() {
        // F = x X0² + X0 X1 at (p,q) = (-1, x): x·1 + (-1)(x) = 0
        let f = form(&["0", "1", "x"]);
        assert!(f.evaluate(&c("-1"), &c("x")).is_zero());
        assert_eq!(f.evaluate(&c("1"), &c("0")), c("x"));
    }

    #[test]
    fn multiplicity_matches_polar_order() {
        let l = BinaryForm::linear(&c("x"), &c("x+1"));
        let g = form(&["1", "x", "0"]);
        let f = l.pow(3).mul(&g);
        assert_eq!(f.root_multiplicity(&c("x"), &c("x+1")), 3);
        assert_eq!(f.polar_order(&c("x"), &c("x+1")).unwrap(), Some(f.degree() - 3));
        // (1,0) is a root of g (no X0² term): X1 divides g once
        assert_eq!(f.root_multiplicity(&c("1"), &c("0")), 1);
    }

    #[test]
    fn fiber_multiplicity() {
        // X0² X1 : [0:1] has multiplicity 2, [1:0] has multiplicity 1
        let cs = vec![rat(0), rat(0), rat(1), rat(0)];
        assert_eq!(fiber_root_multiplicity(&cs, &rat(0), &rat(1)), Some(2));
        assert_eq!(fiber_root_multiplicity(&cs, &rat(1), &rat(0)), Some(1));
        assert_eq!(fiber_root_multiplicity(&cs, &rat(1), &rat(1)), Some(0));
    }
}

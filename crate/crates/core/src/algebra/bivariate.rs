//! Polynomials in `t` whose coefficients are polynomials in `x`, i.e. ℚ[x][t].
//!
//! Division and gcd are done over ℚ(x) but kept inside ℚ[x][t] via
//! primitive parts (Gauss's lemma), so no rational-function type is needed.

use std::fmt;

use super::poly::{poly_gcd, RationalPoly};

/// `coeffs[i]` multiplies `t^i`. No trailing zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TPoly {
    coeffs: Vec<RationalPoly>,
}

impl TPoly {
    pub fn new(mut coeffs: Vec<RationalPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// t-degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[RationalPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RationalPoly {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> RationalPoly {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// `q t - p`.
    pub fn linear(p: &RationalPoly, q: &RationalPoly) -> Self {
        TPoly::new(vec![-p, q.clone()])
    }

    pub fn derivative(&self) -> Self {
        TPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&super::rational::rat(i as i64)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero();
        }
        let mut out = vec![RationalPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        TPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        TPoly::new((0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = TPoly::new(vec![RationalPoly::one()]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Monic gcd of the x-coefficients.
    pub fn content(&self) -> RationalPoly {
        self.coeffs
            .iter()
            .fold(RationalPoly::zero(), |g, c| poly_gcd(&g, c))
    }

    /// Divides out the content and makes the leading x-coefficient monic.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return TPoly::zero();
        }
        let c = self.content();
        let scaled: Vec<RationalPoly> = self
            .coeffs
            .iter()
            .map(|a| a.exact_div(&c).expect("content divides"))
            .collect();
        let lc = scaled.last().unwrap().leading_coeff();
        let inv = num_traits::one::<super::rational::Rational>() / lc;
        TPoly::new(scaled.iter().map(|a| a.scale(&inv)).collect())
    }

    /// `lc(d)^k * self = q * d + r` with `deg_t r < deg_t d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("nonzero divisor");
        let lc = d.leading_coeff();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lead = r.leading_coeff();
            let shift = dr - dd;
            let mut next: Vec<RationalPoly> = r.coeffs.iter().map(|c| c * &lc).collect();
            for (j, dj) in d.coeffs.iter().enumerate() {
                next[j + shift] = &next[j + shift] - &(&lead * dj);
            }
            r = TPoly::new(next);
        }
        r
    }

    /// Exact quotient in ℚ[x][t], or `None` if `d` does not divide `self`.
    /// Exact whenever `d` is primitive and divides over ℚ(x).
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let lc = d.leading_coeff();
        let mut r = self.coeffs.clone();
        if r.len() < dd + 1 {
            return self.is_zero().then(TPoly::zero);
        }
        let mut q = vec![RationalPoly::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].exact_div(&lc)?;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * dj);
            }
            q[k] = c;
        }
        r.iter().all(|c| c.is_zero()).then(|| TPoly::new(q))
    }

    /// Gcd over ℚ(x)[t], returned primitive (content 1, monic leading
    /// x-coefficient). Gcd of a nonzero polynomial with zero is its primitive part.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Yun's squarefree decomposition over ℚ(x)[t] of the primitive part.
    /// Each returned factor is primitive with positive t-degree.
    pub fn squarefree(&self) -> Vec<(TPoly, u32)> {
        let f = self.primitive_part();
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let mut d = df.exact_div(&a0).expect("gcd divides").sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let next_b = b.exact_div(&a).expect("gcd divides");
            let c = d.exact_div(&a).expect("gcd divides");
            d = c.sub(&next_b.derivative());
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            b = next_b;
            i += 1;
        }
        out
    }

    /// `Σ a_i p^i q^(n-i)` where `n` is `nominal_degree`, i.e. the
    /// homogenized value at `t = p/q`.
    pub fn eval_homogeneous(&self, p: &RationalPoly, q: &RationalPoly, nominal_degree: usize) -> RationalPoly {
        let mut acc = RationalPoly::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            acc = &acc + &(&(a * &p.pow(i as u32)) * &q.pow((nominal_degree - i) as u32));
        }
        acc
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TPoly[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "t^{i}: ({c})")?;
        }
        write!(f, "]")
    }
}

//! Linear factors of a binary form over the function field ℚ(x).
//!
//! A root `t = p/q` of `f(t) = F(t, 1)` with `p, q ∈ ℚ[x]` coprime must have
//! `q` dividing the leading t-coefficient and `p` dividing the trailing one
//! (rational-root theorem over the UFD ℚ[x]). Monic divisors are enumerated
//! from the factorizations of those two coefficients; the remaining scalar
//! `λ` in `p = λ·d` is the common rational root of the x-coefficients of
//! `f(λ d / q)`.

use num_traits::Zero;

use super::binary_form::BinaryForm;
use super::bivariate::TPoly;
use super::factor::{factor_rational, rational_roots};
use super::poly::{poly_gcd, RationalPoly};
use super::AlgebraError;

/// A root `[p : q]` of the form over ℚ(x), normalized: `gcd(p, q) = 1`,
/// `q` monic when nonzero, `p = 1` when `q = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctionRoot {
    pub p: RationalPoly,
    pub q: RationalPoly,
    pub multiplicity: u32,
}

/// All ℚ(x)-rational linear factors plus the leftover factors of t-degree
/// at least 2, which have no root in ℚ(x).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionFieldRoots {
    pub roots: Vec<FunctionRoot>,
    /// Squarefree pieces of the nonlinear part, each primitive, with
    /// multiplicity. Not necessarily irreducible.
    pub multisection_factors: Vec<(TPoly, u32)>,
}

impl FunctionFieldRoots {
    /// True when the form splits completely into ℚ(x)-linear factors.
    pub fn complete(&self) -> bool {
        self.multisection_factors.is_empty()
    }

    pub fn linear_multiplicity(&self) -> u32 {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

pub fn rational_function_roots(form: &BinaryForm) -> Result<FunctionFieldRoots, AlgebraError> {
    if form.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let s = form.degree();
    let coeffs = form.coeffs();
    let top = coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
    let low = coeffs.iter().position(|c| !c.is_zero()).unwrap();
    let mut roots = Vec::new();

    if top < s {
        roots.push(FunctionRoot {
            p: RationalPoly::one(),
            q: RationalPoly::zero(),
            multiplicity: (s - top) as u32,
        });
    }
    if low > 0 {
        roots.push(FunctionRoot {
            p: RationalPoly::zero(),
            q: RationalPoly::one(),
            multiplicity: low as u32,
        });
    }

    let mut rest = TPoly::new(coeffs[low..=top].to_vec()).primitive_part();
    if rest.degree().unwrap() > 0 {
        let lead = rest.leading_coeff();
        let trail = rest.coeff(0);
        let q_cands = monic_divisors(&lead)?;
        let d_cands = monic_divisors(&trail)?;
        for q in &q_cands {
            for d in &d_cands {
                if rest.degree().unwrap() == 0 {
                    break;
                }
                if poly_gcd(q, d).degree_or_zero() > 0 {
                    continue;
                }
                for lambda in scalar_roots(&rest, d, q)? {
                    let p = d.scale(&lambda);
                    let lin = TPoly::linear(&p, q);
                    let mut m = 0;
                    while let Some(next) = rest.exact_div(&lin) {
                        rest = next;
                        m += 1;
                    }
                    if m > 0 {
                        roots.push(FunctionRoot {
                            p,
                            q: q.clone(),
                            multiplicity: m,
                        });
                    }
                }
            }
        }
    }

    let multisection_factors = if rest.degree().unwrap_or(0) > 0 {
        rest.squarefree()
    } else {
        Vec::new()
    };
    Ok(FunctionFieldRoots {
        roots,
        multisection_factors,
    })
}

/// Nonzero `λ ∈ ℚ` with `f(λ d / q) = 0` in ℚ(x).
fn scalar_roots(
    f: &TPoly,
    d: &RationalPoly,
    q: &RationalPoly,
) -> Result<Vec<num_rational::BigRational>, AlgebraError> {
    let n = f.degree().unwrap();
    // g(λ) = Σ_i f_i d^i q^(n-i) λ^i, a polynomial in λ with ℚ[x] coefficients
    let lam_coeffs: Vec<RationalPoly> = (0..=n)
        .map(|i| &(&f.coeff(i) * &d.pow(i as u32)) * &q.pow((n - i) as u32))
        .collect();
    let xdeg = lam_coeffs.iter().map(|c| c.degree_or_zero()).max().unwrap_or(0);
    let mut g = RationalPoly::zero();
    for j in 0..=xdeg {
        let h = RationalPoly::new(lam_coeffs.iter().map(|c| c.coeff(j)).collect());
        g = poly_gcd(&g, &h);
        if g.degree_or_zero() == 0 && !g.is_zero() {
            return Ok(Vec::new());
        }
    }
    if g.is_zero() {
        return Ok(Vec::new());
    }
    Ok(rational_roots(&g)?
        .into_iter()
        .map(|(r, _)| r)
        .filter(|r| !r.is_zero())
        .collect())
}

/// All monic divisors of a nonzero polynomial.
fn monic_divisors(f: &RationalPoly) -> Result<Vec<RationalPoly>, AlgebraError> {
    let fac = factor_rational(f)?;
    let mut out = vec![RationalPoly::one()];
    for (g, m) in &fac.factors {
        let mut next = Vec::with_capacity(out.len() * (*m as usize + 1));
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*m {
                acc = &acc * g;
                next.push(acc.clone());
            }
        }
        out = next;
    }
    out.sort_by_key(|d| d.degree());
    Ok(out)
}

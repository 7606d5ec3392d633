//! Squarefree decomposition and complete factorization over ℚ.
//!
//! Factorization strips rational roots with the rational-root theorem and
//! then splits what is left with Kronecker's interpolation method. Cost is
//! exponential in the degree; intended for degrees up to about a dozen.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{poly_gcd, RationalPoly};
use super::rational::{rat, Rational};
use super::AlgebraError;

/// `f = constant * Π factor^multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factored {
    pub constant: Rational,
    pub factors: Vec<(RationalPoly, u32)>,
}

impl Factored {
    pub fn expand(&self) -> RationalPoly {
        self.factors
            .iter()
            .fold(RationalPoly::constant(self.constant.clone()), |acc, (g, m)| {
                &acc * &g.pow(*m)
            })
    }
}

/// Yun's algorithm. Factors are monic, squarefree, pairwise coprime and
/// listed with strictly increasing multiplicity.
pub fn squarefree_decompose(f: &RationalPoly) -> Result<Factored, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let constant = f.leading_coeff();
    let f = f.monic();
    let mut factors = Vec::new();
    if f.is_constant() {
        return Ok(Factored { constant, factors });
    }
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1u32;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d);
        let next_b = b.exact_div(&a).expect("gcd divides");
        let c = d.exact_div(&a).expect("gcd divides");
        d = &c - &next_b.derivative();
        if !a.is_constant() {
            factors.push((a, i));
        }
        b = next_b;
        i += 1;
    }
    Ok(Factored { constant, factors })
}

/// Complete factorization into monic irreducibles over ℚ.
/// Factors are sorted by degree, then by coefficients.
pub fn factor_rational(f: &RationalPoly) -> Result<Factored, AlgebraError> {
    let sqf = squarefree_decompose(f)?;
    let mut factors = Vec::new();
    for (g, m) in &sqf.factors {
        for h in split_squarefree(g) {
            factors.push((h, *m));
        }
    }
    factors.sort_by(|(a, _), (b, _)| canonical_cmp(a, b));
    Ok(Factored {
        constant: sqf.constant,
        factors,
    })
}

fn canonical_cmp(a: &RationalPoly, b: &RationalPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Distinct rational roots with multiplicities, in increasing order.
pub fn rational_roots(f: &RationalPoly) -> Result<Vec<(Rational, u32)>, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut zero_mult = 0;
    while !rest.is_zero() && rest.coeff(0).is_zero() {
        rest = rest.exact_div(&RationalPoly::x()).expect("x divides");
        zero_mult += 1;
    }
    if zero_mult > 0 {
        out.push((Rational::zero(), zero_mult));
    }
    if rest.is_constant() {
        return Ok(out);
    }
    let (_, prim) = rest.primitive_integer_part();
    let lead = prim.last().unwrap().abs();
    let trail = prim[0].abs();
    for u in divisors(&trail) {
        for v in divisors(&lead) {
            for sign in [1, -1] {
                let cand = Rational::new(BigInt::from(sign) * &u, v.clone());
                if rest.eval(&cand).is_zero() {
                    let lin = RationalPoly::new(vec![-cand.clone(), rat(1)]);
                    let mut m = 0;
                    while let Some(q) = rest.exact_div(&lin) {
                        rest = q;
                        m += 1;
                    }
                    out.push((cand, m));
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Positive divisors of `|n|` in increasing order. `n = 0` yields `[]`.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    let mut ds = vec![BigInt::one()];
    for (p, e) in prime_factors(&n) {
        let mut next = Vec::with_capacity(ds.len() * (e + 1));
        for d in &ds {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        ds = next;
    }
    ds.sort();
    ds
}

fn prime_factors(n: &BigInt) -> Vec<(BigInt, usize)> {
    if n.is_one() {
        return Vec::new();
    }
    if let Some(small) = n.to_u128() {
        return num_prime::nt_funcs::factorize128(small)
            .into_iter()
            .map(|(p, e)| (BigInt::from(p), e))
            .collect();
    }
    let big: BigUint = n.to_biguint().expect("positive");
    num_prime::nt_funcs::factorize(big)
        .into_iter()
        .map(|(p, e)| (BigInt::from_biguint(Sign::Plus, p), e))
        .collect()
}

/// Irreducible monic factors of a squarefree polynomial.
fn split_squarefree(g: &RationalPoly) -> Vec<RationalPoly> {
    let mut out = Vec::new();
    let mut rest = g.monic();
    for (r, _) in rational_roots(&rest).expect("nonzero") {
        let lin = RationalPoly::new(vec![-r, rat(1)]);
        rest = rest.exact_div(&lin).expect("root divides");
        out.push(lin);
    }
    let mut stack = vec![rest];
    while let Some(h) = stack.pop() {
        let deg = h.degree_or_zero();
        if deg == 0 {
            continue;
        }
        // no linear factors remain, so search from degree 2
        match (2..=deg / 2).find_map(|d| kronecker_factor(&h, d)) {
            Some(k) => {
                let q = h.exact_div(&k).expect("found factor divides");
                stack.push(k);
                stack.push(q.monic());
            }
            None => out.push(h.monic()),
        }
    }
    out
}

/// Searches for a factor of exact degree `d` of `g` by interpolating through
/// divisors of `g` at `d + 1` integer points.
fn kronecker_factor(g: &RationalPoly, d: usize) -> Option<RationalPoly> {
    let (_, prim) = g.primitive_integer_part();
    let gi = RationalPoly::from_integers(&prim);

    // candidate points 0, 1, -1, 2, -2, ... ; keep those with fewest divisors
    let mut pool: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
    let mut k: i64 = 0;
    while pool.len() < 3 * (d + 1) + 4 {
        let x = rat(k);
        let v = gi.eval(&x).to_integer();
        if v.is_zero() {
            // a rational root here means a linear factor; callers strip those
            return Some(RationalPoly::new(vec![-x, rat(1)]));
        }
        pool.push((BigInt::from(k), divisors(&v)));
        k = if k <= 0 { 1 - k } else { -k };
    }
    pool.sort_by_key(|(_, ds)| ds.len());
    pool.truncate(d + 1);

    let xs: Vec<Rational> = pool.iter().map(|(x, _)| Rational::from_integer(x.clone())).collect();
    // signed divisor lists; first point positive only, since ±h are equivalent
    let choices: Vec<Vec<BigInt>> = pool
        .iter()
        .enumerate()
        .map(|(j, (_, ds))| {
            if j == 0 {
                ds.clone()
            } else {
                ds.iter().flat_map(|q| [q.clone(), -q.clone()]).collect()
            }
        })
        .collect();

    let basis = lagrange_basis(&xs);
    let mut idx = vec![0usize; choices.len()];
    loop {
        let mut h = RationalPoly::zero();
        for (j, b) in basis.iter().enumerate() {
            h = &h + &b.scale(&Rational::from_integer(choices[j][idx[j]].clone()));
        }
        if h.degree_or_zero() == d
            && !h.is_zero()
            && h.coeffs().iter().all(|c| c.is_integer())
            && h.divides(&gi)
        {
            return Some(h.monic());
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn lagrange_basis(xs: &[Rational]) -> Vec<RationalPoly> {
    (0..xs.len())
        .map(|j| {
            let mut num = RationalPoly::one();
            let mut den = Rational::one();
            for (i, xi) in xs.iter().enumerate() {
                if i == j {
                    continue;
                }
                num = &num * &RationalPoly::new(vec![-xi.clone(), rat(1)]);
                den *= &xs[j] - xi;
            }
            num.scale(&(Rational::one() / den))
        })
        .collect()
}

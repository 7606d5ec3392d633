//! Seeded generators for random instances: balanced weighted vectors, cone
//! samples, filtrations with monotone vanishing oracles, and tensors.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::algebra::{rat, ratio, BinaryForm, Rational, RationalPoly};
use crate::kempf::WeightedVector;
use crate::tensor::{validate_tensor, Rank2Tensor, RawTensor};

pub type InstanceRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n/d` with `|n| ≤ bound`, `1 ≤ d ≤ bound`.
pub fn rational(rng: &mut impl Rng, bound: i64) -> Rational {
    ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

pub fn positive_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    ratio(rng.gen_range(1..=bound), rng.gen_range(1..=bound))
}

/// Length in `2..=max_len`, entries with numerators and denominators up to
/// `bound`, then centred so that `Σ b^i v_i = 0`. A single entry would
/// always centre to zero.
pub fn weighted_vector(rng: &mut impl Rng, max_len: usize, bound: i64) -> WeightedVector {
    loop {
        let n = rng.gen_range(2..=max_len.max(2));
        let b: Vec<Rational> = (0..n).map(|_| positive_rational(rng, bound)).collect();
        let u: Vec<Rational> = (0..n).map(|_| rational(rng, bound)).collect();
        let total: Rational = b.iter().sum();
        let mean = b.iter().zip(&u).map(|(x, y)| x * y).sum::<Rational>() / total;
        let v: Vec<Rational> = u.iter().map(|x| x - &mean).collect();
        if let Ok(wv) = WeightedVector::new(b, v) {
            return wv;
        }
    }
}

/// A random nondecreasing vector.
pub fn cone_sample(rng: &mut impl Rng, len: usize, bound: i64) -> Vec<Rational> {
    let mut x = rational(rng, bound);
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(x.clone());
        if rng.gen_bool(0.7) {
            x += positive_rational(rng, bound);
        }
    }
    out
}

/// A filtration with ranks `r_1 ≤ … ≤ r_{t+1} = r` together with a vanishing
/// oracle that is closed upward: nonvanishing on `I` implies nonvanishing on
/// every index that is componentwise at least `I`.
#[derive(Debug, Clone)]
pub struct RandomFiltration {
    pub ranks: Vec<u32>,
    pub s: usize,
    /// Nonvanishing iff `Σ_k rank(i_k) ≥ threshold`.
    pub threshold: u32,
}

impl RandomFiltration {
    pub fn nonzero(&self, idx: &[usize]) -> bool {
        idx.iter().map(|&i| self.ranks[i - 1]).sum::<u32>() >= self.threshold
    }
}

pub fn filtration(rng: &mut impl Rng, max_t: usize, max_s: usize, max_r: u32) -> RandomFiltration {
    let r = rng.gen_range(1..=max_r);
    let t = rng.gen_range(1..=max_t);
    let mut ranks: Vec<u32> = (0..t).map(|_| rng.gen_range(1..=r)).collect();
    ranks.sort_unstable();
    ranks.push(r);
    let s = rng.gen_range(1..=max_s);
    let threshold = rng.gen_range(0..=s as u32 * r);
    RandomFiltration { ranks, s, threshold }
}

/// Bounds for [`tensor`].
#[derive(Debug, Clone, Copy)]
pub struct TensorShape {
    pub max_s: usize,
    pub max_coeff_degree: usize,
    /// Summand degrees are drawn from `-max_split..=max_split`.
    pub max_split: i64,
}

impl Default for TensorShape {
    fn default() -> Self {
        TensorShape {
            max_s: 5,
            max_coeff_degree: 4,
            max_split: 2,
        }
    }
}

fn small_poly(rng: &mut impl Rng, max_deg: usize) -> RationalPoly {
    let d = rng.gen_range(0..=max_deg);
    RationalPoly::new((0..=d).map(|_| rat(rng.gen_range(-3..=3))).collect())
}

/// A random tensor built as a product of random linear factors (some
/// repeated) and a random cofactor, with `M` the smallest degree the
/// coefficients allow.
pub fn tensor(rng: &mut impl Rng, shape: TensorShape) -> Rank2Tensor {
    loop {
        let s = rng.gen_range(1..=shape.max_s);
        let x = rng.gen_range(-shape.max_split..=shape.max_split);
        let y = rng.gen_range(-shape.max_split..=shape.max_split);
        let (a, b) = (x.max(y), x.min(y));

        let mut form = BinaryForm::new(vec![RationalPoly::one()]).unwrap();
        let mut used = 0;
        while used < s && rng.gen_bool(0.6) {
            let mult = rng.gen_range(1..=s - used);
            let (p, q) = match rng.gen_range(0..6) {
                0 => (RationalPoly::one(), RationalPoly::zero()),
                1 => (RationalPoly::zero(), RationalPoly::one()),
                _ => (small_poly(rng, 1), small_poly(rng, 1)),
            };
            if p.is_zero() && q.is_zero() {
                continue;
            }
            form = form.mul(&BinaryForm::linear(&p, &q).pow(mult as u32));
            used += mult;
        }
        if used < s {
            let rest: Vec<RationalPoly> = (0..=s - used).map(|_| small_poly(rng, 1)).collect();
            form = form.mul(&BinaryForm::new(rest).unwrap());
        }
        if form.is_zero() {
            continue;
        }
        let coeffs = form.coeffs().to_vec();
        if coeffs.iter().any(|c| c.degree_or_zero() > shape.max_coeff_degree) {
            continue;
        }
        let m_degree = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c.degree_or_zero() as i64 + i as i64 * a + (s - i) as i64 * b)
            .max()
            .unwrap();
        let raw = RawTensor {
            a,
            b,
            s,
            m_degree,
            coeffs,
        };
        return validate_tensor(&raw).expect("generated within bounds");
    }
}

/// `τ = k / p` with `p` a large prime, so `τ` avoids every wall `c/ε` with
/// small denominator.
pub fn wall_free_tau(rng: &mut impl Rng) -> Rational {
    const P: i64 = 10007;
    let k = rng.gen_range(1..=3 * P);
    ratio(if k % P == 0 { k + 1 } else { k }, P)
}

/// A random positive rational with denominator up to 6 and value up to 3.
pub fn tau(rng: &mut impl Rng) -> Rational {
    let d = rng.gen_range(1..=6);
    ratio(rng.gen_range(1..=3 * d), d)
}


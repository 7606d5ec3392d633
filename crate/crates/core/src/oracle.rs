//! Slow, independent reference computations used to cross-check the main
//! algorithms.

use num_traits::Zero;

use crate::algebra::{rat, Rational};
use crate::kempf::all_multi_indexes;

/// Weighted nondecreasing isotonic regression of `v` with weights `b`, by
/// pool-adjacent-violators.
pub fn pava_increasing(b: &[Rational], v: &[Rational]) -> Vec<Rational> {
    // blocks of (total weight, weighted sum, length)
    let mut blocks: Vec<(Rational, Rational, usize)> = Vec::with_capacity(v.len());
    for (bi, vi) in b.iter().zip(v) {
        blocks.push((bi.clone(), bi * vi, 1));
        while blocks.len() >= 2 {
            let n = blocks.len();
            let (w1, s1, _) = &blocks[n - 2];
            let (w2, s2, _) = &blocks[n - 1];
            // merge when the left mean is at least the right mean
            if s1 * w2 >= s2 * w1 {
                let (w, s, k) = blocks.pop().unwrap();
                let last = blocks.last_mut().unwrap();
                last.0 += w;
                last.1 += s;
                last.2 += k;
            } else {
                break;
            }
        }
    }
    blocks
        .into_iter()
        .flat_map(|(w, s, k)| std::iter::repeat_n(s / w, k))
        .collect()
}

/// `γ = Σ_j n_j γ^(r_j)` spelled out as a vector of length `r`, with
/// `γ^(k) = (k − r, …, k − r, k, …, k)` (`k` leading entries).
pub fn gamma_vector(weights: &[Rational], ranks: &[u32], r: u32) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); r as usize];
    for (n, &k) in weights.iter().zip(ranks) {
        for (pos, slot) in out.iter_mut().enumerate() {
            let entry = if (pos as u32) < k { k as i64 - r as i64 } else { k as i64 };
            *slot += n * rat(entry);
        }
    }
    out
}

/// `min_I (γ_{r_{i_1}} + … + γ_{r_{i_s}})` over multi-indexes where the
/// tensor does not vanish.
pub fn brute_force_mu<F>(weights: &[Rational], ranks: &[u32], s: usize, nonzero: F) -> Option<Rational>
where
    F: Fn(&[usize]) -> bool,
{
    let r = *ranks.last()?;
    let gamma = gamma_vector(weights, ranks, r);
    all_multi_indexes(ranks.len(), s)
        .filter(|idx| nonzero(idx))
        .map(|idx| {
            idx.iter()
                .map(|&i| &gamma[ranks[i - 1] as usize - 1])
                .sum::<Rational>()
        })
        .min()
}

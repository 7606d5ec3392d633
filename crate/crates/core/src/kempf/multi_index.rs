//! Minimizing multi-indexes for a filtration `0 ⊂ E_1 ⊂ … ⊂ E_{t+1} = E`
//! and the counts `ε_i` derived from them.

use num_traits::{Signed, Zero};

use super::KempfError;
use crate::algebra::{rat, Rational};

/// The minimizing multi-index `I0` and the counts derived from it.
///
/// `eps[i-1] = ε_i` = number of slots `k` of `I0` with `r_{i_k} ≤ r_i`, and
/// `eps_step[i-1] = ε_i - ε_{i-1}` (with `ε_0 = 0`), so the steps sum to `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIndexEpsilon {
    /// 1-based filter indices.
    pub i0: Vec<usize>,
    pub eps: Vec<u32>,
    pub eps_step: Vec<u32>,
}

/// Coordinate `γ_p` (1-based position `p ≤ r`) of `γ = Σ n_j γ^(r_j)`, where
/// `γ^(k) = (k-r, …, k-r, k, …, k)` with `k` leading entries.
pub fn gamma_coordinate(weights: &[Rational], ranks: &[u32], p: u32) -> Rational {
    let r = *ranks.last().unwrap() as i64;
    weights
        .iter()
        .zip(ranks)
        .map(|(n, &rj)| {
            let entry = if p <= rj { rj as i64 - r } else { rj as i64 };
            n * rat(entry)
        })
        .sum()
}

/// All multi-indexes in `{1..=t+1}^s`, lexicographic order.
pub fn all_multi_indexes(t_plus_1: usize, s: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = t_plus_1.checked_pow(s as u32).expect("index space too large");
    (0..total).map(move |mut code| {
        let mut idx = vec![0; s];
        for slot in (0..s).rev() {
            idx[slot] = code % t_plus_1 + 1;
            code /= t_plus_1;
        }
        idx
    })
}

fn check_ranks(ranks: &[u32]) -> Result<(), KempfError> {
    if ranks.is_empty() {
        return Err(KempfError::Empty);
    }
    if ranks[0] == 0 || ranks.windows(2).any(|w| w[0] > w[1]) {
        return Err(KempfError::InvalidRanks);
    }
    Ok(())
}

/// Finds `I0` by enumerating `{1..=t+1}^s` and counts `ε_i` from it.
///
/// With `weights = Some(n)` (length `t`, all positive) `I0` minimizes
/// `γ_{r_{i_1}} + … + γ_{r_{i_s}}` over indexes where `nonzero` holds. Without
/// weights the multiset of slot ranks is minimized lexicographically, which
/// agrees with every choice of weights when the total rank is 2; for longer
/// filtrations of higher rank the minimizer can depend on the weights and
/// they should be supplied. Ties go to the lexicographically smallest index.
pub fn epsilon_from_oracle<F>(
    ranks: &[u32],
    s: usize,
    nonzero: F,
    weights: Option<&[Rational]>,
) -> Result<MultiIndexEpsilon, KempfError>
where
    F: Fn(&[usize]) -> bool,
{
    check_ranks(ranks)?;
    let tp1 = ranks.len();
    if let Some(n) = weights {
        if n.len() + 1 != tp1 {
            return Err(KempfError::LengthMismatch {
                expected: tp1 - 1,
                found: n.len(),
            });
        }
        if let Some(i) = n.iter().position(|x| !x.is_positive()) {
            return Err(KempfError::NonpositiveWeight { index: i + 1 });
        }
    }
    if !nonzero(&vec![tp1; s]) {
        return Err(KempfError::DegenerateTensor);
    }

    let gamma: Option<Vec<Rational>> =
        weights.map(|n| (1..=tp1).map(|i| gamma_coordinate(n, ranks, ranks[i - 1])).collect());

    // the key is computed once per index; ties keep the earlier index
    let mut best: Option<(Vec<usize>, IndexKey)> = None;
    for idx in all_multi_indexes(tp1, s) {
        if !nonzero(&idx) {
            continue;
        }
        let key = match &gamma {
            Some(g) => IndexKey::Weighted(idx.iter().map(|&i| &g[i - 1]).sum()),
            None => {
                let mut rk: Vec<u32> = idx.iter().map(|&i| ranks[i - 1]).collect();
                rk.sort_unstable();
                IndexKey::Ranks(rk)
            }
        };
        if best.as_ref().is_none_or(|(_, k)| key < *k) {
            best = Some((idx, key));
        }
    }
    let (i0, _) = best.expect("all-top index is nonzero");
    Ok(epsilon_from_index(ranks, i0))
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum IndexKey {
    Weighted(Rational),
    Ranks(Vec<u32>),
}

/// `ε_i` counts for a given multi-index.
pub fn epsilon_from_index(ranks: &[u32], i0: Vec<usize>) -> MultiIndexEpsilon {
    let eps: Vec<u32> = ranks
        .iter()
        .map(|&ri| i0.iter().filter(|&&k| ranks[k - 1] <= ri).count() as u32)
        .collect();
    let mut prev = 0;
    let eps_step = eps
        .iter()
        .map(|&e| {
            let d = e - prev;
            prev = e;
            d
        })
        .collect();
    MultiIndexEpsilon { i0, eps, eps_step }
}

/// `Σ_{i=1}^{t} n_i (s r_i − ε_i r)`.
pub fn mu_closed_form(
    weights: &[Rational],
    ranks: &[u32],
    eps: &[u32],
    s: u32,
    r: u32,
) -> Result<Rational, KempfError> {
    if let Some(i) = weights.iter().position(|x| !x.is_positive()) {
        return Err(KempfError::NonpositiveWeight { index: i + 1 });
    }
    if ranks.len() < weights.len() || eps.len() < weights.len() {
        return Err(KempfError::LengthMismatch {
            expected: weights.len(),
            found: ranks.len().min(eps.len()),
        });
    }
    Ok(weights
        .iter()
        .enumerate()
        .map(|(i, n)| n * rat(s as i64 * ranks[i] as i64 - eps[i] as i64 * r as i64))
        .fold(Rational::zero(), |a, b| a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    #[test]
    fn three_slots_not_all_bottom() {
        let e = epsilon_from_oracle(&[1, 2], 3, |idx| !idx.iter().all(|&i| i == 1), None).unwrap();
        assert_eq!(e.i0, vec![1, 1, 2]);
        assert_eq!(e.eps, vec![2, 3]);
        assert_eq!(e.eps_step, vec![2, 1]);
    }

    #[test]
    fn everywhere_nonzero() {
        let e = epsilon_from_oracle(&[1, 2, 3], 4, |_| true, Some(&[rat(1), rat(2)])).unwrap();
        assert_eq!(e.i0, vec![1; 4]);
        assert_eq!(e.eps, vec![4, 4, 4]);
    }

    #[test]
    fn forced_top() {
        let e = epsilon_from_oracle(&[1, 2], 2, |idx| !idx.contains(&1), None).unwrap();
        assert_eq!(e.i0, vec![2, 2]);
        assert_eq!(e.eps, vec![0, 2]);
    }

    #[test]
    fn degenerate_oracle() {
        assert_eq!(
            epsilon_from_oracle(&[1, 2], 2, |_| false, None),
            Err(KempfError::DegenerateTensor)
        );
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(mu_closed_form(&[rat(1)], &[1, 2], &[2, 3], 3, 2).unwrap(), rat(-1));
        assert_eq!(mu_closed_form(&[ratio(3, 2)], &[1, 2], &[0, 2], 2, 2).unwrap(), rat(3));
        // balanced: ε_i = s r_i / r
        assert_eq!(mu_closed_form(&[rat(5), rat(1)], &[1, 2, 4], &[1, 2, 4], 4, 4).unwrap(), rat(0));
    }

    #[test]
    fn gamma_vector_for_rank_two() {
        // γ = n (−1, 1) for r = 2, r_1 = 1
        assert_eq!(gamma_coordinate(&[rat(1)], &[1, 2], 1), rat(-1));
        assert_eq!(gamma_coordinate(&[rat(1)], &[1, 2], 2), rat(1));
    }
}

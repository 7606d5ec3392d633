use num_traits::{Signed, Zero};
use proptest::prelude::*;

use rk2hn_core::algebra::{
    eventual_compare, factor_rational, poly_gcd, rat, ratio, rational_function_roots, squarefree_decompose,
    BinaryForm, EventualOrder, Rational, RationalPoly, TPoly,
};
use rk2hn_core::coverings::{covering_stability, intersection_numbers, normalize};
use rk2hn_core::kempf::{envelope_maximize, epsilon_from_oracle, WeightedVector};
use rk2hn_core::random::{self, TensorShape};
use rk2hn_core::tensor::{
    candidate_sections, destabilizing_value, epsilon_both, stability, stability_with_jobs, LineSubbundle,
    SplitBundle,
};
use rk2hn_core::wire;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 48,
        ..ProptestConfig::default()
    }
}

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = RationalPoly> {
    prop::collection::vec(-4i64..=4, 0..=max_deg + 1).prop_map(|c| RationalPoly::from_i64s(&c))
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = RationalPoly> {
    poly_strategy(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn form_strategy() -> impl Strategy<Value = BinaryForm> {
    prop::collection::vec(poly_strategy(2), 2..=5)
        .prop_map(|c| BinaryForm::new(c).unwrap())
        .prop_filter("nonzero", |f| !f.is_zero())
}

fn direction() -> impl Strategy<Value = (RationalPoly, RationalPoly)> {
    (poly_strategy(1), poly_strategy(1)).prop_filter("nonzero", |(p, q)| !p.is_zero() || !q.is_zero())
}

fn tensor_shape() -> TensorShape {
    TensorShape {
        max_s: 5,
        max_coeff_degree: 4,
        max_split: 2,
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn decompositions_multiply_back(f in nonzero_poly(6), g in nonzero_poly(2)) {
        // repeated factors on purpose
        let h = &(&f * &g) * &g;
        prop_assert_eq!(squarefree_decompose(&h).unwrap().expand(), h.clone());
        prop_assert_eq!(factor_rational(&h).unwrap().expand(), h);
    }

    #[test]
    fn gcd_divides_with_coprime_cofactors(f in nonzero_poly(4), g in nonzero_poly(4), c in nonzero_poly(2)) {
        let (a, b) = (&f * &c, &g * &c);
        let d = poly_gcd(&a, &b);
        let ca = a.exact_div(&d);
        let cb = b.exact_div(&d);
        prop_assert!(ca.is_some() && cb.is_some());
        prop_assert!(poly_gcd(&ca.unwrap(), &cb.unwrap()).is_constant());
        prop_assert!(c.divides(&d));
    }

    #[test]
    fn polar_derivative_linear_and_symmetric(f in form_strategy(), u in direction(), v in direction()) {
        let du = f.polar_derivative(&u.0, &u.1).unwrap();
        let dv = f.polar_derivative(&v.0, &v.1).unwrap();
        let sum = (&u.0 + &v.0, &u.1 + &v.1);
        if !sum.0.is_zero() || !sum.1.is_zero() {
            let dsum = f.polar_derivative(&sum.0, &sum.1).unwrap();
            let added: Vec<RationalPoly> = du.coeffs().iter().zip(dv.coeffs()).map(|(x, y)| x + y).collect();
            prop_assert_eq!(dsum.coeffs(), &added[..]);
        }
        if f.degree() >= 2 {
            let uv = du.polar_derivative(&v.0, &v.1).unwrap();
            let vu = dv.polar_derivative(&u.0, &u.1).unwrap();
            prop_assert_eq!(uv, vu);
        }
    }

    #[test]
    fn function_field_roots_have_exact_multiplicity(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let t = random::tensor(&mut rng, tensor_shape());
        let form = t.form();
        let f = form.dehomogenize();
        let roots = rational_function_roots(form).unwrap();
        prop_assert!(roots.linear_multiplicity() as usize <= form.degree());
        for r in &roots.roots {
            if r.q.is_zero() {
                // the root at infinity is X1^m: m missing top coefficients
                let top = form.coeffs().iter().rposition(|c| !c.is_zero()).unwrap();
                prop_assert_eq!(r.multiplicity as usize, form.degree() - top);
                continue;
            }
            let lin = TPoly::linear(&r.p, &r.q);
            prop_assert!(f.exact_div(&lin.pow(r.multiplicity)).is_some());
            prop_assert!(f.exact_div(&lin.pow(r.multiplicity + 1)).is_none());
        }
    }

    #[test]
    fn eventual_compare_matches_values(p in poly_strategy(3), q in poly_strategy(3)) {
        let diff = &q - &p;
        let order = eventual_compare(&p, &q);
        if diff.is_zero() {
            prop_assert_eq!(order, EventualOrder::Equal);
        } else {
            // past the Cauchy bound the sign is the sign of the leading term
            let lead = diff.leading_coeff();
            let bound = diff.coeffs().iter().map(|c| (c / &lead).abs()).fold(Rational::zero(), |a, b| a.max(b));
            let m = bound.ceil() + rat(2);
            let expected = if diff.eval(&m).is_positive() { EventualOrder::Precedes } else { EventualOrder::Succeeds };
            prop_assert_eq!(order, expected);
        }
    }

    #[test]
    fn envelope_steps_increase_across_blocks(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let wv = random::weighted_vector(&mut rng, 8, 50);
        let env = envelope_maximize(&wv);
        prop_assert!(env.gamma.windows(2).all(|w| w[0] <= w[1]));
        let blocks = env.blocks();
        for pair in blocks.windows(2) {
            prop_assert!(env.gamma[pair[0].start] < env.gamma[pair[1].start]);
        }
        let balance: Rational = wv.b().iter().zip(&env.gamma).map(|(b, g)| b * g).sum();
        prop_assert!(balance.is_zero());
    }

    #[test]
    fn refinement_never_lowers_mu(seed in any::<u64>(), lambda in 1i64..10, lift in -20i64..20) {
        let mut rng = random::seeded(seed);
        let wv = random::weighted_vector(&mut rng, 6, 20);
        let before = envelope_maximize(&wv);
        let pts = wv.cumulative();
        let i = (seed as usize) % wv.len();
        let (b0, w0) = &pts[i];
        let (b1, w1) = &pts[i + 1];
        let split = ratio(lambda, 10);
        let mid_b = b0 + &(b1 - b0) * &split;
        let mid_w = w0 + &(w1 - w0) * &split + ratio(lift, 7);
        // new entries from consecutive cumulative points: v = −Δw / Δb
        let mut b = Vec::new();
        let mut v = Vec::new();
        for (k, (bk, vk)) in wv.b().iter().zip(wv.v()).enumerate() {
            if k == i {
                for (lo, hi) in [((b0, w0), (&mid_b, &mid_w)), ((&mid_b, &mid_w), (b1, w1))] {
                    let db = hi.0 - lo.0;
                    v.push(-(hi.1 - lo.1) / &db);
                    b.push(db);
                }
            } else {
                b.push(bk.clone());
                v.push(vk.clone());
            }
        }
        let refined = WeightedVector::new(b, v).unwrap();
        let after = envelope_maximize(&refined);
        prop_assert!(after.mu.square() >= before.mu.square());
    }

    #[test]
    fn weighted_and_weight_free_epsilon_agree_in_rank_two(
        s in 1usize..=4, t in 1usize..=3, threshold in 0u32..=8, n in prop::collection::vec(1i64..20, 3)
    ) {
        let mut ranks = vec![1u32; t];
        ranks.push(2);
        let nonzero = |idx: &[usize]| idx.iter().map(|&i| ranks[i - 1]).sum::<u32>() >= threshold.min(2 * s as u32);
        let weights: Vec<Rational> = n.iter().take(t).map(|&x| rat(x)).collect();
        let free = epsilon_from_oracle(&ranks, s, nonzero, None).unwrap();
        let weighted = epsilon_from_oracle(&ranks, s, nonzero, Some(&weights)).unwrap();
        prop_assert_eq!(free.eps, weighted.eps);
    }

    #[test]
    fn saturation_degree_is_sharp(a in -3i64..=3, b in -3i64..=3, p in poly_strategy(3), q in poly_strategy(3)) {
        prop_assume!(!p.is_zero() || !q.is_zero());
        let bundle = SplitBundle::new(a, b);
        let l = LineSubbundle::new(p, q, &bundle).unwrap();
        let c = l.degree();
        prop_assert!(poly_gcd(l.p(), l.q()).is_constant());
        let fits = |poly: &RationalPoly, top: i64| poly.is_zero() || (poly.degree_or_zero() as i64) <= top;
        let reaches = |poly: &RationalPoly, top: i64| !poly.is_zero() && poly.degree_or_zero() as i64 == top;
        prop_assert!(fits(l.p(), bundle.a() - c) && fits(l.q(), bundle.b() - c));
        // no common zero at infinity, so degree c + 1 fails
        prop_assert!(reaches(l.p(), bundle.a() - c) || reaches(l.q(), bundle.b() - c));
    }

    #[test]
    fn epsilon_two_ways_on_random_sections(seed in any::<u64>(), p in poly_strategy(2), q in poly_strategy(2)) {
        prop_assume!(!p.is_zero() || !q.is_zero());
        let mut rng = random::seeded(seed);
        let t = random::tensor(&mut rng, tensor_shape());
        let l = t.section(p, q).unwrap();
        let (polar, mult) = epsilon_both(&l, &t).unwrap();
        prop_assert_eq!(polar, mult);
    }

    #[test]
    fn one_step_checks_suffice(seed in any::<u64>(), k in 1i64..4, n1 in 1i64..10, n2 in 1i64..10) {
        let mut rng = random::seeded(seed);
        let t = random::tensor(&mut rng, tensor_shape());
        let tau = random::tau(&mut rng);
        let report = stability(&t, &tau).unwrap();
        let s = t.s();
        let d = t.bundle().degree();
        for cand in &report.candidates {
            // E_1 = L(−k) ⊂ E_2 = L ⊂ E; k slots in E_1 or E_2 survive iff k ≤ ε(L)
            let ranks = [1u32, 1, 2];
            let eps_l = cand.epsilon as usize;
            let nonzero = |idx: &[usize]| idx.iter().filter(|&&i| i <= 2).count() <= eps_l;
            let weights = [rat(n1), rat(n2)];
            let e = epsilon_from_oracle(&ranks, s, nonzero, Some(&weights)).unwrap();
            let c = cand.section.degree();
            let term = |deg: i64, eps: u32| rat(2 * deg - d) + &tau * rat(s as i64 - 2 * eps as i64);
            let total = &weights[0] * term(c - k, e.eps[0]) + &weights[1] * term(c, e.eps[1]);
            prop_assert!(total <= (&weights[0] + &weights[1]) * &report.value);
        }
    }

    #[test]
    fn values_invariant_under_twist(seed in any::<u64>(), k in -50i64..=50) {
        let mut rng = random::seeded(seed);
        let t = random::tensor(&mut rng, tensor_shape());
        let tau = random::tau(&mut rng);
        let tw = t.twisted(k);
        let (cands, _) = candidate_sections(&t).unwrap();
        for (l, _) in cands {
            prop_assert_eq!(
                destabilizing_value(&l.twisted(k), &tw, &tau).unwrap(),
                destabilizing_value(&l, &t, &tau).unwrap()
            );
        }
        prop_assert_eq!(normalize(&tw).e(), normalize(&t).e());
    }

    #[test]
    fn covering_counts(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let t = random::tensor(&mut rng, tensor_shape());
        let tau = random::tau(&mut rng);
        let cov = covering_stability(&t, &tau, &[]).unwrap();
        let n = normalize(&t);
        let report = stability(&n.tensor, &tau).unwrap();
        let branches: u32 = report.candidates.iter().filter(|c| c.root).map(|c| t.s() as u32 - c.epsilon).sum();
        let roots = rational_function_roots(t.form()).unwrap();
        prop_assert_eq!(branches, roots.linear_multiplicity());
        prop_assert_eq!(branches as usize == t.s(), cov.complete);
        for (d, _) in &cov.sections {
            prop_assert_eq!(d.deg_sigma + d.c0_dot_d + cov.e, 0);
            prop_assert_eq!(&intersection_numbers(&d.section, &n).unwrap(), d);
        }
    }

    #[test]
    fn reports_are_deterministic(seed in any::<u64>(), jobs in 2usize..6) {
        let mut rng = random::seeded(seed);
        let t = random::tensor(&mut rng, tensor_shape());
        let tau = random::tau(&mut rng);
        let one = stability(&t, &tau).unwrap();
        let many = stability_with_jobs(&t, &tau, jobs).unwrap();
        let text = wire::render(&wire::stability_to_json(&one));
        prop_assert_eq!(&text, &wire::render(&wire::stability_to_json(&many)));
        prop_assert_eq!(&text, &wire::render(&wire::parse_json(&text).unwrap()));
        let tensor = wire::raw_tensor_to_json(&t.to_raw());
        let back = wire::tensor_from_json(&tensor).unwrap();
        prop_assert_eq!(back.raw, t.to_raw());
    }
}

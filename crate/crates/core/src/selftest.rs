//! Reduced oracle suites that can be run from a release build.

use crate::algebra::{parse_poly, rat, ratio, Rational};
use crate::coverings::covering_agrees;
use crate::kempf::{envelope_maximize, epsilon_from_oracle, mu_closed_form};
use crate::oracle::{brute_force_mu, pava_increasing};
use crate::random::{self, TensorShape};
use crate::tensor::{
    candidate_sections, epsilon_both, stability, validate_tensor, RawTensor, Verdict,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Suite {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn case(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
        }
    }
}

fn pava(seed: u64) -> SuiteResult {
    let mut rng = random::seeded(seed);
    let mut suite = Suite::new("envelope-vs-pava");
    for k in 0..200 {
        let wv = random::weighted_vector(&mut rng, 8, 50);
        let ok = envelope_maximize(&wv).gamma == pava_increasing(wv.b(), wv.v());
        suite.case(ok, || format!("instance {k}"));
    }
    suite.finish()
}

fn multi_index(seed: u64) -> SuiteResult {
    let mut rng = random::seeded(seed.wrapping_add(1));
    let mut suite = Suite::new("multi-index-brute-force");
    for k in 0..50 {
        let f = random::filtration(&mut rng, 3, 4, 5);
        let r = *f.ranks.last().unwrap();
        for _ in 0..10 {
            let n: Vec<Rational> = (1..f.ranks.len())
                .map(|_| random::positive_rational(&mut rng, 9))
                .collect();
            let brute = brute_force_mu(&n, &f.ranks, f.s, |i| f.nonzero(i));
            let closed = epsilon_from_oracle(&f.ranks, f.s, |i| f.nonzero(i), Some(&n))
                .and_then(|e| mu_closed_form(&n, &f.ranks, &e.eps, f.s as u32, r));
            suite.case(brute.is_some() && brute == closed.ok(), || {
                format!("filtration {k} with ranks {:?}", f.ranks)
            });
        }
    }
    suite.finish()
}

fn polar(seed: u64) -> SuiteResult {
    let mut rng = random::seeded(seed.wrapping_add(2));
    let mut suite = Suite::new("polar-vs-multiplicity");
    for k in 0..50 {
        let t = random::tensor(&mut rng, TensorShape::default());
        match candidate_sections(&t) {
            Ok((cands, _)) => {
                for (l, eps) in cands {
                    let ok = matches!(epsilon_both(&l, &t), Ok((a, b)) if a == b && a == eps);
                    suite.case(ok, || format!("tensor {k}, section {l}"));
                }
            }
            Err(e) => suite.case(false, || format!("tensor {k}: {e}")),
        }
    }
    suite.finish()
}

fn covering(seed: u64) -> SuiteResult {
    let mut rng = random::seeded(seed.wrapping_add(3));
    let mut suite = Suite::new("covering-vs-bundle");
    for k in 0..30 {
        let t = random::tensor(&mut rng, TensorShape::default());
        let tau = random::tau(&mut rng);
        suite.case(covering_agrees(&t, &tau).unwrap_or(false), || format!("tensor {k} at tau {tau}"));
    }
    suite.finish()
}

fn worked() -> SuiteResult {
    let mut suite = Suite::new("worked-examples");
    let build = |cs: &[&str]| {
        validate_tensor(&RawTensor {
            a: 0,
            b: 0,
            s: cs.len() - 1,
            m_degree: 0,
            coeffs: cs.iter().map(|c| parse_poly(c).unwrap()).collect(),
        })
    };
    let cases: [(&[&str], Rational, Verdict, Rational); 4] = [
        (&["0", "0", "1"], rat(1), Verdict::Unstable, rat(2)),
        (&["0", "1", "0"], ratio(1, 3), Verdict::Semistable, rat(0)),
        (&["0", "1", "0"], rat(1), Verdict::Semistable, rat(0)),
        (&["0", "1", "0"], ratio(7, 2), Verdict::Semistable, rat(0)),
    ];
    for (cs, tau, verdict, value) in cases {
        let ok = build(cs)
            .and_then(|t| stability(&t, &tau))
            .is_ok_and(|r| r.verdict == verdict && r.value == value);
        suite.case(ok, || format!("{cs:?} at tau {tau}"));
    }
    suite.finish()
}

/// Runs every suite; the random suites are driven by `seed`.
pub fn run_selftest(seed: u64) -> Vec<SuiteResult> {
    vec![pava(seed), multi_index(seed), polar(seed), covering(seed), worked()]
}

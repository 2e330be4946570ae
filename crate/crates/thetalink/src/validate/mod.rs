//! Named check suites behind both `validate` on the command line and the
//! acceptance test target: reproduction of the published polynomial values,
//! randomized structural properties, and the E-system harness.

pub mod expected;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{self, TiePartition, TraceStrategy};
use crate::braid::{BraidMove, BraidWord, ComposeMode};
use crate::catalog::{Catalog, DISTINGUISHED_PAIRS};
use crate::esystem::{make_solution, SolutionSpec};
use crate::invariants::{
    self, combinatorics, compare, homflypt, theta, theta_closed, theta_skein, theta_trace, Engine,
};
use crate::scalar::{rat, rat_frac, Divisor, LaurentPoly, ScalarValue, TracePolynomial};

/// Outcome of a single named check.
#[derive(Debug, Clone)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(id: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { id: id.into(), passed, detail: detail.into() }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// Tuning for the randomized property suite.
#[derive(Debug, Clone)]
pub struct PropertyConfig {
    pub seed: u64,
    pub max_strands: usize,
    pub max_length: usize,
    pub agreement_cases: usize,
    pub markov_cases: usize,
}

impl Default for PropertyConfig {
    fn default() -> Self {
        PropertyConfig {
            seed: 42,
            max_strands: 4,
            max_length: 10,
            agreement_cases: 200,
            markov_cases: 200,
        }
    }
}

fn random_braid(rng: &mut ChaCha8Rng, max_strands: usize, max_length: usize) -> BraidWord {
    let strands = rng.random_range(2..=max_strands.max(2));
    let len = rng.random_range(0..=max_length);
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let i = rng.random_range(1..strands) as i32;
            if rng.random_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(strands, letters).expect("letters in range")
}

fn random_braid_with_components(
    rng: &mut ChaCha8Rng,
    max_strands: usize,
    max_length: usize,
    components: usize,
) -> BraidWord {
    loop {
        let w = random_braid(rng, max_strands, max_length);
        if w.components().count == components {
            return w;
        }
    }
}

// ---- the exact-value suite ----

/// Reproduction of every published polynomial value: trace micro-values,
/// the five pinned Homflypt polynomials, the twelve tabulated symbolic Θ
/// values, and the six pair differences.
pub fn paper_suite() -> Vec<Check> {
    let mut checks = Vec::new();
    checks.extend(trace_micro_checks());
    checks.extend(homflypt_value_checks());
    checks.extend(theta_catalog_checks());
    checks.extend(pair_difference_checks());
    checks
}

/// Criterion 1: defining micro-values of the trace.
pub fn trace_micro_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let z = TracePolynomial::z();
    let e = TracePolynomial::e();
    let delta = TracePolynomial::delta();

    let sigma1 = BraidWord::parse("{1}").unwrap();
    out.push(Check::new(
        "trace.sigma1",
        algebra::trace(&sigma1) == z,
        "trace(s1) = z",
    ));

    let sigma1sq = BraidWord::parse("{1,1}").unwrap();
    let expect = &TracePolynomial::one() + &(&delta * &z);
    out.push(Check::new(
        "trace.sigma1_squared",
        algebra::trace(&sigma1sq) == expect,
        "trace(s1^2) = 1 + d*z",
    ));

    let sigma1inv = BraidWord::parse("{-1}").unwrap();
    let expect = &z - &(&delta * &e);
    out.push(Check::new(
        "trace.sigma1_inverse",
        algebra::trace(&sigma1inv) == expect,
        "trace(s1^-1) = z - d*E",
    ));

    let mut ok = true;
    for (n, blocks) in [
        (2usize, vec![vec![0usize, 1]]),
        (4, vec![vec![0, 1, 2, 3]]),
        (5, vec![vec![0, 2], vec![1, 4]]),
        (6, vec![vec![0, 5], vec![1, 3], vec![2, 4]]),
        (3, vec![]),
    ] {
        let p = TiePartition::from_blocks(n, &blocks);
        let m = p.block_count();
        ok &= algebra::trace_state(&p, &[]) == TracePolynomial::e_pow((n - m) as u32);
    }
    out.push(Check::new(
        "trace.pure_tie_partitions",
        ok,
        "trace of m-block tie partition on n strands = E^(n-m)",
    ));
    out
}

/// Criterion 2: the five pinned Homflypt values.
pub fn homflypt_value_checks() -> Vec<Check> {
    let catalog = Catalog::builtin();
    expected::published_p_values()
        .into_iter()
        .map(|(name, want)| {
            let w = catalog.resolve(name).unwrap();
            let got = homflypt(&w);
            Check::new(
                format!("homflypt.{}", name),
                got == want,
                format!("P({}) from {}", name, w),
            )
        })
        .collect()
}

/// Criterion 3: the twelve tabulated symbolic Θ values via the trace engine.
pub fn theta_catalog_checks() -> Vec<Check> {
    let catalog = Catalog::builtin();
    expected::published_theta_values()
        .into_iter()
        .map(|(name, want)| {
            let w = catalog.resolve(name).unwrap();
            let got = theta_trace(&w);
            Check::new(
                format!("theta.{}", name),
                got == want,
                format!("theta({}) from {} letters", name, w.len()),
            )
        })
        .collect()
}

/// Criterion 4: the six pair differences, their `(E−1)` divisibility, and
/// their specializations.
pub fn pair_difference_checks() -> Vec<Check> {
    let catalog = Catalog::builtin();
    let expected_diffs = expected::published_pair_differences();
    let mut out = Vec::new();
    for (i, (name1, name2)) in DISTINGUISHED_PAIRS.iter().enumerate() {
        let w1 = catalog.resolve(name1).unwrap();
        let w2 = catalog.resolve(name2).unwrap();
        let report = compare(name1, &w1, name2, &w2);
        let diff = &report.theta_difference;
        let want = &expected_diffs[i];

        let formula = diff == want;
        let p_equal = report.p_equal;
        let divisible = diff.exact_div(&Divisor::EMinusOne).is_some();
        let vanishes = diff.specialize_e(&rat(1)).unwrap().is_zero();
        let nonzero_half = !report.specializations["1/2"].is_zero();
        let nonzero_third = !report.specializations["1/3"].is_zero();

        out.push(Check::new(
            format!("difference.pair{}.formula", i + 1),
            formula,
            format!("theta({}) - theta({}) matches the published formula", name1, name2),
        ));
        out.push(Check::new(
            format!("difference.pair{}.structure", i + 1),
            p_equal && divisible && vanishes && nonzero_half && nonzero_third,
            "P-equal, divisible by (E-1), zero at E=1, nonzero at E=1/2 and 1/3",
        ));
    }
    out
}

// ---- randomized property suite ----

pub fn properties_suite(cfg: &PropertyConfig) -> Vec<Check> {
    let mut checks = Vec::new();
    checks.push(engine_agreement_check(cfg));
    checks.push(markov_invariance_check(cfg));
    checks.push(trace_order_independence_check(cfg));
    checks.extend(structure_checks(cfg));
    checks.extend(stirling_checks());
    checks
}

/// Criterion 5: the three engines agree on random braids.
pub fn engine_agreement_check(cfg: &PropertyConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut failures = Vec::new();
    for _ in 0..cfg.agreement_cases {
        let w = random_braid(&mut rng, cfg.max_strands, cfg.max_length);
        let t = theta_trace(&w);
        if theta_skein(&w) != t || theta_closed(&w) != t {
            failures.push(w.to_string());
        }
    }
    Check::new(
        "engines.agreement",
        failures.is_empty(),
        if failures.is_empty() {
            format!("trace = skein = closed on {} random braids", cfg.agreement_cases)
        } else {
            format!("disagreement on {:?}", failures)
        },
    )
}

/// Criterion 6: Θ is unchanged under conjugation and stabilization.
pub fn markov_invariance_check(cfg: &PropertyConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6d61726b6f76);
    let mut failures = Vec::new();
    for _ in 0..cfg.markov_cases {
        let w = random_braid(&mut rng, cfg.max_strands, cfg.max_length);
        let t = theta_trace(&w);
        let mut m = w.clone();
        for _ in 0..rng.random_range(1..=4usize) {
            let mv = match rng.random_range(0..4u8) {
                0 => BraidMove::Cycle,
                1 => {
                    let i = rng.random_range(1..m.strands().max(2)) as i32;
                    BraidMove::Conjugate(if rng.random_bool(0.5) { i } else { -i })
                }
                2 => BraidMove::Stabilize(true),
                _ => BraidMove::Stabilize(false),
            };
            m = m.modify(&mv).expect("moves keep letters in range");
        }
        if theta_trace(&m) != t {
            failures.push(format!("{} ~ {}", w, m));
        }
    }
    Check::new(
        "markov.invariance",
        failures.is_empty(),
        if failures.is_empty() {
            format!("theta invariant under {} random move sequences", cfg.markov_cases)
        } else {
            format!("broken by {:?}", failures)
        },
    )
}

/// Reduction-order independence of the trace.
pub fn trace_order_independence_check(cfg: &PropertyConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6f72646572);
    let mut ok = true;
    for _ in 0..40 {
        let w = random_braid(&mut rng, cfg.max_strands, cfg.max_length.min(8));
        let base = algebra::trace(&w);
        for negatives_from_right in [false, true] {
            for window_from_left in [false, true] {
                let pre_rotate = rng.random_range(0..=w.len());
                let s = TraceStrategy { negatives_from_right, window_from_left, pre_rotate };
                ok &= algebra::trace_with_strategy(&w, s) == base;
            }
        }
    }
    Check::new(
        "trace.order_independence",
        ok,
        "randomized rule-application orders give identical traces",
    )
}

/// Criterion 7: the structural theorems as properties.
pub fn structure_checks(cfg: &PropertyConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x737472756374);
    let delta = ScalarValue::from_laurent(LaurentPoly::delta());
    let s1 = ScalarValue::from_laurent(LaurentPoly::s_pow(1));
    let s1n = ScalarValue::from_laurent(LaurentPoly::s_pow(-1));

    // knots: no E symbol, and every engine collapses to P
    let mut ok = true;
    for _ in 0..25 {
        let w = random_braid_with_components(&mut rng, cfg.max_strands, cfg.max_length, 1);
        let t = theta_trace(&w);
        ok &= !t.mentions_e() && t == homflypt(&w);
    }
    out.push(Check::new("structure.knots_are_p", ok, "knot values are E-free and equal P"));

    // disjoint unions of knots: theta = E^{1-k} * P
    let mut ok = true;
    for _ in 0..12 {
        let k = rng.random_range(2..=3usize);
        let mut w = random_braid_with_components(&mut rng, 3, 6, 1);
        for _ in 1..k {
            let next = random_braid_with_components(&mut rng, 3, 6, 1);
            w = w.compose(&next, ComposeMode::Disjoint).unwrap();
        }
        let theta_w = theta_trace(&w);
        let scale = ScalarValue::from_laurent(LaurentPoly::e_pow(1 - k as i32));
        ok &= theta_w == &scale * &homflypt(&w);
    }
    out.push(Check::new(
        "structure.disjoint_unions",
        ok,
        "theta = E^(1-k) * P on split unions of k knots",
    ));

    // two-component decomposition, 30 cases
    let mut ok = true;
    for _ in 0..30 {
        let w = random_braid_with_components(&mut rng, cfg.max_strands, cfg.max_length, 2);
        ok &= invariants::two_component_decomposition_check(&w).unwrap();
    }
    out.push(Check::new(
        "structure.two_component_identity",
        ok,
        "theta = P + lambda^lk (E^-1 - 1) P(split) on 30 random 2-component links",
    ));

    // mixed-crossing skein identity
    let mut ok = true;
    let mut tested = 0;
    while tested < 25 {
        let w = random_braid(&mut rng, cfg.max_strands, cfg.max_length);
        let mixed = (0..w.len()).find(|&p| {
            let (a, b, _) = w.crossing_components(p).unwrap();
            a != b
        });
        let Some(p) = mixed else { continue };
        tested += 1;
        let (plus, minus) = if w.letters()[p] > 0 {
            (w.clone(), w.modify(&BraidMove::Switch(p)).unwrap())
        } else {
            (w.modify(&BraidMove::Switch(p)).unwrap(), w.clone())
        };
        let smooth = w.modify(&BraidMove::Smooth(p)).unwrap();
        let lhs = &(&s1n * &theta_trace(&plus)) - &(&s1 * &theta_trace(&minus));
        ok &= lhs == &delta * &theta_trace(&smooth);
    }
    out.push(Check::new(
        "structure.mixed_skein",
        ok,
        "s^-1 theta(L+) - s theta(L-) = d theta(L0) at mixed crossings",
    ));

    // the same identity must fail at a knot self-crossing, except at E = 1
    let w = BraidWord::parse("{1,1,1}").unwrap();
    let plus = theta_trace(&w);
    let minus = theta_trace(&w.modify(&BraidMove::Switch(0)).unwrap());
    let smooth = theta_trace(&w.modify(&BraidMove::Smooth(0)).unwrap());
    let defect = &(&(&s1n * &plus) - &(&s1 * &minus)) - &(&delta * &smooth);
    out.push(Check::new(
        "structure.self_crossing_witness",
        !defect.is_zero() && defect.specialize_e(&rat(1)).unwrap().is_zero(),
        "skein identity fails symbolically at a trefoil self-crossing",
    ));

    // homflypt satisfies the skein relation at every crossing
    let mut ok = true;
    for _ in 0..25 {
        let w = random_braid(&mut rng, cfg.max_strands, cfg.max_length);
        if w.is_empty() {
            continue;
        }
        let p = rng.random_range(0..w.len());
        let (plus, minus) = if w.letters()[p] > 0 {
            (w.clone(), w.modify(&BraidMove::Switch(p)).unwrap())
        } else {
            (w.modify(&BraidMove::Switch(p)).unwrap(), w.clone())
        };
        let smooth = w.modify(&BraidMove::Smooth(p)).unwrap();
        let lhs = &(&s1n * &homflypt(&plus)) - &(&s1 * &homflypt(&minus));
        ok &= lhs == &delta * &homflypt(&smooth);
    }
    out.push(Check::new(
        "structure.homflypt_skein",
        ok,
        "P satisfies the skein relation at all crossings",
    ));

    // mirror symmetry across the whole catalog
    let catalog = Catalog::builtin();
    let mut ok = true;
    for entry in catalog.entries() {
        let w = entry.word().unwrap();
        let m = w.modify(&BraidMove::Mirror).unwrap();
        let lhs = theta(&m, Engine::Auto).unwrap();
        ok &= lhs == theta(&w, Engine::Auto).unwrap().invert_qs();
    }
    out.push(Check::new(
        "structure.mirror",
        ok,
        "theta(mirror) = theta with q -> q^-1, s -> s^-1 on the catalog",
    ));

    // connected sums of knots multiply
    let mut ok = true;
    for _ in 0..10 {
        let a = random_braid_with_components(&mut rng, 3, 7, 1);
        let b = random_braid_with_components(&mut rng, 3, 7, 1);
        let sum = a.compose(&b, ComposeMode::ConnectedSum).unwrap();
        ok &= theta_trace(&sum) == &theta_trace(&a) * &theta_trace(&b);
    }
    out.push(Check::new(
        "structure.connected_sum",
        ok,
        "theta(K1 # K2) = theta(K1) * theta(K2)",
    ));

    // 2-component pairwise depth behaviour: theta − P on a 2-component
    // link is (E⁻¹ − 1)·T with T independent of E, so for a P-equivalent
    // pair the difference at one depth d ≥ 2 vanishes iff it does at all
    let mut ok = true;
    for _ in 0..10 {
        let w1 = random_braid_with_components(&mut rng, cfg.max_strands, cfg.max_length, 2);
        let w2 = random_braid_with_components(&mut rng, cfg.max_strands, cfg.max_length, 2);
        let diff = &theta_trace(&w1) - &theta_trace(&w2);
        let p_diff = diff.specialize_e(&rat(1)).unwrap();
        // theta-diff − P-diff = (E⁻¹ − 1)·T = (E − 1)·(−T/E) with T E-free
        let e_part = &diff - &p_diff;
        match e_part.exact_div(&Divisor::EMinusOne) {
            None => ok = false,
            Some(q) => {
                let t = &(-&q) * &ScalarValue::from_laurent(LaurentPoly::e_pow(1));
                ok &= !t.mentions_e();
            }
        }
        if !p_diff.is_zero() {
            continue; // vanishing equivalence only applies to P-equivalent pairs
        }
        let d2 = diff.specialize_e(&rat_frac(1, 2)).unwrap().is_zero();
        let d5 = diff.specialize_e(&rat_frac(1, 5)).unwrap().is_zero();
        ok &= d2 == d5;
    }
    // and on the tabulated 3-component pairs, every depth >= 2 distinguishes
    for (name1, name2) in DISTINGUISHED_PAIRS {
        let w1 = catalog.resolve(name1).unwrap();
        let w2 = catalog.resolve(name2).unwrap();
        let diff = &theta(&w1, Engine::Auto).unwrap() - &theta(&w2, Engine::Auto).unwrap();
        for d in 2..=5i64 {
            ok &= !diff.specialize_e(&rat_frac(1, d)).unwrap().is_zero();
        }
    }
    out.push(Check::new(
        "structure.depth_specializations",
        ok,
        "depth-d distinguishing behaviour matches the 2-component dichotomy",
    ));

    out
}

/// Criterion 8: the Stirling identity and the n-unlink values.
pub fn stirling_checks() -> Vec<Check> {
    let mut out = Vec::new();

    let mut ok = true;
    for n in 1..=8usize {
        let mut sum = ScalarValue::zero();
        for k in 1..=n {
            let c = ScalarValue::from_laurent(LaurentPoly::constant(rat(
                combinatorics::stirling(n, k) as i64,
            )));
            sum = &sum + &(&c * &combinatorics::e_k(k));
        }
        ok &= sum == ScalarValue::from_laurent(LaurentPoly::e_pow(1 - n as i32));
    }
    out.push(Check::new(
        "stirling.identity",
        ok,
        "sum_k S(n,k) E_k = E^(1-n) for n <= 8",
    ));

    let mut ok = true;
    let mu_over_e = &combinatorics::mu()
        * &ScalarValue::from_laurent(LaurentPoly::e_pow(-1));
    for n in 1..=6usize {
        let unlink = BraidWord::identity(n);
        let expect = mu_over_e.pow(n as u32 - 1);
        ok &= theta_trace(&unlink) == expect;
        ok &= theta_skein(&unlink) == expect;
        ok &= theta_closed(&unlink) == expect;
    }
    out.push(Check::new(
        "stirling.unlinks",
        ok,
        "theta(n-unlink) = (mu/E)^(n-1) through all three engines",
    ));
    out
}

// ---- E-system suite ----

/// Criterion 9: E-system solutions verify numerically.
pub fn esystem_suite(tol: f64) -> Vec<Check> {
    let mut out = Vec::new();

    let mut ok = true;
    for d in 1..=8usize {
        for m in 0..d {
            let c = make_solution(d, &SolutionSpec::Singleton(m)).unwrap();
            ok &= c.verify(tol);
            ok &= (c.e_value() - Complex64::new(1.0, 0.0)).norm() < tol;
        }
        let c = make_solution(d, &SolutionSpec::Trivial).unwrap();
        ok &= c.verify(tol);
        ok &= (c.e_value() - Complex64::new(1.0 / d as f64, 0.0)).norm() < tol;
    }
    out.push(Check::new(
        "esystem.singletons_and_trivial",
        ok,
        "singleton and trivial solutions verify for d <= 8",
    ));

    let mut ok = true;
    for d in 1..=6usize {
        for mask in 1u32..(1 << d) {
            let set: Vec<usize> = (0..d).filter(|&m| mask & (1 << m) != 0).collect();
            let size = set.len();
            let c = make_solution(d, &SolutionSpec::Subset(set)).unwrap();
            ok &= c.verify(tol);
            ok &= (c.e_value() - Complex64::new(1.0 / size as f64, 0.0)).norm() < tol;
        }
    }
    out.push(Check::new(
        "esystem.subsets",
        ok,
        "subset candidates verify with E = 1/|D| for d <= 6",
    ));
    out
}

//! The three engines for `Θ`, `Θ_d` and the Homflypt polynomial `P`, plus
//! comparison utilities.
//!
//! * `theta_trace` — normalize the Markov trace:
//!   `Θ(ŵ) = Λ^{n−1}·s^{ε(w)}·tr(w)|_{z ↦ δE/ω}` with `Λ = ω/(δ·E·s)`.
//! * `theta_skein` — resolve mixed crossings by the skein relation
//!   `Θ(L₊) = λ·Θ(L₋) + δ·s·Θ(L₀)` until the link splits into knots.
//! * `theta_closed` — sum over set partitions of the components:
//!   `Θ(L) = Σ_k μ^{k−1}·E_k·Σ_π λ^{ν(π)}·P(πL)`.
//!
//! `P` is `Θ` at `E = 1`; `Θ_d` is `Θ` at `E = 1/d`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::algebra;
use crate::braid::{BraidMove, BraidWord};
use crate::scalar::{
    rat, rat_frac, substitute_z, LaurentPoly, Mono, ScalarValue,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("expected a link with exactly {expected} components, found {found}")]
    WrongComponentCount { expected: usize, found: usize },
    #[error("theta_d requires d >= 1, got {0}")]
    BadDepth(usize),
    #[error("partition enumeration limited to {limit} elements, got {n}")]
    PartitionBound { n: usize, limit: usize },
    #[error("engines disagree on {0}")]
    EngineMismatch(String),
    #[error(transparent)]
    Braid(#[from] crate::braid::BraidError),
}

/// Which computation path evaluates the invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Markov-trace normalization; the default for knots.
    Trace,
    /// Skein recursion over mixed crossings.
    Skein,
    /// Closed partition formula; the default for links.
    Closed,
    /// Run every engine and insist on agreement.
    All,
    /// Trace for knots, closed formula otherwise.
    #[default]
    Auto,
}

impl Engine {
    pub fn parse(text: &str) -> Option<Engine> {
        match text {
            "trace" => Some(Engine::Trace),
            "skein" => Some(Engine::Skein),
            "closed" => Some(Engine::Closed),
            "all" => Some(Engine::All),
            "auto" => Some(Engine::Auto),
            _ => None,
        }
    }
}

/// `δ = q − q⁻¹` as a scalar.
fn delta_scalar() -> ScalarValue {
    ScalarValue::from_laurent(LaurentPoly::delta())
}

/// `μ = (s⁻¹ − s)/δ`, the value `P` picks up per split unknot.
pub fn mu() -> ScalarValue {
    ScalarValue::new(&LaurentPoly::s_pow(-1) - &LaurentPoly::s_pow(1), 1, 0)
}

/// `μ/E = Λ`, the split factor of `Θ`.
fn mu_over_e() -> ScalarValue {
    &mu() * &ScalarValue::from_laurent(LaurentPoly::e_pow(-1))
}

/// `λ^k` as a scalar (`λ = s²`).
fn lambda_pow(k: i64) -> ScalarValue {
    ScalarValue::from_laurent(LaurentPoly::monomial(
        Mono { q: 0, s: 2 * k as i32, e: 0 },
        rat(1),
    ))
}

/// `s^k` as a scalar.
fn s_pow(k: i64) -> ScalarValue {
    ScalarValue::from_laurent(LaurentPoly::monomial(
        Mono { q: 0, s: k as i32, e: 0 },
        rat(1),
    ))
}

/// Θ through the Markov trace.
pub fn theta_trace(w: &BraidWord) -> ScalarValue {
    let n = w.strands() as u32;
    let eps = w.exponent_sum();
    let tr = substitute_z(&algebra::trace(w));
    // Λ = ω/(δ·E·s) = (ω·E⁻¹·s⁻¹)/δ
    let lambda_norm = ScalarValue::new(
        &LaurentPoly::omega() * &LaurentPoly::monomial(Mono { q: 0, s: -1, e: -1 }, rat(1)),
        1,
        0,
    );
    &(&lambda_norm.pow(n - 1) * &s_pow(eps)) * &tr
}

/// The Homflypt polynomial `P = Θ` at `E = 1`.
pub fn homflypt(w: &BraidWord) -> ScalarValue {
    theta_trace(w)
        .specialize_e(&rat(1))
        .expect("specializing at 1 is always valid")
}

/// Θ through the mixed-crossing skein recursion.
///
/// The lowest component is made to lie entirely above the rest: every mixed
/// crossing where it passes under is resolved via
/// `Θ(L₊) = λ·Θ(L₋) + δ·s·Θ(L₀)` (or its negative-crossing form); a fully
/// overlying component splits off with the factor `μ/E`.
pub fn theta_skein(w: &BraidWord) -> ScalarValue {
    let cs = w.components();
    if cs.count == 1 {
        return homflypt(w);
    }

    // convention: at a positive crossing the strand entering on the lower
    // position passes over; "bad" means component 0 passes under.
    let mut bad = None;
    for p in 0..w.len() {
        let (clo, chi, sign) = w.crossing_components(p).unwrap();
        if (clo == 0) == (chi == 0) {
            continue; // self crossing or not touching component 0
        }
        let under_is_zero = if sign > 0 { chi == 0 } else { clo == 0 };
        if under_is_zero {
            bad = Some((p, sign));
            break;
        }
    }

    match bad {
        None => {
            // component 0 overlies (or never meets) the rest: split
            let lowest = w.extract_sublink(&BTreeSet::from([0])).unwrap();
            let rest: BTreeSet<usize> = (1..cs.count).collect();
            let rest = w.extract_sublink(&rest).unwrap();
            &(&mu_over_e() * &theta_skein(&lowest)) * &theta_skein(&rest)
        }
        Some((p, sign)) => {
            let switched = w.modify(&BraidMove::Switch(p)).unwrap();
            let smoothed = w.modify(&BraidMove::Smooth(p)).unwrap();
            let t_switch = theta_skein(&switched);
            let t_smooth = theta_skein(&smoothed);
            if sign > 0 {
                &(&lambda_pow(1) * &t_switch) + &(&(&delta_scalar() * &s_pow(1)) * &t_smooth)
            } else {
                &(&lambda_pow(-1) * &t_switch) - &(&(&delta_scalar() * &s_pow(-1)) * &t_smooth)
            }
        }
    }
}

/// Θ through the closed partition formula
/// `Θ(L) = Σ_k μ^{k−1}·E_k·Σ_π λ^{ν(π)}·P(πL)`.
pub fn theta_closed(w: &BraidWord) -> ScalarValue {
    let cs = w.components();
    let c = cs.count;
    let partitions =
        combinatorics::set_partitions(c).expect("component count within partition bound");

    // P of every needed sublink, computed once per block
    let mut p_cache: HashMap<Vec<usize>, ScalarValue> = HashMap::new();
    let mut p_of = |block: &[usize]| -> ScalarValue {
        if let Some(v) = p_cache.get(block) {
            return v.clone();
        }
        let keep: BTreeSet<usize> = block.iter().copied().collect();
        let sub = w.extract_sublink(&keep).unwrap();
        let v = homflypt(&sub);
        p_cache.insert(block.to_vec(), v.clone());
        v
    };

    let mut total = ScalarValue::zero();
    for pi in &partitions {
        let blocks = pi.blocks();
        let k = blocks.len();
        // ν(π): linking across distinct blocks
        let mut nu: i64 = 0;
        for i in 0..c {
            for j in (i + 1)..c {
                if pi.block_id(i) != pi.block_id(j) {
                    nu += cs.linking_int(i, j);
                }
            }
        }
        let mut term = &mu().pow(k as u32 - 1) * &combinatorics::e_k(k);
        term = &term * &lambda_pow(nu);
        for b in &blocks {
            term = &term * &p_of(b);
        }
        total = &total + &term;
    }
    total
}

/// Θ through the requested engine.
pub fn theta(w: &BraidWord, engine: Engine) -> Result<ScalarValue, InvariantError> {
    let guard_partitions = || {
        let c = w.components().count;
        if c > combinatorics::DEFAULT_BOUND {
            Err(InvariantError::PartitionBound { n: c, limit: combinatorics::DEFAULT_BOUND })
        } else {
            Ok(())
        }
    };
    match engine {
        Engine::Trace => Ok(theta_trace(w)),
        Engine::Skein => Ok(theta_skein(w)),
        Engine::Closed => {
            guard_partitions()?;
            Ok(theta_closed(w))
        }
        Engine::Auto => {
            if w.components().count == 1 {
                Ok(theta_trace(w))
            } else {
                guard_partitions()?;
                Ok(theta_closed(w))
            }
        }
        Engine::All => {
            guard_partitions()?;
            let t = theta_trace(w);
            let s = theta_skein(w);
            let c = theta_closed(w);
            if t != s || t != c {
                return Err(InvariantError::EngineMismatch(w.to_string()));
            }
            Ok(t)
        }
    }
}

/// `Θ_d = Θ` at `E = 1/d`.
pub fn theta_d(w: &BraidWord, d: usize, engine: Engine) -> Result<ScalarValue, InvariantError> {
    if d < 1 {
        return Err(InvariantError::BadDepth(d));
    }
    let t = theta(w, engine)?;
    Ok(t
        .specialize_e(&rat_frac(1, d as i64))
        .expect("1/d is nonzero"))
}

/// For a 2-component closure, check the decomposition
/// `Θ(L) = P(L) + λ^{lk}·(E⁻¹ − 1)·μ·P(K₁)·P(K₂)` exactly.
pub fn two_component_decomposition_check(w: &BraidWord) -> Result<bool, InvariantError> {
    let cs = w.components();
    if cs.count != 2 {
        return Err(InvariantError::WrongComponentCount { expected: 2, found: cs.count });
    }
    let theta = theta_trace(w);
    let p = homflypt(w);
    let k1 = homflypt(&w.extract_sublink(&BTreeSet::from([0]))?);
    let k2 = homflypt(&w.extract_sublink(&BTreeSet::from([1]))?);
    let lk = cs.linking_int(0, 1);
    let e_inv_minus_1 =
        ScalarValue::from_laurent(&LaurentPoly::e_pow(-1) - &LaurentPoly::one());
    let correction = &(&(&lambda_pow(lk) * &e_inv_minus_1) * &mu()) * &(&k1 * &k2);
    Ok(&theta - &p == correction)
}

/// Result of comparing two links under `P` and `Θ`.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub link1: String,
    pub link2: String,
    pub p_equal: bool,
    pub theta_equal: bool,
    pub theta_difference: ScalarValue,
    pub specializations: BTreeMap<String, ScalarValue>,
}

impl ComparisonReport {
    /// `P`-equal but `Θ`-distinguished.
    pub fn distinguished(&self) -> bool {
        self.p_equal && !self.theta_equal
    }
}

/// Compare two braid closures under `P`, `Θ`, and `Θ_d` for `d = 2, 3`.
pub fn compare(name1: &str, w1: &BraidWord, name2: &str, w2: &BraidWord) -> ComparisonReport {
    let t1 = theta(w1, Engine::Auto).expect("auto engine is total");
    let t2 = theta(w2, Engine::Auto).expect("auto engine is total");
    let diff = &t1 - &t2;
    let p_diff = diff.specialize_e(&rat(1)).expect("E=1");
    let mut specializations = BTreeMap::new();
    specializations.insert(
        "1/2".to_string(),
        diff.specialize_e(&rat_frac(1, 2)).expect("E=1/2"),
    );
    specializations.insert(
        "1/3".to_string(),
        diff.specialize_e(&rat_frac(1, 3)).expect("E=1/3"),
    );
    ComparisonReport {
        link1: name1.to_string(),
        link2: name2.to_string(),
        p_equal: p_diff.is_zero(),
        theta_equal: diff.is_zero(),
        theta_difference: diff,
        specializations,
    }
}

/// Set-partition and Stirling-number helpers used by the closed formula.
pub mod combinatorics {
    use super::*;
    use crate::algebra::TiePartition;

    /// Default cap on partition enumeration (Bell numbers grow fast).
    pub const DEFAULT_BOUND: usize = 10;

    /// All set partitions of `{0..n}`, as canonical partitions.
    pub fn set_partitions(n: usize) -> Result<Vec<TiePartition>, InvariantError> {
        set_partitions_bounded(n, DEFAULT_BOUND)
    }

    pub fn set_partitions_bounded(
        n: usize,
        bound: usize,
    ) -> Result<Vec<TiePartition>, InvariantError> {
        if n == 0 || n > bound {
            return Err(InvariantError::PartitionBound { n, limit: bound });
        }
        // restricted growth strings: rgs[0] = 0, rgs[i+1] ≤ max(rgs[..=i]) + 1
        let mut out = Vec::new();
        let mut rgs = vec![0u8; n];
        loop {
            out.push(TiePartition::from_rgs(&rgs));
            // next RGS in lexicographic order
            let mut i = n;
            loop {
                if i == 1 {
                    return Ok(out);
                }
                i -= 1;
                let cap = rgs[..i].iter().copied().max().unwrap() + 1;
                if rgs[i] < cap {
                    rgs[i] += 1;
                    for v in rgs[i + 1..].iter_mut() {
                        *v = 0;
                    }
                    break;
                }
            }
        }
    }

    /// Stirling number of the second kind `S(n, k)`.
    pub fn stirling(n: usize, k: usize) -> u64 {
        if n == 0 && k == 0 {
            return 1;
        }
        if k == 0 || k > n {
            return 0;
        }
        stirling(n - 1, k - 1) + (k as u64) * stirling(n - 1, k)
    }

    /// The falling factorial `E_k = (E⁻¹−1)(E⁻¹−2)⋯(E⁻¹−k+1)`, `E_1 = 1`.
    pub fn e_k(k: usize) -> ScalarValue {
        let mut acc = LaurentPoly::one();
        for j in 1..k {
            let factor = &LaurentPoly::e_pow(-1) - &LaurentPoly::constant(rat(j as i64));
            acc = &acc * &factor;
        }
        ScalarValue::from_laurent(acc)
    }

    /// `μ = (s⁻¹ − s)/δ`.
    pub fn mu() -> ScalarValue {
        super::mu()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::ComposeMode;

    fn bw(text: &str) -> BraidWord {
        BraidWord::parse(text).unwrap()
    }

    fn unlink(k: usize) -> BraidWord {
        BraidWord::identity(k)
    }

    /// λ·μ/E + δ·s, the Hopf link value.
    fn hopf_theta() -> ScalarValue {
        let lam_mu_over_e = &lambda_pow(1) * &mu_over_e();
        &lam_mu_over_e + &(&delta_scalar() * &s_pow(1))
    }

    /// λ(q² + q⁻² − λ), the (positive) trefoil Homflypt value.
    fn trefoil_p() -> ScalarValue {
        let inner = &(&LaurentPoly::q_pow(2) + &LaurentPoly::q_pow(-2)) - &LaurentPoly::s_pow(2);
        ScalarValue::from_laurent(&LaurentPoly::s_pow(2) * &inner)
    }

    #[test]
    fn unknot_and_unlinks() {
        assert!(theta_trace(&unlink(1)).is_one());
        for k in 2..=4usize {
            let expect = mu_over_e().pow(k as u32 - 1);
            assert_eq!(theta_trace(&unlink(k)), expect, "{}-unlink", k);
            assert_eq!(theta_skein(&unlink(k)), expect);
            assert_eq!(theta_closed(&unlink(k)), expect);
        }
    }

    #[test]
    fn hopf_all_engines() {
        let w = bw("{1,1}");
        let expect = hopf_theta();
        assert_eq!(theta_trace(&w), expect);
        assert_eq!(theta_skein(&w), expect);
        assert_eq!(theta_closed(&w), expect);
    }

    #[test]
    fn two_unlink_splits_immediately() {
        let w = bw("{1,-1}");
        assert_eq!(theta_skein(&w), mu_over_e());
    }

    #[test]
    fn trefoil_homflypt() {
        assert_eq!(homflypt(&bw("{1,1,1}")), trefoil_p());
        // knots carry no E
        assert!(!theta_trace(&bw("{1,1,1}")).mentions_e());
    }

    #[test]
    fn knot_engines_collapse_to_p() {
        for text in ["{1,1,1}", "{1,-2,1,-2}", "{-1,-1,-1}"] {
            let w = bw(text);
            assert_eq!(w.components().count, 1);
            let t = theta_trace(&w);
            assert_eq!(t, theta_skein(&w), "{}", text);
            assert_eq!(t, theta_closed(&w), "{}", text);
            assert_eq!(t, homflypt(&w), "{}", text);
        }
    }

    #[test]
    fn theta_d_examples() {
        let w = bw("{1,1}");
        assert_eq!(theta_d(&w, 1, Engine::Trace).unwrap(), homflypt(&w));
        let expect = theta_trace(&w).specialize_e(&rat_frac(1, 2)).unwrap();
        assert_eq!(theta_d(&w, 2, Engine::Trace).unwrap(), expect);
        // on a knot every depth agrees with P
        let k = bw("{1,1,1}");
        assert_eq!(theta_d(&k, 2, Engine::Trace).unwrap(), homflypt(&k));
        assert!(theta_d(&k, 0, Engine::Trace).is_err());
    }

    #[test]
    fn two_component_identity() {
        for text in ["{1,1}", "{1,-1}", "{1,1,1,1}"] {
            let w = bw(text);
            assert!(two_component_decomposition_check(&w).unwrap(), "{}", text);
        }
        assert!(two_component_decomposition_check(&bw("{1,1,1}")).is_err());
    }

    #[test]
    fn split_multiplicativity() {
        let hopf = bw("{1,1}");
        let trefoil = bw("{1,1,1}");
        let both = hopf.compose(&trefoil, ComposeMode::Disjoint).unwrap();
        let expect = &(&mu_over_e() * &theta_trace(&hopf)) * &theta_trace(&trefoil);
        assert_eq!(theta_trace(&both), expect);
    }

    #[test]
    fn connected_sum_multiplicativity() {
        let t = bw("{1,1,1}");
        let granny = t.compose(&t, ComposeMode::ConnectedSum).unwrap();
        assert_eq!(theta_trace(&granny), &theta_trace(&t) * &theta_trace(&t));
    }

    #[test]
    fn mirror_symmetry() {
        for text in ["{1,1,1}", "{1,1}", "{1,-2,1,-2}"] {
            let w = bw(text);
            let m = w.modify(&BraidMove::Mirror).unwrap();
            assert_eq!(theta_trace(&m), theta_trace(&w).invert_qs(), "{}", text);
        }
    }

    #[test]
    fn compare_reports() {
        let w = bw("{1,1}");
        let r = compare("a", &w, "b", &w);
        assert!(r.p_equal && r.theta_equal && !r.distinguished());
        assert!(r.theta_difference.is_zero());

        let r = compare("hopf", &w, "unlink", &unlink(2));
        assert!(!r.p_equal);
    }

    #[test]
    fn stirling_and_e_k() {
        assert_eq!(combinatorics::stirling(3, 2), 3);
        assert_eq!(combinatorics::stirling(4, 2), 7);
        assert_eq!(
            combinatorics::e_k(2),
            ScalarValue::from_laurent(&LaurentPoly::e_pow(-1) - &LaurentPoly::one())
        );
        // Σ_k S(n,k)·E_k = E^{1−n}
        for n in 1..=8usize {
            let mut sum = ScalarValue::zero();
            for k in 1..=n {
                let s = ScalarValue::from_laurent(LaurentPoly::constant(rat(
                    combinatorics::stirling(n, k) as i64,
                )));
                sum = &sum + &(&s * &combinatorics::e_k(k));
            }
            let expect = ScalarValue::from_laurent(LaurentPoly::e_pow(1 - n as i32));
            assert_eq!(sum, expect, "n = {}", n);
        }
    }

    #[test]
    fn set_partition_counts() {
        let bell = [1usize, 2, 5, 15, 52, 203];
        for (n, expect) in bell.iter().enumerate() {
            assert_eq!(
                combinatorics::set_partitions(n + 1).unwrap().len(),
                *expect,
                "Bell({})",
                n + 1
            );
        }
        assert!(combinatorics::set_partitions(11).is_err());
        assert!(combinatorics::set_partitions(0).is_err());
    }

    #[test]
    fn skein_relation_on_mixed_crossings() {
        // s⁻¹·Θ(w₊) − s·Θ(w₋) = δ·Θ(w₀) at a mixed crossing
        let w = bw("{1,1}");
        let plus = theta_trace(&w);
        let minus = theta_trace(&w.modify(&BraidMove::Switch(0)).unwrap());
        let smooth = theta_trace(&w.modify(&BraidMove::Smooth(0)).unwrap());
        let lhs = &(&s_pow(-1) * &plus) - &(&s_pow(1) * &minus);
        assert_eq!(lhs, &delta_scalar() * &smooth);
    }

    #[test]
    fn skein_fails_on_self_crossings() {
        // trefoil at a self-crossing: the identity acquires an E-dependent
        // defect which vanishes only at E = 1
        let w = bw("{1,1,1}");
        let plus = theta_trace(&w);
        let minus = theta_trace(&w.modify(&BraidMove::Switch(0)).unwrap());
        let smooth = theta_trace(&w.modify(&BraidMove::Smooth(0)).unwrap());
        let defect = &(&(&s_pow(-1) * &plus) - &(&s_pow(1) * &minus))
            - &(&delta_scalar() * &smooth);
        assert!(!defect.is_zero());
        assert!(defect.specialize_e(&rat(1)).unwrap().is_zero());
    }
}

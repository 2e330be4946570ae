//! Exact arithmetic for the values produced by the trace and invariant
//! computations.
//!
//! Everything lives over the rationals in the Laurent ring
//! `Q[q^{±1}, s^{±1}, E^{±1}]`, localized at the two fixed elements
//! `δ = q − q⁻¹` and `ω = 1 − s²`. The symbol `s` is a formal square root
//! of `λ`, so `λ = s²` and half-integer powers of `λ` are odd powers of `s`.
//! No other denominators ever occur, which keeps normal forms unique and
//! cheap: a value is a Laurent numerator together with the two denominator
//! exponents, reduced until neither `δ` nor `ω` divides the numerator.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational coefficient. Always reduced, denominator positive.
pub type Rational = BigRational;

/// Integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("E may only be specialized to a nonzero rational")]
    ZeroESubstitution,
}

/// Exponent triple of a monomial `q^q * s^s * E^e`.
///
/// The derived ordering is lexicographic on `(q, s, e)`, which fixes the
/// canonical term order used everywhere (iteration, rendering, JSON).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono {
    pub q: i32,
    pub s: i32,
    pub e: i32,
}

impl Mono {
    pub const ONE: Mono = Mono { q: 0, s: 0, e: 0 };

    fn mul(self, other: Mono) -> Mono {
        Mono {
            q: self.q + other.q,
            s: self.s + other.s,
            e: self.e + other.e,
        }
    }
}

/// Laurent polynomial in `q`, `s`, `E` with rational coefficients.
///
/// Invariants: no stored coefficient is zero; keys are unique (map).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Mono, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Mono::ONE, rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Mono::ONE, c)
    }

    pub fn monomial(m: Mono, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    /// `q^k`
    pub fn q_pow(k: i32) -> Self {
        Self::monomial(Mono { q: k, s: 0, e: 0 }, rat(1))
    }

    /// `s^k`
    pub fn s_pow(k: i32) -> Self {
        Self::monomial(Mono { q: 0, s: k, e: 0 }, rat(1))
    }

    /// `λ^k = s^{2k}`
    pub fn lambda_pow(k: i32) -> Self {
        Self::s_pow(2 * k)
    }

    /// `E^k`
    pub fn e_pow(k: i32) -> Self {
        Self::monomial(Mono { q: 0, s: 0, e: k }, rat(1))
    }

    /// `δ = q − q⁻¹`
    pub fn delta() -> Self {
        &Self::q_pow(1) - &Self::q_pow(-1)
    }

    /// `ω = 1 − s²`
    pub fn omega() -> Self {
        &Self::one() - &Self::s_pow(2)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Mono::ONE).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Mono, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(t, v)| (t.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// True if any term carries a nonzero power of `E`.
    pub fn mentions_e(&self) -> bool {
        self.terms.keys().any(|m| m.e != 0)
    }

    /// The substitution `q ↦ q⁻¹`, `s ↦ s⁻¹` (mirror image of links).
    pub fn invert_qs(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Mono { q: -m.q, s: -m.s, e: m.e }, c.clone()))
                .collect(),
        }
    }

    /// Replace `E` by the nonzero rational `r`.
    pub fn specialize_e(&self, r: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let factor = rational_pow(r, m.e);
            out.add_term(Mono { q: m.q, s: m.s, e: 0 }, &(c * factor));
        }
        out
    }

    /// Exact division by `δ`, `ω`, `E − 1` or a monomial.
    ///
    /// Returns `None` when the division is not exact; this is a normal
    /// outcome, not a fault. No rounding ever occurs.
    pub fn exact_div(&self, d: &Divisor) -> Option<LaurentPoly> {
        match d {
            Divisor::Monomial(m, c) => {
                assert!(!c.is_zero(), "monomial divisor must be nonzero");
                let inv = Mono { q: -m.q, s: -m.s, e: -m.e };
                let cinv = c.recip();
                Some(self.mul_monomial(inv, &cinv))
            }
            // δ = q − q⁻¹:  top q^1 coeff 1, bottom q^-1 coeff −1
            Divisor::Delta => self.div_binomial(
                |m| (m.q, (m.s, m.e)),
                |k, (s, e)| Mono { q: k, s, e },
                (1, -1),
                (1, -1),
            ),
            // ω = 1 − s²:  top s^2 coeff −1, bottom s^0 coeff 1
            Divisor::Omega => self.div_binomial(
                |m| (m.s, (m.q, m.e)),
                |k, (q, e)| Mono { q, s: k, e },
                (2, 0),
                (-1, 1),
            ),
            // E − 1:  top E^1 coeff 1, bottom E^0 coeff −1
            Divisor::EMinusOne => self.div_binomial(
                |m| (m.e, (m.q, m.s)),
                |k, (q, s)| Mono { q, s, e: k },
                (1, 0),
                (1, -1),
            ),
        }
    }

    /// Exact division by the two-term divisor
    /// `tc·x^top + bc·x^bot` (top > bot) in the variable selected by
    /// `split`/`join`; per-group univariate long division.
    fn div_binomial<K, F, G>(
        &self,
        split: F,
        join: G,
        (top, bot): (i32, i32),
        (tc, bc): (i64, i64),
    ) -> Option<LaurentPoly>
    where
        K: Ord + Copy,
        F: Fn(&Mono) -> (i32, K),
        G: Fn(i32, K) -> Mono,
    {
        // Group terms by the passive exponents; each group is a univariate
        // Laurent polynomial in the active variable.
        let mut groups: BTreeMap<K, BTreeMap<i32, Rational>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (deg, key) = split(m);
            groups.entry(key).or_default().insert(deg, c.clone());
        }
        // All three binomials are, up to a unit, squarefree polynomials with
        // roots among {1, −1}: divisibility holds iff every group vanishes
        // at x = 1 and, when the exponent gap is 2, also at x = −1.
        let gap = (top - bot).unsigned_abs();
        for poly in groups.values() {
            let at_one: Rational = poly.values().fold(Rational::zero(), |a, c| a + c);
            if !at_one.is_zero() {
                return None;
            }
            if gap == 2 {
                let at_minus_one: Rational = poly
                    .iter()
                    .fold(Rational::zero(), |a, (d, c)| if d.rem_euclid(2) == 0 { a + c } else { a - c });
                if !at_minus_one.is_zero() {
                    return None;
                }
            }
        }
        // Long division against the top term, exact by the check above.
        let top_c = rat(tc);
        let bot_c = rat(bc);
        let mut out = LaurentPoly::zero();
        for (key, mut poly) in groups {
            while let Some((&deg, _)) = poly.iter().next_back() {
                let c = poly.remove(&deg).unwrap();
                if c.is_zero() {
                    continue;
                }
                let qc = &c / &top_c;
                out.add_term(join(deg - top, key), &qc);
                // subtract qc·x^{deg-top}·(divisor): the top term cancels,
                // the bottom lands at deg - top + bot.
                let at = deg - top + bot;
                let delta_c = &qc * &bot_c;
                let entry = poly.entry(at).or_insert_with(Rational::zero);
                *entry -= delta_c;
                if entry.is_zero() {
                    poly.remove(&at);
                }
            }
        }
        Some(out)
    }
}

fn rational_pow(r: &Rational, k: i32) -> Rational {
    let mut acc = Rational::one();
    let a = if k >= 0 { r.clone() } else { r.recip() };
    for _ in 0..k.unsigned_abs() {
        acc *= &a;
    }
    acc
}

/// Divisors supported by exact division.
#[derive(Debug, Clone)]
pub enum Divisor {
    /// `δ = q − q⁻¹`
    Delta,
    /// `ω = 1 − s²`
    Omega,
    /// `E − 1`
    EMinusOne,
    /// A single monomial with a nonzero rational coefficient.
    Monomial(Mono, Rational),
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &(-c.clone()));
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(*m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_binop {
    ($t:ty, $tr:ident, $f:ident) => {
        impl $tr for $t {
            type Output = $t;
            fn $f(self, rhs: $t) -> $t {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $f(self, rhs: &$t) -> $t {
                (&self).$f(rhs)
            }
        }
        impl $tr<$t> for &$t {
            type Output = $t;
            fn $f(self, rhs: $t) -> $t {
                self.$f(&rhs)
            }
        }
    };
}

forward_binop!(LaurentPoly, Add, add);
forward_binop!(LaurentPoly, Sub, sub);
forward_binop!(LaurentPoly, Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Exponent pair of a trace monomial `q^q * z^z * E^e`.
///
/// `z` and `E` exponents stay non-negative: the trace rules only ever
/// multiply by `z` or `E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TraceMono {
    pub q: i32,
    pub z: u32,
    pub e: u32,
}

/// Polynomial in `z` and `E` with Laurent-in-`q` coefficients: the raw
/// output of the Markov trace before normalization.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TracePolynomial {
    terms: BTreeMap<TraceMono, Rational>,
}

impl TracePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(TraceMono::default(), rat(1))
    }

    pub fn monomial(m: TraceMono, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        TracePolynomial { terms }
    }

    /// `z`
    pub fn z() -> Self {
        Self::monomial(TraceMono { q: 0, z: 1, e: 0 }, rat(1))
    }

    /// `E`
    pub fn e() -> Self {
        Self::monomial(TraceMono { q: 0, z: 0, e: 1 }, rat(1))
    }

    /// `E^k`
    pub fn e_pow(k: u32) -> Self {
        Self::monomial(TraceMono { q: 0, z: 0, e: k }, rat(1))
    }

    /// `δ = q − q⁻¹`
    pub fn delta() -> Self {
        let mut t = Self::monomial(TraceMono { q: 1, z: 0, e: 0 }, rat(1));
        t.add_term(TraceMono { q: -1, z: 0, e: 0 }, &rat(-1));
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TraceMono, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: TraceMono, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, rhs: &TracePolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TracePolynomial {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Multiply by `z^dz · E^de`.
    pub fn shift(&self, dz: u32, de: u32) -> Self {
        TracePolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (TraceMono { q: m.q, z: m.z + dz, e: m.e + de }, c.clone()))
                .collect(),
        }
    }
}

impl Add for &TracePolynomial {
    type Output = TracePolynomial;
    fn add(self, rhs: &TracePolynomial) -> TracePolynomial {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &TracePolynomial {
    type Output = TracePolynomial;
    fn sub(self, rhs: &TracePolynomial) -> TracePolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &(-c.clone()));
        }
        out
    }
}

impl Mul for &TracePolynomial {
    type Output = TracePolynomial;
    fn mul(self, rhs: &TracePolynomial) -> TracePolynomial {
        let mut out = TracePolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = TraceMono {
                    q: m1.q + m2.q,
                    z: m1.z + m2.z,
                    e: m1.e + m2.e,
                };
                out.add_term(m, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &TracePolynomial {
    type Output = TracePolynomial;
    fn neg(self) -> TracePolynomial {
        TracePolynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

forward_binop!(TracePolynomial, Add, add);
forward_binop!(TracePolynomial, Sub, sub);
forward_binop!(TracePolynomial, Mul, mul);

/// The trace substitution `z ↦ δ·E / ω`.
///
/// Each term `c·q^a·z^j·E^k` maps to `c·q^a·δ^j·E^{j+k} / ω^j`; the result
/// is brought to the common denominator `ω^(max j)` and normalized.
pub fn substitute_z(t: &TracePolynomial) -> ScalarValue {
    let max_j = t.terms().map(|(m, _)| m.z).max().unwrap_or(0);
    let delta = LaurentPoly::delta();
    let omega = LaurentPoly::omega();
    let mut num = LaurentPoly::zero();
    for (m, c) in t.terms() {
        let mut part = LaurentPoly::monomial(
            Mono { q: m.q, s: 0, e: (m.z + m.e) as i32 },
            c.clone(),
        );
        part = &part * &delta.pow(m.z);
        part = &part * &omega.pow(max_j - m.z);
        num = &num + &part;
    }
    ScalarValue::new(num, 0, max_j)
}

/// A value of the invariant ring: Laurent numerator over `δ^d_delta · ω^d_omega`.
///
/// Normal form: when the corresponding exponent is positive the numerator is
/// not exactly divisible by `δ` (resp. `ω`). Since `δ` involves only `q` and
/// `ω` only `s`, they share no factor and the normal form is unique, so
/// structural equality coincides with cross-multiplication equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarValue {
    num: LaurentPoly,
    d_delta: u32,
    d_omega: u32,
}

impl ScalarValue {
    pub fn new(num: LaurentPoly, d_delta: u32, d_omega: u32) -> Self {
        let mut v = ScalarValue { num, d_delta, d_omega };
        v.normalize();
        v
    }

    pub fn zero() -> Self {
        Self::new(LaurentPoly::zero(), 0, 0)
    }

    pub fn one() -> Self {
        Self::new(LaurentPoly::one(), 0, 0)
    }

    pub fn from_laurent(num: LaurentPoly) -> Self {
        Self::new(num, 0, 0)
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn d_delta(&self) -> u32 {
        self.d_delta
    }

    pub fn d_omega(&self) -> u32 {
        self.d_omega
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.d_delta == 0 && self.d_omega == 0 && self.num.is_one()
    }

    pub fn mentions_e(&self) -> bool {
        self.num.mentions_e()
    }

    fn normalize(&mut self) {
        while self.d_delta > 0 {
            match self.num.exact_div(&Divisor::Delta) {
                Some(q) => {
                    self.num = q;
                    self.d_delta -= 1;
                }
                None => break,
            }
        }
        while self.d_omega > 0 {
            match self.num.exact_div(&Divisor::Omega) {
                Some(q) => {
                    self.num = q;
                    self.d_omega -= 1;
                }
                None => break,
            }
        }
        if self.num.is_zero() {
            self.d_delta = 0;
            self.d_omega = 0;
        }
    }

    /// Equality by cross-multiplication; must agree with `==` on normal
    /// forms (exercised by the test suite).
    pub fn cross_mul_equals(&self, other: &ScalarValue) -> bool {
        let delta = LaurentPoly::delta();
        let omega = LaurentPoly::omega();
        let lhs = &(&self.num * &delta.pow(other.d_delta)) * &omega.pow(other.d_omega);
        let rhs = &(&other.num * &delta.pow(self.d_delta)) * &omega.pow(self.d_omega);
        lhs == rhs
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Replace `E` by the nonzero rational `r` and renormalize.
    pub fn specialize_e(&self, r: &Rational) -> Result<ScalarValue, ScalarError> {
        if r.is_zero() {
            return Err(ScalarError::ZeroESubstitution);
        }
        Ok(ScalarValue::new(
            self.num.specialize_e(r),
            self.d_delta,
            self.d_omega,
        ))
    }

    /// The mirror substitution `q ↦ q⁻¹`, `s ↦ s⁻¹` (with `E` fixed).
    ///
    /// `δ` maps to `−δ` and `ω` to `−ω·s⁻²`, so the denominator exponents
    /// survive with a sign and `s`-power correction in the numerator.
    pub fn invert_qs(&self) -> ScalarValue {
        let a = self.d_delta;
        let b = self.d_omega;
        let sign = if (a + b).is_multiple_of(2) { rat(1) } else { rat(-1) };
        let num = self
            .num
            .invert_qs()
            .mul_monomial(Mono { q: 0, s: 2 * b as i32, e: 0 }, &sign);
        ScalarValue::new(num, a, b)
    }

    /// Exact division, usable for the divisibility checks on invariant
    /// differences. Not exact ⇒ `None`.
    pub fn exact_div(&self, d: &Divisor) -> Option<ScalarValue> {
        Some(ScalarValue::new(
            self.num.exact_div(d)?,
            self.d_delta,
            self.d_omega,
        ))
    }
}

impl Add for &ScalarValue {
    type Output = ScalarValue;
    // common-denominator lifting legitimately multiplies inside `add`
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: &ScalarValue) -> ScalarValue {
        let dd = self.d_delta.max(rhs.d_delta);
        let dw = self.d_omega.max(rhs.d_omega);
        let delta = LaurentPoly::delta();
        let omega = LaurentPoly::omega();
        let lift = |v: &ScalarValue| -> LaurentPoly {
            let mut n = v.num.clone();
            n = &n * &delta.pow(dd - v.d_delta);
            n = &n * &omega.pow(dw - v.d_omega);
            n
        };
        ScalarValue::new(&lift(self) + &lift(rhs), dd, dw)
    }
}

impl Sub for &ScalarValue {
    type Output = ScalarValue;
    fn sub(self, rhs: &ScalarValue) -> ScalarValue {
        self + &(-rhs)
    }
}

impl Mul for &ScalarValue {
    type Output = ScalarValue;
    fn mul(self, rhs: &ScalarValue) -> ScalarValue {
        ScalarValue::new(
            &self.num * &rhs.num,
            self.d_delta + rhs.d_delta,
            self.d_omega + rhs.d_omega,
        )
    }
}

impl Neg for &ScalarValue {
    type Output = ScalarValue;
    fn neg(self) -> ScalarValue {
        ScalarValue {
            num: -&self.num,
            d_delta: self.d_delta,
            d_omega: self.d_omega,
        }
    }
}

forward_binop!(ScalarValue, Add, add);
forward_binop!(ScalarValue, Sub, sub);
forward_binop!(ScalarValue, Mul, mul);

impl Neg for ScalarValue {
    type Output = ScalarValue;
    fn neg(self) -> ScalarValue {
        -&self
    }
}

// ---- rendering ----

fn fmt_term(f: &mut fmt::Formatter<'_>, m: &Mono, c: &Rational, first: bool) -> fmt::Result {
    let neg = c < &Rational::zero();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let abs = if neg { -c.clone() } else { c.clone() };
    let mut factors: Vec<String> = Vec::new();
    if !abs.is_one() || (m.q == 0 && m.s == 0 && m.e == 0) {
        factors.push(abs.to_string());
    }
    for (name, k) in [("q", m.q), ("s", m.s), ("E", m.e)] {
        match k.cmp(&0) {
            Ordering::Equal => {}
            Ordering::Greater if k == 1 => factors.push(name.to_string()),
            _ => factors.push(format!("{}^{}", name, k)),
        }
    }
    write!(f, "{}", factors.join("*"))
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            fmt_term(f, m, c, i == 0)?;
        }
        Ok(())
    }
}

impl fmt::Display for TracePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mono = Mono { q: m.q, s: m.z as i32, e: m.e as i32 };
            // reuse the generic term formatter with z in the s slot
            let neg = c < &Rational::zero();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = if neg { -c.clone() } else { c.clone() };
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || (mono.q == 0 && mono.s == 0 && mono.e == 0) {
                factors.push(abs.to_string());
            }
            for (name, k) in [("q", mono.q), ("z", mono.s), ("E", mono.e)] {
                match k.cmp(&0) {
                    Ordering::Equal => {}
                    Ordering::Greater if k == 1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{}^{}", name, k)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for ScalarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d_delta == 0 && self.d_omega == 0 {
            return write!(f, "{}", self.num);
        }
        let mut den: Vec<String> = Vec::new();
        for (name, k) in [("d", self.d_delta), ("w", self.d_omega)] {
            if k == 1 {
                den.push(name.to_string());
            } else if k > 1 {
                den.push(format!("{}^{}", name, k));
            }
        }
        write!(f, "({}) / ({})", self.num, den.join(" * "))
    }
}

// ---- JSON form ----

#[derive(Serialize, Deserialize)]
struct TermJson {
    c: String,
    q: i32,
    s: i32,
    #[serde(rename = "E")]
    e: i32,
}

#[derive(Serialize, Deserialize)]
struct ScalarJson {
    num: Vec<TermJson>,
    d_delta: u32,
    d_omega: u32,
}

impl Serialize for ScalarValue {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let num = self
            .num
            .terms()
            .map(|(m, c)| TermJson { c: c.to_string(), q: m.q, s: m.s, e: m.e })
            .collect();
        ScalarJson { num, d_delta: self.d_delta, d_omega: self.d_omega }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ScalarValue {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = ScalarJson::deserialize(de)?;
        let mut num = LaurentPoly::zero();
        for t in raw.num {
            let c: Rational = t
                .c
                .parse()
                .map_err(|e| D::Error::custom(format!("bad coefficient {:?}: {}", t.c, e)))?;
            num.add_term(Mono { q: t.q, s: t.s, e: t.e }, &c);
        }
        Ok(ScalarValue::new(num, raw.d_delta, raw.d_omega))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(k: i32) -> LaurentPoly {
        LaurentPoly::q_pow(k)
    }

    fn s(k: i32) -> LaurentPoly {
        LaurentPoly::s_pow(k)
    }

    #[test]
    fn difference_of_squares() {
        let lhs = &(&q(1) + &q(-1)) * &(&q(1) - &q(-1));
        assert_eq!(lhs, &q(2) - &q(-2));
    }

    #[test]
    fn s_squared_is_lambda() {
        assert_eq!(&s(1) * &s(1), LaurentPoly::lambda_pow(1));
    }

    #[test]
    fn scalar_common_denominator() {
        // 1/δ + 1 = (1 + δ)/δ
        let a = ScalarValue::new(LaurentPoly::one(), 1, 0);
        let b = ScalarValue::one();
        let sum = &a + &b;
        assert_eq!(sum, ScalarValue::new(&LaurentPoly::one() + &LaurentPoly::delta(), 1, 0));
        assert_eq!(sum.d_delta(), 1);
    }

    #[test]
    fn exact_divide_examples() {
        let p = &q(2) - &q(-2);
        assert_eq!(p.exact_div(&Divisor::Delta).unwrap(), &q(1) + &q(-1));

        let p = &LaurentPoly::one() - &s(4);
        assert_eq!(p.exact_div(&Divisor::Omega).unwrap(), &LaurentPoly::one() + &s(2));

        let p = &q(1) + &LaurentPoly::one();
        assert!(p.exact_div(&Divisor::Delta).is_none());

        let p = &LaurentPoly::e_pow(2) - &LaurentPoly::e_pow(1);
        assert_eq!(p.exact_div(&Divisor::EMinusOne).unwrap(), LaurentPoly::e_pow(1));

        let m = Mono { q: 1, s: -1, e: 0 };
        let p = LaurentPoly::monomial(Mono { q: 3, s: -1, e: 2 }, rat(6));
        let d = Divisor::Monomial(m, rat(2));
        assert_eq!(
            p.exact_div(&d).unwrap(),
            LaurentPoly::monomial(Mono { q: 2, s: 0, e: 2 }, rat(3))
        );
    }

    #[test]
    fn substitute_z_examples() {
        assert_eq!(substitute_z(&TracePolynomial::one()), ScalarValue::one());

        // z ↦ δ·E/ω
        let z = substitute_z(&TracePolynomial::z());
        let expect = ScalarValue::new(&LaurentPoly::delta() * &LaurentPoly::e_pow(1), 0, 1);
        assert_eq!(z, expect);

        // 1 + δ·z ↦ (ω + δ²E)/ω
        let t = &TracePolynomial::one() + &(&TracePolynomial::delta() * &TracePolynomial::z());
        let v = substitute_z(&t);
        let num = &LaurentPoly::omega()
            + &(&LaurentPoly::delta().pow(2) * &LaurentPoly::e_pow(1));
        assert_eq!(v, ScalarValue::new(num, 0, 1));
    }

    #[test]
    fn substitute_z_is_multiplicative() {
        let a = &(&TracePolynomial::z() * &TracePolynomial::delta()) + &TracePolynomial::e();
        let b = &TracePolynomial::one() + &TracePolynomial::z();
        let lhs = substitute_z(&(&a * &b));
        let rhs = &substitute_z(&a) * &substitute_z(&b);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn specialize_e_examples() {
        let e = ScalarValue::from_laurent(LaurentPoly::e_pow(1));
        assert_eq!(e.specialize_e(&rat(1)).unwrap(), ScalarValue::one());

        let v = ScalarValue::from_laurent(&LaurentPoly::e_pow(-1) - &LaurentPoly::one());
        assert_eq!(v.specialize_e(&rat_frac(1, 2)).unwrap(), ScalarValue::one());

        let v = ScalarValue::new(LaurentPoly::e_pow(1), 1, 0);
        assert_eq!(
            v.specialize_e(&rat_frac(1, 3)).unwrap(),
            ScalarValue::new(LaurentPoly::constant(rat_frac(1, 3)), 1, 0)
        );

        assert_eq!(e.specialize_e(&rat(0)), Err(ScalarError::ZeroESubstitution));
    }

    #[test]
    fn equals_examples() {
        let a = ScalarValue::new(
            &LaurentPoly::delta() * &(&q(1) + &q(-1)),
            1,
            0,
        );
        let b = ScalarValue::new(&q(2) - &q(-2), 1, 0);
        assert_eq!(a, b);
        assert!(a.cross_mul_equals(&b));

        let zero = ScalarValue::zero();
        let z5 = ScalarValue::new(LaurentPoly::zero(), 5, 0);
        assert_eq!(zero, z5);

        let x = ScalarValue::from_laurent(q(1));
        let y = ScalarValue::from_laurent(q(-1));
        assert_ne!(x, y);
        assert!(!x.cross_mul_equals(&y));
    }

    #[test]
    fn mirror_substitution() {
        // (1/δ) ↦ -1/δ
        let v = ScalarValue::new(LaurentPoly::one(), 1, 0);
        let m = v.invert_qs();
        assert_eq!(m, ScalarValue::new(LaurentPoly::constant(rat(-1)), 1, 0));
        // a mirror is an involution
        let w = ScalarValue::new(&q(2) + &s(3), 2, 1);
        assert_eq!(w.invert_qs().invert_qs(), w);
    }

    #[test]
    fn json_round_trip() {
        let v = ScalarValue::new(
            &(&q(2) - &q(-2)) + &LaurentPoly::monomial(Mono { q: 0, s: -3, e: 2 }, rat_frac(-7, 3)),
            2,
            1,
        );
        let text = serde_json::to_string(&v).unwrap();
        let back: ScalarValue = serde_json::from_str(&text).unwrap();
        assert_eq!(v, back);
    }

    #[test]
    fn display_form() {
        let v = ScalarValue::new(&q(1) - &LaurentPoly::s_pow(-1), 1, 2);
        assert_eq!(v.to_string(), "(-s^-1 + q) / (d * w^2)");
        assert_eq!(ScalarValue::zero().to_string(), "0");
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec(((-4i32..5, -4i32..5, -2i32..3), -9i64..10), 0..6).prop_map(|ts| {
            let mut p = LaurentPoly::zero();
            for ((q, s, e), c) in ts {
                p.add_term(Mono { q, s, e }, &rat(c));
            }
            p
        })
    }

    fn arb_scalar() -> impl Strategy<Value = ScalarValue> {
        (arb_poly(), 0u32..3, 0u32..3).prop_map(|(p, a, b)| ScalarValue::new(p, a, b))
    }

    fn arb_trace_poly() -> impl Strategy<Value = TracePolynomial> {
        proptest::collection::vec(((-4i32..5, 0u32..4, 0u32..3), -9i64..10), 0..6).prop_map(|ts| {
            let mut p = TracePolynomial::zero();
            for ((q, z, e), c) in ts {
                p.add_term(TraceMono { q, z, e }, &rat(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn normalization_is_idempotent(v in arb_scalar()) {
            let again = ScalarValue::new(v.num().clone(), v.d_delta(), v.d_omega());
            prop_assert_eq!(&again, &v);
        }

        #[test]
        fn structural_equality_matches_cross_multiplication(a in arb_scalar(), b in arb_scalar()) {
            prop_assert_eq!(a == b, a.cross_mul_equals(&b));
        }

        #[test]
        fn mul_div_round_trip(p in arb_poly()) {
            let d = &p * &LaurentPoly::delta();
            prop_assert_eq!(d.exact_div(&Divisor::Delta).unwrap(), p.clone());
            let w = &p * &LaurentPoly::omega();
            prop_assert_eq!(w.exact_div(&Divisor::Omega).unwrap(), p.clone());
            let e1 = &p * &(&LaurentPoly::e_pow(1) - &LaurentPoly::one());
            prop_assert_eq!(e1.exact_div(&Divisor::EMinusOne).unwrap(), p);
        }

        #[test]
        fn ring_ops_respect_normal_forms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            // associativity + distributivity spot checks on normalized values
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, ScalarValue::zero());
        }

        #[test]
        fn substitute_z_is_a_ring_morphism(a in arb_trace_poly(), b in arb_trace_poly()) {
            prop_assert_eq!(substitute_z(&(&a * &b)), &substitute_z(&a) * &substitute_z(&b));
            prop_assert_eq!(substitute_z(&(&a + &b)), &substitute_z(&a) + &substitute_z(&b));
        }

        #[test]
        fn specialize_commutes_with_ring_ops(a in arb_scalar(), b in arb_scalar()) {
            let r = rat_frac(1, 2);
            let lhs = (&a * &b).specialize_e(&r).unwrap();
            let rhs = &a.specialize_e(&r).unwrap() * &b.specialize_e(&r).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs = (&a + &b).specialize_e(&r).unwrap();
            let rhs = &a.specialize_e(&r).unwrap() + &b.specialize_e(&r).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

//! Reference polynomial values for the tabulated links, transcribed in the
//! exact published shape. All denominators occurring here are monomials
//! times powers of `q² − 1` (or `q⁻² − 1`), which are unit multiples of
//! powers of `δ`, so every value is representable with `d_omega = 0`.

use crate::scalar::{rat, LaurentPoly, Mono, ScalarValue};

type P = LaurentPoly;

fn c(n: i64) -> P {
    P::constant(rat(n))
}

fn q(k: i32) -> P {
    P::q_pow(k)
}

/// `λ^k`
fn l(k: i32) -> P {
    P::s_pow(2 * k)
}

/// `E^k`
fn e(k: i32) -> P {
    P::e_pow(k)
}

/// `(q² − 1)^k`
fn q2m1(k: u32) -> P {
    (q(2) - c(1)).pow(k)
}

/// `(q⁻² − 1)^k`
fn qm2m1(k: u32) -> P {
    (q(-2) - c(1)).pow(k)
}

/// `num / (E^a · λ^b · q^c · (q²−1)^k)`, using `(q²−1)^k = q^k·δ^k`.
fn over_q2m1(num: P, a: i32, b: i32, qc: i32, k: u32) -> ScalarValue {
    let m = Mono { q: -qc - k as i32, s: -2 * b, e: -a };
    ScalarValue::new(num.mul_monomial(m, &rat(1)), k, 0)
}

/// `num / (E^a · λ^b · q^c · (q⁻²−1)^k)`, using `(q⁻²−1)^k = (−1)^k·q^{−k}·δ^k`.
fn over_qm2m1(num: P, a: i32, b: i32, qc: i32, k: u32) -> ScalarValue {
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    let m = Mono { q: -qc + k as i32, s: -2 * b, e: -a };
    ScalarValue::new(num.mul_monomial(m, &rat(sign)), k, 0)
}

/// Published Homflypt values of the five pinned knots.
pub fn published_p_values() -> Vec<(&'static str, ScalarValue)> {
    let p_3_1 = ScalarValue::from_laurent((q(-2) + q(2) - l(1)) * l(1));
    let p_3_1m = over_q2m1(l(1) + q(4) * l(1) - q(2), 0, 2, 2, 0);
    let p_5_2m = over_q2m1(
        l(1) + l(2) + q(4) * l(1) * (c(1) + l(1)) - q(2) * (c(1) + l(1) + l(2)),
        0,
        3,
        2,
        0,
    );
    let p_6_2m = over_q2m1(
        -(l(1) + q(8) * l(1) + q(4) * (c(1) + c(2) * l(1))
            - q(2) * (c(1) + l(1) + l(2))
            - q(6) * (c(1) + l(1) + l(2))),
        0,
        2,
        4,
        0,
    );
    let p_8_20 = over_q2m1(
        l(1) + q(8) * l(1) + q(4) * l(1) * (c(2) + l(1))
            - q(2) * (c(1) + l(2))
            - q(6) * (c(1) + l(2)),
        0,
        2,
        4,
        0,
    );
    vec![
        ("3_1", p_3_1),
        ("3_1*", p_3_1m),
        ("5_2*", p_5_2m),
        ("6_2*", p_6_2m),
        ("8_20", p_8_20),
    ]
}

fn theta_l11n358_01() -> ScalarValue {
    let f1 = e(1) * l(1) + e(1) * l(1) * q(4) - c(2) * e(1) * l(1) * q(2) + l(1) * q(2) - q(2);
    let f2 = e(1) * l(1) + e(1) * l(1) * q(12)
        - e(1) * l(2) * q(10)
        - c(2) * e(1) * l(1) * q(10)
        - e(1) * q(10)
        + c(3) * e(1) * l(2) * q(8)
        + c(4) * e(1) * l(1) * q(8)
        + c(2) * e(1) * q(8)
        - c(4) * e(1) * l(2) * q(6)
        - c(6) * e(1) * l(1) * q(6)
        - c(2) * e(1) * q(6)
        + c(3) * e(1) * l(2) * q(4)
        + c(4) * e(1) * l(1) * q(4)
        + c(2) * e(1) * q(4)
        - e(1) * l(2) * q(2)
        - c(2) * e(1) * l(1) * q(2)
        - e(1) * q(2)
        + l(1) * q(6)
        - q(6);
    // divided by E²·λ⁴·(q−1)²·q⁶·(q+1)², with (q−1)²(q+1)² = (q²−1)²
    over_q2m1(f1 * f2, 2, 4, 6, 2)
}

fn theta_l11n418_00() -> ScalarValue {
    let g1 = l(2) + l(2) * q(8) + l(1) * (-l(2) + l(1) - c(2)) * q(6)
        + (c(4) * l(2) - l(1) + c(1)) * q(4)
        + l(1) * (-l(2) + l(1) - c(2)) * q(2);
    let g2 = c(2) * (l(1) - c(1)) * l(1) + c(2) * (l(1) - c(1)) * l(1) * q(4)
        - (l(3) - c(3) * l(2) + c(4) * l(1) - c(2)) * q(2);
    let num = e(2) * q2m1(4) * g1 + e(1) * q2m1(2) * q(4) * g2 + (l(1) - c(1)).pow(2) * q(8);
    over_q2m1(num, 2, 4, 6, 2)
}

fn theta_l11a467_01() -> ScalarValue {
    let g1 = l(1) * (l(1) + c(2)) + l(1) * (l(1) + c(2)) * q(8)
        - (l(3) + c(3) * l(2) + c(2) * l(1) + c(2)) * q(6)
        + (l(3) + c(4) * l(2) + c(6) * l(1) + c(1)) * q(4)
        - (l(3) + c(3) * l(2) + c(2) * l(1) + c(2)) * q(2);
    let g2 = l(1) + l(1) * q(8) - (l(2) + c(1)) * q(6) + l(1) * (l(1) + c(4)) * q(4)
        - (l(2) + c(1)) * q(2);
    let num = e(2) * l(1) * q2m1(4) * g1
        + e(1) * (l(1) - c(1)) * q2m1(2) * q(2) * g2
        + (l(1) - c(1)).pow(2) * q(8);
    // −(E²λ⁴(q²−1)⁵)⁻¹·(q⁻²−1)³ × num
    -over_q2m1(qm2m1(3) * num, 2, 4, 0, 5)
}

fn theta_l11a527_00() -> ScalarValue {
    let g1 = l(2) * (l(1) + c(2)) + l(2) * (l(1) + c(2)) * q(8)
        - l(1) * (l(3) + c(3) * l(2) + l(1) + c(3)) * q(6)
        + (l(4) + c(3) * l(3) + c(7) * l(2) + c(1)) * q(4)
        - l(1) * (l(3) + c(3) * l(2) + l(1) + c(3)) * q(2);
    let g2 = c(2) * l(1) + c(2) * l(1) * q(4) - (l(2) - c(2) * l(1) + c(2)) * q(2);
    let num = e(2) * q2m1(4) * g1
        + e(1) * (l(1) - c(1)) * q2m1(2) * q(4) * g2
        + (l(1) - c(1)).pow(2) * q(8);
    -over_q2m1(qm2m1(3) * num, 2, 4, 0, 5)
}

fn theta_l11n325_11() -> ScalarValue {
    let g = l(1) + l(1) * q(8) - (l(2) + c(1)) * q(6) - (l(1) - c(2)) * l(1) * q(4)
        - (l(2) + c(1)) * q(2);
    let head = e(2) * q2m1(4) * (q(2) - l(1)) * (l(1) * q(2) - c(1))
        * (q(4) - (l(1) + c(1)) * q(2) + c(1));
    let mid = e(1) * (l(1) - c(1)) * q2m1(2) * q(2) * g;
    // λ⁻³·head − λ⁻³·mid + (λ⁻¹−1)²·q⁸, over E²·(q⁻²−1)²·q¹⁰
    let num = l(-3) * (head - mid) + (l(-1) - c(1)).pow(2) * q(8);
    over_qm2m1(num, 2, 0, 10, 2)
}

fn theta_l11n424_00() -> ScalarValue {
    let head = e(2) * q2m1(4) * (q(2) - l(1)) * (q(4) - c(2) * l(1) * q(2) + c(1))
        * (l(1) * q(2) - c(1));
    let mid = e(1) * (l(1) - c(1)) * q2m1(2) * q(4)
        * (c(2) * l(1) + c(2) * l(1) * q(4) - (c(3) * l(2) + c(2)) * q(2));
    let num = l(-3) * (head - mid) + (l(-1) - c(1)).pow(2) * q(8);
    over_qm2m1(num, 2, 0, 10, 2)
}

fn theta_l10n79_11() -> ScalarValue {
    let head = e(2) * q2m1(4) * (q(4) + c(1)) * (q(2) - l(1)) * (l(1) * q(2) - c(1));
    let mid = e(1) * (l(1) - c(1)) * q2m1(2) * (q(4) + q(2) + c(1)) * q(2)
        * (l(1) + l(1) * q(4) - q(2));
    let num = l(-2) * (mid - head) + (l(-1) - c(1)).pow(2) * q(8);
    over_qm2m1(num, 2, 2, 10, 2)
}

fn theta_l10n95_10() -> ScalarValue {
    let g = l(1) + l(1) * q(8) + (-c(2) * l(2) + l(1) - c(1)) * q(6)
        - (l(2) - c(4) * l(1) + c(1)) * q(4)
        + (-c(2) * l(2) + l(1) - c(1)) * q(2);
    let head = e(2) * q2m1(4) * g;
    let mid = e(1) * (l(1) - c(1)) * q2m1(2) * q(4)
        * (c(2) * l(1) + c(2) * l(1) * q(4) + (c(2) * l(1) - c(3)) * q(2));
    let num = l(-2) * (mid - head) + (l(-1) - c(1)).pow(2) * q(8);
    over_qm2m1(num, 2, 2, 10, 2)
}

fn theta_l11a404_11() -> ScalarValue {
    let poched = q(4) - l(1) * q(2) + c(1);
    let g1 = l(1) + l(1) * q(8) - (l(2) + c(1)) * q(6) + l(1) * (l(1) + c(4)) * q(4)
        - (l(2) + c(1)) * q(2);
    let g2 = l(1) + l(1) * q(8) - (l(2) + c(3)) * q(6) + (c(5) * l(1) + c(1)) * q(4)
        - (l(2) + c(3)) * q(2);
    let num = -(e(2) * q2m1(4) * poched.clone() * g1)
        + e(1) * (l(1) - c(1)) * q2m1(2) * q(4) * g2
        + (l(1) - c(1)).pow(2) * q(8) * poched;
    over_q2m1(num, 2, 0, 8, 2)
}

fn theta_l11a428_01() -> ScalarValue {
    let poched = q(4) - l(1) * q(2) + c(1);
    let g1 = l(1) + l(1) * q(8) - (l(2) + c(1)) * q(6) + (c(4) * l(1) + c(1)) * q(4)
        - (l(2) + c(1)) * q(2);
    let g2 = q(8) + (c(1) - c(3) * l(1)) * q(6) + (l(1) * (c(2) * l(1) - c(1)) + c(1)) * q(4)
        + (c(1) - c(3) * l(1)) * q(2)
        + c(1);
    let num = -(e(2) * q2m1(4) * poched.clone() * g1)
        - e(1) * (l(1) - c(1)) * q2m1(2) * q(4) * g2
        + (l(1) - c(1)).pow(2) * q(8) * poched;
    over_q2m1(num, 2, 0, 8, 2)
}

fn theta_l10n76_11() -> ScalarValue {
    let num = -(e(2) * (l(1) + c(1)) * q2m1(4) * (q(2) - l(1)) * (l(1) * q(2) - c(1)))
        + e(1) * (l(1) - c(1)) * q2m1(2) * q(2)
            * (l(1) * (l(1) + c(1)) + l(1) * (l(1) + c(1)) * q(4) - q(2))
        + (l(1) - c(1)).pow(2) * q(6);
    over_qm2m1(num, 2, 4, 8, 2)
}

fn theta_l11n425_10() -> ScalarValue {
    let num = -(e(2) * (l(1) + c(1)) * q2m1(4)
        * (l(1) + l(1) * q(4) + (-c(2) * l(2) + l(1) - c(1)) * q(2)))
        + e(1) * (c(2) * l(3) - c(3) * l(1) + c(1)) * q2m1(2) * q(4)
        + (l(1) - c(1)).pow(2) * q(6);
    over_qm2m1(num, 2, 4, 8, 2)
}

/// Published symbolic Θ values for the twelve tabulated links.
pub fn published_theta_values() -> Vec<(&'static str, ScalarValue)> {
    vec![
        ("L11n358{0,1}", theta_l11n358_01()),
        ("L11n418{0,0}", theta_l11n418_00()),
        ("L11a467{0,1}", theta_l11a467_01()),
        ("L11a527{0,0}", theta_l11a527_00()),
        ("L11n325{1,1}", theta_l11n325_11()),
        ("L11n424{0,0}", theta_l11n424_00()),
        ("L10n79{1,1}", theta_l10n79_11()),
        ("L10n95{1,0}", theta_l10n95_10()),
        ("L11a404{1,1}", theta_l11a404_11()),
        ("L11a428{0,1}", theta_l11a428_01()),
        ("L10n76{1,1}", theta_l10n76_11()),
        ("L11n425{1,0}", theta_l11n425_10()),
    ]
}

/// Published Θ differences of the six pairs, oriented as first minus
/// second: the subtraction order that is consistent with the tabulated
/// per-link values, which fixes the leading factor as `(1−E)(λ−1)`.
/// `(q−1)²(q+1)² = (q²−1)²` stays in the numerator throughout.
pub fn published_pair_differences() -> Vec<ScalarValue> {
    let common = (c(1) - e(1)) * (l(1) - c(1)) * q2m1(2);
    let d1 = over_q2m1(common.clone() * (q(2) - l(1)) * (l(1) * q(2) - c(1)), 1, 4, 4, 0);
    let d3 = -over_q2m1(common.clone() * (q(2) - l(1)) * (l(1) * q(2) - c(1)), 1, 3, 4, 0);
    let d4 = over_q2m1(
        common.clone() * (l(1) + l(1) * q(4) + l(1) * q(2) - q(2)),
        1,
        4,
        4,
        0,
    );
    let d5 = over_q2m1(
        common.clone() * (l(1) + c(1)) * (q(4) - l(1) * q(2) + c(1)),
        1,
        0,
        4,
        0,
    );
    let d6 = over_q2m1(common * (l(1) + c(1)), 1, 3, 2, 0);
    vec![d1.clone(), d1, d3, d4, d5, d6]
}

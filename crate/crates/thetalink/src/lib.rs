//! Exact computation of the Homflypt polynomial `P`, the invariants `Θ_d`,
//! and the 3-variable invariant `Θ(q, λ, E)` of oriented links, with three
//! independent engines: an algebraic Markov trace, a skein recursion, and a
//! closed partition formula over sublink Homflypt values.
//!
//! Links enter as braid words (`{a1,a2,...}`, closure implied); values live
//! in `Q[q^{±1}, s^{±1}, E^{±1}]` with `s = √λ`, localized at `δ = q − q⁻¹`
//! and `ω = 1 − s²`, and compare exactly.
//!
//! ```
//! use thetalink::{BraidWord, Engine};
//! use thetalink::invariants::{homflypt, theta, compare};
//!
//! // the trefoil: Θ = P = λ(q² + q⁻² − λ), no E symbol
//! let trefoil = BraidWord::parse("{1,1,1}").unwrap();
//! let p = homflypt(&trefoil);
//! assert_eq!(p.to_string(), "q^-2*s^2 - s^4 + q^2*s^2");
//! assert_eq!(theta(&trefoil, Engine::All).unwrap(), p);
//!
//! // the Hopf link carries E; every engine agrees on it
//! let hopf = BraidWord::parse("{1,1}").unwrap();
//! let t = theta(&hopf, Engine::All).unwrap();
//! assert!(t.mentions_e());
//!
//! // a P-equivalent pair of 3-component links distinguished by Θ
//! let a = BraidWord::parse("{1,2,-3,4,-3,-2,-1,-3,-2,3,-2,3,-2,-3,-4,-3}").unwrap();
//! let b = BraidWord::parse("{-1,2,-1,-3,-3,-2,1,3,-2,-3,-3}").unwrap();
//! let report = compare("L10n76{1,1}", &a, "L11n425{1,0}", &b);
//! assert!(report.p_equal && !report.theta_equal);
//! ```

pub mod algebra;
pub mod braid;
pub mod cache;
pub mod catalog;
pub mod esystem;
pub mod invariants;
pub mod scalar;
pub mod validate;

pub use algebra::{power_closed_form, tie_commute, trace, AlgebraElement, TiePartition, TraceStrategy};
pub use braid::{BraidMove, BraidWord, ComponentStructure, ComposeMode};
pub use invariants::{
    compare, homflypt, theta, theta_closed, theta_d, theta_skein, theta_trace, ComparisonReport,
    Engine,
};
pub use scalar::{substitute_z, Divisor, LaurentPoly, Mono, Rational, ScalarValue, TracePolynomial};

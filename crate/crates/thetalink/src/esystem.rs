//! Numerical verification of the E-system, the non-linear constraints on
//! the framing trace parameters:
//!
//! ```text
//! Σ_{s=0}^{d−1} x_{k+s}·x_{d−s} = x_k · Σ_{s=0}^{d−1} x_s·x_{d−s}    (1 ≤ k ≤ d−1)
//! ```
//!
//! with indices mod `d` and `x_0 = 1`. Solutions are indexed by non-empty
//! subsets `D` of `Z/dZ`, and the associated trace value of a tie idempotent
//! is `E_D = (1/d)·Σ_s x_s·x_{d−s} = 1/|D|`, which grounds specializing the
//! symbol `E` at `1/d`. This is a floating-point sanity harness; it never
//! feeds the exact engines.

use num_complex::Complex64;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ESystemError {
    #[error("residue class {m} is out of range for modulus {d}")]
    BadResidue { d: usize, m: usize },
    #[error("the subset D must be non-empty")]
    EmptySubset,
    #[error("modulus d must be positive")]
    ZeroModulus,
}

/// A candidate solution `x_1..x_{d−1}` of the E-system (`x_0 = 1` implicit).
#[derive(Debug, Clone, PartialEq)]
pub struct ESolutionCandidate {
    pub d: usize,
    pub x: Vec<Complex64>,
}

/// Recipes for building candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionSpec {
    /// `x_k = exp(2πimk/d)`: the solution attached to the singleton `{m}`.
    Singleton(usize),
    /// All `x_k = 0`: the solution attached to the full set `Z/dZ`.
    Trivial,
    /// `x_k = (1/|D|)·Σ_{m∈D} exp(2πimk/d)`: candidate for a general subset,
    /// verified numerically rather than assumed.
    Subset(Vec<usize>),
}

impl ESolutionCandidate {
    fn x_at(&self, idx: usize) -> Complex64 {
        let k = idx % self.d;
        if k == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            self.x[k - 1]
        }
    }

    /// `(1/d)·Σ_{s=0}^{d−1} x_s·x_{d−s}`, the trace of a tie idempotent.
    pub fn e_value(&self) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for s in 0..self.d {
            sum += self.x_at(s) * self.x_at(self.d - s);
        }
        sum / self.d as f64
    }

    /// Check every defining equation to absolute tolerance `tol`.
    pub fn verify(&self, tol: f64) -> bool {
        assert!(tol > 0.0, "tolerance must be positive");
        let right_sum: Complex64 = (0..self.d).map(|s| self.x_at(s) * self.x_at(self.d - s)).sum();
        for k in 1..self.d {
            let left: Complex64 = (0..self.d).map(|s| self.x_at(k + s) * self.x_at(self.d - s)).sum();
            if (left - self.x_at(k) * right_sum).norm() >= tol {
                return false;
            }
        }
        true
    }
}

/// Build a candidate solution for modulus `d`.
pub fn make_solution(d: usize, spec: &SolutionSpec) -> Result<ESolutionCandidate, ESystemError> {
    if d == 0 {
        return Err(ESystemError::ZeroModulus);
    }
    let root = |numer: f64| {
        let angle = 2.0 * std::f64::consts::PI * numer / d as f64;
        Complex64::new(angle.cos(), angle.sin())
    };
    let x = match spec {
        SolutionSpec::Singleton(m) => {
            if *m >= d {
                return Err(ESystemError::BadResidue { d, m: *m });
            }
            (1..d).map(|k| root((*m * k) as f64)).collect()
        }
        SolutionSpec::Trivial => vec![Complex64::new(0.0, 0.0); d - 1],
        SolutionSpec::Subset(set) => {
            if set.is_empty() {
                return Err(ESystemError::EmptySubset);
            }
            if let Some(&m) = set.iter().find(|&&m| m >= d) {
                return Err(ESystemError::BadResidue { d, m });
            }
            (1..d)
                .map(|k| {
                    let sum: Complex64 = set.iter().map(|&m| root((m * k) as f64)).sum();
                    sum / set.len() as f64
                })
                .collect()
        }
    };
    Ok(ESolutionCandidate { d, x })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    #[test]
    fn singleton_examples() {
        let c = make_solution(2, &SolutionSpec::Singleton(1)).unwrap();
        assert!((c.x[0] - Complex64::new(-1.0, 0.0)).norm() < TOL);
        assert!(c.verify(TOL));

        let c = make_solution(5, &SolutionSpec::Singleton(2)).unwrap();
        assert!(c.verify(TOL));
        assert!((c.e_value() - Complex64::new(1.0, 0.0)).norm() < TOL);
    }

    #[test]
    fn trivial_examples() {
        let c = make_solution(3, &SolutionSpec::Trivial).unwrap();
        assert_eq!(c.x, vec![Complex64::new(0.0, 0.0); 2]);
        assert!(c.verify(TOL));

        let c = make_solution(6, &SolutionSpec::Trivial).unwrap();
        assert!(c.verify(TOL));
        assert!((c.e_value() - Complex64::new(1.0 / 6.0, 0.0)).norm() < TOL);
    }

    #[test]
    fn subset_examples() {
        // D = {0, 2} mod 4: x_k = (1 + (−1)^k)/2
        let c = make_solution(4, &SolutionSpec::Subset(vec![0, 2])).unwrap();
        for (k, expect) in [(1, 0.0), (2, 1.0), (3, 0.0)] {
            assert!((c.x[k - 1] - Complex64::new(expect, 0.0)).norm() < TOL);
        }
        assert!(c.verify(TOL));
        assert!((c.e_value() - Complex64::new(0.5, 0.0)).norm() < TOL);
    }

    #[test]
    fn non_solutions_fail() {
        let c = ESolutionCandidate { d: 3, x: vec![Complex64::new(0.5, 0.0); 2] };
        assert!(!c.verify(TOL));
    }

    #[test]
    fn bad_inputs() {
        assert_eq!(
            make_solution(3, &SolutionSpec::Singleton(3)),
            Err(ESystemError::BadResidue { d: 3, m: 3 })
        );
        assert_eq!(
            make_solution(3, &SolutionSpec::Subset(vec![])),
            Err(ESystemError::EmptySubset)
        );
        assert_eq!(make_solution(0, &SolutionSpec::Trivial), Err(ESystemError::ZeroModulus));
    }

    #[test]
    fn all_singletons_and_subsets_up_to_6() {
        for d in 1..=6 {
            for m in 0..d {
                let c = make_solution(d, &SolutionSpec::Singleton(m)).unwrap();
                assert!(c.verify(TOL), "singleton d={} m={}", d, m);
                assert!((c.e_value() - Complex64::new(1.0, 0.0)).norm() < TOL);
            }
            // every non-empty subset of Z/dZ
            for mask in 1u32..(1 << d) {
                let set: Vec<usize> = (0..d).filter(|&m| mask & (1 << m) != 0).collect();
                let size = set.len();
                let c = make_solution(d, &SolutionSpec::Subset(set.clone())).unwrap();
                assert!(c.verify(TOL), "subset d={} D={:?}", d, set);
                let expect = Complex64::new(1.0 / size as f64, 0.0);
                assert!((c.e_value() - expect).norm() < TOL, "subset d={} D={:?}", d, set);
            }
        }
    }
}

//! Cross-checks of every closed form against its recursion or oracle.
//!
//! Each family reports the worst deviation seen and, on failure, the first
//! `(n, k, m1, m2)`-style witness that broke it.

use std::fmt;

use serde::Serialize;

use crate::charpoly::{
    adjugate_trace_closed_form, cofactor_m1m2, eigen_gap_product, eval_f, eval_f_closed_form,
    g_product_sum,
};
use crate::eigen::eig_symmetric;
use crate::error::Result;
use crate::graph::{build_laplacian, LineGraphSpec};
use crate::spectrum::{ascending_position, lambda_prime, lambda_prime_adjugate};

pub const DEFAULT_MAX_N: usize = 64;
/// Char-poly values grow with `n`; relative checks on adjugate quantities stop here.
pub const ADJUGATE_MAX_N: usize = 24;
/// Minors are checked against Gaussian-elimination determinants up to this order.
pub const MINOR_MAX_N: usize = 8;
pub const SAMPLE_POINTS: usize = 200;

pub const TOL_CHARPOLY: f64 = 1e-9;
pub const TOL_ADJUGATE_TRACE: f64 = 1e-8;
pub const TOL_COFACTOR: f64 = 1e-10;
pub const TOL_RAYLEIGH: f64 = 1e-12;
pub const TOL_ADJUGATE_ROUTE: f64 = 1e-8;
pub const TOL_TRACE_SUM: f64 = 1e-10;

/// Magnitude floor for relative comparisons; values below it are compared at
/// an absolute `tol * ZERO_FLOOR`. Some first-order shifts are exactly 0.
const ZERO_FLOOR: f64 = 1e-6;

pub type LambdaPrimeFn = fn(usize, usize, usize, usize) -> Result<f64>;

/// Formula under test. Swapping the first-order routine lets callers confirm
/// the suite actually notices a broken formula.
#[derive(Clone, Copy)]
pub struct IdentitySuite {
    pub max_n: usize,
    pub lambda_prime: LambdaPrimeFn,
}

impl Default for IdentitySuite {
    fn default() -> Self {
        Self {
            max_n: DEFAULT_MAX_N,
            lambda_prime,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyOutcome {
    pub name: &'static str,
    pub checks: usize,
    pub worst: f64,
    pub tolerance: f64,
    pub witness: Option<String>,
}

impl FamilyOutcome {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            checks: 0,
            worst: 0.0,
            tolerance,
            witness: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    /// Records `deviation` (already scaled to the tolerance's units).
    fn record(&mut self, deviation: f64, witness: impl FnOnce() -> String) {
        self.checks += 1;
        let bad = deviation.is_nan() || deviation > self.tolerance;
        if deviation > self.worst || deviation.is_nan() {
            self.worst = deviation;
        }
        if bad && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn fail(&mut self, witness: String) {
        self.checks += 1;
        if self.witness.is_none() {
            self.witness = Some(witness);
        }
    }
}

impl fmt::Display for FamilyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {:<34} checks={:<6} worst={:.3e} tol={:.0e}",
            self.name, self.checks, self.worst, self.tolerance
        )?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        Ok(())
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(ZERO_FLOOR)
}

/// Evenly spaced interior points of `(0.01, 3.99)`.
pub fn sample_lambdas(count: usize) -> Vec<f64> {
    let (lo, hi) = (0.01, 3.99);
    (0..count)
        .map(|i| lo + (i as f64 + 0.5) * (hi - lo) / count as f64)
        .collect()
}

impl IdentitySuite {
    pub fn with_max_n(max_n: usize) -> Self {
        Self {
            max_n,
            ..Self::default()
        }
    }

    pub fn run(&self) -> Vec<FamilyOutcome> {
        vec![
            self.charpoly_closed_form(),
            self.adjugate_trace(),
            self.cofactor_minors(),
            self.rayleigh(),
            self.adjugate_route(),
            self.trace_sum_rule(),
        ]
    }

    /// Recursion vs. closed-form characteristic polynomial.
    pub fn charpoly_closed_form(&self) -> FamilyOutcome {
        let mut out = FamilyOutcome::new("charpoly recursion = closed form", TOL_CHARPOLY);
        let lambdas = sample_lambdas(SAMPLE_POINTS);
        for n in 1..=self.max_n {
            for &l in &lambdas {
                match (eval_f(l, n), eval_f_closed_form(l, n)) {
                    (Ok(a), Ok(b)) => out.record((a - b).abs() / a.abs().max(1.0), || {
                        format!("n={n} lambda={l}")
                    }),
                    (Err(e), _) | (_, Err(e)) => out.fail(format!("n={n} lambda={l}: {e}")),
                }
            }
        }
        out
    }

    /// Closed-form adjugate trace = g-product sum = eigen-gap product.
    pub fn adjugate_trace(&self) -> FamilyOutcome {
        let mut out = FamilyOutcome::new("adjugate trace (3 routes)", TOL_ADJUGATE_TRACE);
        for n in 2..=self.max_n.min(ADJUGATE_MAX_N) {
            for k in 1..=n {
                let lambda = crate::spectrum::eigenvalue(n, k);
                let routes = (
                    adjugate_trace_closed_form(k, n),
                    g_product_sum(lambda, n),
                    eigen_gap_product(k, n),
                );
                match routes {
                    (Ok(a), Ok(b), Ok(c)) => {
                        let dev = rel(a, b).max(rel(a, c)).max(rel(b, c));
                        out.record(dev, || format!("n={n} k={k}: {a} / {b} / {c}"));
                    }
                    _ => out.fail(format!("n={n} k={k}: evaluation error")),
                }
            }
        }
        out
    }

    /// Off-diagonal cofactor identity vs. Gaussian-elimination minors.
    pub fn cofactor_minors(&self) -> FamilyOutcome {
        let mut out = FamilyOutcome::new("cofactor m1m2 = direct minor", TOL_COFACTOR);
        for n in 2..=self.max_n.min(MINOR_MAX_N) {
            let l = build_laplacian(&LineGraphSpec::canonical(n).expect("n >= 2"))
                .expect("canonical laplacian");
            for &lambda in &[0.5, 1.0, 3.0] {
                let y = l.shifted_negation(lambda);
                for m1 in 1..n {
                    for m2 in (m1 + 1)..=n {
                        let direct = y.minor_determinant(m1 - 1, m2 - 1);
                        match cofactor_m1m2(lambda, m1, m2, n) {
                            Ok(c) => out.record((c - direct).abs(), || {
                                format!("n={n} m1={m1} m2={m2} lambda={lambda}: {c} vs {direct}")
                            }),
                            Err(e) => out.fail(format!("n={n} m1={m1} m2={m2}: {e}")),
                        }
                    }
                }
            }
        }
        out
    }

    /// First-order formula vs. `v_k^T M v_k` with oracle eigenvectors.
    pub fn rayleigh(&self) -> FamilyOutcome {
        let mut out = FamilyOutcome::new("lambda' = Rayleigh quotient", TOL_RAYLEIGH);
        for n in 2..=self.max_n {
            let l = build_laplacian(&LineGraphSpec::canonical(n).expect("n >= 2"))
                .expect("canonical laplacian");
            let d = match eig_symmetric(&l) {
                Ok(d) => d,
                Err(e) => {
                    out.fail(format!("n={n}: eigensolver failed: {e}"));
                    continue;
                }
            };
            for k in 1..=n {
                let v = d.eigenvector(ascending_position(n, k));
                for (m1, m2) in pair_sample(n) {
                    let rq = (v[m1 - 1] - v[m2 - 1]).powi(2);
                    match (self.lambda_prime)(n, k, m1, m2) {
                        Ok(lp) => out.record((lp - rq).abs(), || {
                            format!("n={n} k={k} m1={m1} m2={m2}: {lp} vs {rq}")
                        }),
                        Err(e) => out.fail(format!("n={n} k={k} m1={m1} m2={m2}: {e}")),
                    }
                }
            }
        }
        out
    }

    /// First-order formula vs. the adjugate-ratio route.
    pub fn adjugate_route(&self) -> FamilyOutcome {
        let mut out = FamilyOutcome::new("lambda' = adjugate ratio", TOL_ADJUGATE_ROUTE);
        for n in 2..=self.max_n.min(ADJUGATE_MAX_N) {
            for k in 1..=n {
                for m1 in 1..n {
                    for m2 in (m1 + 1)..=n {
                        match (
                            (self.lambda_prime)(n, k, m1, m2),
                            lambda_prime_adjugate(n, k, m1, m2),
                        ) {
                            (Ok(a), Ok(b)) => out.record(rel(a, b), || {
                                format!("n={n} k={k} m1={m1} m2={m2}: {a} vs {b}")
                            }),
                            (Err(e), _) | (_, Err(e)) => {
                                out.fail(format!("n={n} k={k} m1={m1} m2={m2}: {e}"))
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// `Σ_k λ'_k = tr M = 2`.
    pub fn trace_sum_rule(&self) -> FamilyOutcome {
        let mut out = FamilyOutcome::new("sum_k lambda'_k = 2", TOL_TRACE_SUM);
        for n in 2..=self.max_n {
            for (m1, m2) in pair_sample(n) {
                let mut sum = 0.0;
                let mut err = None;
                for k in 1..=n {
                    match (self.lambda_prime)(n, k, m1, m2) {
                        Ok(v) => sum += v,
                        Err(e) => {
                            err = Some(e);
                            break;
                        }
                    }
                }
                match err {
                    None => out.record((sum - 2.0).abs(), || {
                        format!("n={n} m1={m1} m2={m2}: sum={sum}")
                    }),
                    Some(e) => out.fail(format!("n={n} m1={m1} m2={m2}: {e}")),
                }
            }
        }
        out
    }
}

/// All pairs for small `n`; for larger `n` the pairs touching vertex 1, vertex
/// `n`, the middle vertex, or adjacent to each other.
fn pair_sample(n: usize) -> Vec<(usize, usize)> {
    if n <= 16 {
        return (1..n)
            .flat_map(|a| ((a + 1)..=n).map(move |b| (a, b)))
            .collect();
    }
    let mid = n / 2;
    let mut pairs: Vec<(usize, usize)> = (1..n)
        .flat_map(|a| ((a + 1)..=n).map(move |b| (a, b)))
        .filter(|&(a, b)| a == 1 || b == n || a == mid || b == mid || b == a + 1)
        .collect();
    pairs.dedup();
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    // First-order shift with the bracket minus sign flipped to plus.
    fn flipped_sign(n: usize, k: usize, m1: usize, m2: usize) -> Result<f64> {
        lambda_prime(n, k, m1, m2)?;
        let t = PI * k as f64 / n as f64;
        let s =
            |m: usize| if m.is_multiple_of(2) { 1.0 } else { -1.0 } * ((m as f64 - 0.5) * t).sin();
        let b = s(m1) + s(m2);
        Ok(2.0 / n as f64 * b * b)
    }

    #[test]
    fn small_suite_passes() {
        let outcomes = IdentitySuite::with_max_n(8).run();
        for o in &outcomes {
            assert!(o.passed(), "{o}");
            assert!(o.checks > 0);
        }
    }

    #[test]
    fn sign_mutation_is_caught_with_witness() {
        let suite = IdentitySuite {
            max_n: 6,
            lambda_prime: flipped_sign,
        };
        let rq = suite.rayleigh();
        assert!(!rq.passed());
        assert!(rq.witness.as_ref().unwrap().starts_with("n="));
        assert!(!suite.trace_sum_rule().passed());
        assert!(!suite.adjugate_route().passed());
    }

    #[test]
    fn pair_sample_is_sorted_and_valid() {
        for n in [2, 5, 16, 17, 64] {
            let p = pair_sample(n);
            assert!(p.iter().all(|&(a, b)| 1 <= a && a < b && b <= n));
            assert!(p.windows(2).all(|w| w[0] < w[1]));
        }
        assert_eq!(pair_sample(3), vec![(1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn display_line() {
        let o = IdentitySuite::with_max_n(4).trace_sum_rule();
        assert!(o.to_string().starts_with("PASS"));
    }
}

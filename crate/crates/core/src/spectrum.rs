//! Closed-form spectrum of the unit-weight line-graph Laplacian and the
//! first-order eigenvalue shift under a single edge perturbation.
//!
//! Eigen indices `k = 1..=n` follow the cosine ordering
//! `λ_k = 2cos(πk/n) + 2`, which is *decreasing* in `k` with `λ_n = 0`. The
//! oracle in [`crate::eigen`] sorts ascending; [`ascending_position`] and
//! [`index_from_ascending`] convert between the two.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::charpoly::{diagonal_cofactor, g_product_sum};
use crate::error::{check_index, Result, SpectraError};
use crate::graph::{LineGraphSpec, PerturbationSpec};

/// `θ_k = πk/n`.
#[inline]
pub fn theta(n: usize, k: usize) -> f64 {
    PI * k as f64 / n as f64
}

/// `λ_k = 2cos(πk/n) + 2`. No range checks.
#[inline]
pub fn eigenvalue(n: usize, k: usize) -> f64 {
    2.0 * theta(n, k).cos() + 2.0
}

/// 0-based position of eigen index `k` in an ascending list of `n` eigenvalues.
#[inline]
pub fn ascending_position(n: usize, k: usize) -> usize {
    n - k
}

/// Eigen index `k` for a 0-based ascending position.
#[inline]
pub fn index_from_ascending(n: usize, position: usize) -> usize {
    n - position
}

/// One exact eigenpair of `L_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormEigenpair {
    pub k: usize,
    pub theta: f64,
    pub lambda: f64,
    pub vector: Vec<f64>,
}

/// All `n` exact eigenpairs of the canonical line-graph Laplacian, indexed `k = 1..=n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormSpectrum {
    pub n: usize,
    pub entries: Vec<ClosedFormEigenpair>,
}

impl ClosedFormSpectrum {
    pub fn new(n: usize) -> Result<Self> {
        check_index("n", n, 2, usize::MAX)?;
        let entries = (1..=n)
            .map(|k| ClosedFormEigenpair {
                k,
                theta: theta(n, k),
                lambda: eigenvalue(n, k),
                vector: eigenvector_unchecked(n, k),
            })
            .collect();
        Ok(Self { n, entries })
    }

    /// Rejects graphs with any non-unit weight.
    pub fn for_graph(graph: &LineGraphSpec) -> Result<Self> {
        graph.require_canonical()?;
        Self::new(graph.n())
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.lambda).collect()
    }

    /// Eigenpair for the 1-based index `k`.
    pub fn pair(&self, k: usize) -> &ClosedFormEigenpair {
        &self.entries[k - 1]
    }
}

/// `λ_k` for `k = 1..=n`.
pub fn closed_form_eigenvalues(n: usize) -> Result<Vec<f64>> {
    check_index("n", n, 2, usize::MAX)?;
    Ok((1..=n).map(|k| eigenvalue(n, k)).collect())
}

/// Same as [`closed_form_eigenvalues`], refusing non-unit-weight graphs.
pub fn closed_form_eigenvalues_for(graph: &LineGraphSpec) -> Result<Vec<f64>> {
    graph.require_canonical()?;
    closed_form_eigenvalues(graph.n())
}

fn eigenvector_unchecked(n: usize, k: usize) -> Vec<f64> {
    if k == n {
        return vec![1.0 / (n as f64).sqrt(); n];
    }
    let scale = (2.0 / n as f64).sqrt();
    let t = theta(n, k);
    (1..=n)
        .map(|i| {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            scale * sign * ((i as f64 - 0.5) * t).sin()
        })
        .collect()
}

/// Unit eigenvector for `λ_k`: `sqrt(2/n) (-1)^{i-1} sin((i - 1/2)πk/n)`, or the
/// constant vector `1/sqrt(n)` for `k = n`.
pub fn closed_form_eigenvector(n: usize, k: usize) -> Result<Vec<f64>> {
    check_index("n", n, 2, usize::MAX)?;
    check_index("k", k, 1, n)?;
    Ok(eigenvector_unchecked(n, k))
}

fn check_triplet(n: usize, k: usize, m1: usize, m2: usize) -> Result<()> {
    check_index("n", n, 2, usize::MAX)?;
    check_index("k", k, 1, n)?;
    check_index("m2", m2, 2, n)?;
    check_index("m1", m1, 1, m2 - 1)
}

// (-1)^m sin((m - 1/2) t)
#[inline]
fn signed_sine(m: usize, t: f64) -> f64 {
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * ((m as f64 - 0.5) * t).sin()
}

/// First-order shift of `λ_k` when the weight between `m1` and `m2` changes:
///
/// `λ'_k(0) = (2/n) [(-1)^{m1} sin((m1 - 1/2)πk/n) - (-1)^{m2} sin((m2 - 1/2)πk/n)]²`.
pub fn lambda_prime(n: usize, k: usize, m1: usize, m2: usize) -> Result<f64> {
    check_triplet(n, k, m1, m2)?;
    let t = theta(n, k);
    let bracket = signed_sine(m1, t) - signed_sine(m2, t);
    Ok(2.0 / n as f64 * bracket * bracket)
}

/// Same quantity routed through the adjugate ratio
/// `tr(adj[λ_k I - L] M) / tr(adj[λ_k I - L])`.
///
/// With `M = E_{m1m1} + E_{m2m2} - E_{m1m2} - E_{m2m1}` and
/// `adj(Y)_{ji} = (-1)^{i+j} [Y]_{ij}`, the numerator is
/// `[Y]_{m1m1} + [Y]_{m2m2} - 2(-1)^{m1+m2} [Y]_{m1m2}`; the denominator is the
/// g-product sum.
pub fn lambda_prime_adjugate(n: usize, k: usize, m1: usize, m2: usize) -> Result<f64> {
    check_triplet(n, k, m1, m2)?;
    let lambda = eigenvalue(n, k);

    // Simple-eigenvalue guard: nearest neighbour in the cosine ladder.
    let gap = (1..=n)
        .filter(|&j| j != k)
        .map(|j| (eigenvalue(n, j) - lambda).abs())
        .fold(f64::INFINITY, f64::min);
    if gap <= 1e-12 {
        return Err(SpectraError::Degenerate(format!(
            "eigenvalue {k} of L_{n} is not simple (gap {gap:e})"
        )));
    }

    let g = crate::charpoly::eval_g_sequence(lambda, n - 1);
    let off = g[m1 - 1] * g[n - m2];
    let adj_sign = if (m1 + m2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let numerator = diagonal_cofactor(lambda, m1, n)? + diagonal_cofactor(lambda, m2, n)?
        - 2.0 * adj_sign * off;
    let denominator = g_product_sum(lambda, n)?;
    if denominator == 0.0 {
        return Err(SpectraError::Degenerate(format!(
            "adjugate trace vanishes at eigenvalue {k} of L_{n}"
        )));
    }
    Ok(numerator / denominator)
}

/// First-order prediction for one eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbedPrediction {
    pub k: usize,
    pub lambda0: f64,
    pub lambda_prime: f64,
    pub epsilon: f64,
    pub predicted: f64,
}

/// `λ_k(ε) ≈ λ_k + ε λ'_k(0)` for every `k = 1..=n`.
pub fn predict_spectrum(
    graph: &LineGraphSpec,
    pert: &PerturbationSpec,
) -> Result<Vec<PerturbedPrediction>> {
    graph.require_canonical()?;
    pert.validate_for(graph)?;
    let n = graph.n();
    let eps = pert.epsilon();
    (1..=n)
        .map(|k| {
            let lambda0 = eigenvalue(n, k);
            let lp = lambda_prime(n, k, pert.m1(), pert.m2())?;
            Ok(PerturbedPrediction {
                k,
                lambda0,
                lambda_prime: lp,
                epsilon: eps,
                predicted: lambda0 + eps * lp,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_laplacian;
    use approx::assert_abs_diff_eq;

    #[test]
    fn four_node_eigenvalues() {
        let l = closed_form_eigenvalues(4).unwrap();
        assert_abs_diff_eq!(l[0], 2.0 + 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(l[1], 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(l[2], 2.0 - 2f64.sqrt(), epsilon = 1e-15);
        assert_eq!(l[3], 0.0);
    }

    #[test]
    fn two_node_eigenvalues() {
        let l = closed_form_eigenvalues(2).unwrap();
        assert_abs_diff_eq!(l[0], 2.0, epsilon = 1e-15);
        assert_eq!(l[1], 0.0);
    }

    #[test]
    fn last_eigenvalue_is_exactly_zero_and_ladder_decreases() {
        for n in 2..100 {
            let l = closed_form_eigenvalues(n).unwrap();
            assert_eq!(l[n - 1], 0.0);
            assert!(l.windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn non_canonical_graph_rejected() {
        let g = LineGraphSpec::weighted(vec![1.0, 2.0]).unwrap();
        let e = closed_form_eigenvalues_for(&g).unwrap_err();
        assert!(matches!(e, SpectraError::NonCanonical(_)));
        assert!(ClosedFormSpectrum::for_graph(&g).is_err());
        let p = PerturbationSpec::new(1, 3, 0.1).unwrap();
        assert!(predict_spectrum(&g, &p).is_err());
    }

    #[test]
    fn eigenvectors_solve_laplacian() {
        for n in 2..30 {
            let l = build_laplacian(&LineGraphSpec::canonical(n).unwrap()).unwrap();
            let spec = ClosedFormSpectrum::new(n).unwrap();
            for pair in &spec.entries {
                let lv = l.mul_vec(&pair.vector);
                for (a, b) in lv.iter().zip(&pair.vector) {
                    assert!((a - pair.lambda * b).abs() < 1e-10);
                }
                let norm: f64 = pair.vector.iter().map(|x| x * x).sum();
                assert!((norm - 1.0).abs() < 1e-12);
            }
            for a in &spec.entries {
                for b in &spec.entries {
                    let dot: f64 = a.vector.iter().zip(&b.vector).map(|(x, y)| x * y).sum();
                    let expected = if a.k == b.k { 1.0 } else { 0.0 };
                    assert!((dot - expected).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn eigenvector_special_cases() {
        let v = closed_form_eigenvector(5, 5).unwrap();
        assert!(v.iter().all(|&x| (x - 1.0 / 5f64.sqrt()).abs() < 1e-15));
        let v = closed_form_eigenvector(2, 1).unwrap();
        let h = 1.0 / 2f64.sqrt();
        assert_abs_diff_eq!(v[0], h, epsilon = 1e-15);
        assert_abs_diff_eq!(v[1], -h, epsilon = 1e-15);
        assert!(closed_form_eigenvector(4, 0).is_err());
        assert!(closed_form_eigenvector(4, 5).is_err());
    }

    #[test]
    fn lambda_prime_four_node_values() {
        // Rayleigh quotients (v_k[2] - v_k[4])^2 computed by hand from the sine basis.
        let expected = [0.146_446_609_406_726_2, 1.0, 0.853_553_390_593_273_7, 0.0];
        let mut total = 0.0;
        for (k, e) in (1..=4).zip(expected) {
            let lp = lambda_prime(4, k, 2, 4).unwrap();
            assert_abs_diff_eq!(lp, e, epsilon = 1e-12);
            total += lp;
        }
        assert_abs_diff_eq!(total, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn lambda_prime_index_errors() {
        assert!(lambda_prime(4, 0, 1, 2).is_err());
        assert!(lambda_prime(4, 1, 2, 2).is_err());
        assert!(lambda_prime(4, 1, 3, 2).is_err());
        assert!(lambda_prime(4, 1, 1, 5).is_err());
        assert!(lambda_prime_adjugate(4, 5, 1, 2).is_err());
    }

    #[test]
    fn adjugate_route_matches() {
        assert_abs_diff_eq!(
            lambda_prime_adjugate(4, 2, 2, 4).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            lambda_prime_adjugate(4, 4, 2, 4).unwrap(),
            0.0,
            epsilon = 1e-14
        );
        let a = lambda_prime_adjugate(8, 3, 1, 8).unwrap();
        let b = lambda_prime(8, 3, 1, 8).unwrap();
        assert!((a - b).abs() <= 1e-8 * b.abs().max(1e-300));
    }

    #[test]
    fn zero_epsilon_prediction_is_unperturbed() {
        let g = LineGraphSpec::canonical(7).unwrap();
        let p = PerturbationSpec::new(2, 6, 0.0).unwrap();
        let pred = predict_spectrum(&g, &p).unwrap();
        let l = closed_form_eigenvalues(7).unwrap();
        for (p, l) in pred.iter().zip(l) {
            assert_eq!(p.predicted, l);
        }
    }

    #[test]
    fn prediction_n4_edge_2_4() {
        let g = LineGraphSpec::canonical(4).unwrap();
        let p = PerturbationSpec::new(2, 4, 0.1).unwrap();
        let pred = predict_spectrum(&g, &p).unwrap();
        assert_abs_diff_eq!(pred[1].predicted, 2.1, epsilon = 1e-12);
        assert_eq!(pred[3].predicted, 0.0);
    }

    #[test]
    fn ordering_helpers_round_trip() {
        for n in 2..10 {
            for k in 1..=n {
                assert_eq!(index_from_ascending(n, ascending_position(n, k)), k);
            }
        }
        assert_eq!(ascending_position(4, 4), 0);
    }

    #[test]
    fn zero_mode_shift_vanishes_and_all_shifts_non_negative() {
        for n in 2..=64 {
            for m1 in 1..n {
                for m2 in (m1 + 1)..=n {
                    assert!(lambda_prime(n, n, m1, m2).unwrap().abs() <= 1e-14);
                    for k in 1..n {
                        assert!(lambda_prime(n, k, m1, m2).unwrap() >= 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn finite_difference_slope_converges_linearly() {
        use crate::eigen::eig_symmetric;
        use crate::graph::build_perturbed_laplacian;

        for &(n, m1, m2) in &[(4, 2, 4), (7, 1, 5), (10, 3, 4)] {
            let g = LineGraphSpec::canonical(n).unwrap();
            for k in 1..=n {
                let lp = lambda_prime(n, k, m1, m2).unwrap();
                for eps in [1e-3, 1e-4, 1e-5] {
                    let p = PerturbationSpec::new(m1, m2, eps).unwrap();
                    let d = eig_symmetric(&build_perturbed_laplacian(&g, &p).unwrap()).unwrap();
                    let slope = (d.eigenvalues[ascending_position(n, k)] - eigenvalue(n, k)) / eps;
                    let roundoff = 1e-13 / (eps * eps);
                    assert!(
                        (slope - lp).abs() <= (2.0 + roundoff) * eps,
                        "n={n} k={k} eps={eps}"
                    );
                }
            }
        }
    }
}

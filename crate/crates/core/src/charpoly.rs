//! Characteristic polynomials of the canonical line-graph Laplacian `L_n` and the
//! auxiliary matrix `H_n`, plus the cofactor identities built from them.
//!
//! `g_k(λ) = det(λI - H_k)` obeys `g_k = (λ - 2) g_{k-1} - g_{k-2}` with
//! `g_{-1} = -1`, `g_0 = 1`, and `f_n(λ) = det(λI - L_n) = (λ - 1) g_{n-1} - g_{n-2}`.
//!
//! Cofactors `[A]_{ij}` here are plain minors (row `i` and column `j` deleted,
//! no `(-1)^{i+j}`); the sign is applied where an adjugate entry is formed.

use serde::{Deserialize, Serialize};

use crate::error::{check_index, Result, SpectraError};
use crate::spectrum::eigenvalue;

/// Value of `g_{-1}`.
pub const G_MINUS_ONE: f64 = -1.0;

/// `f_n` evaluated at one point, optionally keeping the `g_0..=g_n` sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharPolyValue {
    pub lambda: f64,
    pub n: usize,
    pub f_value: f64,
    pub g_values: Option<Vec<f64>>,
}

impl CharPolyValue {
    pub fn evaluate(lambda: f64, n: usize, keep_sequence: bool) -> Result<Self> {
        check_index("n", n, 1, usize::MAX)?;
        let g = eval_g_sequence(lambda, n);
        let f_value = f_from_sequence(lambda, &g, n);
        Ok(Self {
            lambda,
            n,
            f_value,
            g_values: keep_sequence.then_some(g),
        })
    }
}

/// `g_0 ..= g_{k_max}` by the three-term recursion.
pub fn eval_g_sequence(lambda: f64, k_max: usize) -> Vec<f64> {
    let mut g = Vec::with_capacity(k_max + 1);
    let (mut prev, mut cur) = (G_MINUS_ONE, 1.0);
    g.push(cur);
    for _ in 0..k_max {
        let next = (lambda - 2.0) * cur - prev;
        prev = cur;
        cur = next;
        g.push(cur);
    }
    g
}

// g[k] for k >= -1, given g_0..
#[inline]
fn g_at(g: &[f64], k: isize) -> f64 {
    if k < 0 {
        G_MINUS_ONE
    } else {
        g[k as usize]
    }
}

fn f_from_sequence(lambda: f64, g: &[f64], n: usize) -> f64 {
    let n = n as isize;
    (lambda - 1.0) * g_at(g, n - 1) - g_at(g, n - 2)
}

/// `det(λI - L_n)` through the cofactor recursion.
pub fn eval_f(lambda: f64, n: usize) -> Result<f64> {
    check_index("n", n, 1, usize::MAX)?;
    let g = eval_g_sequence(lambda, n.saturating_sub(1));
    Ok(f_from_sequence(lambda, &g, n))
}

/// `f_n(λ) = λ F_n(λ) / F_1(λ)` with `F_n = ω₊ⁿ - ω₋ⁿ`.
///
/// Inside `(0, 4)` the roots `ω±` are `e^{±iθ}` with `λ = 2cosθ + 2`, giving
/// `λ sin(nθ)/sinθ`. Outside `[0, 4]` they are real, `±e^{±t}` with
/// `cosh t = |λ - 2|/2`, giving `λ (±1)^{n-1} sinh(nt)/sinh t`. At the branch
/// points `λ ∈ {0, 4}` the recursion value is returned.
pub fn eval_f_closed_form(lambda: f64, n: usize) -> Result<f64> {
    check_index("n", n, 1, usize::MAX)?;
    if !lambda.is_finite() {
        return Err(SpectraError::Validation(format!(
            "lambda must be finite, got {lambda}"
        )));
    }
    if lambda == 0.0 || lambda == 4.0 {
        return eval_f(lambda, n);
    }
    let nf = n as f64;
    if lambda > 0.0 && lambda < 4.0 {
        let theta = ((lambda - 2.0) / 2.0).acos();
        Ok(lambda * (nf * theta).sin() / theta.sin())
    } else {
        let t = ((lambda - 2.0).abs() / 2.0).acosh();
        let ratio = (nf * t).sinh() / t.sinh();
        let sign = if lambda < 0.0 && n.is_multiple_of(2) {
            -1.0
        } else {
            1.0
        };
        Ok(lambda * sign * ratio)
    }
}

/// `Σ_{i=1}^{n} g_{i-1}(λ) g_{n-i}(λ)`: the sum of diagonal minors of `λI - L_n`,
/// i.e. `tr adj(λI - L_n)`.
pub fn g_product_sum(lambda: f64, n: usize) -> Result<f64> {
    check_index("n", n, 1, usize::MAX)?;
    let g = eval_g_sequence(lambda, n - 1);
    Ok((1..=n).map(|i| g[i - 1] * g[n - i]).sum())
}

/// `∏_{j≠k} (λ_k - λ_j)` over the closed-form eigenvalues of `L_n`.
pub fn eigen_gap_product(k: usize, n: usize) -> Result<f64> {
    check_index("n", n, 2, usize::MAX)?;
    check_index("k", k, 1, n)?;
    let lk = eigenvalue(n, k);
    Ok((1..=n)
        .filter(|&j| j != k)
        .map(|j| lk - eigenvalue(n, j))
        .product())
}

/// `tr adj(λ_k I - L_n) = -2(-1)^k n cos²(θ_k/2) / sin²θ_k`, `θ_k = πk/n`.
///
/// The expression is singular at `k = n` (`sinθ = 0`); that index returns the
/// eigen-gap product instead.
pub fn adjugate_trace_closed_form(k: usize, n: usize) -> Result<f64> {
    check_index("n", n, 2, usize::MAX)?;
    check_index("k", k, 1, n)?;
    if k == n {
        return eigen_gap_product(k, n);
    }
    let theta = std::f64::consts::PI * k as f64 / n as f64;
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let half_cos = (theta / 2.0).cos();
    let s = theta.sin();
    Ok(-2.0 * sign * n as f64 * half_cos * half_cos / (s * s))
}

/// Diagonal minor `[λI - L_n]_{ii} = g_{i-1}(λ) g_{n-i}(λ)`.
pub fn diagonal_cofactor(lambda: f64, i: usize, n: usize) -> Result<f64> {
    check_index("n", n, 1, usize::MAX)?;
    check_index("i", i, 1, n)?;
    let g = eval_g_sequence(lambda, n - 1);
    Ok(g[i - 1] * g[n - i])
}

/// Off-diagonal minor `[λI - L_n]_{m1 m2} = g_{m1-1}(λ) g_{n-m2}(λ)` for `m1 < m2`.
pub fn cofactor_m1m2(lambda: f64, m1: usize, m2: usize, n: usize) -> Result<f64> {
    check_index("n", n, 2, usize::MAX)?;
    check_index("m2", m2, 2, n)?;
    check_index("m1", m1, 1, m2 - 1)?;
    let g = eval_g_sequence(lambda, n - 1);
    Ok(g[m1 - 1] * g[n - m2])
}

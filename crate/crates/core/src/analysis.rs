//! ε-sweep experiments: second-order error of the first-order prediction, and
//! eigenvector continuation with sign-flip correction.

use serde::{Deserialize, Serialize};

use crate::eigen::{eig_symmetric, is_simple_spectrum, EigenDecomposition};
use crate::error::{Result, SpectraError};
use crate::graph::{build_perturbed_laplacian, LineGraphSpec, PerturbationSpec};
use crate::spectrum::{ascending_position, eigenvalue, lambda_prime};

/// Gap below which two oracle eigenvalues count as coincident.
pub const DEGENERACY_GAP: f64 = 1e-9;

/// Per-eigenvalue series of an error study, `k` in cosine order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorSeries {
    pub k: usize,
    pub lambda0: f64,
    pub lambda_prime: f64,
    /// Oracle `λ_k(ε)` per sweep point.
    pub oracle: Vec<f64>,
    /// `E = (λ_k(ε) - λ_k - ε λ'_k) / ε²` per sweep point.
    pub errors: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorStudyResult {
    pub graph: LineGraphSpec,
    pub m1: usize,
    pub m2: usize,
    pub epsilons: Vec<f64>,
    /// One entry per `k = 1..=n`.
    pub series: Vec<ErrorSeries>,
    /// Sweep positions whose perturbed spectrum was not simple.
    pub degenerate_steps: Vec<usize>,
}

impl ErrorStudyResult {
    /// Smallest `C` with `|λ_oracle - predicted| <= C ε²` over the whole sweep,
    /// i.e. `max |E|`.
    pub fn fitted_constant(&self) -> f64 {
        self.series
            .iter()
            .flat_map(|s| s.errors.iter())
            .fold(0.0_f64, |m, e| m.max(e.abs()))
    }

    /// `E` at the smallest ε, per `k`.
    pub fn small_epsilon_limit(&self) -> Vec<f64> {
        self.series.iter().map(|s| s.errors[0]).collect()
    }

    /// Oracle eigenvalues at sweep point `step`, ascending.
    pub fn ascending_eigenvalues(&self, step: usize) -> Vec<f64> {
        self.series.iter().rev().map(|s| s.oracle[step]).collect()
    }

    pub fn series_for(&self, k: usize) -> &ErrorSeries {
        &self.series[k - 1]
    }
}

fn perturbation_for(
    graph: &LineGraphSpec,
    pair: (usize, usize),
    eps: f64,
) -> Result<PerturbationSpec> {
    let p = PerturbationSpec::new(pair.0, pair.1, eps)?;
    p.validate_for(graph)?;
    Ok(p)
}

fn decompose(graph: &LineGraphSpec, pert: &PerturbationSpec) -> Result<EigenDecomposition> {
    eig_symmetric(&build_perturbed_laplacian(graph, pert)?)
}

/// Oracle spectra for every ε in `epsilons`, computed on scoped worker threads
/// and returned in input order.
fn decompose_all(
    graph: &LineGraphSpec,
    pair: (usize, usize),
    epsilons: &[f64],
) -> Result<Vec<EigenDecomposition>> {
    let perts = epsilons
        .iter()
        .map(|&e| perturbation_for(graph, pair, e))
        .collect::<Result<Vec<_>>>()?;
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(perts.len().max(1));
    if workers <= 1 {
        return perts.iter().map(|p| decompose(graph, p)).collect();
    }
    let chunk = perts.len().div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = perts
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || part.iter().map(|p| decompose(graph, p)).collect::<Vec<_>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("eigensolver worker panicked"))
            .collect()
    })
}

/// Second-order error of the first-order prediction over an ε sweep.
///
/// `epsilons` must be positive and strictly increasing. Perturbed eigenvalues
/// are matched to `k` by rank: the `j`-th smallest oracle eigenvalue is
/// `λ_{n-j}`. Sweep points where the perturbed spectrum is not simple are
/// listed in `degenerate_steps` and still evaluated.
pub fn error_study(
    graph: &LineGraphSpec,
    pair: (usize, usize),
    epsilons: &[f64],
) -> Result<ErrorStudyResult> {
    graph.require_canonical()?;
    if epsilons.is_empty() {
        return Err(SpectraError::Validation(
            "error study needs at least one ε".into(),
        ));
    }
    if let Some(e) = epsilons.iter().find(|e| !(e.is_finite() && **e > 0.0)) {
        return Err(SpectraError::Validation(format!(
            "error study needs ε > 0 (the error divides by ε²), got {e}"
        )));
    }
    if epsilons.windows(2).any(|w| w[1] <= w[0]) {
        return Err(SpectraError::Validation(
            "ε values must be strictly increasing".into(),
        ));
    }
    let template = PerturbationSpec::new(pair.0, pair.1, 0.0)?;
    template.validate_for(graph)?;
    let (m1, m2) = (template.m1(), template.m2());
    let n = graph.n();

    let decomps = decompose_all(graph, (m1, m2), epsilons)?;
    let degenerate_steps = decomps
        .iter()
        .enumerate()
        .filter(|(_, d)| !is_simple_spectrum(d, DEGENERACY_GAP))
        .map(|(i, _)| i)
        .collect();

    let series = (1..=n)
        .map(|k| {
            let lambda0 = eigenvalue(n, k);
            let lp = lambda_prime(n, k, m1, m2)?;
            let pos = ascending_position(n, k);
            let oracle: Vec<f64> = decomps.iter().map(|d| d.eigenvalues[pos]).collect();
            let errors = oracle
                .iter()
                .zip(epsilons)
                .map(|(l, e)| (l - (lambda0 + e * lp)) / (e * e))
                .collect();
            Ok(ErrorSeries {
                k,
                lambda0,
                lambda_prime: lp,
                oracle,
                errors,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ErrorStudyResult {
        graph: graph.clone(),
        m1,
        m2,
        epsilons: epsilons.to_vec(),
        series,
        degenerate_steps,
    })
}

/// `(step, k)` where the eigenvector for `k` was negated to keep continuity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipEvent {
    pub step: usize,
    pub k: usize,
}

/// Oracle eigenpairs at one ε, in cosine order (`[k - 1]`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrackedStep {
    pub epsilon: f64,
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuationResult {
    pub n: usize,
    pub m1: usize,
    pub m2: usize,
    pub epsilons: Vec<f64>,
    pub steps: Vec<TrackedStep>,
    pub flip_events: Vec<FlipEvent>,
    pub degeneracy_flags: Vec<usize>,
    /// `max_k ||v_k(step) - v_k(step - 1)||` after alignment; 0 for step 0.
    pub step_changes: Vec<f64>,
}

impl ContinuationResult {
    pub fn max_step_change(&self) -> f64 {
        self.step_changes.iter().copied().fold(0.0, f64::max)
    }

    /// Largest `||Δv|| / Δε` over the sweep; 0 for a single point.
    pub fn max_step_rate(&self) -> f64 {
        self.step_changes
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c / (self.epsilons[i] - self.epsilons[i - 1]))
            .fold(0.0, f64::max)
    }

    /// `λ_k` along the sweep.
    pub fn eigenvalue_trajectory(&self, k: usize) -> Vec<f64> {
        self.steps.iter().map(|s| s.eigenvalues[k - 1]).collect()
    }

    /// Eigenvalues at `step`, ascending.
    pub fn ascending_eigenvalues(&self, step: usize) -> Vec<f64> {
        self.steps[step].eigenvalues.iter().rev().copied().collect()
    }

    pub fn step_index(&self, epsilon: f64, tol: f64) -> Option<usize> {
        self.epsilons
            .iter()
            .position(|e| (e - epsilon).abs() <= tol)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Negates each `current[j]` whose inner product with `reference[j]` is
/// negative. Returns the flipped positions. Applying it twice is a no-op.
pub fn align_signs(reference: &[Vec<f64>], current: &mut [Vec<f64>]) -> Vec<usize> {
    let mut flipped = Vec::new();
    for (j, (r, c)) in reference.iter().zip(current.iter_mut()).enumerate() {
        if dot(r, c) < 0.0 {
            c.iter_mut().for_each(|x| *x = -*x);
            flipped.push(j);
        }
    }
    flipped
}

/// Oracle eigenvectors along `ε ∈ [eps_start, eps_end]`, sign-aligned step to step.
///
/// The grid is `eps_start + i (eps_end - eps_start) / steps` for `i = 0..=steps`,
/// collapsing to a single point when the endpoints coincide. Eigenvectors are
/// matched by eigenvalue rank; steps where the spectrum is not simple are
/// flagged and matched the same way.
pub fn track_eigenvectors(
    graph: &LineGraphSpec,
    pair: (usize, usize),
    eps_start: f64,
    eps_end: f64,
    steps: usize,
) -> Result<ContinuationResult> {
    graph.require_canonical()?;
    if steps < 2 {
        return Err(SpectraError::Validation(format!(
            "tracking needs steps >= 2, got {steps}"
        )));
    }
    if !(eps_start.is_finite() && eps_end.is_finite()) || eps_end < eps_start {
        return Err(SpectraError::Validation(format!(
            "tracking needs finite eps_start <= eps_end, got {eps_start}..{eps_end}"
        )));
    }
    let template = PerturbationSpec::new(pair.0, pair.1, 0.0)?;
    template.validate_for(graph)?;
    let (m1, m2) = (template.m1(), template.m2());
    let n = graph.n();

    let epsilons: Vec<f64> = if eps_start == eps_end {
        vec![eps_start]
    } else {
        let h = (eps_end - eps_start) / steps as f64;
        (0..=steps)
            .map(|i| {
                if i == steps {
                    eps_end
                } else {
                    eps_start + i as f64 * h
                }
            })
            .collect()
    };

    let decomps = decompose_all(graph, (m1, m2), &epsilons)?;

    let mut tracked: Vec<TrackedStep> = Vec::with_capacity(decomps.len());
    let mut flip_events = Vec::new();
    let mut degeneracy_flags = Vec::new();
    let mut step_changes = Vec::with_capacity(decomps.len());

    for (i, (d, &eps)) in decomps.into_iter().zip(&epsilons).enumerate() {
        if !is_simple_spectrum(&d, DEGENERACY_GAP) {
            degeneracy_flags.push(i);
        }
        let eigenvalues: Vec<f64> = d.eigenvalues.iter().rev().copied().collect();
        let mut eigenvectors: Vec<Vec<f64>> = d.eigenvectors.into_iter().rev().collect();
        let change = match tracked.last() {
            None => 0.0,
            Some(prev) => {
                for j in align_signs(&prev.eigenvectors, &mut eigenvectors) {
                    flip_events.push(FlipEvent { step: i, k: j + 1 });
                }
                prev.eigenvectors
                    .iter()
                    .zip(&eigenvectors)
                    .map(|(a, b)| {
                        a.iter()
                            .zip(b)
                            .map(|(x, y)| (x - y).powi(2))
                            .sum::<f64>()
                            .sqrt()
                    })
                    .fold(0.0, f64::max)
            }
        };
        step_changes.push(change);
        tracked.push(TrackedStep {
            epsilon: eps,
            eigenvalues,
            eigenvectors,
        });
    }

    Ok(ContinuationResult {
        n,
        m1,
        m2,
        epsilons,
        steps: tracked,
        flip_events,
        degeneracy_flags,
        step_changes,
    })
}

/// Largest amount by which ascending `perturbed` escapes the rank-one PSD
/// interlacing window `[base_j, base_{j+1}]` (top window `[base_max, base_max + eps ||u||²]`).
/// Returns 0 when every eigenvalue lies inside its window.
pub fn interlacing_violation(base: &[f64], perturbed: &[f64], eps: f64, u_norm_sq: f64) -> f64 {
    assert_eq!(base.len(), perturbed.len());
    let n = base.len();
    let mut worst = 0.0_f64;
    for j in 0..n {
        let lo = base[j];
        let hi = if j + 1 < n {
            base[j + 1]
        } else {
            base[j] + eps * u_norm_sq
        };
        worst = worst.max(lo - perturbed[j]).max(perturbed[j] - hi);
    }
    worst
}

/// Largest decrease between consecutive entries of `values` (0 when non-decreasing).
pub fn monotonicity_violation(values: &[f64]) -> f64 {
    values.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max)
}

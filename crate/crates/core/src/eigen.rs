//! Dense symmetric eigensolver (cyclic Jacobi).
//!
//! This is the numerical oracle every closed form is checked against, so it
//! does not reuse anything from the line-graph formulas.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpectraError};
use crate::matrix::{SymmetricMatrix, SYMMETRY_TOL};

/// Convergence threshold relative to the Frobenius norm of the input.
pub const JACOBI_REL_TOL: f64 = 1e-14;
/// Sweep cap.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Full eigendecomposition with eigenvalues ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenDecomposition {
    pub order: usize,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[j]` pairs with `eigenvalues[j]`; largest-magnitude entry positive.
    pub eigenvectors: Vec<Vec<f64>>,
    /// `max_j ||A v_j - λ_j v_j||_2`.
    pub residual_bound: f64,
    pub sweeps: usize,
}

impl EigenDecomposition {
    pub fn eigenvector(&self, j: usize) -> &[f64] {
        &self.eigenvectors[j]
    }

    /// Smallest gap between consecutive eigenvalues (infinite for order 1).
    pub fn min_gap(&self) -> f64 {
        self.eigenvalues
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }

    /// `V diag(λ) V^T`.
    pub fn reconstruct(&self) -> SymmetricMatrix {
        let n = self.order;
        let mut data = vec![0.0; n * n];
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            for i in 0..n {
                let li = lambda * v[i];
                for j in 0..n {
                    data[i * n + j] += li * v[j];
                }
            }
        }
        // symmetrize away roundoff
        for i in 0..n {
            for j in (i + 1)..n {
                let m = 0.5 * (data[i * n + j] + data[j * n + i]);
                data[i * n + j] = m;
                data[j * n + i] = m;
            }
        }
        SymmetricMatrix::from_row_major(n, data).expect("reconstruction is symmetric")
    }

    /// `max |V^T V - I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (a, va) in self.eigenvectors.iter().enumerate() {
            for (b, vb) in self.eigenvectors.iter().enumerate().skip(a) {
                let dot: f64 = va.iter().zip(vb).map(|(x, y)| x * y).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps visit `(p, q)` in row order `p < q`. Convergence is declared when
/// every off-diagonal magnitude is at most `1e-14 ||A||_F`; 100 sweeps without
/// that is an error.
pub fn eig_symmetric(a: &SymmetricMatrix) -> Result<EigenDecomposition> {
    let n = a.order();
    let mut m = a.as_row_major().to_vec();

    for i in 0..n {
        for j in (i + 1)..n {
            let diff = (m[i * n + j] - m[j * n + i]).abs();
            if diff > SYMMETRY_TOL {
                return Err(SpectraError::NotSymmetric {
                    row: i,
                    col: j,
                    diff,
                });
            }
        }
    }

    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let threshold = JACOBI_REL_TOL * a.frobenius_norm();
    let mut sweeps = 0;
    loop {
        let off_max = max_off_diagonal(&m, n);
        if off_max <= threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(SpectraError::NoConvergence {
                sweeps,
                off_norm: off_diagonal_norm(&m, n),
            });
        }
        sweeps += 1;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, n, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[x * n + x].total_cmp(&m[y * n + y]));

    let eigenvalues: Vec<f64> = order.iter().map(|&j| m[j * n + j]).collect();
    let eigenvectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&j| {
            let mut col: Vec<f64> = (0..n).map(|i| v[i * n + j]).collect();
            normalize_sign(&mut col);
            col
        })
        .collect();

    let residual_bound = eigenvalues
        .iter()
        .zip(&eigenvectors)
        .map(|(&lambda, vec)| {
            a.mul_vec(vec)
                .iter()
                .zip(vec)
                .map(|(av, x)| (av - lambda * x).powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0_f64, f64::max);

    Ok(EigenDecomposition {
        order: n,
        eigenvalues,
        eigenvectors,
        residual_bound,
        sweeps,
    })
}

/// Convenience wrapper taking raw row-major data.
pub fn eig_symmetric_dense(order: usize, data: Vec<f64>) -> Result<EigenDecomposition> {
    eig_symmetric(&SymmetricMatrix::from_row_major(order, data)?)
}

/// True iff every consecutive ascending gap exceeds `gap_tol`.
pub fn is_simple_spectrum(d: &EigenDecomposition, gap_tol: f64) -> bool {
    d.eigenvalues.windows(2).all(|w| w[1] - w[0] > gap_tol)
}

/// Flips `v` so its largest-magnitude entry (lowest index on ties) is positive.
pub fn normalize_sign(v: &mut [f64]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v.get(best).is_some_and(|&x| x < 0.0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

fn max_off_diagonal(m: &[f64], n: usize) -> f64 {
    let mut worst = 0.0_f64;
    for p in 0..n {
        for q in (p + 1)..n {
            worst = worst.max(m[p * n + q].abs());
        }
    }
    worst
}

fn off_diagonal_norm(m: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            s += 2.0 * m[p * n + q] * m[p * n + q];
        }
    }
    s.sqrt()
}

// One rotation annihilating m[p][q], accumulated into the columns of v.
fn rotate(m: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = m[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = m[p * n + p];
    let aqq = m[q * n + q];

    // negligible against both diagonal entries
    let g = 100.0 * apq.abs();
    if app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
        m[p * n + q] = 0.0;
        m[q * n + p] = 0.0;
        return;
    }

    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = m[k * n + p];
        let akq = m[k * n + q];
        let new_kp = c * akp - s * akq;
        let new_kq = s * akp + c * akq;
        m[k * n + p] = new_kp;
        m[p * n + k] = new_kp;
        m[k * n + q] = new_kq;
        m[q * n + k] = new_kq;
    }
    m[p * n + p] = app - t * apq;
    m[q * n + q] = aqq + t * apq;
    m[p * n + q] = 0.0;
    m[q * n + p] = 0.0;

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}

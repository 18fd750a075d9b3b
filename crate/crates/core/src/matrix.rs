//! Dense symmetric matrix storage.
//!
//! Indices on [`SymmetricMatrix`] are 0-based storage coordinates. Graph-facing
//! APIs elsewhere in the crate take 1-based vertex numbers and translate.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpectraError};

/// Entrywise tolerance used when accepting externally supplied data as symmetric.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Real symmetric matrix with full row-major storage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricMatrix {
    order: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    /// All-zero matrix. `order` must be at least 1.
    pub fn zeros(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(SpectraError::Validation("matrix order must be >= 1".into()));
        }
        Ok(Self {
            order,
            data: vec![0.0; order * order],
        })
    }

    pub fn identity(order: usize) -> Result<Self> {
        let mut m = Self::zeros(order)?;
        for i in 0..order {
            m.set(i, i, 1.0);
        }
        Ok(m)
    }

    /// Wraps row-major data, rejecting it unless `|a_ij - a_ji| <= 1e-12` everywhere.
    pub fn from_row_major(order: usize, data: Vec<f64>) -> Result<Self> {
        if order == 0 {
            return Err(SpectraError::Validation("matrix order must be >= 1".into()));
        }
        if data.len() != order * order {
            return Err(SpectraError::Validation(format!(
                "expected {} entries for order {order}, got {}",
                order * order,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().position(|x| !x.is_finite()) {
            return Err(SpectraError::Validation(format!(
                "non-finite entry at row {}, column {}",
                bad / order,
                bad % order
            )));
        }
        for i in 0..order {
            for j in (i + 1)..order {
                let diff = (data[i * order + j] - data[j * order + i]).abs();
                if diff > SYMMETRY_TOL {
                    return Err(SpectraError::NotSymmetric {
                        row: i,
                        col: j,
                        diff,
                    });
                }
            }
        }
        Ok(Self { order, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(SpectraError::Validation(
                "rows must form a square matrix".into(),
            ));
        }
        Self::from_row_major(order, rows.concat())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.order + col]
    }

    /// Writes both `(row, col)` and `(col, row)`.
    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.order + col] = value;
        self.data[col * self.order + row] = value;
    }

    /// Adds `value` to `(row, col)` and, off the diagonal, to `(col, row)`.
    #[inline]
    pub fn add_to(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.order + col] += value;
        if row != col {
            self.data[col * self.order + row] += value;
        }
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.order..(row + 1) * self.order]
    }

    pub fn as_row_major(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.order).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.order).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `self + scale * other`, entrywise.
    pub fn add_scaled(&self, other: &SymmetricMatrix, scale: f64) -> Result<SymmetricMatrix> {
        if other.order != self.order {
            return Err(SpectraError::Validation(format!(
                "order mismatch: {} vs {}",
                self.order, other.order
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + scale * b)
            .collect();
        Ok(SymmetricMatrix {
            order: self.order,
            data,
        })
    }

    /// `lambda * I - self`.
    pub fn shifted_negation(&self, lambda: f64) -> SymmetricMatrix {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = -*x;
        }
        for i in 0..self.order {
            out.data[i * self.order + i] += lambda;
        }
        out
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.order, "vector length must equal matrix order");
        (0..self.order)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `x^T A x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.mul_vec(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.order).map(|i| self.row(i).iter().sum()).collect()
    }

    /// Determinant of the submatrix with `row` and `col` removed (no sign factor).
    pub fn minor_determinant(&self, row: usize, col: usize) -> f64 {
        let n = self.order;
        assert!(row < n && col < n, "minor index out of range");
        if n == 1 {
            return 1.0;
        }
        let mut sub = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != row) {
            for j in (0..n).filter(|&j| j != col) {
                sub.push(self.get(i, j));
            }
        }
        determinant(n - 1, sub)
    }

    pub fn determinant(&self) -> f64 {
        determinant(self.order, self.data.clone())
    }
}

/// Determinant of a general square row-major matrix by Gaussian elimination
/// with partial pivoting. An empty matrix has determinant 1.
pub fn determinant(order: usize, mut a: Vec<f64>) -> f64 {
    assert_eq!(a.len(), order * order);
    let mut det = 1.0;
    for c in 0..order {
        let pivot = (c..order)
            .max_by(|&x, &y| a[x * order + c].abs().total_cmp(&a[y * order + c].abs()))
            .unwrap();
        if a[pivot * order + c] == 0.0 {
            return 0.0;
        }
        if pivot != c {
            for j in 0..order {
                a.swap(pivot * order + j, c * order + j);
            }
            det = -det;
        }
        let p = a[c * order + c];
        det *= p;
        for r in (c + 1)..order {
            let f = a[r * order + c] / p;
            if f != 0.0 {
                for j in c..order {
                    a[r * order + j] -= f * a[c * order + j];
                }
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_asymmetric_data() {
        let err = SymmetricMatrix::from_rows(&[vec![1.0, 2.0], vec![2.5, 1.0]]).unwrap_err();
        assert!(matches!(
            err,
            SpectraError::NotSymmetric { row: 0, col: 1, .. }
        ));
    }

    #[test]
    fn accepts_roundoff_asymmetry() {
        assert!(SymmetricMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0 + 1e-14, 1.0]]).is_ok());
    }

    #[test]
    fn zero_order_rejected() {
        assert!(SymmetricMatrix::zeros(0).is_err());
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(determinant(0, vec![]), 1.0);
        assert_eq!(determinant(2, vec![1.0, 2.0, 3.0, 4.0]), -2.0);
        let d = determinant(3, vec![0.0, 1.0, 2.0, 1.0, 0.0, 3.0, 4.0, -3.0, 8.0]);
        assert!((d - (-2.0)).abs() < 1e-12);
    }

    #[test]
    fn minor_drops_row_and_column() {
        let m = SymmetricMatrix::from_rows(&[
            vec![2.0, -1.0, 0.0],
            vec![-1.0, 2.0, -1.0],
            vec![0.0, -1.0, 2.0],
        ])
        .unwrap();
        // rows {1,2}, cols {0,2}: [[-1,-1],[0,2]]
        assert!((m.minor_determinant(0, 1) - (-2.0)).abs() < 1e-15);
        assert!((m.minor_determinant(1, 1) - 4.0).abs() < 1e-15);
    }
}

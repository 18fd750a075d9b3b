//! Line graphs, their Laplacians and the single-edge perturbation.
//!
//! Vertices are numbered `1..=n` in every public signature here.

use serde::{Deserialize, Serialize};

use crate::error::{check_index, Result, SpectraError};
use crate::matrix::SymmetricMatrix;

/// Vertex count and edge weights of an (unperturbed) line graph.
///
/// `weights[i]` joins vertex `i + 1` to vertex `i + 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawLineGraph", into = "RawLineGraph")]
pub struct LineGraphSpec {
    n: usize,
    weights: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawLineGraph {
    n: usize,
    weights: Vec<f64>,
}

impl TryFrom<RawLineGraph> for LineGraphSpec {
    type Error = SpectraError;

    fn try_from(raw: RawLineGraph) -> Result<Self> {
        let spec = LineGraphSpec {
            n: raw.n,
            weights: raw.weights,
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl From<LineGraphSpec> for RawLineGraph {
    fn from(spec: LineGraphSpec) -> Self {
        RawLineGraph {
            n: spec.n,
            weights: spec.weights,
        }
    }
}

impl LineGraphSpec {
    /// Unit-weight line graph on `n` vertices.
    pub fn canonical(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(SpectraError::Validation(format!(
                "line graph needs n >= 2 vertices, got {n}"
            )));
        }
        Ok(Self {
            n,
            weights: vec![1.0; n - 1],
        })
    }

    /// Weighted line graph; the vertex count is `weights.len() + 1`.
    pub fn weighted(weights: Vec<f64>) -> Result<Self> {
        let spec = Self {
            n: weights.len() + 1,
            weights,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(SpectraError::Validation(format!(
                "line graph needs n >= 2 vertices, got {}",
                self.n
            )));
        }
        if self.weights.len() != self.n - 1 {
            return Err(SpectraError::Validation(format!(
                "line graph on {} vertices needs {} weights, got {}",
                self.n,
                self.n - 1,
                self.weights.len()
            )));
        }
        if let Some((i, w)) = self
            .weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w > 0.0))
        {
            return Err(SpectraError::Validation(format!(
                "edge weight {} (vertices {}-{}) must be positive and finite, got {w}",
                i + 1,
                i + 1,
                i + 2
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// True when every edge weight is exactly 1.
    pub fn is_canonical(&self) -> bool {
        self.weights.iter().all(|&w| w == 1.0)
    }

    pub fn require_canonical(&self) -> Result<()> {
        match self.weights.iter().position(|&w| w != 1.0) {
            None => Ok(()),
            Some(i) => Err(SpectraError::NonCanonical(format!(
                "edge {} has weight {}",
                i + 1,
                self.weights[i]
            ))),
        }
    }
}

/// Change of weight `epsilon` on the vertex pair `(m1, m2)`, with `m1 < m2`.
///
/// Adjacent vertices (`m2 == m1 + 1`) modify an existing edge; otherwise a new
/// edge is created. Both produce the same matrix `M = (e_m1 - e_m2)(e_m1 - e_m2)^T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbationSpec {
    m1: usize,
    m2: usize,
    epsilon: f64,
}

impl PerturbationSpec {
    /// Orders the pair so that `m1 < m2`. Rejects equal or zero indices and non-finite weights.
    pub fn new(a: usize, b: usize, epsilon: f64) -> Result<Self> {
        let (m1, m2) = if a <= b { (a, b) } else { (b, a) };
        if m1 == 0 {
            return Err(SpectraError::Index {
                what: "m1",
                value: 0,
                lo: 1,
                hi: usize::MAX,
            });
        }
        if m1 == m2 {
            return Err(SpectraError::Validation(format!(
                "perturbation needs two distinct vertices, got {m1} twice"
            )));
        }
        if !epsilon.is_finite() {
            return Err(SpectraError::Validation(format!(
                "perturbation weight must be finite, got {epsilon}"
            )));
        }
        Ok(Self { m1, m2, epsilon })
    }

    pub fn m1(&self) -> usize {
        self.m1
    }

    pub fn m2(&self) -> usize {
        self.m2
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Same vertex pair, different weight.
    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        Self::new(self.m1, self.m2, epsilon)
    }

    pub fn is_existing_edge(&self) -> bool {
        self.m2 == self.m1 + 1
    }

    /// Checks the pair against `graph` and that the resulting edge weight stays positive.
    pub fn validate_for(&self, graph: &LineGraphSpec) -> Result<()> {
        check_index("m2", self.m2, 2, graph.n())?;
        let base = if self.is_existing_edge() {
            graph.weights()[self.m1 - 1]
        } else {
            0.0
        };
        let effective = base + self.epsilon;
        // A new edge with epsilon == 0 is simply absent, which is fine.
        let absent_edge = !self.is_existing_edge() && self.epsilon == 0.0;
        if !absent_edge && effective <= 0.0 {
            return Err(SpectraError::Validation(format!(
                "edge ({}, {}) would have weight {effective}; weights must stay positive",
                self.m1, self.m2
            )));
        }
        Ok(())
    }
}

/// Weighted path Laplacian `L = D - A`.
pub fn build_laplacian(spec: &LineGraphSpec) -> Result<SymmetricMatrix> {
    spec.validate()?;
    let mut l = SymmetricMatrix::zeros(spec.n())?;
    for (i, &w) in spec.weights().iter().enumerate() {
        l.add_to(i, i, w);
        l.add_to(i + 1, i + 1, w);
        l.set(i, i + 1, -w);
    }
    Ok(l)
}

/// Auxiliary tridiagonal matrix `H_n`: diagonal `(2, ..., 2, 1)`, off-diagonals `-1`.
pub fn build_auxiliary_h(n: usize) -> Result<SymmetricMatrix> {
    if n < 1 {
        return Err(SpectraError::Validation(
            "auxiliary matrix needs n >= 1".into(),
        ));
    }
    let mut h = SymmetricMatrix::zeros(n)?;
    for i in 0..n {
        h.set(i, i, if i + 1 == n { 1.0 } else { 2.0 });
        if i + 1 < n {
            h.set(i, i + 1, -1.0);
        }
    }
    Ok(h)
}

/// The unit perturbation matrix `M` for the pair in `spec`, of order `n`.
pub fn build_perturbation_matrix(spec: &PerturbationSpec, n: usize) -> Result<SymmetricMatrix> {
    check_index("m2", spec.m2(), 2, n)?;
    let (a, b) = (spec.m1() - 1, spec.m2() - 1);
    let mut m = SymmetricMatrix::zeros(n)?;
    m.set(a, a, 1.0);
    m.set(b, b, 1.0);
    m.set(a, b, -1.0);
    Ok(m)
}

/// `A(eps) = L + eps * M`.
pub fn build_perturbed_laplacian(
    graph: &LineGraphSpec,
    pert: &PerturbationSpec,
) -> Result<SymmetricMatrix> {
    pert.validate_for(graph)?;
    let l = build_laplacian(graph)?;
    let m = build_perturbation_matrix(pert, graph.n())?;
    l.add_scaled(&m, pert.epsilon())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_laplacian_shape(l: &SymmetricMatrix) {
        for s in l.row_sums() {
            assert!(s.abs() <= 1e-14, "row sum {s}");
        }
        for i in 0..l.order() {
            let off: f64 = (0..l.order())
                .filter(|&j| j != i)
                .map(|j| l.get(i, j).abs())
                .sum();
            assert!(l.get(i, i) + 1e-14 >= off);
            for j in 0..l.order() {
                if i != j {
                    assert!(l.get(i, j) <= 0.0);
                }
                assert_eq!(l.get(i, j), l.get(j, i));
            }
        }
    }

    #[test]
    fn canonical_four_node_laplacian() {
        let l = build_laplacian(&LineGraphSpec::canonical(4).unwrap()).unwrap();
        assert_eq!(l.diagonal(), vec![1.0, 2.0, 2.0, 1.0]);
        for i in 0..3 {
            assert_eq!(l.get(i, i + 1), -1.0);
        }
        assert_eq!(l.get(0, 2), 0.0);
        assert_eq!(l.get(0, 3), 0.0);
        assert_laplacian_shape(&l);
    }

    #[test]
    fn two_node_laplacian() {
        let l = build_laplacian(&LineGraphSpec::canonical(2).unwrap()).unwrap();
        assert_eq!(l.to_rows(), vec![vec![1.0, -1.0], vec![-1.0, 1.0]]);
    }

    #[test]
    fn weighted_three_node_laplacian() {
        let l = build_laplacian(&LineGraphSpec::weighted(vec![2.0, 3.0]).unwrap()).unwrap();
        assert_eq!(l.diagonal(), vec![2.0, 5.0, 3.0]);
        assert_eq!(l.get(0, 1), -2.0);
        assert_eq!(l.get(1, 2), -3.0);
        assert_laplacian_shape(&l);
    }

    #[test]
    fn invalid_graphs_name_the_invariant() {
        let e = LineGraphSpec::canonical(1).unwrap_err().to_string();
        assert!(e.contains("n >= 2"), "{e}");
        let e = LineGraphSpec::weighted(vec![1.0, -0.5])
            .unwrap_err()
            .to_string();
        assert!(e.contains("edge weight 2"), "{e}");
        let e = LineGraphSpec::weighted(vec![]).unwrap_err().to_string();
        assert!(e.contains("n >= 2"), "{e}");
        let bad: std::result::Result<LineGraphSpec, _> =
            serde_json::from_str(r#"{"n":4,"weights":[1.0,1.0]}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn auxiliary_matrices() {
        assert_eq!(build_auxiliary_h(1).unwrap().to_rows(), vec![vec![1.0]]);
        assert_eq!(
            build_auxiliary_h(2).unwrap().to_rows(),
            vec![vec![2.0, -1.0], vec![-1.0, 1.0]]
        );
        let h3 = build_auxiliary_h(3).unwrap();
        assert_eq!(h3.diagonal(), vec![2.0, 2.0, 1.0]);
        assert_eq!(h3.get(0, 1), -1.0);
        assert_eq!(h3.get(1, 2), -1.0);
        assert_eq!(h3.get(0, 2), 0.0);
        assert!(build_auxiliary_h(0).is_err());
    }

    #[test]
    fn perturbation_matrix_structure() {
        let p = PerturbationSpec::new(4, 2, 0.1).unwrap();
        assert_eq!((p.m1(), p.m2()), (2, 4));
        let m = build_perturbation_matrix(&p, 4).unwrap();
        assert_eq!(m.get(1, 1), 1.0);
        assert_eq!(m.get(3, 3), 1.0);
        assert_eq!(m.get(1, 3), -1.0);
        assert_eq!(m.get(3, 1), -1.0);
        assert_eq!(m.trace(), 2.0);
        assert_eq!(m.mul_vec(&[1.0; 4]), vec![0.0; 4]);
        let nonzero = m.as_row_major().iter().filter(|x| **x != 0.0).count();
        assert_eq!(nonzero, 4);

        let adj = build_perturbation_matrix(&PerturbationSpec::new(1, 2, 1.0).unwrap(), 3).unwrap();
        assert_eq!(adj.get(0, 0), 1.0);
        assert_eq!(adj.get(0, 1), -1.0);
        assert_eq!(adj.get(2, 2), 0.0);

        let err = build_perturbation_matrix(&PerturbationSpec::new(2, 5, 0.1).unwrap(), 4);
        assert!(matches!(
            err,
            Err(SpectraError::Index {
                what: "m2",
                value: 5,
                ..
            })
        ));
    }

    #[test]
    fn perturbation_spec_rejects_bad_pairs() {
        assert!(PerturbationSpec::new(3, 3, 0.1).is_err());
        assert!(PerturbationSpec::new(0, 3, 0.1).is_err());
        assert!(PerturbationSpec::new(1, 3, f64::NAN).is_err());
    }

    #[test]
    fn perturbed_laplacian_n4_edge_2_4() {
        let g = LineGraphSpec::canonical(4).unwrap();
        let p = PerturbationSpec::new(2, 4, 0.1).unwrap();
        let a = build_perturbed_laplacian(&g, &p).unwrap();
        assert_eq!(a.diagonal(), vec![1.0, 2.1, 2.0, 1.1]);
        assert_eq!(a.get(1, 3), -0.1);
        assert_eq!(a.get(3, 1), -0.1);
        for i in 0..3 {
            assert_eq!(a.get(i, i + 1), -1.0);
        }
        assert_laplacian_shape(&a);
    }

    #[test]
    fn zero_perturbation_is_identity_map() {
        let g = LineGraphSpec::canonical(6).unwrap();
        let p = PerturbationSpec::new(2, 5, 0.0).unwrap();
        assert_eq!(
            build_perturbed_laplacian(&g, &p).unwrap(),
            build_laplacian(&g).unwrap()
        );
    }

    #[test]
    fn adjacent_perturbation_increments_edge() {
        let g = LineGraphSpec::canonical(3).unwrap();
        let p = PerturbationSpec::new(1, 2, 0.5).unwrap();
        let a = build_perturbed_laplacian(&g, &p).unwrap();
        let expected = build_laplacian(&LineGraphSpec::weighted(vec![1.5, 1.0]).unwrap()).unwrap();
        assert_eq!(a, expected);
    }

    #[test]
    fn negative_epsilon_limits() {
        let g = LineGraphSpec::canonical(3).unwrap();
        // weakening an existing edge is allowed while it stays positive
        assert!(build_perturbed_laplacian(&g, &PerturbationSpec::new(1, 2, -0.5).unwrap()).is_ok());
        assert!(
            build_perturbed_laplacian(&g, &PerturbationSpec::new(1, 2, -1.0).unwrap()).is_err()
        );
        // a new edge with negative weight is not a valid weighted graph
        assert!(
            build_perturbed_laplacian(&g, &PerturbationSpec::new(1, 3, -0.1).unwrap()).is_err()
        );
    }
}

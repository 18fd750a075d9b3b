//! Spectra of weighted line-graph (path-graph) Laplacians.
//!
//! The unit-weight line graph on `n` vertices has the cosine spectrum
//! `λ_k = 2cos(πk/n) + 2` with DCT-II eigenvectors. Adding weight `ε` between
//! vertices `m1` and `m2` shifts each eigenvalue to first order by a closed-form
//! `λ'_k(0)`. This crate computes both, checks them through characteristic
//! polynomial recursions and adjugate identities, and compares everything with
//! an independent Jacobi eigensolver.
//!
//! ```
//! use linegraph_spectra::{graph::{LineGraphSpec, PerturbationSpec}, spectrum::predict_spectrum};
//!
//! let graph = LineGraphSpec::canonical(4).unwrap();
//! let pert = PerturbationSpec::new(2, 4, 0.1).unwrap();
//! let pred = predict_spectrum(&graph, &pert).unwrap();
//! assert!((pred[1].predicted - 2.1).abs() < 1e-12);
//! ```

pub mod analysis;
pub mod charpoly;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod spectrum;
pub mod svg;
pub mod validate;

pub use error::{Result, SpectraError};

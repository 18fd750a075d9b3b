use thiserror::Error;

/// Errors produced by graph construction, closed forms and the eigensolver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    /// A precondition on a constructor or closed-form input was violated.
    #[error("invalid input: {0}")]
    Validation(String),

    /// A 1-based vertex or eigen index fell outside its admissible range.
    #[error("index out of range: {what} = {value}, expected {lo}..={hi}")]
    Index {
        what: &'static str,
        value: usize,
        lo: usize,
        hi: usize,
    },

    /// Closed forms only hold for unit edge weights.
    #[error("closed form requires a unit-weight line graph: {0}")]
    NonCanonical(String),

    /// An eigenvalue that must be simple is repeated (or numerically so).
    #[error("degenerate spectrum: {0}")]
    Degenerate(String),

    /// Eigensolver input was not symmetric.
    #[error("matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {diff:e}")]
    NotSymmetric { row: usize, col: usize, diff: f64 },

    /// Jacobi sweeps hit the iteration cap.
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
}

pub type Result<T> = std::result::Result<T, SpectraError>;

pub(crate) fn check_index(what: &'static str, value: usize, lo: usize, hi: usize) -> Result<()> {
    if value < lo || value > hi {
        return Err(SpectraError::Index {
            what,
            value,
            lo,
            hi,
        });
    }
    Ok(())
}

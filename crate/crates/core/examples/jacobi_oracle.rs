// The cyclic Jacobi eigensolver on a user-supplied symmetric matrix.

use std::error::Error;

use linegraph_spectra::eigen::eig_symmetric;
use linegraph_spectra::matrix::SymmetricMatrix;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let a = SymmetricMatrix::from_rows(&[
        vec![4.0, 1.0, -2.0, 2.0],
        vec![1.0, 2.0, 0.0, 1.0],
        vec![-2.0, 0.0, 3.0, -2.0],
        vec![2.0, 1.0, -2.0, -1.0],
    ])?;
    let d = eig_symmetric(&a)?;

    println!("sweeps: {}", d.sweeps);
    for (j, lambda) in d.eigenvalues.iter().enumerate() {
        let v: Vec<String> = d
            .eigenvector(j)
            .iter()
            .map(|x| format!("{x:+.6}"))
            .collect();
        println!("lambda = {lambda:+.12}  v = [{}]", v.join(", "));
    }
    println!("residual bound: {:.2e}", d.residual_bound);
    println!("orthonormality error: {:.2e}", d.orthonormality_error());
    let trace_gap = (d.eigenvalues.iter().sum::<f64>() - a.trace()).abs();
    println!("|sum lambda - trace| = {trace_gap:.2e}");
    if d.residual_bound > 1e-9 * a.max_abs() || trace_gap > 1e-10 {
        return Err("oracle quality check failed".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

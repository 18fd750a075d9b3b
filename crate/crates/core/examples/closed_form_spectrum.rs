// Closed-form spectrum of the path Laplacian next to the Jacobi oracle.
//
// `cargo run --example closed_form_spectrum -- 8`

use std::error::Error;

use linegraph_spectra::eigen::eig_symmetric;
use linegraph_spectra::graph::{build_laplacian, LineGraphSpec};
use linegraph_spectra::spectrum::{ascending_position, ClosedFormSpectrum};

pub fn run_example_with(n: usize) -> Result<f64, Box<dyn Error>> {
    let graph = LineGraphSpec::canonical(n)?;
    let closed = ClosedFormSpectrum::for_graph(&graph)?;
    let oracle = eig_symmetric(&build_laplacian(&graph)?)?;

    println!(
        "{:>4} {:>10} {:>20} {:>20} {:>10}",
        "k", "theta", "closed form", "oracle", "diff"
    );
    let mut worst = 0.0_f64;
    for pair in &closed.entries {
        let o = oracle.eigenvalues[ascending_position(n, pair.k)];
        let diff = (pair.lambda - o).abs();
        worst = worst.max(diff);
        println!(
            "{:>4} {:>10.6} {:>20.15} {:>20.15} {:>10.2e}",
            pair.k, pair.theta, pair.lambda, o, diff
        );
    }
    println!("max |diff| = {worst:.2e}");
    Ok(worst)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let worst = run_example_with(4)?;
    if worst > 1e-12 {
        return Err(format!("closed form and oracle disagree by {worst:e}").into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let n = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(4);
    run_example_with(n).map(|_| ())
}

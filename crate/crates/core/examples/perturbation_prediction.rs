// First-order prediction of the perturbed spectrum against the oracle.
//
// `cargo run --example perturbation_prediction -- 4 2 4 0.1`

use std::error::Error;

use linegraph_spectra::eigen::eig_symmetric;
use linegraph_spectra::graph::{build_perturbed_laplacian, LineGraphSpec, PerturbationSpec};
use linegraph_spectra::spectrum::{ascending_position, predict_spectrum};

pub fn run_example_with(
    n: usize,
    m1: usize,
    m2: usize,
    epsilon: f64,
) -> Result<f64, Box<dyn Error>> {
    let graph = LineGraphSpec::canonical(n)?;
    let pert = PerturbationSpec::new(m1, m2, epsilon)?;
    let predictions = predict_spectrum(&graph, &pert)?;
    let oracle = eig_symmetric(&build_perturbed_laplacian(&graph, &pert)?)?;

    println!("n={n} edge=({m1},{m2}) epsilon={epsilon}");
    println!(
        "{:>4} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "k", "lambda0", "lambda'", "predicted", "oracle", "residual"
    );
    let mut worst = 0.0_f64;
    for p in &predictions {
        let o = oracle.eigenvalues[ascending_position(n, p.k)];
        let residual = o - p.predicted;
        worst = worst.max(residual.abs());
        println!(
            "{:>4} {:>12.6} {:>12.6} {:>12.6} {:>12.6} {:>12.2e}",
            p.k, p.lambda0, p.lambda_prime, p.predicted, o, residual
        );
    }
    println!("max |residual| = {worst:.3e}");
    Ok(worst)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let worst = run_example_with(4, 2, 4, 0.1)?;
    if worst > 0.01 {
        return Err(format!("prediction residual {worst:e} above 0.01").into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() {
        return run_example();
    }
    if args.len() != 4 {
        return Err("usage: perturbation_prediction N M1 M2 EPSILON".into());
    }
    run_example_with(
        args[0].parse()?,
        args[1].parse()?,
        args[2].parse()?,
        args[3].parse()?,
    )
    .map(|_| ())
}

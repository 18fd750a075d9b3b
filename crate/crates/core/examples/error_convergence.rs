// Second-order error of the first-order prediction over an ε sweep.
//
// Prints `E = (λ(ε) - λ0 - ε λ') / ε²` per eigenvalue and the fitted constant
// `C = max |E|`.

use std::error::Error;

use linegraph_spectra::analysis::error_study;
use linegraph_spectra::graph::LineGraphSpec;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let epsilons: Vec<f64> = (1..=10).map(|i| 0.02 * i as f64).collect();
    let study = error_study(&LineGraphSpec::canonical(4)?, (2, 4), &epsilons)?;

    print!("{:>8}", "epsilon");
    for s in &study.series {
        print!(" {:>12}", format!("E_{}", s.k));
    }
    println!();
    for (i, eps) in epsilons.iter().enumerate() {
        print!("{eps:>8.3}");
        for s in &study.series {
            print!(" {:>12.6}", s.errors[i]);
        }
        println!();
    }
    let c = study.fitted_constant();
    println!("C = {c:.6}");
    if !c.is_finite()
        || study
            .series
            .iter()
            .flat_map(|s| &s.errors)
            .any(|e| !e.is_finite())
    {
        return Err("non-finite error coefficient".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

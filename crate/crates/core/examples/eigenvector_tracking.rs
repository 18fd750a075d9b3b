// Sign-aligned eigenvector continuation along ε for a long-range edge.

use std::error::Error;

use linegraph_spectra::analysis::track_eigenvectors;
use linegraph_spectra::graph::LineGraphSpec;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let n = 50;
    let result = track_eigenvectors(&LineGraphSpec::canonical(n)?, (26, 50), 0.0, 0.2, 40)?;

    println!("grid points: {}", result.steps.len());
    println!("sign corrections: {}", result.flip_events.len());
    println!("degenerate steps: {:?}", result.degeneracy_flags);
    println!("max step change: {:.5e}", result.max_step_change());

    // the four smoothest non-constant modes, k = n-1 .. n-4
    for k in (n - 4..n).rev() {
        let first = &result.steps[0].eigenvectors[k - 1];
        let last = &result.steps[result.steps.len() - 1].eigenvectors[k - 1];
        let drift: f64 = first
            .iter()
            .zip(last)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        let trajectory = result.eigenvalue_trajectory(k);
        println!(
            "k={k:>2} lambda {:.6} -> {:.6}, ||v(0.2) - v(0)|| = {drift:.4}",
            trajectory[0],
            trajectory[trajectory.len() - 1]
        );
    }
    if !result.degeneracy_flags.is_empty() {
        return Err("spectrum degenerated along the sweep".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

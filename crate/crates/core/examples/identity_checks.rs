// Numerical checks of the characteristic-polynomial and adjugate identities.
//
// `cargo run --release --example identity_checks -- 64`

use std::error::Error;

use linegraph_spectra::validate::IdentitySuite;

pub fn run_example_with(max_n: usize) -> Result<(), Box<dyn Error>> {
    let outcomes = IdentitySuite::with_max_n(max_n).run();
    for o in &outcomes {
        println!("{o}");
    }
    match outcomes.iter().find(|o| !o.passed()) {
        Some(o) => Err(format!("identity family {} failed", o.name).into()),
        None => Ok(()),
    }
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    run_example_with(16)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let max_n = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(64);
    run_example_with(max_n)
}

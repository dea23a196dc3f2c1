// Random states and measurements: product mixtures never beat 2 without
// post-selection, and nothing beats 2*sqrt(2).

use std::error::Error;
use std::f64::consts::SQRT_2;

use chsh_lhv::prelude::*;
use chsh_lhv::random::{random_density_operator, random_povm_any, random_product_mixture};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_settings(rng: &mut ChaCha8Rng, d1: usize, d2: usize) -> Result<ChshSettings> {
    ChshSettings::new(
        random_povm_any(rng, d1),
        random_povm_any(rng, d1),
        random_povm_any(rng, d2),
        random_povm_any(rng, d2),
    )
}

fn run() -> Result<(), Box<dyn Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let mut max_mixture = f64::NEG_INFINITY;
    let mut max_conditioned = f64::NEG_INFINITY;
    for _ in 0..200 {
        let m = random_product_mixture(&mut rng, 3, 3, 2);
        let settings = random_settings(&mut rng, 3, 3)?;
        let report = chsh_value(&density_from_mixture(&m), &settings)?;
        max_mixture = max_mixture.max(report.s.abs());
        if let Some(s) = report.s_conditioned {
            max_conditioned = max_conditioned.max(s);
        }
    }
    println!("product mixtures: max |S| = {max_mixture:.6}, max conditioned S = {max_conditioned:.6}");
    assert!(max_mixture <= 2.0 + 1e-9);

    let mut max_general = f64::NEG_INFINITY;
    for _ in 0..200 {
        let rho = DensityMatrix::new(random_density_operator(&mut rng, 4), DEFAULT_TOL)?;
        let settings = random_settings(&mut rng, 2, 2)?;
        max_general = max_general.max(chsh_value(&rho, &settings)?.s.abs());
    }
    println!(
        "general states:   max |S| = {max_general:.6} (limit {:.6})",
        2.0 * SQRT_2
    );
    assert!(max_general <= 2.0 * SQRT_2 + 1e-9);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}

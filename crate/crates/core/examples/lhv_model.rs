// Building the explicit hidden-variable model for a product mixture and
// comparing it with the quantum prediction pair by pair.

use std::error::Error;

use chsh_lhv::lhv::rv_correlations;
use chsh_lhv::prelude::*;

fn run() -> Result<(), Box<dyn Error>> {
    let mixture = spin1_counterexample_state();
    let settings = ChshSettings::spin1(COUNTEREXAMPLE_ANGLES)?;
    let rho = density_from_mixture(&mixture);
    let model = build_lhv_for_product_mixture(&mixture, &settings)?;
    println!("atoms with positive weight: {}", model.atom_count());

    for pair in Pair::ALL {
        let (pa, pb) = settings.pair(pair);
        let quantum = joint_distribution(&rho, pa, pb)?;
        let hidden = lhv_pair_distribution(&model, pair)?;
        let dev = quantum.max_deviation(&hidden).ok_or("alphabets differ")?;
        println!("{pair}: max |p_quantum - p_lhv| = {dev:e}");
    }

    let check = chsh_check_rvs(&model);
    let cond = rv_conditioned_correlations(&model, DEFAULT_EPS)?;
    println!(
        "unconditioned S = {:.9} (bound holds: {})",
        check.s, check.bound_satisfied
    );
    println!("conditioned S   = {:.9}", chsh_combination(cond));
    println!("E values        = {:?}", rv_correlations(&model));
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}

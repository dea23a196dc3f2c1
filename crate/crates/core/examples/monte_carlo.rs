// Seeded sampling from the hidden-variable model. Counts from separate runs
// can be merged, and the same seed always gives the same tables.

use std::error::Error;

use chsh_lhv::prelude::*;

fn run() -> Result<(), Box<dyn Error>> {
    let mixture = spin1_counterexample_state();
    let settings = ChshSettings::spin1(COUNTEREXAMPLE_ANGLES)?;
    let model = build_lhv_for_product_mixture(&mixture, &settings)?;

    let mut counts = sample(&model, 1, 50_000);
    counts.merge(&sample(&model, 2, 50_000));
    assert_eq!(sample(&model, 1, 1_000), sample(&model, 1, 1_000));

    let stats = counts.empirical(&model);
    println!("samples: {}", counts.samples);
    println!("empirical S             = {:.4}", stats.s);
    if let Some(s) = stats.s_conditioned {
        println!("empirical S conditioned = {s:.4}");
    }
    println!("pass fractions: {:?}", stats.pass_probabilities);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}

// The spin-1 product mixture whose post-selected CHSH value exceeds 2 while
// the plain CHSH value stays at sqrt(2).

use std::error::Error;

use chsh_lhv::prelude::*;

fn run() -> Result<(), Box<dyn Error>> {
    let mixture = spin1_counterexample_state();
    let rho = density_from_mixture(&mixture);
    let settings = ChshSettings::spin1(COUNTEREXAMPLE_ANGLES)?;

    let report = chsh_value(&rho, &settings)?;
    println!("pair    E        P(pass)  E|pass");
    let conditioned = report.conditioned_correlations.ok_or("post-selection is degenerate")?;
    for (k, pair) in Pair::ALL.iter().enumerate() {
        println!(
            "{:<6} {:+.6} {:.6} {:+.6}",
            pair.label(),
            report.correlations[k],
            report.pass_probabilities[k],
            conditioned[k]
        );
    }
    let s_cond = report.s_conditioned.ok_or("post-selection is degenerate")?;
    println!("S             = {:.12}", report.s);
    println!("S conditioned = {s_cond:.12}");
    assert!(report.s <= 2.0 && s_cond > 2.0);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}

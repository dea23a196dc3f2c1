// Grid search over the four measurement angles, followed by a local
// pattern-search refinement of the best cell.

use std::error::Error;
use std::f64::consts::PI;

use chsh_lhv::prelude::*;
use chsh_lhv::scan::write_grid_csv;

fn run() -> Result<(), Box<dyn Error>> {
    let rho = density_from_mixture(&spin1_counterexample_state());
    let cfg = ScanConfig {
        step: PI / 6.0,
        refine: true,
        refine_iters: 20,
        ..ScanConfig::default()
    };
    let result = grid_scan(&rho, &cfg)?;
    let best = result.best_grid_row().ok_or("every cell was degenerate")?;
    println!(
        "{} grid cells, best conditioned S {:?}",
        result.grid_rows.len(),
        best.s_conditioned
    );
    println!("at angles {:?}", best.angles);

    if let Some(r) = &result.refined {
        println!(
            "refined to {:.9} at {:?} after {} evaluations",
            r.value, r.angles, r.evaluations
        );
    }

    let mut csv = Vec::new();
    write_grid_csv(&result.grid_rows[..3], &mut csv)?;
    print!("{}", String::from_utf8(csv)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}

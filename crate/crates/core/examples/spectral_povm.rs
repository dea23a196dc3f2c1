// Turning a Hermitian observable into a projective POVM and checking it.

use std::error::Error;
use std::f64::consts::FRAC_PI_3;

use chsh_lhv::prelude::*;

fn run() -> Result<(), Box<dyn Error>> {
    let j = spin1_observable(FRAC_PI_3);
    let d = hermitian_eigendecomposition(&j, DEFAULT_GROUP_TOL)?;
    println!("eigenvalues: {:?}", d.eigenvalues);
    println!("reconstruction error: {:e}", d.reconstruct().max_abs_diff(&j));

    let povm = povm_from_observable(&j, DEFAULT_GROUP_TOL)?;
    println!("outcome values: {:?}, null value {}", povm.values(), povm.null_value());
    let violations = validate_povm(&povm, DEFAULT_TOL);
    println!("violations: {}", violations.len());
    assert!(violations.is_empty());

    // a degenerate observable collapses repeated eigenvalues into one projector
    let parity = Operator::diagonal(&[1.0, -1.0, 1.0]);
    let p = povm_from_observable(&parity, DEFAULT_GROUP_TOL)?;
    for o in p.outcomes() {
        println!("value {:+}: rank {}", o.value, o.operator.trace().re.round());
    }

    // an element with a negative eigenvalue is reported, not silently accepted
    let bad = Povm::from_parts(
        vec![
            Outcome {
                value: 1.0,
                operator: Operator::diagonal(&[1.2, 0.0]),
            },
            Outcome {
                value: -1.0,
                operator: Operator::diagonal(&[-0.2, 1.0]),
            },
        ],
        0.0,
    )?;
    for v in validate_povm(&bad, DEFAULT_TOL) {
        println!("rejected: {v}");
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}

// Scenario files: the JSON format the command-line tool reads. A scenario
// can be built in code, written out, and loaded back unchanged.

use std::error::Error;
use std::path::Path;

use chsh_lhv::cli::{Scenario, ScenarioSpec};
use chsh_lhv::prelude::*;

fn run() -> Result<(), Box<dyn Error>> {
    let spec = ScenarioSpec::spin1_mixture(&spin1_counterexample_state(), COUNTEREXAMPLE_ANGLES);
    let scenario = spec.build()?;
    let text = scenario.to_json();
    let reread = Scenario::from_json(&text)?;
    assert_eq!(reread.to_json(), text);
    println!("{}", text.lines().take(12).collect::<Vec<_>>().join("\n"));

    let report = chsh_value(&scenario.density, &scenario.settings)?;
    println!(
        "built from JSON: S = {:.9}, conditioned {:?}",
        report.s, report.s_conditioned
    );

    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/qubit_unsharp_povm.json");
    let unsharp = Scenario::load(&path)?;
    let report = chsh_value(&unsharp.density, &unsharp.settings)?;
    println!(
        "{}: S = {:.6}, conditioned {:?}",
        path.display(),
        report.s,
        report.s_conditioned
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}

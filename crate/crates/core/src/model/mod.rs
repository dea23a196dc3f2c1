//! Quantum states and measurements.

mod povm;
mod state;

pub use povm::{povm_from_observable, spin1_observable, validate_povm, Outcome, Povm, PovmViolation};
pub use state::{
    density_from_mixture, spin1_counterexample_state, DensityMatrix, MixtureComponent, ProductMixture, PureState,
};

/// Default tolerance for every state and POVM validity check.
pub const DEFAULT_TOL: f64 = 1e-10;

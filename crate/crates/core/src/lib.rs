//! Exact bipartite measurement statistics for finite-dimensional systems.
//!
//! The crate computes joint outcome distributions `tr rho (A_i (x) B_j)`,
//! correlations, and the CHSH combination
//! `E(a,b) + E(a,b') + E(a',b) - E(a',b')`, both plain and post-selected on
//! "neither outcome is null". For any mixture of product states it also
//! builds an explicit local hidden variable model that reproduces every pair
//! distribution exactly, which makes it easy to see that the plain
//! combination never exceeds 2 while the post-selected one can.
//!
//! The standard example is two spin-1 particles in an equal mixture of two
//! product states, measured along `(0, pi/2, pi/4, -pi/4)`: the plain value
//! is `sqrt 2` and the post-selected value is `16 sqrt(2) / 9 > 2`.
//!
//! ```
//! use chsh_lhv::prelude::*;
//!
//! let rho = density_from_mixture(&spin1_counterexample_state());
//! let settings = ChshSettings::spin1(COUNTEREXAMPLE_ANGLES).unwrap();
//! let report = conditioned_chsh_value(&rho, &settings).unwrap();
//! assert!((report.s - 2f64.sqrt()).abs() < 1e-12);
//! assert!(report.s_conditioned.unwrap() > 2.0);
//! ```

pub mod cli;
pub mod correlations;
pub mod error;
pub mod lhv;
pub mod linalg;
pub mod model;
pub mod random;
pub mod scan;

pub use error::{Error, Result};

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

/// Measurement angles `(alpha, alpha', beta, beta')` at which the spin-1
/// counterexample state gives a post-selected CHSH value of `16 sqrt(2) / 9`.
pub const COUNTEREXAMPLE_ANGLES: [f64; 4] = [0.0, FRAC_PI_2, FRAC_PI_4, -FRAC_PI_4];

pub mod prelude {
    pub use crate::correlations::{
        chsh_combination, chsh_value, conditional_expectation, conditioned_chsh_value, expectation, joint_distribution,
        pass_probability, ChshReport, ChshSettings, JointDistribution, Pair, Setting, DEFAULT_EPS,
    };
    pub use crate::error::{Error, Result};
    pub use crate::lhv::{
        build_lhv_for_product_mixture, chsh_check_rvs, lhv_pair_distribution, rv_conditional_expectation,
        rv_conditioned_correlations, rv_expectation, sample, LhvModel, RandomVariable, SampleSpace,
    };
    pub use crate::linalg::{
        hermitian_eigendecomposition, is_positive_semidefinite, tensor, ComplexScalar, Operator, SpectralDecomposition,
        DEFAULT_GROUP_TOL,
    };
    pub use crate::model::{
        density_from_mixture, povm_from_observable, spin1_counterexample_state, spin1_observable, validate_povm,
        DensityMatrix, MixtureComponent, Outcome, Povm, ProductMixture, PureState, DEFAULT_TOL,
    };
    pub use crate::scan::{grid_scan, refine, ScanConfig, ScanResult};
    pub use crate::COUNTEREXAMPLE_ANGLES;
}

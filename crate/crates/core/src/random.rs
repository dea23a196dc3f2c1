//! Random states, measurements and hidden-variable models.
//!
//! Used by the property tests and the examples. All generators take the
//! caller's RNG so runs are reproducible from a seed.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::lhv::{LhvModel, RandomVariable, SampleSpace};
use crate::linalg::{hermitian_eigendecomposition, ComplexScalar, Operator, DEFAULT_GROUP_TOL};
use crate::model::{MixtureComponent, Outcome, Povm, ProductMixture, PureState};

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> ComplexScalar {
    ComplexScalar::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random unit vector.
pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> PureState {
    let v: Vec<ComplexScalar> = (0..dim).map(|_| gaussian_complex(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    PureState::new(v.into_iter().map(|z| z / norm).collect()).expect("normalized")
}

pub fn random_product_mixture<R: Rng + ?Sized>(rng: &mut R, d1: usize, d2: usize, components: usize) -> ProductMixture {
    let raw: Vec<f64> = (0..components).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = raw.iter().sum();
    ProductMixture::new(
        raw.into_iter()
            .map(|w| MixtureComponent {
                weight: w / total,
                left: random_pure_state(rng, d1),
                right: random_pure_state(rng, d2),
            })
            .collect(),
    )
    .expect("valid mixture")
}

fn ginibre<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Operator {
    Operator::from_rows(
        (0..dim)
            .map(|_| (0..dim).map(|_| gaussian_complex(rng)).collect())
            .collect(),
    )
    .expect("finite")
}

/// Full-rank random density matrix `G G^dagger / tr(G G^dagger)`.
pub fn random_density_operator<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Operator {
    let g = ginibre(rng, dim);
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    hermitize(&m.scale(1.0 / tr))
}

fn hermitize(a: &Operator) -> Operator {
    (a + &a.adjoint()).scale(0.5)
}

/// `count` distinct outcome values in `[-1, 1]`, biased towards the extremes
/// and towards including the null value 0.
pub fn random_outcome_values<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<f64> {
    let mut values: Vec<f64> = Vec::with_capacity(count);
    while values.len() < count {
        let v = match rng.random_range(0..4) {
            0 => 0.0,
            1 => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            _ => rng.random_range(-1.0..=1.0),
        };
        if !values.contains(&v) {
            values.push(v);
        }
    }
    values
}

/// Random POVM with `count` elements obtained by normalizing random positive
/// operators: `E_k = S^{-1/2} G_k S^{-1/2}` with `S = sum_k G_k`.
///
/// Each `G_k` gets a small multiple of the identity added so that `S` stays
/// well conditioned and the completeness defect stays near machine precision.
pub fn random_povm<R: Rng + ?Sized>(rng: &mut R, dim: usize, count: usize) -> Povm {
    let shift = Operator::identity(dim).scale(0.05);
    let raw: Vec<Operator> = (0..count)
        .map(|_| {
            let g = ginibre(rng, dim);
            &(&g * &g.adjoint()) + &shift
        })
        .collect();
    let total = raw.iter().fold(Operator::zeros(dim), |acc, g| &acc + g);
    let spectral = hermitian_eigendecomposition(&hermitize(&total), DEFAULT_GROUP_TOL).expect("Hermitian");
    let inv_sqrt = spectral
        .eigenvalues
        .iter()
        .zip(&spectral.projectors)
        .fold(Operator::zeros(dim), |acc, (&l, p)| &acc + &p.scale(1.0 / l.sqrt()));
    let values = random_outcome_values(rng, count);
    let outcomes = raw
        .iter()
        .zip(values)
        .map(|(g, value)| Outcome {
            value,
            operator: hermitize(&(&(&inv_sqrt * g) * &inv_sqrt)),
        })
        .collect();
    Povm::new(outcomes, 0.0).expect("valid random POVM")
}

/// Projective measurement onto the eigenbasis of a random Hermitian matrix,
/// one rank-one outcome per basis vector.
pub fn random_projective_povm<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Povm {
    let h = hermitize(&ginibre(rng, dim));
    let spectral = hermitian_eigendecomposition(&h, DEFAULT_GROUP_TOL).expect("Hermitian");
    let values = random_outcome_values(rng, spectral.projectors.len());
    let outcomes = spectral
        .projectors
        .into_iter()
        .zip(values)
        .map(|(operator, value)| Outcome { value, operator })
        .collect();
    Povm::new(outcomes, 0.0).expect("valid projective measurement")
}

/// Either a projective measurement or a POVM with 1 to 4 outcomes.
pub fn random_povm_any<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Povm {
    if rng.random::<bool>() {
        random_projective_povm(rng, dim)
    } else {
        let count = rng.random_range(1..=4);
        random_povm(rng, dim, count)
    }
}

/// Arbitrary four-variable model: random weights, random values in `[-1, 1]`.
pub fn random_lhv_model<R: Rng + ?Sized>(rng: &mut R, atoms: usize) -> LhvModel {
    let raw: Vec<f64> = (0..atoms).map(|_| rng.random::<f64>()).collect();
    let total: f64 = raw.iter().sum();
    let space = SampleSpace::new(raw.into_iter().map(|w| w / total).collect()).expect("normalized");
    let mut var = || {
        let values = (0..atoms)
            .map(|_| match rng.random_range(0..3) {
                0 => {
                    if rng.random::<bool>() {
                        1.0
                    } else {
                        -1.0
                    }
                }
                _ => rng.random_range(-1.0..=1.0),
            })
            .collect();
        RandomVariable::from_values(values, 0.0).expect("values in range")
    };
    let vars = [var(), var(), var(), var()];
    LhvModel::new(space, vars).expect("consistent model")
}

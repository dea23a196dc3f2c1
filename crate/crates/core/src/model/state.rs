use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::linalg::{is_positive_semidefinite, tensor, ComplexScalar, Operator};

use super::DEFAULT_TOL;

/// Normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<ComplexScalar>,
}

impl PureState {
    pub fn new(amplitudes: Vec<ComplexScalar>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidState("state vector is empty".into()));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("state vector has non-finite amplitudes".into()));
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::InvalidState(format!(
                "state vector has squared norm {norm_sq}, expected 1"
            )));
        }
        Ok(PureState { amplitudes })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| ComplexScalar::new(x, 0.0)).collect())
    }

    /// Standard basis vector `e_index` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![ComplexScalar::new(0.0, 0.0); dim];
        amplitudes[index] = ComplexScalar::new(1.0, 0.0);
        PureState { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[ComplexScalar] {
        &self.amplitudes
    }

    /// `|psi><psi|`.
    pub fn projector(&self) -> Operator {
        Operator::outer(&self.amplitudes)
    }

    /// `<psi| op |psi>`, real part. `op` is expected to be Hermitian.
    pub fn expectation(&self, op: &Operator) -> f64 {
        let n = self.dim();
        let mut acc = ComplexScalar::new(0.0, 0.0);
        for i in 0..n {
            let mut row = ComplexScalar::new(0.0, 0.0);
            for j in 0..n {
                row += op.get(i, j) * self.amplitudes[j];
            }
            acc += self.amplitudes[i].conj() * row;
        }
        acc.re
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixtureComponent {
    pub weight: f64,
    pub left: PureState,
    pub right: PureState,
}

/// Convex combination of product pure states.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductMixture {
    components: Vec<MixtureComponent>,
}

impl ProductMixture {
    pub fn new(components: Vec<MixtureComponent>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::InvalidState("mixture has no components".into()))?;
        let (d1, d2) = (first.left.dim(), first.right.dim());
        let mut total = 0.0;
        for (k, c) in components.iter().enumerate() {
            if !(c.weight.is_finite() && c.weight > 0.0) {
                return Err(Error::InvalidState(format!(
                    "component {k} has non-positive weight {}",
                    c.weight
                )));
            }
            if c.left.dim() != d1 {
                return Err(Error::DimensionMismatch {
                    context: "mixture left factor",
                    expected: d1,
                    found: c.left.dim(),
                });
            }
            if c.right.dim() != d2 {
                return Err(Error::DimensionMismatch {
                    context: "mixture right factor",
                    expected: d2,
                    found: c.right.dim(),
                });
            }
            total += c.weight;
        }
        if (total - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::InvalidState(format!(
                "mixture weights sum to {total}, expected 1"
            )));
        }
        let components = components
            .into_iter()
            .map(|c| MixtureComponent {
                weight: c.weight / total,
                ..c
            })
            .collect();
        Ok(ProductMixture { components })
    }

    pub fn components(&self) -> &[MixtureComponent] {
        &self.components
    }

    /// Local dimensions `(d1, d2)`.
    pub fn dims(&self) -> (usize, usize) {
        let c = &self.components[0];
        (c.left.dim(), c.right.dim())
    }
}

/// Density matrix, optionally remembering the product mixture it came from.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: Operator,
    origin: Option<ProductMixture>,
}

impl DensityMatrix {
    /// Checks Hermiticity, unit trace and positivity, all at `tol`.
    pub fn new(matrix: Operator, tol: f64) -> Result<Self> {
        let defect = matrix.hermiticity_defect();
        if defect > tol {
            return Err(Error::NotHermitian { defect });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidState(format!(
                "density matrix has trace {}{:+}i, expected 1",
                tr.re, tr.im
            )));
        }
        if !is_positive_semidefinite(&matrix, tol)? {
            return Err(Error::InvalidState(
                "density matrix is not positive semidefinite".into(),
            ));
        }
        Ok(DensityMatrix { matrix, origin: None })
    }

    pub fn from_mixture(m: &ProductMixture) -> Self {
        density_from_mixture(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &Operator {
        &self.matrix
    }

    pub fn origin(&self) -> Option<&ProductMixture> {
        self.origin.as_ref()
    }
}

/// `rho = sum_k w_k |l_k><l_k| (x) |r_k><r_k|`, keeping the mixture as origin.
pub fn density_from_mixture(m: &ProductMixture) -> DensityMatrix {
    let (d1, d2) = m.dims();
    let mut rho = Operator::zeros(d1 * d2);
    for c in m.components() {
        let term = tensor(&c.left.projector(), &c.right.projector()).scale(c.weight);
        rho = &rho + &term;
    }
    DensityMatrix {
        matrix: rho,
        origin: Some(m.clone()),
    }
}

/// Two spin-1 particles, equal mixture of `e1 (x) e1` and `v (x) v` with
/// `v = (1/2, 1/sqrt 2, 1/2)`, the `+1` eigenvector of the spin observable
/// at angle pi/2.
pub fn spin1_counterexample_state() -> ProductMixture {
    let e1 = PureState::basis(3, 0);
    let v = PureState::from_real(&[0.5, FRAC_1_SQRT_2, 0.5]).expect("unit vector");
    ProductMixture::new(vec![
        MixtureComponent {
            weight: 0.5,
            left: e1.clone(),
            right: e1,
        },
        MixtureComponent {
            weight: 0.5,
            left: v.clone(),
            right: v,
        },
    ])
    .expect("valid mixture")
}

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigendecomposition, min_eigenvalue, Operator};

use super::DEFAULT_TOL;

/// Slack allowed on outcome values when reading them off a spectrum.
const OUTCOME_RANGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub value: f64,
    pub operator: Operator,
}

/// Finite measurement with real outcome values in `[-1, 1]`.
///
/// `null_value` is the outcome excluded by post-selection ("did not pass the
/// filter"); it is 0 unless stated otherwise.
#[derive(Debug, Clone)]
pub struct Povm {
    outcomes: Vec<Outcome>,
    null_value: f64,
}

impl Povm {
    /// Builds a POVM and checks positivity, completeness and distinct values at
    /// the default tolerance.
    pub fn new(outcomes: Vec<Outcome>, null_value: f64) -> Result<Self> {
        Self::with_tolerance(outcomes, null_value, DEFAULT_TOL)
    }

    pub fn with_tolerance(outcomes: Vec<Outcome>, null_value: f64, tol: f64) -> Result<Self> {
        let povm = Self::from_parts(outcomes, null_value)?;
        let violations = validate_povm(&povm, tol);
        if violations.is_empty() {
            Ok(povm)
        } else {
            Err(Error::InvalidPovm(violations))
        }
    }

    /// Structural checks only: non-empty, one shared dimension, finite values in
    /// `[-1, 1]`. Use [`validate_povm`] for the operator-level invariants.
    pub fn from_parts(outcomes: Vec<Outcome>, null_value: f64) -> Result<Self> {
        let dim = outcomes
            .first()
            .map(|o| o.operator.dim())
            .ok_or_else(|| Error::InvalidPovm(vec![PovmViolation::Empty]))?;
        for o in &outcomes {
            if o.operator.dim() != dim {
                return Err(Error::DimensionMismatch {
                    context: "POVM element",
                    expected: dim,
                    found: o.operator.dim(),
                });
            }
            if !o.value.is_finite() || o.value.abs() > 1.0 {
                return Err(Error::OutcomeOutOfRange { value: o.value });
            }
        }
        if !null_value.is_finite() {
            return Err(Error::OutcomeOutOfRange { value: null_value });
        }
        Ok(Povm { outcomes, null_value })
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn values(&self) -> Vec<f64> {
        self.outcomes.iter().map(|o| o.value).collect()
    }

    pub fn null_value(&self) -> f64 {
        self.null_value
    }

    pub fn dim(&self) -> usize {
        self.outcomes[0].operator.dim()
    }

    /// Same operators, every outcome value replaced by `f(value)`.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_parts(
            self.outcomes
                .iter()
                .map(|o| Outcome {
                    value: f(o.value),
                    operator: o.operator.clone(),
                })
                .collect(),
            self.null_value,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PovmViolation {
    Empty,
    NotHermitian {
        index: usize,
        value: f64,
        defect: f64,
    },
    NotPositive {
        index: usize,
        value: f64,
        min_eigenvalue: f64,
    },
    Incomplete {
        defect: f64,
    },
    DuplicateValue {
        value: f64,
        first: usize,
        second: usize,
    },
}

impl fmt::Display for PovmViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PovmViolation::Empty => write!(f, "no outcomes"),
            PovmViolation::NotHermitian { index, value, defect } => {
                write!(f, "element {index} (value {value}) is not Hermitian, defect {defect:e}")
            }
            PovmViolation::NotPositive {
                index,
                value,
                min_eigenvalue,
            } => write!(
                f,
                "element {index} (value {value}) is not positive, min eigenvalue {min_eigenvalue}"
            ),
            PovmViolation::Incomplete { defect } => {
                write!(f, "elements do not sum to identity, max deviation {defect}")
            }
            PovmViolation::DuplicateValue { value, first, second } => {
                write!(f, "elements {first} and {second} share outcome value {value}")
            }
        }
    }
}

/// Lists every failed POVM invariant. Never fails itself.
pub fn validate_povm(p: &Povm, tol: f64) -> Vec<PovmViolation> {
    let mut out = Vec::new();
    if p.outcomes.is_empty() {
        out.push(PovmViolation::Empty);
        return out;
    }
    let dim = p.dim();
    let mut sum = Operator::zeros(dim);
    for (index, o) in p.outcomes.iter().enumerate() {
        let defect = o.operator.hermiticity_defect();
        if defect > tol {
            out.push(PovmViolation::NotHermitian {
                index,
                value: o.value,
                defect,
            });
        } else if let Ok(min) = min_eigenvalue(&o.operator) {
            if min < -tol {
                out.push(PovmViolation::NotPositive {
                    index,
                    value: o.value,
                    min_eigenvalue: min,
                });
            }
        }
        sum = &sum + &o.operator;
    }
    let defect = sum.max_abs_diff(&Operator::identity(dim));
    if defect > tol {
        out.push(PovmViolation::Incomplete { defect });
    }
    for i in 0..p.outcomes.len() {
        for j in i + 1..p.outcomes.len() {
            if p.outcomes[i].value == p.outcomes[j].value {
                out.push(PovmViolation::DuplicateValue {
                    value: p.outcomes[i].value,
                    first: i,
                    second: j,
                });
            }
        }
    }
    out
}

/// Spin-1 component along angle `alpha` in the x-z plane:
/// `cos(alpha) J_z + sin(alpha) J_x` in the `(+1, 0, -1)` basis of `J_z`.
pub fn spin1_observable(alpha: f64) -> Operator {
    let (s, c) = alpha.sin_cos();
    let h = s * std::f64::consts::FRAC_1_SQRT_2;
    Operator::from_real_rows(&[&[c, h, 0.0], &[h, 0.0, h], &[0.0, h, -c]]).expect("finite angle")
}

/// Projective measurement of a Hermitian observable: one outcome per grouped
/// eigenvalue, with the eigenprojector as its element. Null value is 0.
///
/// Eigenvalues within `group_tol` of -1, 0 or 1 are reported as exactly that
/// value; outcome matching against the null value is exact.
pub fn povm_from_observable(a: &Operator, group_tol: f64) -> Result<Povm> {
    let spectral = hermitian_eigendecomposition(a, group_tol)?;
    let mut outcomes = Vec::with_capacity(spectral.eigenvalues.len());
    for (lambda, projector) in spectral.eigenvalues.into_iter().zip(spectral.projectors) {
        if lambda.abs() > 1.0 + OUTCOME_RANGE_TOL {
            return Err(Error::OutcomeOutOfRange { value: lambda });
        }
        let snapped = lambda.round();
        let value = if (lambda - snapped).abs() <= group_tol {
            snapped
        } else {
            lambda.clamp(-1.0, 1.0)
        };
        outcomes.push(Outcome {
            value,
            operator: projector,
        });
    }
    Povm::from_parts(outcomes, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DEFAULT_GROUP_TOL;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn spin1_at_zero_is_diagonal() {
        assert_eq!(spin1_observable(0.0), Operator::diagonal(&[1.0, 0.0, -1.0]));
    }

    #[test]
    fn spin1_at_half_pi() {
        let j = spin1_observable(FRAC_PI_2);
        for i in 0..3 {
            assert!(j.get(i, i).norm() < 1e-15);
        }
        for (r, c) in [(0, 1), (1, 0), (1, 2), (2, 1)] {
            assert!((j.get(r, c).re - FRAC_1_SQRT_2).abs() < 1e-15);
        }
        assert_eq!(j.get(0, 2).norm(), 0.0);
        assert_eq!(j.get(2, 0).norm(), 0.0);
    }

    #[test]
    fn spin1_is_traceless_and_hermitian() {
        for k in 0..50 {
            let a = -3.0 + 0.13 * k as f64;
            let j = spin1_observable(a);
            assert!(j.trace().norm() < 1e-15);
            assert!(j.is_hermitian(0.0));
        }
    }

    #[test]
    fn projective_povm_of_j0() {
        let p = povm_from_observable(&spin1_observable(0.0), DEFAULT_GROUP_TOL).unwrap();
        assert_eq!(p.values(), vec![1.0, 0.0, -1.0]);
        for (k, o) in p.outcomes().iter().enumerate() {
            let mut e = [0.0; 3];
            e[k] = 1.0;
            assert!(o.operator.max_abs_diff(&Operator::diagonal(&e)) < 1e-12);
        }
        assert_eq!(p.null_value(), 0.0);
        assert!(validate_povm(&p, DEFAULT_TOL).is_empty());
    }

    #[test]
    fn projective_povm_of_j_quarter_pi() {
        let p = povm_from_observable(&spin1_observable(FRAC_PI_4), DEFAULT_GROUP_TOL).unwrap();
        let v = p.values();
        assert_eq!(v.len(), 3);
        for (got, want) in v.iter().zip([1.0, 0.0, -1.0]) {
            assert!((got - want).abs() < 1e-9);
        }
    }

    #[test]
    fn out_of_range_spectrum() {
        let r = povm_from_observable(&Operator::identity(3).scale(2.0), DEFAULT_GROUP_TOL);
        assert!(matches!(r, Err(Error::OutcomeOutOfRange { value }) if (value - 2.0).abs() < 1e-12));
    }

    #[test]
    fn validation_reports_incompleteness() {
        let p = Povm::from_parts(
            vec![Outcome {
                value: 1.0,
                operator: Operator::identity(3).scale(0.5),
            }],
            0.0,
        )
        .unwrap();
        let v = validate_povm(&p, DEFAULT_TOL);
        assert_eq!(v.len(), 1);
        assert!(matches!(v[0], PovmViolation::Incomplete { defect } if (defect - 0.5).abs() < 1e-15));
    }

    #[test]
    fn validation_reports_negative_element() {
        let p = Povm::from_parts(
            vec![Outcome {
                value: 1.0,
                operator: Operator::diagonal(&[1.0, 0.0, -1.0]),
            }],
            0.0,
        )
        .unwrap();
        let v = validate_povm(&p, DEFAULT_TOL);
        assert!(v.iter().any(|x| matches!(
            x,
            PovmViolation::NotPositive { index: 0, min_eigenvalue, .. } if (min_eigenvalue + 1.0).abs() < 1e-12
        )));
        assert!(matches!(
            Povm::new(p.outcomes().to_vec(), 0.0),
            Err(Error::InvalidPovm(_))
        ));
    }

    #[test]
    fn validation_reports_duplicates() {
        let half = Operator::identity(2).scale(0.5);
        let p = Povm::from_parts(
            vec![
                Outcome {
                    value: 1.0,
                    operator: half.clone(),
                },
                Outcome {
                    value: 1.0,
                    operator: half,
                },
            ],
            0.0,
        )
        .unwrap();
        assert_eq!(
            validate_povm(&p, DEFAULT_TOL),
            vec![PovmViolation::DuplicateValue {
                value: 1.0,
                first: 0,
                second: 1
            }]
        );
    }

    #[test]
    fn structural_errors() {
        assert!(Povm::from_parts(vec![], 0.0).is_err());
        assert!(matches!(
            Povm::from_parts(
                vec![Outcome {
                    value: 1.5,
                    operator: Operator::identity(2)
                }],
                0.0
            ),
            Err(Error::OutcomeOutOfRange { .. })
        ));
        assert!(matches!(
            Povm::from_parts(
                vec![
                    Outcome {
                        value: 1.0,
                        operator: Operator::identity(2)
                    },
                    Outcome {
                        value: 0.0,
                        operator: Operator::identity(3)
                    },
                ],
                0.0
            ),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}

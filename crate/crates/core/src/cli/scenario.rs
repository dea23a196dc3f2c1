//! Scenario files: a bipartite state plus the four measurements, as JSON.
//!
//! ```json
//! {
//!   "dims": [3, 3],
//!   "state": {
//!     "kind": "product_mixture",
//!     "components": [
//!       { "weight": 0.5, "left": [1, 0, 0], "right": [1, 0, 0] },
//!       { "weight": 0.5, "left": [0.5, 0.7071067811865476, 0.5],
//!                        "right": [0.5, 0.7071067811865476, 0.5] }
//!     ]
//!   },
//!   "observables": {
//!     "a":       { "kind": "spin1", "angle": 0.0 },
//!     "a_prime": { "kind": "spin1", "angle": 1.5707963267948966 },
//!     "b":       { "kind": "spin1", "angle": 0.7853981633974483 },
//!     "b_prime": { "kind": "spin1", "angle": -0.7853981633974483 }
//!   }
//! }
//! ```
//!
//! Complex numbers are written `[re, im]`; a bare number means `im = 0`.
//! Matrices are row-major lists of rows. A state may instead be
//! `{ "kind": "density_matrix", "matrix": [[...], ...] }`. Besides `spin1`,
//! a measurement may be `{ "kind": "observable", "matrix": ... }` (measured
//! projectively, null value 0) or
//! `{ "kind": "povm", "outcomes": [{ "value": v, "matrix": ... }], "null_value": 0 }`.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::correlations::{ChshSettings, Setting};
use crate::error::Error;
use crate::linalg::{ComplexScalar, Operator, DEFAULT_GROUP_TOL};
use crate::model::{
    density_from_mixture, povm_from_observable, spin1_observable, DensityMatrix, MixtureComponent, Outcome, Povm,
    ProductMixture, PureState, DEFAULT_TOL,
};

/// Complex entry: `[re, im]` or a plain real.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexLiteral {
    Real(f64),
    Complex([f64; 2]),
}

impl ComplexLiteral {
    pub fn to_complex(self) -> ComplexScalar {
        match self {
            ComplexLiteral::Real(re) => ComplexScalar::new(re, 0.0),
            ComplexLiteral::Complex([re, im]) => ComplexScalar::new(re, im),
        }
    }

    /// Real form only when the imaginary part is exactly `+0.0`, so a
    /// reload reproduces the same bits.
    pub fn from_complex(z: ComplexScalar) -> Self {
        if z.im.to_bits() == 0 {
            ComplexLiteral::Real(z.re)
        } else {
            ComplexLiteral::Complex([z.re, z.im])
        }
    }
}

pub type MatrixLiteral = Vec<Vec<ComplexLiteral>>;

pub fn matrix_literal(op: &Operator) -> MatrixLiteral {
    op.rows()
        .map(|r| r.iter().copied().map(ComplexLiteral::from_complex).collect())
        .collect()
}

fn operator_from_literal(m: &MatrixLiteral) -> Result<Operator, Error> {
    Operator::from_rows(m.iter().map(|r| r.iter().map(|z| z.to_complex()).collect()).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub weight: f64,
    pub left: Vec<ComplexLiteral>,
    pub right: Vec<ComplexLiteral>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    ProductMixture { components: Vec<ComponentSpec> },
    DensityMatrix { matrix: MatrixLiteral },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutcomeSpec {
    pub value: f64,
    pub matrix: MatrixLiteral,
}

fn zero() -> f64 {
    0.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MeasurementSpec {
    Spin1 {
        angle: f64,
    },
    Observable {
        matrix: MatrixLiteral,
    },
    Povm {
        outcomes: Vec<OutcomeSpec>,
        #[serde(default = "zero")]
        null_value: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservablesSpec {
    pub a: MeasurementSpec,
    pub a_prime: MeasurementSpec,
    pub b: MeasurementSpec,
    pub b_prime: MeasurementSpec,
}

impl ObservablesSpec {
    fn get(&self, s: Setting) -> (&'static str, &MeasurementSpec) {
        match s {
            Setting::A => ("a", &self.a),
            Setting::APrime => ("a_prime", &self.a_prime),
            Setting::B => ("b", &self.b),
            Setting::BPrime => ("b_prime", &self.b_prime),
        }
    }
}

/// On-disk form of a scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub dims: [usize; 2],
    pub state: StateSpec,
    pub observables: ObservablesSpec,
}

#[derive(Debug, Clone)]
pub enum ScenarioState {
    Mixture(ProductMixture),
    Density(DensityMatrix),
}

/// A validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub spec: ScenarioSpec,
    pub state: ScenarioState,
    pub density: DensityMatrix,
    pub settings: ChshSettings,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioError {
    /// Unreadable file or malformed JSON.
    Parse(String),
    /// Well-formed JSON that violates a state or measurement invariant.
    Invalid { field: String, source: Error },
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenarioError::Parse(m) => write!(f, "parse error: {m}"),
            ScenarioError::Invalid { field, source } => write!(f, "invalid scenario at `{field}`: {source}"),
        }
    }
}

impl std::error::Error for ScenarioError {}

fn invalid(field: impl Into<String>) -> impl FnOnce(Error) -> ScenarioError {
    let field = field.into();
    move |source| ScenarioError::Invalid { field, source }
}

fn check_dim(field: String, expected: usize, found: usize, context: &'static str) -> Result<(), ScenarioError> {
    if expected != found {
        return Err(ScenarioError::Invalid {
            field,
            source: Error::DimensionMismatch {
                context,
                expected,
                found,
            },
        });
    }
    Ok(())
}

fn build_measurement(field: &str, spec: &MeasurementSpec, dim: usize) -> Result<Povm, ScenarioError> {
    match spec {
        MeasurementSpec::Spin1 { angle } => {
            check_dim(field.to_string(), 3, dim, "spin1 measurement needs local dimension 3")?;
            if !angle.is_finite() {
                return Err(ScenarioError::Invalid {
                    field: format!("{field}.angle"),
                    source: Error::InvalidConfig(format!("angle {angle} is not finite")),
                });
            }
            povm_from_observable(&spin1_observable(*angle), DEFAULT_GROUP_TOL).map_err(invalid(field))
        }
        MeasurementSpec::Observable { matrix } => {
            let field = format!("{field}.matrix");
            let op = operator_from_literal(matrix).map_err(invalid(&field))?;
            check_dim(field.clone(), dim, op.dim(), "observable")?;
            povm_from_observable(&op, DEFAULT_GROUP_TOL).map_err(invalid(field))
        }
        MeasurementSpec::Povm { outcomes, null_value } => {
            let mut built = Vec::with_capacity(outcomes.len());
            for (k, o) in outcomes.iter().enumerate() {
                let f = format!("{field}.outcomes[{k}].matrix");
                let op = operator_from_literal(&o.matrix).map_err(invalid(&f))?;
                check_dim(f, dim, op.dim(), "POVM element")?;
                built.push(Outcome {
                    value: o.value,
                    operator: op,
                });
            }
            Povm::new(built, *null_value).map_err(invalid(format!("{field}.outcomes")))
        }
    }
}

fn pure_state(field: String, amps: &[ComplexLiteral], dim: usize) -> Result<PureState, ScenarioError> {
    check_dim(field.clone(), dim, amps.len(), "state vector")?;
    PureState::new(amps.iter().map(|z| z.to_complex()).collect()).map_err(invalid(field))
}

impl ScenarioSpec {
    pub fn build(&self) -> Result<Scenario, ScenarioError> {
        let [d1, d2] = self.dims;
        if d1 == 0 || d2 == 0 {
            return Err(ScenarioError::Invalid {
                field: "dims".into(),
                source: Error::InvalidState("local dimensions must be positive".into()),
            });
        }

        let (state, density) = match &self.state {
            StateSpec::ProductMixture { components } => {
                let mut built = Vec::with_capacity(components.len());
                for (k, c) in components.iter().enumerate() {
                    let base = format!("state.components[{k}]");
                    built.push(MixtureComponent {
                        weight: c.weight,
                        left: pure_state(format!("{base}.left"), &c.left, d1)?,
                        right: pure_state(format!("{base}.right"), &c.right, d2)?,
                    });
                }
                let m = ProductMixture::new(built).map_err(invalid("state.components"))?;
                let rho = density_from_mixture(&m);
                (ScenarioState::Mixture(m), rho)
            }
            StateSpec::DensityMatrix { matrix } => {
                let op = operator_from_literal(matrix).map_err(invalid("state.matrix"))?;
                check_dim("state.matrix".into(), d1 * d2, op.dim(), "density matrix")?;
                let rho = DensityMatrix::new(op, DEFAULT_TOL).map_err(invalid("state.matrix"))?;
                (ScenarioState::Density(rho.clone()), rho)
            }
        };

        let povm = |s: Setting, dim: usize| {
            let (name, spec) = self.observables.get(s);
            build_measurement(&format!("observables.{name}"), spec, dim)
        };
        let settings = ChshSettings::new(
            povm(Setting::A, d1)?,
            povm(Setting::APrime, d1)?,
            povm(Setting::B, d2)?,
            povm(Setting::BPrime, d2)?,
        )
        .map_err(invalid("observables"))?;

        Ok(Scenario {
            spec: self.clone(),
            state,
            density,
            settings,
        })
    }
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let spec: ScenarioSpec = serde_json::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
        spec.build()
    }

    pub fn load(path: &Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ScenarioError::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.spec).expect("scenario serializes")
    }

    pub fn mixture(&self) -> Option<&ProductMixture> {
        match &self.state {
            ScenarioState::Mixture(m) => Some(m),
            ScenarioState::Density(_) => None,
        }
    }
}

impl ScenarioSpec {
    /// Scenario spec for a product mixture measured with spin-1 projective
    /// measurements at `angles`.
    pub fn spin1_mixture(m: &ProductMixture, angles: [f64; 4]) -> Self {
        let vec_lit = |s: &PureState| {
            s.amplitudes()
                .iter()
                .copied()
                .map(ComplexLiteral::from_complex)
                .collect()
        };
        let (d1, d2) = m.dims();
        let spin = |angle| MeasurementSpec::Spin1 { angle };
        ScenarioSpec {
            dims: [d1, d2],
            state: StateSpec::ProductMixture {
                components: m
                    .components()
                    .iter()
                    .map(|c| ComponentSpec {
                        weight: c.weight,
                        left: vec_lit(&c.left),
                        right: vec_lit(&c.right),
                    })
                    .collect(),
            },
            observables: ObservablesSpec {
                a: spin(angles[0]),
                a_prime: spin(angles[1]),
                b: spin(angles[2]),
                b_prime: spin(angles[3]),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::chsh_value;
    use crate::model::spin1_counterexample_state;
    use crate::COUNTEREXAMPLE_ANGLES;

    fn counterexample_spec() -> ScenarioSpec {
        ScenarioSpec::spin1_mixture(&spin1_counterexample_state(), COUNTEREXAMPLE_ANGLES)
    }

    #[test]
    fn round_trip_is_bit_identical() {
        let a = counterexample_spec().build().unwrap();
        let b = Scenario::from_json(&a.to_json()).unwrap();
        let ra = chsh_value(&a.density, &a.settings).unwrap();
        let rb = chsh_value(&b.density, &b.settings).unwrap();
        assert_eq!(serde_json::to_string(&ra).unwrap(), serde_json::to_string(&rb).unwrap());
        assert_eq!(a.spec, b.spec);
    }

    #[test]
    fn complex_literals() {
        let v: Vec<ComplexLiteral> = serde_json::from_str("[1, [0.5, -0.25], 0.0]").unwrap();
        assert_eq!(v[0].to_complex(), ComplexScalar::new(1.0, 0.0));
        assert_eq!(v[1].to_complex(), ComplexScalar::new(0.5, -0.25));
        assert_eq!(
            ComplexLiteral::from_complex(ComplexScalar::new(2.0, -0.0)),
            ComplexLiteral::Complex([2.0, -0.0])
        );
    }

    #[test]
    fn malformed_json_is_parse_error() {
        assert!(matches!(
            Scenario::from_json("{ \"dims\": [3, 3], "),
            Err(ScenarioError::Parse(_))
        ));
        assert!(matches!(
            Scenario::from_json(r#"{"dims": [3,3], "state": {"kind": "bogus"}, "observables": {}}"#),
            Err(ScenarioError::Parse(_))
        ));
    }

    #[test]
    fn non_positive_povm_names_element() {
        let mut spec = counterexample_spec();
        spec.observables.b = MeasurementSpec::Povm {
            outcomes: vec![
                OutcomeSpec {
                    value: 1.0,
                    matrix: matrix_literal(&Operator::diagonal(&[2.0, 0.0, 1.0])),
                },
                OutcomeSpec {
                    value: -1.0,
                    matrix: matrix_literal(&Operator::diagonal(&[-1.0, 1.0, 0.0])),
                },
            ],
            null_value: 0.0,
        };
        let err = spec.build().unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("observables.b"), "{msg}");
        assert!(msg.contains("element 1"), "{msg}");
    }

    #[test]
    fn dimension_errors_name_field() {
        let mut spec = counterexample_spec();
        if let StateSpec::ProductMixture { components } = &mut spec.state {
            components[1].right.pop();
        }
        match spec.build().unwrap_err() {
            ScenarioError::Invalid { field, .. } => assert_eq!(field, "state.components[1].right"),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn spin1_requires_three_dimensions() {
        let mut spec = counterexample_spec();
        spec.dims = [2, 3];
        assert!(matches!(spec.build(), Err(ScenarioError::Invalid { .. })));
    }
}

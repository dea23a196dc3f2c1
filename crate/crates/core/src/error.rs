use thiserror::Error;

use crate::correlations::Pair;
use crate::model::PovmViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("operator is not Hermitian (max |A - A^dagger| = {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("outcome value {value} lies outside [-1, 1]")]
    OutcomeOutOfRange { value: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid POVM: {}", format_violations(.0))]
    InvalidPovm(Vec<PovmViolation>),

    #[error("invalid probability table: {0}")]
    InvalidDistribution(String),

    #[error("invalid random variable: {0}")]
    InvalidModel(String),

    #[error("trace has imaginary residue {residue:e}")]
    ImaginaryResidue { residue: f64 },

    #[error("degenerate post-selection{}: pass probability {probability:e} is not above {eps:e}", pair_suffix(.pair))]
    DegeneratePostSelection {
        pair: Option<Pair>,
        probability: f64,
        eps: f64,
    },

    #[error("invalid scan configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// Attaches the offending setting pair to a post-selection error.
    pub fn with_pair(self, pair: Pair) -> Self {
        match self {
            Error::DegeneratePostSelection { probability, eps, .. } => Error::DegeneratePostSelection {
                pair: Some(pair),
                probability,
                eps,
            },
            other => other,
        }
    }
}

fn pair_suffix(pair: &Option<Pair>) -> String {
    match pair {
        Some(p) => format!(" for pair {}", p.label()),
        None => String::new(),
    }
}

fn format_violations(v: &[PovmViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

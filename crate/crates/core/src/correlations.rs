//! Joint outcome distributions, plain and post-selected correlations, and the
//! two CHSH combinations built from them.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{trace_with_tensor, DEFAULT_GROUP_TOL};
use crate::model::{povm_from_observable, spin1_observable, DensityMatrix, Povm};

/// Pass probabilities at or below this value make post-selection undefined.
pub const DEFAULT_EPS: f64 = 1e-12;

/// Negative probabilities down to this value are treated as rounding noise.
pub const NEGATIVE_CLAMP: f64 = 1e-12;

const NORMALIZATION_TOL: f64 = 1e-10;
const IMAGINARY_TOL: f64 = 1e-10;

/// One of the four local experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Setting {
    A,
    APrime,
    B,
    BPrime,
}

impl Setting {
    pub const ALL: [Setting; 4] = [Setting::A, Setting::APrime, Setting::B, Setting::BPrime];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// A joint measurement `(x, y)` with `x` on side 1 and `y` on side 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Pair {
    #[serde(rename = "a,b")]
    AB,
    #[serde(rename = "a,b'")]
    ABPrime,
    #[serde(rename = "a',b")]
    APrimeB,
    #[serde(rename = "a',b'")]
    APrimeBPrime,
}

impl Pair {
    /// Order used for every four-element array in this crate.
    pub const ALL: [Pair; 4] = [Pair::AB, Pair::ABPrime, Pair::APrimeB, Pair::APrimeBPrime];

    pub fn settings(self) -> (Setting, Setting) {
        match self {
            Pair::AB => (Setting::A, Setting::B),
            Pair::ABPrime => (Setting::A, Setting::BPrime),
            Pair::APrimeB => (Setting::APrime, Setting::B),
            Pair::APrimeBPrime => (Setting::APrime, Setting::BPrime),
        }
    }

    /// Sign of this pair's term in the CHSH combination.
    pub fn sign(self) -> f64 {
        if self == Pair::APrimeBPrime {
            -1.0
        } else {
            1.0
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Pair::AB => "(a,b)",
            Pair::ABPrime => "(a,b')",
            Pair::APrimeB => "(a',b)",
            Pair::APrimeBPrime => "(a',b')",
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `E(a,b) + E(a,b') + E(a',b) - E(a',b')`, arguments in [`Pair::ALL`] order.
pub fn chsh_combination(terms: [f64; 4]) -> f64 {
    Pair::ALL.iter().zip(terms).map(|(p, e)| p.sign() * e).sum()
}

/// Probability table `P(a = values_a[i], b = values_b[j])`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    values_a: Vec<f64>,
    values_b: Vec<f64>,
    table: Vec<f64>,
    null_a: f64,
    null_b: f64,
}

impl JointDistribution {
    /// `table` is row-major, `values_a.len()` rows by `values_b.len()` columns.
    pub fn new(values_a: Vec<f64>, values_b: Vec<f64>, table: Vec<f64>, null_a: f64, null_b: f64) -> Result<Self> {
        if table.len() != values_a.len() * values_b.len() {
            return Err(Error::DimensionMismatch {
                context: "joint distribution table",
                expected: values_a.len() * values_b.len(),
                found: table.len(),
            });
        }
        let mut clamped = Vec::with_capacity(table.len());
        for (k, &p) in table.iter().enumerate() {
            if !p.is_finite() || p < -NEGATIVE_CLAMP {
                return Err(Error::InvalidDistribution(format!(
                    "entry ({}, {}) is {p}",
                    k / values_b.len(),
                    k % values_b.len()
                )));
            }
            clamped.push(p.max(0.0));
        }
        let total: f64 = clamped.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidDistribution(format!("entries sum to {total}")));
        }
        Ok(JointDistribution {
            values_a,
            values_b,
            table: clamped,
            null_a,
            null_b,
        })
    }

    pub fn values_a(&self) -> &[f64] {
        &self.values_a
    }

    pub fn values_b(&self) -> &[f64] {
        &self.values_b
    }

    pub fn null_values(&self) -> (f64, f64) {
        (self.null_a, self.null_b)
    }

    pub fn prob(&self, i: usize, j: usize) -> f64 {
        self.table[i * self.values_b.len() + j]
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn marginal_a(&self) -> Vec<f64> {
        let nb = self.values_b.len();
        (0..self.values_a.len())
            .map(|i| self.table[i * nb..(i + 1) * nb].iter().sum())
            .collect()
    }

    pub fn marginal_b(&self) -> Vec<f64> {
        let nb = self.values_b.len();
        (0..nb)
            .map(|j| (0..self.values_a.len()).map(|i| self.table[i * nb + j]).sum())
            .collect()
    }

    /// Largest entry-wise difference; `None` if the outcome alphabets differ.
    pub fn max_deviation(&self, other: &JointDistribution) -> Option<f64> {
        if self.values_a != other.values_a || self.values_b != other.values_b {
            return None;
        }
        Some(
            self.table
                .iter()
                .zip(&other.table)
                .map(|(p, q)| (p - q).abs())
                .fold(0.0, f64::max),
        )
    }

    fn cells(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let nb = self.values_b.len();
        self.table
            .iter()
            .enumerate()
            .map(move |(k, &p)| (self.values_a[k / nb], self.values_b[k % nb], p))
    }
}

/// `P(i, j) = Re tr(rho (A_i (x) B_j))`; fails if the imaginary residue of a
/// trace exceeds 1e-10.
pub fn joint_distribution(rho: &DensityMatrix, pa: &Povm, pb: &Povm) -> Result<JointDistribution> {
    let expected = pa.dim() * pb.dim();
    if rho.dim() != expected {
        return Err(Error::DimensionMismatch {
            context: "state vs. measurement pair",
            expected,
            found: rho.dim(),
        });
    }
    let mut table = Vec::with_capacity(pa.outcomes().len() * pb.outcomes().len());
    for oa in pa.outcomes() {
        for ob in pb.outcomes() {
            let p = trace_with_tensor(rho.matrix(), &oa.operator, &ob.operator);
            if p.im.abs() > IMAGINARY_TOL {
                return Err(Error::ImaginaryResidue { residue: p.im });
            }
            table.push(p.re);
        }
    }
    JointDistribution::new(pa.values(), pb.values(), table, pa.null_value(), pb.null_value())
}

/// `sum_ij a_i b_j P(i, j)`.
pub fn expectation(jd: &JointDistribution) -> f64 {
    jd.cells().map(|(a, b, p)| a * b * p).sum()
}

/// Probability that neither outcome is the null value.
pub fn pass_probability(jd: &JointDistribution) -> f64 {
    let (na, nb) = jd.null_values();
    jd.cells()
        .filter(|&(a, b, _)| a != na && b != nb)
        .map(|(_, _, p)| p)
        .sum()
}

/// Correlation restricted to the runs where both outcomes differ from their
/// null values.
pub fn conditional_expectation(jd: &JointDistribution, eps: f64) -> Result<f64> {
    let pass = pass_probability(jd);
    if pass <= eps {
        return Err(Error::DegeneratePostSelection {
            pair: None,
            probability: pass,
            eps,
        });
    }
    let (na, nb) = jd.null_values();
    let numerator: f64 = jd
        .cells()
        .filter(|&(a, b, _)| a != na && b != nb)
        .map(|(a, b, p)| a * b * p)
        .sum();
    Ok(numerator / pass)
}

/// The four measurements of a CHSH experiment.
#[derive(Debug, Clone)]
pub struct ChshSettings {
    pub a: Povm,
    pub a_prime: Povm,
    pub b: Povm,
    pub b_prime: Povm,
}

impl ChshSettings {
    pub fn new(a: Povm, a_prime: Povm, b: Povm, b_prime: Povm) -> Result<Self> {
        if a.dim() != a_prime.dim() {
            return Err(Error::DimensionMismatch {
                context: "side-1 measurements",
                expected: a.dim(),
                found: a_prime.dim(),
            });
        }
        if b.dim() != b_prime.dim() {
            return Err(Error::DimensionMismatch {
                context: "side-2 measurements",
                expected: b.dim(),
                found: b_prime.dim(),
            });
        }
        Ok(ChshSettings { a, a_prime, b, b_prime })
    }

    /// Projective spin-1 measurements at angles `[alpha, alpha', beta, beta']`.
    pub fn spin1(angles: [f64; 4]) -> Result<Self> {
        let [a, ap, b, bp] = angles.map(|t| povm_from_observable(&spin1_observable(t), DEFAULT_GROUP_TOL));
        Self::new(a?, ap?, b?, bp?)
    }

    pub fn povm(&self, setting: Setting) -> &Povm {
        match setting {
            Setting::A => &self.a,
            Setting::APrime => &self.a_prime,
            Setting::B => &self.b,
            Setting::BPrime => &self.b_prime,
        }
    }

    pub fn pair(&self, pair: Pair) -> (&Povm, &Povm) {
        let (x, y) = pair.settings();
        (self.povm(x), self.povm(y))
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.a.dim(), self.b.dim())
    }
}

/// Correlations, pass probabilities and both CHSH combinations for one state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChshReport {
    pub correlations: [f64; 4],
    pub pass_probabilities: [f64; 4],
    pub s: f64,
    /// `None` when some pair has a degenerate pass probability.
    pub conditioned_correlations: Option<[f64; 4]>,
    pub s_conditioned: Option<f64>,
}

fn evaluate(rho: &DensityMatrix, s: &ChshSettings, eps: f64) -> Result<(ChshReport, Option<Error>)> {
    let mut correlations = [0.0; 4];
    let mut pass = [0.0; 4];
    let mut conditioned = [0.0; 4];
    let mut degenerate = None;
    for (k, pair) in Pair::ALL.into_iter().enumerate() {
        let (pa, pb) = s.pair(pair);
        let jd = joint_distribution(rho, pa, pb)?;
        correlations[k] = expectation(&jd);
        pass[k] = pass_probability(&jd);
        match conditional_expectation(&jd, eps) {
            Ok(e) => conditioned[k] = e,
            Err(e) => {
                degenerate.get_or_insert(e.with_pair(pair));
            }
        }
    }
    let (conditioned_correlations, s_conditioned) = match degenerate {
        None => (Some(conditioned), Some(chsh_combination(conditioned))),
        Some(_) => (None, None),
    };
    Ok((
        ChshReport {
            correlations,
            pass_probabilities: pass,
            s: chsh_combination(correlations),
            conditioned_correlations,
            s_conditioned,
        },
        degenerate,
    ))
}

/// Unconditioned CHSH value; the conditioned fields are filled in whenever
/// every pair has a usable pass probability.
pub fn chsh_value(rho: &DensityMatrix, s: &ChshSettings) -> Result<ChshReport> {
    evaluate(rho, s, DEFAULT_EPS).map(|(r, _)| r)
}

/// Like [`chsh_value`] but fails with the first degenerate pair instead of
/// leaving the conditioned fields empty.
pub fn conditioned_chsh_value(rho: &DensityMatrix, s: &ChshSettings) -> Result<ChshReport> {
    conditioned_chsh_value_eps(rho, s, DEFAULT_EPS)
}

pub fn conditioned_chsh_value_eps(rho: &DensityMatrix, s: &ChshSettings, eps: f64) -> Result<ChshReport> {
    match evaluate(rho, s, eps)? {
        (_, Some(err)) => Err(err),
        (report, None) => Ok(report),
    }
}

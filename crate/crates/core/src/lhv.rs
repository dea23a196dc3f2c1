//! Explicit local hidden variable models on a finite sample space.
//!
//! For a product mixture `sum_k w_k |l_k><l_k| (x) |r_k><r_k|` the model has
//! one atom per tuple `(k, i_a, i_a', j_b, j_b')`. Within component `k` the
//! four outcomes are independent draws from their local single-particle
//! distributions, so the atom weight is
//! `w_k p_k(a=i_a) p_k(a'=i_a') q_k(b=j_b) q_k(b'=j_b')`. Summing over the
//! unused indices reproduces the quantum joint distribution of every pair
//! exactly.
//!
//! Zero-weight atoms are kept so atom indices depend only on the shapes of
//! the inputs.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::correlations::{chsh_combination, ChshSettings, JointDistribution, Pair, Setting};
use crate::error::{Error, Result};
use crate::model::ProductMixture;

/// Bound check slack for the CHSH inequality on random variables.
pub const CHSH_SLACK: f64 = 1e-12;

const SPACE_TOL: f64 = 1e-12;
/// Looser normalization accepted for constructed models, whose atom weights
/// inherit the completeness defect of user-supplied POVMs.
const CONSTRUCTED_SPACE_TOL: f64 = 1e-9;

/// Finite probability space; atoms are identified by index.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSpace {
    probs: Vec<f64>,
}

impl SampleSpace {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(probs, SPACE_TOL)
    }

    fn with_tolerance(probs: Vec<f64>, tol: f64) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidModel("sample space has no atoms".into()));
        }
        if let Some((k, p)) = probs.iter().enumerate().find(|(_, p)| !(p.is_finite() && **p >= 0.0)) {
            return Err(Error::InvalidModel(format!("atom {k} has weight {p}")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > tol {
            return Err(Error::InvalidModel(format!("atom weights sum to {total}")));
        }
        Ok(SampleSpace { probs })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// Real function on the atoms, stored as an outcome alphabet plus one index
/// per atom.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomVariable {
    alphabet: Vec<f64>,
    index: Vec<usize>,
    null_value: f64,
}

impl RandomVariable {
    pub fn from_indices(alphabet: Vec<f64>, index: Vec<usize>, null_value: f64) -> Result<Self> {
        if let Some(v) = alphabet.iter().find(|v| !(v.is_finite() && v.abs() <= 1.0)) {
            return Err(Error::OutcomeOutOfRange { value: *v });
        }
        if let Some(i) = index.iter().find(|&&i| i >= alphabet.len()) {
            return Err(Error::InvalidModel(format!(
                "outcome index {i} outside alphabet of size {}",
                alphabet.len()
            )));
        }
        Ok(RandomVariable {
            alphabet,
            index,
            null_value,
        })
    }

    /// Alphabet is the distinct values in order of first appearance.
    pub fn from_values(values: Vec<f64>, null_value: f64) -> Result<Self> {
        let mut alphabet: Vec<f64> = Vec::new();
        let index = values
            .iter()
            .map(|v| match alphabet.iter().position(|a| a == v) {
                Some(i) => i,
                None => {
                    alphabet.push(*v);
                    alphabet.len() - 1
                }
            })
            .collect();
        Self::from_indices(alphabet, index, null_value)
    }

    pub fn value(&self, atom: usize) -> f64 {
        self.alphabet[self.index[atom]]
    }

    pub fn outcome_index(&self, atom: usize) -> usize {
        self.index[atom]
    }

    pub fn alphabet(&self) -> &[f64] {
        &self.alphabet
    }

    pub fn null_value(&self) -> f64 {
        self.null_value
    }

    pub fn passes(&self, atom: usize) -> bool {
        self.value(atom) != self.null_value
    }

    fn len(&self) -> usize {
        self.index.len()
    }
}

/// Atom label of a model built from a product mixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Atom {
    pub component: usize,
    /// Outcome indices in [`Setting::ALL`] order.
    pub outcomes: [usize; 4],
}

#[derive(Debug, Clone)]
pub struct LhvModel {
    space: SampleSpace,
    vars: [RandomVariable; 4],
    atoms: Option<Vec<Atom>>,
}

impl LhvModel {
    /// `vars` in [`Setting::ALL`] order.
    pub fn new(space: SampleSpace, vars: [RandomVariable; 4]) -> Result<Self> {
        for v in &vars {
            if v.len() != space.len() {
                return Err(Error::DimensionMismatch {
                    context: "random variable vs. sample space",
                    expected: space.len(),
                    found: v.len(),
                });
            }
        }
        Ok(LhvModel {
            space,
            vars,
            atoms: None,
        })
    }

    pub fn space(&self) -> &SampleSpace {
        &self.space
    }

    pub fn variable(&self, setting: Setting) -> &RandomVariable {
        &self.vars[setting.index()]
    }

    /// Atom labels, present for models built from a product mixture.
    pub fn atoms(&self) -> Option<&[Atom]> {
        self.atoms.as_deref()
    }

    pub fn atom_count(&self) -> usize {
        self.space.len()
    }

    fn weighted_atoms(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.space.probs.iter().copied().enumerate()
    }
}

/// Local outcome probabilities `<psi|E_i|psi>`, with rounding noise below zero
/// clamped away.
fn local_distribution(state: &crate::model::PureState, povm: &crate::model::Povm) -> Vec<f64> {
    povm.outcomes()
        .iter()
        .map(|o| state.expectation(&o.operator).max(0.0))
        .collect()
}

/// Canonical hidden-variable model for a product mixture under four
/// measurements.
pub fn build_lhv_for_product_mixture(m: &ProductMixture, s: &ChshSettings) -> Result<LhvModel> {
    let (d1, d2) = m.dims();
    let (s1, s2) = s.dims();
    if d1 != s1 {
        return Err(Error::DimensionMismatch {
            context: "mixture left factor vs. side-1 measurements",
            expected: s1,
            found: d1,
        });
    }
    if d2 != s2 {
        return Err(Error::DimensionMismatch {
            context: "mixture right factor vs. side-2 measurements",
            expected: s2,
            found: d2,
        });
    }

    let sizes = Setting::ALL.map(|x| s.povm(x).outcomes().len());
    let per_component: usize = sizes.iter().product();
    let total = m.components().len() * per_component;

    let mut probs = Vec::with_capacity(total);
    let mut atoms = Vec::with_capacity(total);
    let mut indices: [Vec<usize>; 4] = Default::default();

    for (k, c) in m.components().iter().enumerate() {
        let local = [
            local_distribution(&c.left, &s.a),
            local_distribution(&c.left, &s.a_prime),
            local_distribution(&c.right, &s.b),
            local_distribution(&c.right, &s.b_prime),
        ];
        for ia in 0..sizes[0] {
            for iap in 0..sizes[1] {
                for jb in 0..sizes[2] {
                    for jbp in 0..sizes[3] {
                        let outcomes = [ia, iap, jb, jbp];
                        probs.push(c.weight * local[0][ia] * local[1][iap] * local[2][jb] * local[3][jbp]);
                        for (slot, &i) in indices.iter_mut().zip(&outcomes) {
                            slot.push(i);
                        }
                        atoms.push(Atom { component: k, outcomes });
                    }
                }
            }
        }
    }

    let space = SampleSpace::with_tolerance(probs, CONSTRUCTED_SPACE_TOL)?;
    let [ia, iap, jb, jbp] = indices;
    let var = |setting: Setting, index: Vec<usize>| {
        let povm = s.povm(setting);
        RandomVariable::from_indices(povm.values(), index, povm.null_value())
    };
    let vars = [
        var(Setting::A, ia)?,
        var(Setting::APrime, iap)?,
        var(Setting::B, jb)?,
        var(Setting::BPrime, jbp)?,
    ];
    let mut model = LhvModel::new(space, vars)?;
    model.atoms = Some(atoms);
    Ok(model)
}

/// `P(X = i, Y = j)` for the pair, by summation over atoms.
pub fn lhv_pair_distribution(model: &LhvModel, pair: Pair) -> Result<JointDistribution> {
    let (x, y) = pair.settings();
    let (vx, vy) = (model.variable(x), model.variable(y));
    let nb = vy.alphabet.len();
    let mut table = vec![0.0; vx.alphabet.len() * nb];
    for (atom, p) in model.weighted_atoms() {
        table[vx.index[atom] * nb + vy.index[atom]] += p;
    }
    JointDistribution::new(
        vx.alphabet.clone(),
        vy.alphabet.clone(),
        table,
        vx.null_value,
        vy.null_value,
    )
}

/// `E(XY)`.
pub fn rv_expectation(model: &LhvModel, x: Setting, y: Setting) -> f64 {
    let (vx, vy) = (model.variable(x), model.variable(y));
    model
        .weighted_atoms()
        .map(|(atom, p)| p * vx.value(atom) * vy.value(atom))
        .sum()
}

/// `E(XY | X != null, Y != null)`, summing the numerator over passing atoms
/// only so that nonzero null values are handled correctly.
pub fn rv_conditional_expectation(model: &LhvModel, x: Setting, y: Setting, eps: f64) -> Result<f64> {
    let (vx, vy) = (model.variable(x), model.variable(y));
    let mut pass = 0.0;
    let mut numerator = 0.0;
    for (atom, p) in model.weighted_atoms() {
        if vx.passes(atom) && vy.passes(atom) {
            pass += p;
            numerator += p * vx.value(atom) * vy.value(atom);
        }
    }
    if pass <= eps {
        return Err(Error::DegeneratePostSelection {
            pair: None,
            probability: pass,
            eps,
        });
    }
    Ok(numerator / pass)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChshCheck {
    pub s: f64,
    pub bound_satisfied: bool,
}

/// CHSH combination of the four unconditioned products and whether it stays
/// within 2.
pub fn chsh_check_rvs(model: &LhvModel) -> ChshCheck {
    let s = chsh_combination(rv_correlations(model));
    ChshCheck {
        s,
        bound_satisfied: s <= 2.0 + CHSH_SLACK,
    }
}

pub fn rv_correlations(model: &LhvModel) -> [f64; 4] {
    Pair::ALL.map(|p| {
        let (x, y) = p.settings();
        rv_expectation(model, x, y)
    })
}

/// Post-selected correlations in [`Pair::ALL`] order.
pub fn rv_conditioned_correlations(model: &LhvModel, eps: f64) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for (k, pair) in Pair::ALL.into_iter().enumerate() {
        let (x, y) = pair.settings();
        out[k] = rv_conditional_expectation(model, x, y, eps).map_err(|e| e.with_pair(pair))?;
    }
    Ok(out)
}

/// Pair-count tables from Monte Carlo draws of atoms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleCounts {
    pub samples: u64,
    /// One row-major table per pair in [`Pair::ALL`] order; rows index the
    /// side-1 alphabet, columns the side-2 alphabet.
    pub tables: [Vec<Vec<u64>>; 4],
}

impl SampleCounts {
    fn empty(model: &LhvModel) -> Self {
        let tables = Pair::ALL.map(|p| {
            let (x, y) = p.settings();
            vec![vec![0; model.variable(y).alphabet.len()]; model.variable(x).alphabet.len()]
        });
        SampleCounts { samples: 0, tables }
    }

    /// Adds another run's counts; order of merging does not matter.
    pub fn merge(&mut self, other: &SampleCounts) {
        self.samples += other.samples;
        for (mine, theirs) in self.tables.iter_mut().zip(&other.tables) {
            for (r, s) in mine.iter_mut().zip(theirs) {
                for (a, b) in r.iter_mut().zip(s) {
                    *a += b;
                }
            }
        }
    }

    /// Empirical correlations and pass fractions in [`Pair::ALL`] order.
    pub fn empirical(&self, model: &LhvModel) -> EmpiricalStats {
        let mut correlations = [0.0; 4];
        let mut pass = [0.0; 4];
        let mut conditioned = [0.0; 4];
        let n = self.samples as f64;
        for (k, pair) in Pair::ALL.into_iter().enumerate() {
            let (x, y) = pair.settings();
            let (vx, vy) = (model.variable(x), model.variable(y));
            let mut sum = 0.0;
            let mut passed = 0.0;
            for (i, row) in self.tables[k].iter().enumerate() {
                for (j, &count) in row.iter().enumerate() {
                    let (a, b) = (vx.alphabet[i], vy.alphabet[j]);
                    let c = count as f64;
                    sum += a * b * c;
                    if a != vx.null_value && b != vy.null_value {
                        passed += c;
                        conditioned[k] += a * b * c;
                    }
                }
            }
            correlations[k] = sum / n;
            pass[k] = passed / n;
            conditioned[k] = if passed > 0.0 {
                conditioned[k] / passed
            } else {
                f64::NAN
            };
        }
        let defined = conditioned.iter().all(|c| c.is_finite());
        EmpiricalStats {
            correlations,
            pass_probabilities: pass,
            s: chsh_combination(correlations),
            conditioned_correlations: defined.then_some(conditioned),
            s_conditioned: defined.then(|| chsh_combination(conditioned)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalStats {
    pub correlations: [f64; 4],
    pub pass_probabilities: [f64; 4],
    pub s: f64,
    pub conditioned_correlations: Option<[f64; 4]>,
    pub s_conditioned: Option<f64>,
}

/// Draws `n` atoms i.i.d. from the model's distribution and tallies every pair.
///
/// The generator is ChaCha8 seeded with `seed` via `seed_from_u64`, so the
/// same `(model, seed, n)` always yields the same counts.
pub fn sample(model: &LhvModel, seed: u64, n: u64) -> SampleCounts {
    let mut counts = SampleCounts::empty(model);
    let dist = WeightedIndex::new(model.space.probs()).expect("sample space has positive mass");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n {
        let atom = dist.sample(&mut rng);
        for (k, pair) in Pair::ALL.into_iter().enumerate() {
            let (x, y) = pair.settings();
            counts.tables[k][model.variable(x).index[atom]][model.variable(y).index[atom]] += 1;
        }
    }
    counts.samples = n;
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::{conditional_expectation, joint_distribution, DEFAULT_EPS};
    use crate::model::{density_from_mixture, spin1_counterexample_state, MixtureComponent, PureState};
    use crate::random::{random_lhv_model, random_povm_any, random_product_mixture};
    use proptest::prelude::*;
    use std::f64::consts::SQRT_2;

    fn counterexample_model() -> LhvModel {
        build_lhv_for_product_mixture(
            &spin1_counterexample_state(),
            &ChshSettings::spin1(crate::COUNTEREXAMPLE_ANGLES).unwrap(),
        )
        .unwrap()
    }

    fn deterministic_model() -> LhvModel {
        let e1 = PureState::basis(3, 0);
        let m = ProductMixture::new(vec![MixtureComponent {
            weight: 1.0,
            left: e1.clone(),
            right: e1,
        }])
        .unwrap();
        build_lhv_for_product_mixture(&m, &ChshSettings::spin1([0.0; 4]).unwrap()).unwrap()
    }

    #[test]
    fn atom_count() {
        let model = counterexample_model();
        assert_eq!(model.atom_count(), 162);
        assert_eq!(model.atoms().unwrap().len(), 162);
        assert!((model.space().probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_model_has_one_live_atom() {
        let model = deterministic_model();
        let live: Vec<usize> = (0..model.atom_count())
            .filter(|&a| model.space().probs()[a] > 1e-15)
            .collect();
        assert_eq!(live.len(), 1);
        for s in Setting::ALL {
            assert_eq!(model.variable(s).value(live[0]), 1.0);
        }
        let jd = lhv_pair_distribution(&model, Pair::AB).unwrap();
        assert!((jd.prob(0, 0) - 1.0).abs() < 1e-15);
        assert!((rv_expectation(&model, Setting::A, Setting::B) - 1.0).abs() < 1e-15);
        assert!((rv_conditional_expectation(&model, Setting::A, Setting::B, DEFAULT_EPS).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reproduces_quantum_statistics() {
        let m = spin1_counterexample_state();
        let s = ChshSettings::spin1(crate::COUNTEREXAMPLE_ANGLES).unwrap();
        let rho = density_from_mixture(&m);
        let model = build_lhv_for_product_mixture(&m, &s).unwrap();
        for pair in Pair::ALL {
            let (pa, pb) = s.pair(pair);
            let q = joint_distribution(&rho, pa, pb).unwrap();
            let l = lhv_pair_distribution(&model, pair).unwrap();
            assert!(q.max_deviation(&l).unwrap() <= 1e-12);
            let (x, y) = pair.settings();
            let lc = rv_conditional_expectation(&model, x, y, DEFAULT_EPS).unwrap();
            assert!((lc - conditional_expectation(&q, DEFAULT_EPS).unwrap()).abs() <= 1e-12);
        }
        assert!((rv_expectation(&model, Setting::A, Setting::B) - SQRT_2 / 4.0).abs() <= 1e-12);
        assert!(
            (rv_conditional_expectation(&model, Setting::A, Setting::B, DEFAULT_EPS).unwrap() - 4.0 * SQRT_2 / 9.0)
                .abs()
                <= 1e-12
        );
    }

    #[test]
    fn marginals_do_not_depend_on_partner() {
        let model = counterexample_model();
        let ab = lhv_pair_distribution(&model, Pair::AB).unwrap();
        let abp = lhv_pair_distribution(&model, Pair::ABPrime).unwrap();
        for (x, y) in ab.marginal_a().iter().zip(abp.marginal_a()) {
            assert!((x - y).abs() <= 1e-15);
        }
    }

    #[test]
    fn unconditioned_bound_holds_while_conditioned_exceeds() {
        let model = counterexample_model();
        let check = chsh_check_rvs(&model);
        assert!((check.s - SQRT_2).abs() < 1e-12);
        assert!(check.bound_satisfied);
        let cond = chsh_combination(rv_conditioned_correlations(&model, DEFAULT_EPS).unwrap());
        assert!((cond - 16.0 * SQRT_2 / 9.0).abs() < 1e-12);
        assert!(cond > 2.0);
    }

    #[test]
    fn constant_variables() {
        let space = SampleSpace::new(vec![0.25, 0.75]).unwrap();
        let ones = RandomVariable::from_values(vec![1.0, 1.0], 0.0).unwrap();
        let zeros = RandomVariable::from_values(vec![0.0, 0.0], 0.0).unwrap();
        let model = LhvModel::new(space.clone(), [ones.clone(), ones.clone(), ones.clone(), ones.clone()]).unwrap();
        let check = chsh_check_rvs(&model);
        assert_eq!(check.s, 2.0);
        assert!(check.bound_satisfied);
        let model = LhvModel::new(space, [ones.clone(), ones.clone(), zeros, ones]).unwrap();
        assert_eq!(rv_expectation(&model, Setting::A, Setting::B), 0.0);
        assert!(matches!(
            rv_conditional_expectation(&model, Setting::A, Setting::B, DEFAULT_EPS),
            Err(Error::DegeneratePostSelection { .. })
        ));
    }

    #[test]
    fn nonzero_null_value_uses_restricted_numerator() {
        // X = [1, -1], Y = [1, 1] with null 1 on X: only atom 1 passes.
        let space = SampleSpace::new(vec![0.5, 0.5]).unwrap();
        let x = RandomVariable::from_values(vec![1.0, -1.0], 1.0).unwrap();
        let y = RandomVariable::from_values(vec![1.0, 1.0], 0.0).unwrap();
        let model = LhvModel::new(space, [x, y.clone(), y.clone(), y]).unwrap();
        assert_eq!(rv_expectation(&model, Setting::A, Setting::B), 0.0);
        assert_eq!(
            rv_conditional_expectation(&model, Setting::A, Setting::B, DEFAULT_EPS).unwrap(),
            -1.0
        );
    }

    #[test]
    fn invalid_models() {
        assert!(SampleSpace::new(vec![0.5, 0.6]).is_err());
        assert!(SampleSpace::new(vec![1.5, -0.5]).is_err());
        assert!(RandomVariable::from_values(vec![1.5], 0.0).is_err());
        let space = SampleSpace::new(vec![1.0]).unwrap();
        let v = RandomVariable::from_values(vec![1.0, 1.0], 0.0).unwrap();
        assert!(LhvModel::new(space, [v.clone(), v.clone(), v.clone(), v]).is_err());
    }

    #[test]
    fn dimension_mismatch() {
        let m = spin1_counterexample_state();
        let s = ChshSettings::new(
            crate::random::random_povm(&mut ChaCha8Rng::seed_from_u64(1), 2, 2),
            crate::random::random_povm(&mut ChaCha8Rng::seed_from_u64(2), 2, 2),
            crate::random::random_povm(&mut ChaCha8Rng::seed_from_u64(3), 3, 2),
            crate::random::random_povm(&mut ChaCha8Rng::seed_from_u64(4), 3, 2),
        )
        .unwrap();
        assert!(matches!(
            build_lhv_for_product_mixture(&m, &s),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sampling_is_deterministic() {
        let model = counterexample_model();
        assert_eq!(sample(&model, 7, 1000), sample(&model, 7, 1000));
        assert_ne!(sample(&model, 7, 1000), sample(&model, 8, 1000));
        let one = sample(&model, 3, 1);
        for t in &one.tables {
            assert_eq!(t.iter().flatten().sum::<u64>(), 1);
        }
    }

    #[test]
    fn merged_counts_are_order_independent() {
        let model = counterexample_model();
        let (a, b) = (sample(&model, 1, 300), sample(&model, 2, 500));
        let mut ab = a.clone();
        ab.merge(&b);
        let mut ba = b.clone();
        ba.merge(&a);
        assert_eq!(ab, ba);
        assert_eq!(ab.samples, 800);
    }

    #[test]
    fn monte_carlo_conditioned_chsh() {
        let model = counterexample_model();
        let stats = sample(&model, 2024, 100_000).empirical(&model);
        assert!((stats.s_conditioned.unwrap() - 16.0 * SQRT_2 / 9.0).abs() < 0.05);
        assert!((stats.s - SQRT_2).abs() < 0.05);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn random_models_obey_chsh(seed in any::<u64>(), atoms in 1usize..40) {
            let model = random_lhv_model(&mut ChaCha8Rng::seed_from_u64(seed), atoms);
            prop_assert!(chsh_check_rvs(&model).bound_satisfied);
        }

        #[test]
        fn constructed_models_reproduce_pairs(seed in any::<u64>(), d1 in 2usize..=3, d2 in 2usize..=3, k in 1usize..=3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_product_mixture(&mut rng, d1, d2, k);
            let s = ChshSettings::new(
                random_povm_any(&mut rng, d1), random_povm_any(&mut rng, d1),
                random_povm_any(&mut rng, d2), random_povm_any(&mut rng, d2),
            ).unwrap();
            let rho = density_from_mixture(&m);
            let model = build_lhv_for_product_mixture(&m, &s).unwrap();
            for pair in Pair::ALL {
                let (pa, pb) = s.pair(pair);
                let dev = joint_distribution(&rho, pa, pb).unwrap()
                    .max_deviation(&lhv_pair_distribution(&model, pair).unwrap()).unwrap();
                prop_assert!(dev <= 1e-12, "dev {dev}");
            }
            prop_assert!(chsh_check_rvs(&model).bound_satisfied);
        }
    }
}

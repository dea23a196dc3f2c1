use std::path::Path;

use serde::Serialize;

use crate::correlations::{
    chsh_combination, chsh_value, conditioned_chsh_value, joint_distribution, ChshReport, ChshSettings, Pair,
};
use crate::error::Error;
use crate::lhv::{
    build_lhv_for_product_mixture, chsh_check_rvs, lhv_pair_distribution, rv_conditioned_correlations, sample,
    EmpiricalStats, SampleCounts,
};
use crate::model::{density_from_mixture, spin1_counterexample_state, DensityMatrix, ProductMixture};
use crate::scan::{grid_scan, write_grid_csv, RefineOutcome, ScanConfig};
use crate::{correlations::DEFAULT_EPS, COUNTEREXAMPLE_ANGLES};

use super::scenario::{Scenario, ScenarioError};

/// Headline tolerance of `reproduce-paper`.
pub const REPRODUCE_TOL: f64 = 1e-9;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
/// `reproduce-paper` ran but its own check failed.
pub const EXIT_CHECK_FAILED: i32 = 4;

/// Result of a command: the JSON report to print and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub json: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandError {
    pub exit_code: i32,
    pub message: String,
}

impl CommandError {
    fn usage(message: impl Into<String>) -> Self {
        CommandError {
            exit_code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        CommandError {
            exit_code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<ScenarioError> for CommandError {
    fn from(e: ScenarioError) -> Self {
        let exit_code = match e {
            ScenarioError::Parse(_) => EXIT_USAGE,
            ScenarioError::Invalid { .. } => EXIT_INVALID,
        };
        CommandError {
            exit_code,
            message: e.to_string(),
        }
    }
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        let exit_code = match e {
            Error::DegeneratePostSelection { .. } => EXIT_DEGENERATE,
            Error::InvalidConfig(_) => EXIT_USAGE,
            _ => EXIT_INVALID,
        };
        CommandError {
            exit_code,
            message: e.to_string(),
        }
    }
}

pub type CommandResult = Result<CommandOutput, CommandError>;

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn ok<T: Serialize>(value: &T) -> CommandResult {
    Ok(CommandOutput {
        json: to_json(value),
        exit_code: EXIT_OK,
    })
}

/// Largest entry-wise gap between quantum and hidden-variable pair tables.
fn lhv_deviations(m: &ProductMixture, rho: &DensityMatrix, s: &ChshSettings) -> Result<[f64; 4], Error> {
    let model = build_lhv_for_product_mixture(m, s)?;
    let mut out = [0.0; 4];
    for (k, pair) in Pair::ALL.into_iter().enumerate() {
        let (pa, pb) = s.pair(pair);
        let q = joint_distribution(rho, pa, pb)?;
        let l = lhv_pair_distribution(&model, pair)?;
        out[k] = q.max_deviation(&l).expect("same outcome alphabets");
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
pub struct ReproduceReport {
    pub angles: [f64; 4],
    pub s: f64,
    pub s_conditioned: f64,
    pub expected_s_conditioned: f64,
    pub correlations: [f64; 4],
    pub conditioned_correlations: [f64; 4],
    pub pass_probabilities: [f64; 4],
    pub lhv_max_deviation: f64,
    pub lhv_s: f64,
    pub lhv_bound_satisfied: bool,
    pub lhv_s_conditioned: f64,
    pub passed: bool,
}

/// Spin-1 counterexample at the fixed angles, checked against `16 sqrt(2) / 9`.
pub fn reproduce_report() -> Result<ReproduceReport, Error> {
    let m = spin1_counterexample_state();
    let rho = density_from_mixture(&m);
    let settings = ChshSettings::spin1(COUNTEREXAMPLE_ANGLES)?;
    let r = conditioned_chsh_value(&rho, &settings)?;
    let deviations = lhv_deviations(&m, &rho, &settings)?;
    let model = build_lhv_for_product_mixture(&m, &settings)?;
    let check = chsh_check_rvs(&model);
    let lhv_conditioned = chsh_combination(rv_conditioned_correlations(&model, DEFAULT_EPS)?);

    let expected = 16.0 * std::f64::consts::SQRT_2 / 9.0;
    let s_conditioned = r.s_conditioned.expect("checked above");
    Ok(ReproduceReport {
        angles: COUNTEREXAMPLE_ANGLES,
        s: r.s,
        s_conditioned,
        expected_s_conditioned: expected,
        correlations: r.correlations,
        conditioned_correlations: r.conditioned_correlations.expect("checked above"),
        pass_probabilities: r.pass_probabilities,
        lhv_max_deviation: deviations.into_iter().fold(0.0, f64::max),
        lhv_s: check.s,
        lhv_bound_satisfied: check.bound_satisfied,
        lhv_s_conditioned: lhv_conditioned,
        passed: (s_conditioned - expected).abs() <= REPRODUCE_TOL && r.s <= 2.0,
    })
}

pub fn cmd_reproduce_paper() -> CommandResult {
    let report = reproduce_report()?;
    Ok(CommandOutput {
        json: to_json(&report),
        exit_code: if report.passed { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

pub fn cmd_chsh(path: &Path, conditioned: bool) -> CommandResult {
    let sc = Scenario::load(path)?;
    let report: ChshReport = if conditioned {
        conditioned_chsh_value(&sc.density, &sc.settings)?
    } else {
        chsh_value(&sc.density, &sc.settings)?
    };
    ok(&report)
}

#[derive(Debug, Serialize)]
pub struct MonteCarloReport {
    pub seed: u64,
    pub counts: SampleCounts,
    pub empirical: EmpiricalStats,
}

#[derive(Debug, Serialize)]
pub struct LhvReport {
    pub atoms: usize,
    pub lhv_max_deviation: f64,
    pub pair_deviations: [f64; 4],
    pub s: f64,
    pub bound_satisfied: bool,
    pub quantum_s: f64,
    pub conditioned_correlations: Option<[f64; 4]>,
    pub s_conditioned: Option<f64>,
    pub quantum_s_conditioned: Option<f64>,
    pub monte_carlo: Option<MonteCarloReport>,
}

/// Seed used by `lhv-verify` when only a sample count is given.
pub const DEFAULT_SEED: u64 = 0;

pub fn cmd_lhv_verify(path: &Path, mc_samples: Option<u64>, seed: Option<u64>) -> CommandResult {
    let sc = Scenario::load(path)?;
    let m = sc.mixture().ok_or_else(|| {
        CommandError::invalid(
            "lhv-verify needs a product_mixture state; a raw density matrix carries no product decomposition",
        )
    })?;
    if mc_samples == Some(0) {
        return Err(CommandError::usage("--mc-samples must be at least 1"));
    }
    let model = build_lhv_for_product_mixture(m, &sc.settings)?;
    let deviations = lhv_deviations(m, &sc.density, &sc.settings)?;
    let check = chsh_check_rvs(&model);
    let quantum = chsh_value(&sc.density, &sc.settings)?;
    let conditioned = rv_conditioned_correlations(&model, DEFAULT_EPS).ok();

    let monte_carlo = mc_samples.map(|n| {
        let seed = seed.unwrap_or(DEFAULT_SEED);
        let counts = sample(&model, seed, n);
        MonteCarloReport {
            seed,
            empirical: counts.empirical(&model),
            counts,
        }
    });

    ok(&LhvReport {
        atoms: model.atom_count(),
        lhv_max_deviation: deviations.into_iter().fold(0.0, f64::max),
        pair_deviations: deviations,
        s: check.s,
        bound_satisfied: check.bound_satisfied,
        quantum_s: quantum.s,
        conditioned_correlations: conditioned,
        s_conditioned: conditioned.map(chsh_combination),
        quantum_s_conditioned: quantum.s_conditioned,
        monte_carlo,
    })
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub step: f64,
    pub refine: bool,
    pub shrink: f64,
    pub iters: u32,
    pub csv: Option<std::path::PathBuf>,
}

#[derive(Debug, Serialize)]
pub struct ScanReport {
    pub config: ScanConfig,
    pub best_settings: [f64; 4],
    pub best_value: f64,
    pub evaluations: usize,
    pub grid_cells: usize,
    pub degenerate_cells: usize,
    pub max_s: f64,
    pub refined: Option<RefineOutcome>,
    pub csv: Option<String>,
}

pub fn cmd_scan(path: &Path, opts: &ScanOptions) -> CommandResult {
    if !(opts.step.is_finite() && opts.step > 0.0) {
        return Err(CommandError::usage(format!(
            "--step must be a positive number of radians, got {}",
            opts.step
        )));
    }
    let sc = Scenario::load(path)?;
    let cfg = ScanConfig {
        step: opts.step,
        refine: opts.refine,
        refine_shrink: opts.shrink,
        refine_iters: opts.iters,
        ..ScanConfig::default()
    };
    let result = grid_scan(&sc.density, &cfg)?;

    if let Some(csv) = &opts.csv {
        let file = std::fs::File::create(csv)
            .map_err(|e| CommandError::usage(format!("cannot write {}: {e}", csv.display())))?;
        write_grid_csv(&result.grid_rows, std::io::BufWriter::new(file))
            .map_err(|e| CommandError::usage(format!("cannot write {}: {e}", csv.display())))?;
    }

    ok(&ScanReport {
        best_settings: result.best_settings,
        best_value: result.best_value,
        evaluations: result.evaluations,
        grid_cells: result.grid_rows.len(),
        degenerate_cells: result.grid_rows.iter().filter(|r| r.degenerate).count(),
        max_s: result.grid_rows.iter().map(|r| r.s).fold(f64::NEG_INFINITY, f64::max),
        refined: result.refined,
        csv: opts.csv.as_ref().map(|p| p.display().to_string()),
        config: cfg,
    })
}

//! Search over measurement angles for the largest post-selected CHSH value.
//!
//! The search space is four angles `(alpha, alpha', beta, beta')` feeding a
//! one-parameter family of projective measurements, by default the spin-1
//! component in the x-z plane. A Cartesian grid is evaluated first; the best
//! cell can then be polished with a coordinate pattern search.

use std::f64::consts::{FRAC_PI_2, PI};
use std::io::{self, Write};

use serde::Serialize;

use crate::correlations::{chsh_value, ChshSettings, DEFAULT_EPS};
use crate::error::{Error, Result};
use crate::linalg::DEFAULT_GROUP_TOL;
use crate::model::{povm_from_observable, spin1_observable, DensityMatrix, Povm};

/// Values closer than this to the maximum count as ties.
pub const TIE_TOL: f64 = 1e-12;

/// Minimum gain for the pattern search to accept a move.
pub const IMPROVEMENT_TOL: f64 = 1e-12;

/// Angle-indexed measurement family used for all four settings.
pub trait MeasurementFamily {
    fn dim(&self) -> usize;
    fn povm(&self, angle: f64) -> Result<Povm>;
}

/// Projective measurement of the spin-1 component at angle `alpha`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Spin1Family;

impl MeasurementFamily for Spin1Family {
    fn dim(&self) -> usize {
        3
    }

    fn povm(&self, angle: f64) -> Result<Povm> {
        povm_from_observable(&spin1_observable(angle), DEFAULT_GROUP_TOL)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanConfig {
    /// `[lo, hi]` per angle, order `(alpha, alpha', beta, beta')`.
    pub angle_ranges: [(f64, f64); 4],
    pub step: f64,
    pub refine: bool,
    pub refine_shrink: f64,
    pub refine_iters: u32,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            angle_ranges: [(-FRAC_PI_2, FRAC_PI_2); 4],
            step: PI / 12.0,
            refine: false,
            refine_shrink: 0.5,
            refine_iters: 30,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "step must be positive, got {}",
                self.step
            )));
        }
        for (k, &(lo, hi)) in self.angle_ranges.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidConfig(format!("angle range {k} is [{lo}, {hi}]")));
            }
        }
        if !(self.refine_shrink > 0.0 && self.refine_shrink < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "refine_shrink must lie in (0, 1), got {}",
                self.refine_shrink
            )));
        }
        Ok(())
    }

    /// Grid coordinates along one axis: `lo, lo + step, ...` up to `hi`.
    pub fn axis_points(&self, axis: usize) -> Vec<f64> {
        let (lo, hi) = self.angle_ranges[axis];
        let n = ((hi - lo) / self.step + 1e-9).floor() as usize + 1;
        (0..n).map(|k| lo + k as f64 * self.step).collect()
    }

    fn in_range(&self, angles: &[f64; 4]) -> bool {
        angles
            .iter()
            .zip(&self.angle_ranges)
            .all(|(&a, &(lo, hi))| a >= lo && a <= hi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridRow {
    pub angles: [f64; 4],
    pub s: f64,
    pub s_conditioned: Option<f64>,
    pub pass_probabilities: [f64; 4],
    /// Some pair had pass probability at or below the degeneracy threshold.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefineOutcome {
    pub angles: [f64; 4],
    pub value: f64,
    /// Accepted values, starting with the start point's; nondecreasing.
    pub trace: Vec<f64>,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub best_settings: [f64; 4],
    pub best_value: f64,
    pub evaluations: usize,
    #[serde(skip)]
    pub grid_rows: Vec<GridRow>,
    pub refined: Option<RefineOutcome>,
}

impl ScanResult {
    /// Best grid cell before refinement.
    pub fn best_grid_row(&self) -> Option<&GridRow> {
        best_row(&self.grid_rows)
    }
}

fn check_dims<F: MeasurementFamily>(rho: &DensityMatrix, family: &F) -> Result<()> {
    let expected = family.dim() * family.dim();
    if rho.dim() != expected {
        return Err(Error::DimensionMismatch {
            context: "state vs. measurement family",
            expected,
            found: rho.dim(),
        });
    }
    Ok(())
}

fn evaluate_cell(rho: &DensityMatrix, povms: [&Povm; 4], angles: [f64; 4]) -> Result<GridRow> {
    let settings = ChshSettings::new(povms[0].clone(), povms[1].clone(), povms[2].clone(), povms[3].clone())?;
    let r = chsh_value(rho, &settings)?;
    Ok(GridRow {
        angles,
        s: r.s,
        s_conditioned: r.s_conditioned,
        pass_probabilities: r.pass_probabilities,
        degenerate: r.s_conditioned.is_none(),
    })
}

fn lexicographic(a: &[f64; 4], b: &[f64; 4]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// Largest conditioned value; ties within [`TIE_TOL`] go to the
/// lexicographically smallest angle tuple. Independent of row order.
fn best_row(rows: &[GridRow]) -> Option<&GridRow> {
    let max = rows
        .iter()
        .filter_map(|r| r.s_conditioned)
        .fold(f64::NEG_INFINITY, f64::max);
    rows.iter()
        .filter(|r| r.s_conditioned.is_some_and(|v| v >= max - TIE_TOL))
        .min_by(|a, b| lexicographic(&a.angles, &b.angles))
}

/// Grid scan over the spin-1 family.
pub fn grid_scan(rho: &DensityMatrix, cfg: &ScanConfig) -> Result<ScanResult> {
    grid_scan_with(rho, cfg, &Spin1Family)
}

/// Evaluates every grid cell, skipping (but recording) degenerate ones, and
/// refines the best cell when `cfg.refine` is set.
pub fn grid_scan_with<F: MeasurementFamily>(rho: &DensityMatrix, cfg: &ScanConfig, family: &F) -> Result<ScanResult> {
    cfg.validate()?;
    check_dims(rho, family)?;

    let axes: Vec<Vec<f64>> = (0..4).map(|k| cfg.axis_points(k)).collect();
    let povms: Vec<Vec<Povm>> = axes
        .iter()
        .map(|pts| pts.iter().map(|&t| family.povm(t)).collect::<Result<_>>())
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(axes.iter().map(Vec::len).product());
    for (i0, &t0) in axes[0].iter().enumerate() {
        for (i1, &t1) in axes[1].iter().enumerate() {
            for (i2, &t2) in axes[2].iter().enumerate() {
                for (i3, &t3) in axes[3].iter().enumerate() {
                    rows.push(evaluate_cell(
                        rho,
                        [&povms[0][i0], &povms[1][i1], &povms[2][i2], &povms[3][i3]],
                        [t0, t1, t2, t3],
                    )?);
                }
            }
        }
    }

    let best = best_row(&rows).ok_or(Error::DegeneratePostSelection {
        pair: None,
        probability: 0.0,
        eps: DEFAULT_EPS,
    })?;
    let mut result = ScanResult {
        best_settings: best.angles,
        best_value: best.s_conditioned.expect("best row is not degenerate"),
        evaluations: rows.len(),
        grid_rows: Vec::new(),
        refined: None,
    };
    result.grid_rows = rows;

    if cfg.refine {
        let outcome = refine_with(rho, result.best_settings, cfg, family)?;
        result.evaluations += outcome.evaluations;
        if outcome.value > result.best_value {
            result.best_settings = outcome.angles;
            result.best_value = outcome.value;
        }
        result.refined = Some(outcome);
    }
    Ok(result)
}

/// Pattern search from `start` over the spin-1 family.
pub fn refine(rho: &DensityMatrix, start: [f64; 4], cfg: &ScanConfig) -> Result<RefineOutcome> {
    refine_with(rho, start, cfg, &Spin1Family)
}

fn conditioned_at<F: MeasurementFamily>(rho: &DensityMatrix, angles: [f64; 4], family: &F) -> Result<Option<f64>> {
    let [a, ap, b, bp] = angles.map(|t| family.povm(t));
    let (a, ap, b, bp) = (a?, ap?, b?, bp?);
    Ok(evaluate_cell(rho, [&a, &ap, &b, &bp], angles)?.s_conditioned)
}

/// Coordinate pattern search: probe `+step` then `-step` on each angle in
/// turn and take the first strict improvement; when a full sweep finds none,
/// multiply the step by `refine_shrink`. Stops after `refine_iters` shrinks.
/// Probes outside the configured ranges or with degenerate post-selection
/// count as non-improvements.
pub fn refine_with<F: MeasurementFamily>(
    rho: &DensityMatrix,
    start: [f64; 4],
    cfg: &ScanConfig,
    family: &F,
) -> Result<RefineOutcome> {
    cfg.validate()?;
    check_dims(rho, family)?;

    let mut evaluations = 1;
    let mut value = conditioned_at(rho, start, family)?.ok_or(Error::DegeneratePostSelection {
        pair: None,
        probability: 0.0,
        eps: DEFAULT_EPS,
    })?;
    let mut current = start;
    let mut trace = vec![value];
    let mut step = cfg.step;
    let mut shrinks = 0;

    while shrinks < cfg.refine_iters {
        let mut improved = false;
        for axis in 0..4 {
            for dir in [1.0, -1.0] {
                let mut probe = current;
                probe[axis] += dir * step;
                if !cfg.in_range(&probe) {
                    continue;
                }
                evaluations += 1;
                if let Some(v) = conditioned_at(rho, probe, family)? {
                    if v > value + IMPROVEMENT_TOL {
                        current = probe;
                        value = v;
                        trace.push(v);
                        improved = true;
                        break;
                    }
                }
            }
        }
        if !improved {
            step *= cfg.refine_shrink;
            shrinks += 1;
        }
    }

    Ok(RefineOutcome {
        angles: current,
        value,
        trace,
        evaluations,
    })
}

/// Writes grid rows as CSV with a header line.
pub fn write_grid_csv<W: Write>(rows: &[GridRow], mut out: W) -> io::Result<()> {
    writeln!(
        out,
        "alpha,alpha_prime,beta,beta_prime,s,s_conditioned,pass_ab,pass_ab_prime,pass_a_prime_b,pass_a_prime_b_prime,degenerate"
    )?;
    for r in rows {
        let [a, ap, b, bp] = r.angles;
        let [p0, p1, p2, p3] = r.pass_probabilities;
        let sc = r.s_conditioned.map(|v| v.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{a},{ap},{b},{bp},{},{sc},{p0},{p1},{p2},{p3},{}",
            r.s, r.degenerate
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{density_from_mixture, spin1_counterexample_state, MixtureComponent, ProductMixture, PureState};
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    const TARGET: f64 = 16.0 * SQRT_2 / 9.0;

    fn counterexample() -> DensityMatrix {
        density_from_mixture(&spin1_counterexample_state())
    }

    fn quarter_grid() -> ScanConfig {
        ScanConfig {
            step: FRAC_PI_4,
            ..ScanConfig::default()
        }
    }

    #[test]
    fn quarter_pi_grid_contains_counterexample() {
        let r = grid_scan(&counterexample(), &quarter_grid()).unwrap();
        assert_eq!(r.evaluations, 5usize.pow(4));
        assert!(r.best_value >= TARGET - 1e-9);
        let target = [0.0, FRAC_PI_2, FRAC_PI_4, -FRAC_PI_4];
        let row = r
            .grid_rows
            .iter()
            .find(|row| row.angles.iter().zip(&target).all(|(a, b)| (a - b).abs() < 1e-12))
            .expect("grid point present");
        assert!((row.s_conditioned.unwrap() - TARGET).abs() < 1e-9);
    }

    #[test]
    fn rows_respect_product_bound() {
        let r = grid_scan(&counterexample(), &quarter_grid()).unwrap();
        assert!(r.grid_rows.iter().all(|row| row.s <= 2.0 + 1e-9));
        assert!(r.grid_rows.iter().any(|row| row.s_conditioned.is_some_and(|v| v > 2.0)));
    }

    #[test]
    fn pure_product_never_exceeds_two() {
        let v = PureState::from_real(&[0.6, 0.0, 0.8]).unwrap();
        let w = PureState::from_real(&[0.0, 0.6, 0.8]).unwrap();
        let m = ProductMixture::new(vec![MixtureComponent {
            weight: 1.0,
            left: v,
            right: w,
        }])
        .unwrap();
        let r = grid_scan(&density_from_mixture(&m), &quarter_grid()).unwrap();
        assert!(r.best_value <= 2.0 + 1e-9);
    }

    #[test]
    fn oversized_step_gives_single_cell() {
        let cfg = ScanConfig {
            step: 2.0 * PI,
            ..ScanConfig::default()
        };
        let r = grid_scan(&counterexample(), &cfg).unwrap();
        assert_eq!(r.evaluations, 1);
        assert_eq!(r.grid_rows.len(), 1);
        assert_eq!(r.best_settings, [-FRAC_PI_2; 4]);
    }

    #[test]
    fn refine_never_decreases() {
        let cfg = ScanConfig {
            step: 0.1,
            refine_iters: 12,
            ..ScanConfig::default()
        };
        let out = refine(&counterexample(), [0.0, FRAC_PI_2, FRAC_PI_4, -FRAC_PI_4], &cfg).unwrap();
        assert!(out.value >= TARGET - 1e-9);
        assert!(out.trace.windows(2).all(|w| w[1] >= w[0]));
        assert_eq!(*out.trace.last().unwrap(), out.value);
    }

    #[test]
    fn refine_stays_put_without_improvement() {
        // every probe leaves the single-point range
        let start = [0.1, 0.2, 0.3, 0.4];
        let cfg = ScanConfig {
            angle_ranges: [
                (0.1, 0.1 + 1e-6),
                (0.2, 0.2 + 1e-6),
                (0.3, 0.3 + 1e-6),
                (0.4, 0.4 + 1e-6),
            ],
            step: 1.0,
            refine_iters: 5,
            ..ScanConfig::default()
        };
        let out = refine(&counterexample(), start, &cfg).unwrap();
        assert_eq!(out.angles, start);
        assert_eq!(out.trace.len(), 1);
    }

    #[test]
    fn refined_scan_is_at_least_grid() {
        let rho = counterexample();
        let grid = grid_scan(&rho, &quarter_grid()).unwrap();
        let cfg = ScanConfig {
            refine: true,
            refine_iters: 10,
            ..quarter_grid()
        };
        let refined = grid_scan(&rho, &cfg).unwrap();
        assert!(refined.best_value >= grid.best_value);
        assert!(refined.evaluations > grid.evaluations);
    }

    #[test]
    fn deterministic() {
        let rho = counterexample();
        let cfg = ScanConfig {
            refine: true,
            refine_iters: 5,
            ..quarter_grid()
        };
        assert_eq!(grid_scan(&rho, &cfg).unwrap(), grid_scan(&rho, &cfg).unwrap());
    }

    #[test]
    fn tie_break_is_order_independent() {
        let row = |angles: [f64; 4], v: f64| GridRow {
            angles,
            s: 0.0,
            s_conditioned: Some(v),
            pass_probabilities: [1.0; 4],
            degenerate: false,
        };
        let mut rows = vec![
            row([0.5, 0.0, 0.0, 0.0], 2.0),
            row([0.1, 0.2, 0.0, 0.0], 2.0 - 1e-13),
            row([0.1, 0.1, 0.0, 0.0], 1.0),
        ];
        assert_eq!(best_row(&rows).unwrap().angles, [0.1, 0.2, 0.0, 0.0]);
        rows.reverse();
        assert_eq!(best_row(&rows).unwrap().angles, [0.1, 0.2, 0.0, 0.0]);
    }

    #[test]
    fn config_validation() {
        let bad_step = ScanConfig {
            step: 0.0,
            ..ScanConfig::default()
        };
        assert!(matches!(
            grid_scan(&counterexample(), &bad_step),
            Err(Error::InvalidConfig(_))
        ));
        let bad_range = ScanConfig {
            angle_ranges: [(1.0, 0.0); 4],
            ..ScanConfig::default()
        };
        assert!(bad_range.validate().is_err());
        let bad_shrink = ScanConfig {
            refine_shrink: 1.0,
            ..ScanConfig::default()
        };
        assert!(bad_shrink.validate().is_err());
    }

    #[test]
    fn csv_layout() {
        let r = grid_scan(
            &counterexample(),
            &ScanConfig {
                step: 10.0,
                ..ScanConfig::default()
            },
        )
        .unwrap();
        let mut buf = Vec::new();
        write_grid_csv(&r.grid_rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1].split(',').count(), 11);
    }
}

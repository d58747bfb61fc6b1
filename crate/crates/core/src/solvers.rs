//! Root finding on the solution locus and continuation of `A–σ` branches.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::SolveError;
use crate::quantities::{effective_energy, total_volume};
use crate::roots::brent;
use crate::steady::{
    check_constraints, derive_parameters, g_gradient, g_value, sigma_max, ConstraintMode,
    ConstraintReport, DerivedParams, FreeParams, PhysicalAngles,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub residual_tol: f64,
    pub max_iterations: usize,
    pub bracket_scan_points: usize,
    pub continuation_step: f64,
    pub step_floor: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            residual_tol: 1e-11,
            max_iterations: 200,
            bracket_scan_points: 64,
            continuation_step: 0.01,
            step_floor: 1e-7,
        }
    }
}

impl SolveOptions {
    pub fn validate(&self) -> Result<(), SolveError> {
        if !(self.residual_tol > 0.0) {
            return Err(SolveError::Options("residual_tol must be positive".into()));
        }
        if self.bracket_scan_points < 8 {
            return Err(SolveError::Options(
                "bracket_scan_points must be at least 8".into(),
            ));
        }
        if !(self.step_floor > 0.0 && self.step_floor <= self.continuation_step) {
            return Err(SolveError::Options(
                "need 0 < step_floor <= continuation_step".into(),
            ));
        }
        if self.max_iterations == 0 {
            return Err(SolveError::Options(
                "max_iterations must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// The contact angle `θc ∈ (0, π]` with `z₁(θc) = 0`.
///
/// `z₁` is strictly decreasing on `(0, π)` and `z₁(0) > 0`, so a root exists
/// iff `z₁(π) ≤ 0`.
pub fn theta_c_of(fp: FreeParams, beta: f64, opts: &SolveOptions) -> Result<f64, SolveError> {
    let dp = derive_parameters(fp, beta)?;
    let arc = dp.inner_arc()?;
    let z_pi = arc.z(PI)?;
    if z_pi > 0.0 {
        return Err(SolveError::Infeasible { z1_pi: z_pi });
    }
    if z_pi == 0.0 {
        return Ok(PI);
    }
    let z0 = arc.z(0.0)?;
    let root = brent(
        |t| Ok(arc.z(t)?),
        0.0,
        PI,
        z0,
        z_pi,
        0.1 * opts.residual_tol,
        opts.max_iterations,
    )?;
    Ok(root.x)
}

/// A point on the locus for the requested `θc`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    #[serde(rename = "A")]
    pub a: f64,
    pub sigma: f64,
    pub theta_c: f64,
    /// `G` for `θc = π`, otherwise `θc(A, σ) − θc_target`.
    pub residual: f64,
    pub derived: DerivedParams,
    pub report: ConstraintReport,
}

/// Residual whose root in `σ` is the steady state for `pa.theta_c`.
///
/// For `θc < π` this is `θc(A, σ) − target`, continued by `π − target` where
/// `z₁(π) > 0`. `None` where the parameters are not evaluable.
fn residual(a: f64, sigma: f64, pa: &PhysicalAngles, opts: &SolveOptions) -> Option<f64> {
    let fp = FreeParams { a, sigma };
    if pa.theta_c == PI {
        return g_value(fp, pa.beta).ok();
    }
    match theta_c_of(fp, pa.beta, opts) {
        Ok(t) => Some(t - pa.theta_c),
        Err(SolveError::Infeasible { .. }) => Some(PI - pa.theta_c),
        Err(_) => None,
    }
}

/// Scan grid on `(0, σmax)`, geometrically refined towards both ends.
pub fn scan_grid(a: f64, points: usize) -> Vec<f64> {
    let smax = sigma_max(a);
    let half = points / 2;
    let mut out = Vec::with_capacity(2 * half);
    let lo_exp = -9.0_f64;
    for j in 0..half {
        let x = 0.5 * 10f64.powf(lo_exp * (1.0 - j as f64 / half as f64));
        out.push(smax * x);
    }
    for j in (0..half).rev() {
        let x = 0.5 * 10f64.powf(lo_exp * (1.0 - j as f64 / half as f64));
        out.push(smax * (1.0 - x));
    }
    out.dedup();
    out
}

/// All sign changes of the residual between adjacent evaluable grid points.
pub fn find_brackets(
    a: f64,
    pa: &PhysicalAngles,
    opts: &SolveOptions,
) -> Vec<(f64, f64, f64, f64)> {
    let grid = scan_grid(a, opts.bracket_scan_points);
    let vals: Vec<Option<f64>> = grid.iter().map(|&s| residual(a, s, pa, opts)).collect();
    let mut out = Vec::new();
    for i in 1..grid.len() {
        if let (Some(f0), Some(f1)) = (vals[i - 1], vals[i]) {
            if f0 == 0.0 || f0.signum() != f1.signum() {
                out.push((grid[i - 1], grid[i], f0, f1));
            }
        }
    }
    out
}

fn refine(
    a: f64,
    bracket: (f64, f64, f64, f64),
    pa: &PhysicalAngles,
    opts: &SolveOptions,
) -> Result<Solution, SolveError> {
    let (lo, hi, flo, fhi) = bracket;
    let f = |s: f64| residual(a, s, pa, opts).ok_or(SolveError::NotFound { a });
    let mut xtol = opts.residual_tol;
    let mut root = brent(&f, lo, hi, flo, fhi, xtol, opts.max_iterations)?;
    while root.fx.abs() > opts.residual_tol && xtol > 1e-6 * opts.residual_tol {
        xtol /= 16.0;
        root = brent(&f, lo, hi, flo, fhi, xtol, opts.max_iterations)?;
    }
    let mut sigma = root.x;
    let mut res = root.fx;
    if pa.theta_c == PI {
        // One Newton polish with the analytic gradient, kept only if it helps.
        if let Ok(gr) = g_gradient(FreeParams { a, sigma }, pa.beta) {
            let s1 = sigma - res / gr.g_sigma;
            if s1 > lo.min(hi) && s1 < lo.max(hi) {
                if let Some(r1) = residual(a, s1, pa, opts) {
                    if r1.abs() < res.abs() {
                        sigma = s1;
                        res = r1;
                    }
                }
            }
        }
    }
    finish(a, sigma, res, pa, opts)
}

fn finish(
    a: f64,
    sigma: f64,
    res: f64,
    pa: &PhysicalAngles,
    opts: &SolveOptions,
) -> Result<Solution, SolveError> {
    let fp = FreeParams::new(a, sigma)?;
    let theta_c = if pa.theta_c == PI {
        PI
    } else {
        theta_c_of(fp, pa.beta, opts)?
    };
    let derived = derive_parameters(fp, pa.beta)?.with_theta_c(theta_c)?;
    let report = check_constraints(fp, pa, ConstraintMode::NecessaryAndSufficient);
    if !report.all_satisfied() {
        return Err(SolveError::ConstraintViolation {
            a,
            sigma,
            failed: report.failed(),
        });
    }
    Ok(Solution {
        a,
        sigma,
        theta_c,
        residual: res,
        derived,
        report,
    })
}

fn check_inputs(a: f64, pa: &PhysicalAngles, opts: &SolveOptions) -> Result<(), SolveError> {
    opts.validate()?;
    if !(a > 0.0 && a < 1.0) {
        return Err(SolveError::Options(format!("A = {a} outside (0, 1)")));
    }
    if !pa.admits_steady_state() {
        return Err(SolveError::NotFound { a });
    }
    Ok(())
}

/// Solves for `σ` at fixed `A` from a cold start: the smallest-`σ` sign
/// change on the scan grid is refined.
pub fn solve_sigma(
    a: f64,
    pa: &PhysicalAngles,
    opts: &SolveOptions,
) -> Result<Solution, SolveError> {
    check_inputs(a, pa, opts)?;
    let brackets = find_brackets(a, pa, opts);
    let first = *brackets.first().ok_or(SolveError::NotFound { a })?;
    refine(a, first, pa, opts)
}

/// Every root found on the scan grid, one per sign change.
pub fn solve_sigma_all(
    a: f64,
    pa: &PhysicalAngles,
    opts: &SolveOptions,
) -> Result<Vec<Solution>, SolveError> {
    check_inputs(a, pa, opts)?;
    find_brackets(a, pa, opts)
        .into_iter()
        .map(|b| refine(a, b, pa, opts))
        .collect()
}

/// Solves near a predicted `σ` by expanding a bracket around it; falls back
/// to the cold scan.
pub fn solve_sigma_near(
    a: f64,
    guess: f64,
    pa: &PhysicalAngles,
    opts: &SolveOptions,
) -> Result<Solution, SolveError> {
    check_inputs(a, pa, opts)?;
    let smax = sigma_max(a);
    if guess > 0.0 && guess < smax {
        if let Some(f0) = residual(a, guess, pa, opts) {
            let (floor, ceil) = (1e-9 * guess, smax * (1.0 - 1e-12));
            let mut width = 1e-3 * guess;
            loop {
                let lo = (guess - width).max(floor);
                let hi = (guess + width).min(ceil);
                if let Some(fl) = residual(a, lo, pa, opts) {
                    if fl.signum() != f0.signum() {
                        return refine(a, (lo, guess, fl, f0), pa, opts);
                    }
                }
                if let Some(fh) = residual(a, hi, pa, opts) {
                    if fh.signum() != f0.signum() {
                        return refine(a, (guess, hi, f0, fh), pa, opts);
                    }
                }
                if lo == floor && hi == ceil {
                    break;
                }
                width *= 2.0;
            }
        }
    }
    solve_sigma(a, pa, opts)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchRecord {
    #[serde(rename = "A")]
    pub a: f64,
    pub sigma: f64,
    pub theta_c: f64,
    #[serde(rename = "E_eff")]
    pub e_eff: f64,
    #[serde(rename = "V")]
    pub v: f64,
    pub derived: DerivedParams,
    pub report: ConstraintReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchGap {
    #[serde(rename = "A")]
    pub a: f64,
    pub reason: String,
}

/// A traced branch: records strictly increasing in `A`, plus the grid points
/// where no admissible root was found.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ASigmaCurve {
    pub beta: f64,
    pub theta_c_target: f64,
    pub residual_tol: f64,
    pub records: Vec<BranchRecord>,
    pub gaps: Vec<BranchGap>,
}

impl ASigmaCurve {
    pub fn is_complete(&self) -> bool {
        self.gaps.is_empty()
    }

    /// Linear interpolation of `σ` at `a` between neighbouring records.
    pub fn sigma_at(&self, a: f64) -> Option<f64> {
        let i = self.records.iter().position(|r| r.a >= a)?;
        let r1 = &self.records[i];
        if r1.a == a {
            return Some(r1.sigma);
        }
        let r0 = &self.records[i.checked_sub(1)?];
        Some(r0.sigma + (r1.sigma - r0.sigma) * (a - r0.a) / (r1.a - r0.a))
    }
}

fn record(sol: Solution, pa: &PhysicalAngles) -> Result<BranchRecord, SolveError> {
    let pa = pa.with_theta_c(sol.theta_c)?;
    Ok(BranchRecord {
        a: sol.a,
        sigma: sol.sigma,
        theta_c: sol.theta_c,
        e_eff: effective_energy(&sol.derived, &pa)?,
        v: total_volume(&sol.derived, &pa)?,
        derived: sol.derived,
        report: sol.report,
    })
}

/// Uniform grid from `a_min` to `a_max` with spacing at most `step`.
pub fn a_grid(a_min: f64, a_max: f64, step: f64) -> Vec<f64> {
    let n = ((a_max - a_min) / step).ceil().max(1.0) as usize;
    (0..=n)
        .map(|i| {
            if i == n {
                a_max
            } else {
                a_min + (a_max - a_min) * i as f64 / n as f64
            }
        })
        .collect()
}

/// Traces the branch over `[a_min, a_max]` on a grid of spacing
/// `opts.continuation_step`.
pub fn trace_branch(
    pa: &PhysicalAngles,
    a_range: (f64, f64),
    opts: &SolveOptions,
) -> Result<ASigmaCurve, SolveError> {
    opts.validate()?;
    let (a_min, a_max) = a_range;
    if !(a_min > 0.0 && a_max < 1.0 && a_min < a_max) {
        return Err(SolveError::Options(format!(
            "bad A range [{a_min}, {a_max}]"
        )));
    }
    trace_branch_on(pa, &a_grid(a_min, a_max, opts.continuation_step), opts)
}

/// Natural continuation over an increasing grid of `A` values.
///
/// Each grid point is approached from the last accepted record with a linear
/// predictor; on failure the step is halved down to `step_floor` and the
/// intermediate points are used only as stepping stones. A grid point that
/// still fails, and also fails a cold solve, becomes a gap.
pub fn trace_branch_on(
    pa: &PhysicalAngles,
    grid: &[f64],
    opts: &SolveOptions,
) -> Result<ASigmaCurve, SolveError> {
    opts.validate()?;
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(SolveError::Options(
            "A grid must be strictly increasing".into(),
        ));
    }
    let mut curve = ASigmaCurve {
        beta: pa.beta,
        theta_c_target: pa.theta_c,
        residual_tol: opts.residual_tol,
        records: Vec::new(),
        gaps: Vec::new(),
    };
    // Last two accepted (A, σ), including stepping stones.
    let mut history: Vec<(f64, f64)> = Vec::new();
    for &target in grid {
        let outcome = match history.last().copied() {
            None => solve_sigma(target, pa, opts),
            Some(last) => continue_to(target, last, &mut history, pa, opts),
        };
        let outcome = outcome.or_else(|_| solve_sigma(target, pa, opts));
        match outcome.and_then(|sol| record(sol, pa)) {
            Ok(rec) => {
                push_history(&mut history, (rec.a, rec.sigma));
                curve.records.push(rec);
            }
            Err(e) => {
                curve.gaps.push(BranchGap {
                    a: target,
                    reason: e.to_string(),
                });
                history.clear();
            }
        }
    }
    Ok(curve)
}

fn push_history(h: &mut Vec<(f64, f64)>, p: (f64, f64)) {
    h.push(p);
    if h.len() > 2 {
        h.remove(0);
    }
}

fn predict(h: &[(f64, f64)], a: f64) -> f64 {
    match h {
        [.., (a0, s0), (a1, s1)] if a1 != a0 => s1 + (s1 - s0) * (a - a1) / (a1 - a0),
        [.., (_, s)] => *s,
        [] => f64::NAN,
    }
}

fn continue_to(
    target: f64,
    last: (f64, f64),
    history: &mut Vec<(f64, f64)>,
    pa: &PhysicalAngles,
    opts: &SolveOptions,
) -> Result<Solution, SolveError> {
    let mut a_prev = last.0;
    let mut step = target - a_prev;
    while a_prev < target {
        let a = (a_prev + step).min(target);
        match solve_sigma_near(a, predict(history, a), pa, opts) {
            Ok(sol) if a == target => return Ok(sol),
            Ok(sol) => {
                push_history(history, (sol.a, sol.sigma));
                a_prev = a;
            }
            Err(e) => {
                step *= 0.5;
                if step < opts.step_floor {
                    return Err(match e {
                        SolveError::NotFound { .. } => SolveError::StepFloor { a },
                        other => other,
                    });
                }
            }
        }
    }
    Err(SolveError::StepFloor { a: target })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn options_validation() {
        assert!(SolveOptions::default().validate().is_ok());
        let bad = SolveOptions {
            bracket_scan_points: 4,
            ..SolveOptions::default()
        };
        assert!(bad.validate().is_err());
        let bad = SolveOptions {
            step_floor: 1.0,
            ..SolveOptions::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn scan_grid_is_increasing_and_inside() {
        let g = scan_grid(0.99, 64);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(g[0] > 0.0 && *g.last().unwrap() < sigma_max(0.99));
    }

    #[test]
    fn grid_covers_range() {
        let g = a_grid(0.5, 0.6, 0.03);
        assert_eq!(g.len(), 5);
        assert_eq!(g[0], 0.5);
        assert_eq!(*g.last().unwrap(), 0.6);
    }
}

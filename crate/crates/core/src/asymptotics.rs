//! The `θc = π` branch near `(A, σ) = (1, 0)`: the corner neighbourhood
//! `Ω_ε = {1 − ε < A < 1, 0 < σ < √(1−A²)}` and the slope law
//! `σ ≈ (1 + sin β)/(−cos β) · (1 − A)`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::SolveError;
use crate::solvers::{solve_sigma, solve_sigma_near, SolveOptions};
use crate::steady::{check_constraints, ConstraintMode, FreeParams, PhysicalAngles};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OmegaEps {
    pub eps: f64,
    pub beta: f64,
}

impl OmegaEps {
    /// Whether `eps` satisfies every condition used to build `Ω_ε` for `beta`.
    pub fn admissible(eps: f64, beta: f64) -> bool {
        if !(eps > 0.0 && eps < 1.0 - 0.5_f64.sqrt()) {
            return false;
        }
        let bound = -(1.0 - 8.0 * eps) / (2.0 * eps.sqrt());
        let t = beta.tan();
        if !(bound < t && bound < t - 1.0) {
            return false;
        }
        if beta > 2.0 * PI / 3.0 && !(eps < 1.0 + 0.5 / beta.cos()) {
            return false;
        }
        true
    }

    pub fn contains(&self, fp: FreeParams) -> bool {
        fp.a > 1.0 - self.eps && fp.in_omega0()
    }
}

/// Supremum of the admissible `ε` for `β ∈ (π/2, π)`, by bisection.
pub fn max_eps(beta: f64) -> f64 {
    if !(beta > FRAC_PI_2 && beta < PI) {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0 - 0.5_f64.sqrt());
    // The admissible set is an interval (0, ε*); shrink lo until admissible.
    let mut probe = 1e-3;
    while !OmegaEps::admissible(probe, beta) {
        probe *= 0.5;
        if probe < 1e-300 {
            return 0.0;
        }
    }
    lo = lo.max(probe);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if OmegaEps::admissible(mid, beta) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
    }
    lo
}

/// `(1 + sin β)/(−cos β)`.
pub fn asymptotic_slope(beta: f64) -> f64 {
    (1.0 + beta.sin()) / (-beta.cos())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopePoint {
    #[serde(rename = "A")]
    pub a: f64,
    pub sigma: f64,
    pub c8prime: bool,
    /// `σ < 2(1 − A)/(−cos β)`.
    pub below_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeReport {
    pub beta: f64,
    pub formula_slope: f64,
    pub fitted_slope: f64,
    pub relative_gap: f64,
    pub grid: Vec<f64>,
    pub points: Vec<SlopePoint>,
}

impl SlopeReport {
    pub fn all_points_ok(&self) -> bool {
        self.points.iter().all(|p| p.c8prime && p.below_bound)
    }
}

/// Least-squares slope through the origin of `σ` against `1 − A`.
pub fn fit_through_origin(points: &[(f64, f64)]) -> f64 {
    let (num, den) = points
        .iter()
        .fold((0.0, 0.0), |(n, d), &(x, y)| (n + x * y, d + x * x));
    num / den
}

/// Solves the `θc = π` branch on `a_grid` and compares its slope at the
/// corner with [`asymptotic_slope`].
pub fn verify_slope(
    beta: f64,
    a_grid: &[f64],
    opts: &SolveOptions,
) -> Result<SlopeReport, SolveError> {
    let pa = PhysicalAngles::new(beta, PI)?;
    let formula = asymptotic_slope(beta);
    let mut points = Vec::with_capacity(a_grid.len());
    for &a in a_grid {
        let guess = formula * (1.0 - a);
        let sol = solve_sigma_near(a, guess, &pa, opts).or_else(|_| solve_sigma(a, &pa, opts))?;
        let rep = check_constraints(
            FreeParams {
                a,
                sigma: sol.sigma,
            },
            &pa,
            ConstraintMode::Sufficient,
        );
        points.push(SlopePoint {
            a,
            sigma: sol.sigma,
            c8prime: rep.get("C8prime").is_some_and(|c| c.satisfied),
            below_bound: sol.sigma < 2.0 * (1.0 - a) / (-beta.cos()),
        });
    }
    let xy: Vec<(f64, f64)> = points.iter().map(|p| (1.0 - p.a, p.sigma)).collect();
    let fitted = fit_through_origin(&xy);
    Ok(SlopeReport {
        beta,
        formula_slope: formula,
        fitted_slope: fitted,
        relative_gap: (fitted - formula).abs() / formula,
        grid: a_grid.to_vec(),
        points,
    })
}

/// `n` points evenly spaced in `A` over `[a_lo, a_hi]`.
pub fn linear_grid(a_lo: f64, a_hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a_lo + (a_hi - a_lo) * i as f64 / (n - 1).max(1) as f64)
        .collect()
}

//! The four subcommands. Each returns the text to write and an exit code.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use nodoid_core::asymptotics::{linear_grid, verify_slope, SlopeReport};
use nodoid_core::io::{
    fmt_num, profile_csv, profile_rows, profile_svg, trace_csv, trace_rows, trace_svg, ProfileRow,
};
use nodoid_core::quantities::{effective_energy, total_volume};
use nodoid_core::solvers::{a_grid, solve_sigma, theta_c_of, trace_branch_on, SolveOptions};
use nodoid_core::steady::{
    check_constraints, curvature_residual_about, derive_parameters, junction_frame_curves,
    ConstraintMode, ConstraintReport, DerivedParams, FreeParams, PhysicalAngles, Point, ProfileSet,
};

use crate::config::{Format, Kind, RunConfig};
use crate::{CliError, Outcome};

/// Largest accepted discrete-curvature residual of an emitted profile.
pub const CURVATURE_GATE: f64 = 1e-6;

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.kind {
        Kind::Check => cmd_check(cfg),
        Kind::Profile => cmd_profile(cfg),
        Kind::Trace => cmd_trace(cfg),
        Kind::Asym => cmd_asym(cfg),
    }
}

fn angles(cfg: &RunConfig, theta_c: f64) -> Result<PhysicalAngles, CliError> {
    let pa = match cfg.m {
        Some(m) => PhysicalAngles::from_m(m, theta_c),
        None => PhysicalAngles::new(cfg.beta, theta_c),
    };
    pa.map_err(|e| CliError::Usage(e.to_string()))
}

fn solve_options(cfg: &RunConfig) -> SolveOptions {
    SolveOptions {
        residual_tol: cfg.tol,
        ..SolveOptions::default()
    }
}

fn free_params(a: f64, sigma: f64) -> Result<FreeParams, CliError> {
    FreeParams::new(a, sigma).map_err(|e| CliError::Usage(e.to_string()))
}

fn infeasibility_notes(pa: &PhysicalAngles) -> Vec<String> {
    let mut notes = Vec::new();
    if pa.beta <= FRAC_PI_2 {
        notes.push("note: no steady state exists for beta = pi/2".to_string());
    }
    if pa.theta_c <= 0.0 {
        notes.push("note: no steady state exists for theta_c = 0".to_string());
    }
    notes
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Numerical(e.to_string()))
}

fn report_csv(rep: &ConstraintReport) -> String {
    let mut out = String::from("name,required,satisfied,margin\n");
    for c in &rep.conditions {
        out.push_str(&format!(
            "{},{},{},{}\n",
            c.name,
            c.required,
            c.satisfied,
            fmt_num(c.margin)
        ));
    }
    out
}

/// The contact angle implied by `(A, σ)`, or `π` where none exists.
fn implied_theta_c(fp: FreeParams, beta: f64, opts: &SolveOptions) -> f64 {
    theta_c_of(fp, beta, opts).unwrap_or(PI)
}

pub fn cmd_check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let fp = free_params(cfg.a.unwrap_or(f64::NAN), cfg.sigma.unwrap_or(f64::NAN))?;
    let theta_c = match cfg.theta_c {
        Some(t) => t,
        None => implied_theta_c(fp, cfg.beta, &solve_options(cfg)),
    };
    let pa = angles(cfg, theta_c)?;
    let rep = check_constraints(fp, &pa, ConstraintMode::NecessaryAndSufficient);
    let notes = infeasibility_notes(&pa);
    let ok = rep.all_satisfied() && pa.admits_steady_state();
    let body = match cfg.format {
        Format::Csv => report_csv(&rep),
        _ => json(&rep)?,
    };
    Ok(Outcome {
        body,
        notes,
        code: if ok { 0 } else { 2 },
    })
}

#[derive(Debug, Serialize)]
struct ProfileDoc<'a> {
    #[serde(rename = "A")]
    a: f64,
    sigma: f64,
    beta: f64,
    theta_c: f64,
    derived: &'a DerivedParams,
    #[serde(rename = "E_eff")]
    e_eff: f64,
    #[serde(rename = "V")]
    v: f64,
    junction: Point,
    contact: Point,
    neck: Point,
    wall: Point,
    curvature_residuals: [f64; 3],
    profile: &'a [ProfileRow],
}

/// Solves or audits the state, samples it and gates on the discrete
/// curvature before writing anything.
pub fn cmd_profile(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let a = cfg.a.unwrap_or(f64::NAN);
    let opts = solve_options(cfg);
    let target = cfg.theta_c.unwrap_or(PI);
    let pa = angles(cfg, target)?;
    if !pa.admits_steady_state() {
        return Err(CliError::Infeasible(infeasibility_notes(&pa).join("; ")));
    }
    let (fp, theta_c) = match cfg.sigma {
        Some(sigma) => {
            let fp = free_params(a, sigma)?;
            let theta_c = cfg
                .theta_c
                .unwrap_or_else(|| implied_theta_c(fp, cfg.beta, &opts));
            let pa = pa
                .with_theta_c(theta_c)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let rep = check_constraints(fp, &pa, ConstraintMode::NecessaryAndSufficient);
            if !rep.all_satisfied() {
                return Err(CliError::Infeasible(format!(
                    "constraints fail: {:?}",
                    rep.failed()
                )));
            }
            (fp, theta_c)
        }
        None => {
            let sol = solve_sigma(a, &pa, &opts)?;
            (
                FreeParams {
                    a,
                    sigma: sol.sigma,
                },
                sol.theta_c,
            )
        }
    };
    let pa = pa.with_theta_c(theta_c)?;
    let dp = derive_parameters(fp, pa.beta)?.with_theta_c(theta_c)?;
    let ps = ProfileSet::sample(&dp, cfg.samples)?;
    let [g1, g2, g3] = junction_frame_curves(&dp, cfg.samples)?;
    let junction = Point::new(dp.r_bar, dp.z_bar);
    let residuals = [
        curvature_residual_about(&g1.points, junction, dp.lambda)?,
        curvature_residual_about(&g2.points, junction, dp.lambda)?,
        curvature_residual_about(&g3.points, junction, 0.0)?,
    ];
    if residuals.iter().any(|r| !(*r <= CURVATURE_GATE)) {
        return Err(CliError::Numerical(format!(
            "discrete mean curvature residuals {residuals:?} exceed {CURVATURE_GATE}"
        )));
    }
    let rows = profile_rows(&ps);
    let body = match cfg.format {
        Format::Csv => profile_csv(&rows),
        Format::Svg => profile_svg(&rows),
        Format::Json => json(&ProfileDoc {
            a: fp.a,
            sigma: fp.sigma,
            beta: pa.beta,
            theta_c,
            derived: &dp,
            e_eff: effective_energy(&dp, &pa)?,
            v: total_volume(&dp, &pa)?,
            junction: ps.junction,
            contact: ps.contact,
            neck: ps.neck,
            wall: ps.wall,
            curvature_residuals: residuals,
            profile: &rows,
        })?,
    };
    Ok(Outcome {
        body,
        notes: Vec::new(),
        code: 0,
    })
}

/// Gaps are written as rows with only `A` and make the exit code 2.
pub fn cmd_trace(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (a_min, a_max) = (cfg.a_min.unwrap_or(f64::NAN), cfg.a_max.unwrap_or(f64::NAN));
    if !(a_min > 0.0 && a_max < 1.0 && a_min < a_max) {
        return Err(CliError::Usage(format!(
            "need 0 < A-min < A-max < 1, got [{a_min}, {a_max}]"
        )));
    }
    let pa = angles(cfg, cfg.theta_c.unwrap_or(PI))?;
    if !pa.admits_steady_state() {
        return Err(CliError::Infeasible(infeasibility_notes(&pa).join("; ")));
    }
    let opts = SolveOptions {
        continuation_step: (a_max - a_min) / cfg.steps as f64,
        step_floor: ((a_max - a_min) / cfg.steps as f64).min(1e-7),
        ..solve_options(cfg)
    };
    let grid = a_grid(a_min, a_max, opts.continuation_step);
    let curve = trace_branch_on(&pa, &grid, &opts)?;
    let rows = trace_rows(&curve);
    let body = match cfg.format {
        Format::Csv => trace_csv(&rows),
        Format::Json => json(&curve)?,
        Format::Svg => trace_svg(&[(
            format!("beta = {:.4}, theta_c = {:.4}", pa.beta, pa.theta_c),
            rows,
        )]),
    };
    let notes: Vec<String> = curve
        .gaps
        .iter()
        .map(|g| format!("gap at A = {}: {}", g.a, g.reason))
        .collect();
    Ok(Outcome {
        body,
        code: if notes.is_empty() { 0 } else { 2 },
        notes,
    })
}

fn slope_csv(rep: &SlopeReport) -> String {
    let mut out = String::from("A,sigma,c8prime,below_bound\n");
    for p in &rep.points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_num(p.a),
            fmt_num(p.sigma),
            p.c8prime,
            p.below_bound
        ));
    }
    out
}

pub fn cmd_asym(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let pa = angles(cfg, PI)?;
    if !pa.admits_steady_state() {
        return Err(CliError::Infeasible(infeasibility_notes(&pa).join("; ")));
    }
    let a_min = cfg.a_min.unwrap_or(1.0 - 1e-4);
    let a_max = cfg.a_max.unwrap_or(1.0 - 1e-5);
    if !(a_min > 0.0 && a_max < 1.0 && a_min < a_max) {
        return Err(CliError::Usage(format!(
            "need 0 < A-min < A-max < 1, got [{a_min}, {a_max}]"
        )));
    }
    let grid = linear_grid(a_min, a_max, cfg.steps + 1);
    let rep = verify_slope(pa.beta, &grid, &solve_options(cfg))?;
    let body = match cfg.format {
        Format::Csv => slope_csv(&rep),
        _ => json(&rep)?,
    };
    Ok(Outcome {
        body,
        notes: Vec::new(),
        code: 0,
    })
}

//! The admissibility conditions as signed margins.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::intersection::intersection_check;
use super::{derive_parameters, DerivedParams, FreeParams, PhysicalAngles};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintMode {
    /// `C1`–`C5`, `C7`, `z₁(π) ≤ 0` and the parametric `C8′`.
    Sufficient,
    /// `C1`–`C7` with `z₁(θc) = 0` and the geometric `C8`.
    NecessaryAndSufficient,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintTolerances {
    /// Bound on the `C4`/`C5` closure residuals.
    pub identity: f64,
    /// Bound on `|z₁(θc)|`.
    pub contact: f64,
}

impl Default for ConstraintTolerances {
    fn default() -> Self {
        Self {
            identity: 1e-10,
            contact: 1e-9,
        }
    }
}

/// One condition. `margin > 0` iff it holds strictly.
///
/// A vacuous conditional has margin `+∞` (written as `null`); a condition
/// that could not be evaluated because an earlier one failed has `−∞`
/// (written as `"-inf"`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub satisfied: bool,
    #[serde(serialize_with = "ser_margin", deserialize_with = "de_margin")]
    pub margin: f64,
    pub required: bool,
}

fn ser_margin<S: Serializer>(m: &f64, s: S) -> Result<S::Ok, S::Error> {
    if m.is_finite() {
        s.serialize_f64(*m)
    } else if *m == f64::INFINITY {
        s.serialize_none()
    } else {
        s.serialize_str("-inf")
    }
}

fn de_margin<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Str(String),
        Null,
    }
    match Raw::deserialize(d)? {
        Raw::Num(x) => Ok(x),
        Raw::Null => Ok(f64::INFINITY),
        Raw::Str(s) if s == "-inf" => Ok(f64::NEG_INFINITY),
        Raw::Str(s) => Err(serde::de::Error::custom(format!("bad margin {s:?}"))),
    }
}

/// A margin on its own, with the same encoding as [`Condition::margin`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Margin(#[serde(serialize_with = "ser_margin", deserialize_with = "de_margin")] pub f64);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub mode: ConstraintMode,
    #[serde(rename = "A")]
    pub a: f64,
    pub sigma: f64,
    pub beta: f64,
    pub theta_c: f64,
    pub conditions: Vec<Condition>,
}

impl ConstraintReport {
    /// Every required condition holds.
    pub fn all_satisfied(&self) -> bool {
        self.conditions
            .iter()
            .filter(|c| c.required)
            .all(|c| c.satisfied)
    }

    pub fn failed(&self) -> Vec<String> {
        self.conditions
            .iter()
            .filter(|c| c.required && !c.satisfied)
            .map(|c| c.name.clone())
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn margin(&self, name: &str) -> Option<f64> {
        self.get(name).map(|c| c.margin)
    }
}

/// Report order; the same for both modes.
pub const NAMES: [&str; 13] = [
    "beta_range",
    "theta_c_range",
    "C1",
    "C2",
    "C3",
    "C4",
    "C5",
    "C6",
    "C7",
    "C8",
    "C8prime",
    "z1_pi",
    "hole_inside_neck",
];

fn required(name: &str, mode: ConstraintMode) -> bool {
    match name {
        "beta_range" | "theta_c_range" | "C1" | "C2" | "C3" | "C4" | "C5" | "C7" => true,
        "C8prime" | "z1_pi" => mode == ConstraintMode::Sufficient,
        "C6" | "C8" => mode == ConstraintMode::NecessaryAndSufficient,
        _ => false,
    }
}

/// [`check_constraints_with`] at the default tolerances.
pub fn check_constraints(
    fp: FreeParams,
    pa: &PhysicalAngles,
    mode: ConstraintMode,
) -> ConstraintReport {
    check_constraints_with(fp, pa, mode, &ConstraintTolerances::default())
}

/// Evaluates every condition; never fails.
pub fn check_constraints_with(
    fp: FreeParams,
    pa: &PhysicalAngles,
    mode: ConstraintMode,
    tol: &ConstraintTolerances,
) -> ConstraintReport {
    let (a, sigma, beta, theta_c) = (fp.a, fp.sigma, pa.beta, pa.theta_c);
    let r_bar = a.hypot(sigma);
    let tb = beta.tan();
    let ninf = f64::NEG_INFINITY;

    let mut m = [ninf; 13];
    m[0] = (beta - FRAC_PI_2).min(PI - beta);
    m[1] = if theta_c <= PI { theta_c } else { PI - theta_c };
    m[2] = a.min(r_bar - a).min(1.0 - r_bar);
    m[3] = -fp.curvature_numerator(beta);
    m[4] = if sigma > 0.0 {
        tb - a / sigma * (1.0 - 2.0 * r_bar * r_bar)
    } else {
        ninf
    };
    m[8] = if beta.cos() < -a / r_bar {
        -0.5 / a - beta.cos()
    } else {
        f64::INFINITY
    };
    m[10] = if sigma > 0.0 && a < 1.0 {
        a * (1.0 - a * a - 2.0 * sigma * sigma) / (sigma * (1.0 - a * a)) - tb
    } else {
        ninf
    };

    let mut c8_ok = false;
    if let Ok(dp) = derive_parameters(fp, beta) {
        if let Ok(arcs) = dp.inner_arc().and_then(|i| Ok((i, dp.outer_arc()?))) {
            let (inner, outer) = arcs;
            m[5] = tol.identity - (outer.r(dp.theta2_bar) - dp.r_bar).abs();
            m[6] = tol.identity - (inner.r(dp.theta1_bar) - dp.r_bar).abs();
            if theta_c > dp.theta1_bar && theta_c <= PI {
                if let Ok(z) = inner.z(theta_c) {
                    m[7] = tol.contact - z.abs();
                }
                m[12] = a - inner.r(theta_c);
                m[9] = gamma1_gamma3_gap(&dp, theta_c);
                c8_ok = dp
                    .with_theta_c(theta_c)
                    .ok()
                    .and_then(|d| intersection_check(&d, pa).ok())
                    .unwrap_or(false);
            }
            if let Ok(z) = inner.z(PI) {
                m[11] = -z;
            }
        }
    }
    // Keep the sign of the C8 margin consistent with the polyline verdict.
    m[9] = if c8_ok {
        m[9].max(f64::MIN_POSITIVE)
    } else {
        m[9].min(0.0)
    };

    let conditions = NAMES
        .iter()
        .zip(m)
        .map(|(&name, margin)| Condition {
            name: name.to_string(),
            satisfied: margin > 0.0 || (name == "z1_pi" && margin == 0.0),
            margin,
            required: required(name, mode),
        })
        .collect();
    ConstraintReport {
        mode,
        a,
        sigma,
        beta,
        theta_c,
        conditions,
    }
}

/// `min (A cosh(z₁/A) − r₁)` over the part of `Γ₁` at heights `0 ≤ z ≤ z̄`,
/// where `Γ₃` is the graph `r = A cosh(z/A)`.
fn gamma1_gamma3_gap(dp: &DerivedParams, theta_c: f64) -> f64 {
    let Ok(inner) = dp.inner_arc() else {
        return f64::NEG_INFINITY;
    };
    let gap = |t: f64| -> f64 {
        match inner.z(t) {
            Ok(z) if (0.0..=dp.z_bar).contains(&z) => dp.a * (z / dp.a).cosh() - inner.r(t),
            Ok(_) => f64::INFINITY,
            Err(_) => f64::NEG_INFINITY,
        }
    };
    const N: usize = 400;
    let lo = 0.0_f64.max(dp.theta1_bar);
    let h = (theta_c - lo) / N as f64;
    let (mut best_i, mut best) = (0, f64::INFINITY);
    for i in 0..=N {
        let g = gap(lo + h * i as f64);
        if g < best {
            best = g;
            best_i = i;
        }
    }
    if !best.is_finite() {
        return best;
    }
    // Golden-section refinement around the best sample.
    let mut x0 = lo + h * best_i.saturating_sub(1) as f64;
    let mut x3 = (lo + h * (best_i + 1) as f64).min(theta_c);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..60 {
        let x1 = x3 - g * (x3 - x0);
        let x2 = x0 + g * (x3 - x0);
        if gap(x1) < gap(x2) {
            x3 = x2;
        } else {
            x0 = x1;
        }
    }
    best.min(gap(0.5 * (x0 + x3)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margin_round_trip() {
        let c = Condition {
            name: "C7".into(),
            satisfied: true,
            margin: f64::INFINITY,
            required: true,
        };
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"margin\":null"));
        assert_eq!(serde_json::from_str::<Condition>(&s).unwrap(), c);
        let d = Condition {
            margin: f64::NEG_INFINITY,
            satisfied: false,
            ..c.clone()
        };
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<Condition>(&s).unwrap(), d);
        let e = Condition { margin: -0.25, ..c };
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(serde_json::from_str::<Condition>(&s).unwrap(), e);
    }

    #[test]
    fn positive_curvature_fails_c2() {
        let pa = PhysicalAngles::new(1.72, PI).unwrap();
        let rep = check_constraints(
            FreeParams { a: 0.1, sigma: 0.9 },
            &pa,
            ConstraintMode::Sufficient,
        );
        assert!(!rep.get("C2").unwrap().satisfied);
        assert!(!rep.all_satisfied());
    }

    #[test]
    fn right_angle_has_no_steady_state() {
        let pa = PhysicalAngles::new(FRAC_PI_2, 2.0).unwrap();
        let rep = check_constraints(
            FreeParams {
                a: 0.9,
                sigma: 0.01,
            },
            &pa,
            ConstraintMode::Sufficient,
        );
        assert!(!rep.get("beta_range").unwrap().satisfied);
        assert!(!rep.all_satisfied());
    }

    #[test]
    fn vacuous_c7() {
        // θ̄₁ > −π/2 when cos β > −A/r̄.
        let pa = PhysicalAngles::new(1.72, PI).unwrap();
        let rep = check_constraints(
            FreeParams {
                a: 0.9,
                sigma: 0.01,
            },
            &pa,
            ConstraintMode::Sufficient,
        );
        assert_eq!(rep.margin("C7"), Some(f64::INFINITY));
        assert!(rep.get("C7").unwrap().satisfied);
    }
}

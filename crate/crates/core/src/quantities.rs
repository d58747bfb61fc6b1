//! Energy, volume and lengths of a solved steady state.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::quadrature::{integrate, QuadratureOptions};
use crate::steady::{DerivedParams, NodoidArc, PhysicalAngles, Point};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteadyDiagnostics {
    #[serde(rename = "E_eff")]
    pub e_eff: f64,
    #[serde(rename = "V")]
    pub v: f64,
    pub r1_star: f64,
    pub z2_star: f64,
    pub arclen_gamma3: f64,
}

fn quad_opts() -> QuadratureOptions {
    QuadratureOptions {
        abs_tol: 1e-13,
        rel_tol: 0.0,
        initial_panels: 4,
        max_subdivisions: 4000,
    }
}

fn contact_angle(dp: &DerivedParams) -> Result<f64, Error> {
    dp.theta_c.ok_or(Error::ContactAngleUnset)
}

/// [`effective_energy_with`] at the default resolution.
pub fn effective_energy(dp: &DerivedParams, pa: &PhysicalAngles) -> Result<f64, Error> {
    effective_energy_with(dp, pa, &quad_opts())
}

/// `E_eff = 2(∫ r₁ ds₁ + ∫ r₂ ds₂) + cos θc · r₁(θc)² + 2m ∫ r₃ ds₃`.
pub fn effective_energy_with(
    dp: &DerivedParams,
    pa: &PhysicalAngles,
    opts: &QuadratureOptions,
) -> Result<f64, Error> {
    let theta_c = contact_angle(dp)?;
    let inner = dp.inner_arc()?;
    let outer = dp.outer_arc()?;
    let s1 = integrate(
        |t| inner.r(t) * inner.speed(t),
        dp.theta1_bar,
        theta_c,
        opts,
    )?;
    let s2 = integrate(|t| outer.r(t) * outer.speed(t), 0.0, dp.theta2_bar, opts)?;
    let a2 = dp.a * dp.a;
    let s3 = integrate(|t| a2 / t.sin().powi(3), dp.theta3_bar, FRAC_PI_2, opts)?;
    let r1 = inner.r(theta_c);
    Ok(2.0 * (s1 + s2) + theta_c.cos() * r1 * r1 + 2.0 * pa.m * s3)
}

/// [`total_volume_with`] at the default resolution.
pub fn total_volume(dp: &DerivedParams, pa: &PhysicalAngles) -> Result<f64, Error> {
    total_volume_with(dp, pa, &quad_opts())
}

/// `V = 2π(∫_{θc}^{θ̄₁} z₁ r₁ r₁′ dθ₁ + ∫_{θ̄₂}^{0} z₂ r₂ r₂′ dθ₂)`.
pub fn total_volume_with(
    dp: &DerivedParams,
    _pa: &PhysicalAngles,
    opts: &QuadratureOptions,
) -> Result<f64, Error> {
    let theta_c = contact_angle(dp)?;
    let inner = dp.inner_arc()?;
    let outer = dp.outer_arc()?;
    // z is defined on all of [−π, π]; NaN only guards against misuse.
    let integrand =
        |arc: &NodoidArc, t: f64| arc.z(t).unwrap_or(f64::NAN) * arc.r(t) * arc.tangent(t).0;
    let v1 = integrate(|t| integrand(&inner, t), theta_c, dp.theta1_bar, opts)?;
    let v2 = integrate(|t| integrand(&outer, t), dp.theta2_bar, 0.0, opts)?;
    Ok(2.0 * PI * (v1 + v2))
}

/// Length of a polyline.
pub fn arc_length(points: &[Point]) -> f64 {
    points.windows(2).map(|w| w[0].dist(&w[1])).sum()
}

/// `|Γ₃| = ∫ A/sin²θ₃ dθ₃` by quadrature; equals `σ`.
pub fn gamma3_length(dp: &DerivedParams) -> Result<f64, Error> {
    let a = dp.a;
    Ok(integrate(
        |t| a / (t.sin() * t.sin()),
        dp.theta3_bar,
        FRAC_PI_2,
        &quad_opts(),
    )?)
}

pub fn diagnostics(dp: &DerivedParams, pa: &PhysicalAngles) -> Result<SteadyDiagnostics, Error> {
    let theta_c = contact_angle(dp)?;
    Ok(SteadyDiagnostics {
        e_eff: effective_energy(dp, pa)?,
        v: total_volume(dp, pa)?,
        r1_star: dp.inner_arc()?.r(theta_c),
        z2_star: dp.z2_star,
        arclen_gamma3: gamma3_length(dp)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_length() {
        let p = [Point::new(0.0, 0.0), Point::new(3.0, 4.0)];
        assert_eq!(arc_length(&p), 5.0);
        assert_eq!(arc_length(&p[..1]), 0.0);
    }
}

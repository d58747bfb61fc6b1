//! Parameter algebra and closed-form geometry of the steady states.
//!
//! A steady state is fixed by the catenoid neck radius `A`, the grain
//! boundary arclength `σ` and the dihedral angle `β`; the contact angle `θc`
//! then follows from `z₁(θc) = 0`. In the meridian half-plane the state is
//! three curves meeting at the triple junction `(r̄, z̄)`:
//!
//! * `Γ₁`, inner nodoid, tangent angle `θ₁ ∈ [θ̄₁, θc]`, from the hole edge
//!   `(r₁*, 0)` to the junction;
//! * `Γ₂`, outer nodoid, `θ₂ ∈ [0, θ̄₂]`, from the junction to `(1, z₂*)`;
//! * `Γ₃`, catenoid grain boundary, `θ₃ ∈ [θ̄₃, π/2]`, from `(A, 0)` to the
//!   junction.

mod constraints;
mod curvature;
mod curves;
mod gfunc;
mod intersection;

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use constraints::{
    check_constraints, check_constraints_with, Condition, ConstraintMode, ConstraintReport,
    ConstraintTolerances, Margin, NAMES as CONDITION_NAMES,
};
pub use curvature::{
    curvature_residual, curvature_residual_about, discrete_mean_curvature,
    discrete_mean_curvature_about, MIN_CURVATURE_SAMPLES,
};
pub use curves::{
    gamma1_point, gamma2_point, gamma3_offset, gamma3_point, junction_frame_curves, z1_legendre,
    z1_quadrature, z2_legendre, z2_quadrature, Curve, NodoidArc, Point, ProfileSet,
};
pub use gfunc::{g_gradient, g_value, GGradient};
pub use intersection::{intersection_check, polyline_intersections, polylines_meet_only_at};

/// The physical inputs: dihedral angle `β`, contact angle `θc` and the energy
/// ratio `m = γgb/γex = −2 cos β`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalAngles {
    pub beta: f64,
    pub theta_c: f64,
    pub m: f64,
}

impl PhysicalAngles {
    /// Accepts the physical range `β ∈ [π/2, π)`, `θc ∈ [0, π]`.
    ///
    /// The endpoints `β = π/2` and `θc = 0` are representable so that they
    /// can be reported as infeasible; see [`PhysicalAngles::admits_steady_state`].
    pub fn new(beta: f64, theta_c: f64) -> Result<Self, Error> {
        if !(beta.is_finite() && (FRAC_PI_2..PI).contains(&beta)) {
            return Err(Error::AngleOutOfRange {
                name: "beta",
                value: beta,
                lo: FRAC_PI_2,
                hi: PI,
            });
        }
        if !(theta_c.is_finite() && (0.0..=PI).contains(&theta_c)) {
            return Err(Error::AngleOutOfRange {
                name: "theta_c",
                value: theta_c,
                lo: 0.0,
                hi: PI,
            });
        }
        Ok(Self {
            beta,
            theta_c,
            m: -2.0 * beta.cos(),
        })
    }

    /// `β = arccos(−m/2)` for `0 ≤ m < 2`.
    pub fn from_m(m: f64, theta_c: f64) -> Result<Self, Error> {
        if !(m.is_finite() && (0.0..2.0).contains(&m)) {
            return Err(Error::Physical(format!("m = {m} outside [0, 2)")));
        }
        let mut pa = Self::new((-0.5 * m).acos(), theta_c)?;
        pa.m = m;
        Ok(pa)
    }

    pub fn with_theta_c(self, theta_c: f64) -> Result<Self, Error> {
        let mut pa = Self::new(self.beta, theta_c)?;
        pa.m = self.m;
        Ok(pa)
    }

    /// No steady state exists for `β = π/2` or `θc = 0`.
    pub fn admits_steady_state(&self) -> bool {
        self.beta > FRAC_PI_2 && self.theta_c > 0.0
    }
}

/// Upper limit of `σ` in `Ω₀` for a given `A`.
pub fn sigma_max(a: f64) -> f64 {
    ((1.0 - a) * (1.0 + a)).sqrt()
}

/// The two free parameters, restricted to `Ω₀ = {0 < A < 1, 0 < σ < √(1−A²)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeParams {
    #[serde(rename = "A")]
    pub a: f64,
    pub sigma: f64,
}

impl FreeParams {
    pub fn new(a: f64, sigma: f64) -> Result<Self, Error> {
        let fp = Self { a, sigma };
        if fp.in_omega0() {
            Ok(fp)
        } else {
            Err(Error::OutsideOmega0 { a, sigma })
        }
    }

    pub fn in_omega0(&self) -> bool {
        self.a > 0.0 && self.a < 1.0 && self.sigma > 0.0 && self.one_minus_rbar2() > 0.0
    }

    /// `1 − A² − σ²`, factored to avoid cancellation near `(A, σ) = (1, 0)`.
    pub fn one_minus_rbar2(&self) -> f64 {
        (1.0 - self.a) * (1.0 + self.a) - self.sigma * self.sigma
    }

    /// `A cos β + σ sin β`; `λ` has its sign.
    pub fn curvature_numerator(&self, beta: f64) -> f64 {
        self.a * beta.cos() + self.sigma * beta.sin()
    }

    /// `(2A² + 2σ² − 1) A cos β + σ sin β`; `a_ℓ² ` is its ratio to the above.
    pub fn radius_numerator(&self, beta: f64) -> f64 {
        let rbar2 = self.a * self.a + self.sigma * self.sigma;
        (2.0 * rbar2 - 1.0) * self.a * beta.cos() + self.sigma * beta.sin()
    }
}

/// Every quantity the closed forms derive from `(A, σ, β)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    #[serde(rename = "A")]
    pub a: f64,
    pub sigma: f64,
    pub beta: f64,
    pub r_bar: f64,
    pub z_bar: f64,
    pub theta1_bar: f64,
    pub theta2_bar: f64,
    pub theta3_bar: f64,
    pub lambda: f64,
    pub a_ell: f64,
    pub k: f64,
    pub k_prime: f64,
    /// `4λ²a_ℓ²`, kept exact rather than rebuilt from `a_ell`.
    pub c2_inner: f64,
    pub z2_star: f64,
    pub theta_c: Option<f64>,
    pub r1_star: Option<f64>,
}

/// Maps `(A, σ, β)` to the derived parameters.
///
/// Fails when `(A, σ) ∉ Ω₀`, when `λ ≥ 0`, or when the `a_ℓ` radicand is not
/// positive (the `a_ℓ > 0` constraint is violated). [`check_constraints`]
/// reports those cases as margins instead.
pub fn derive_parameters(fp: FreeParams, beta: f64) -> Result<DerivedParams, Error> {
    if !fp.in_omega0() {
        return Err(Error::OutsideOmega0 {
            a: fp.a,
            sigma: fp.sigma,
        });
    }
    let (a, sigma) = (fp.a, fp.sigma);
    let d = fp.one_minus_rbar2();
    let n1 = fp.curvature_numerator(beta);
    let n2 = fp.radius_numerator(beta);
    let lambda = n1 / d;
    if !(lambda < 0.0) {
        return Err(Error::NonNegativeCurvature(lambda));
    }
    let radicand = n2 / n1;
    if !(radicand > 0.0) {
        return Err(Error::NegativeRadicand(radicand));
    }
    let a_ell = radicand.sqrt();
    let r_bar = a.hypot(sigma);
    let z_bar = a * (sigma / a).asinh();
    let theta3_bar = a.atan2(sigma);
    let p = 4.0 * n1 * n2;
    let norm = (d * d + p).sqrt();
    let k = d / norm;
    let k_prime = p.sqrt() / norm;
    let mut dp = DerivedParams {
        a,
        sigma,
        beta,
        r_bar,
        z_bar,
        theta1_bar: theta3_bar - beta,
        theta2_bar: theta3_bar + beta - PI,
        theta3_bar,
        lambda,
        a_ell,
        k,
        k_prime,
        c2_inner: p / (d * d),
        z2_star: f64::NAN,
        theta_c: None,
        r1_star: None,
    };
    dp.z2_star = dp.outer_arc()?.z(0.0)?;
    Ok(dp)
}

impl DerivedParams {
    pub fn free_params(&self) -> FreeParams {
        FreeParams {
            a: self.a,
            sigma: self.sigma,
        }
    }

    /// Arc parameters of `Γ₁` (and its extension over `[−π, π]`).
    pub fn inner_arc(&self) -> Result<NodoidArc, Error> {
        NodoidArc::new(self.lambda, self.c2_inner, self.theta1_bar, self.z_bar)
    }

    /// Arc parameters of `Γ₂`: the `Γ₁` algebra with `a_ℓ → 1`.
    pub fn outer_arc(&self) -> Result<NodoidArc, Error> {
        NodoidArc::new(
            self.lambda,
            4.0 * self.lambda * self.lambda,
            self.theta2_bar,
            self.z_bar,
        )
    }

    /// Fixes the contact angle and the hole radius `r₁* = r₁(θc)`.
    pub fn with_theta_c(mut self, theta_c: f64) -> Result<Self, Error> {
        if !(theta_c > self.theta1_bar && theta_c <= PI) {
            return Err(Error::AngleOutOfRange {
                name: "theta_c",
                value: theta_c,
                lo: self.theta1_bar,
                hi: PI,
            });
        }
        self.theta_c = Some(theta_c);
        self.r1_star = Some(self.inner_arc()?.r(theta_c));
        Ok(self)
    }

    /// Upper end of the admissible `θ₁` range: `θc` once known, else `π`.
    pub fn theta1_upper(&self) -> f64 {
        self.theta_c.unwrap_or(PI)
    }
}

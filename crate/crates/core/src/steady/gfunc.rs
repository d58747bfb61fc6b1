//! `G(A, σ; β) = −2λk·z₁(π)`, the residual whose zero set is the `θc = π`
//! branch, and its gradient.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::{derive_parameters, FreeParams};
use crate::elliptic::{carlson_rd, carlson_rf, complete_ke, derivatives};
use crate::error::Error;

/// `(∂G/∂A, ∂G/∂σ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GGradient {
    pub g_a: f64,
    pub g_sigma: f64,
}

/// `G = k′²(F(φ) − 3K) − (E(φ) − 3E) − 2λk z̄ − k cos θ̄₁ − k`, `φ = θ̄₁ + π/2`.
///
/// The elliptic part equals `k²(sin³φ R_D/3 − R_D(0,k′²,1) − F(φ) + 3K)` and is
/// evaluated that way, which keeps full relative accuracy as `k → 0`.
pub fn g_value(fp: FreeParams, beta: f64) -> Result<f64, Error> {
    let dp = derive_parameters(fp, beta)?;
    let (k, kp) = (dp.k, dp.k_prime);
    let phi = dp.theta1_bar + FRAC_PI_2;
    let (s, c) = phi.sin_cos();
    let kp2 = kp * kp;
    let delta2 = 1.0 - k * k * s * s;
    let f = s * carlson_rf(c * c, delta2, 1.0);
    let rd = carlson_rd(c * c, delta2, 1.0);
    let kk = carlson_rf(0.0, kp2, 1.0);
    let rd0 = carlson_rd(0.0, kp2, 1.0);
    let elliptic = k * k * (s * s * s * rd / 3.0 - rd0 - f + 3.0 * kk);
    let lk = dp.lambda * k;
    Ok(elliptic - 2.0 * lk * dp.z_bar - k * dp.theta1_bar.cos() - k)
}

/// Analytic gradient of [`g_value`] by the chain rule through `θ̄₁`, `z̄`, `λ`
/// and `k`.
pub fn g_gradient(fp: FreeParams, beta: f64) -> Result<GGradient, Error> {
    let dp = derive_parameters(fp, beta)?;
    let (a, sigma) = (fp.a, fp.sigma);
    let (sb, cb) = beta.sin_cos();
    let d = fp.one_minus_rbar2();
    let n1 = fp.curvature_numerator(beta);
    let n2 = fp.radius_numerator(beta);
    let rbar2 = dp.r_bar * dp.r_bar;
    let (k, kp) = (dp.k, dp.k_prime);
    let kp2 = kp * kp;
    let phi = dp.theta1_bar + FRAC_PI_2;

    let f = {
        let (s, c) = phi.sin_cos();
        s * carlson_rf(c * c, 1.0 - k * k * s * s, 1.0)
    };
    let (kk, _) = complete_ke(k)?;
    let der = derivatives(phi, k)?;

    // Partials of the building blocks, ordered (A, σ).
    let theta_p = [sigma / rbar2, -a / rbar2];
    let zbar_p = [(dp.r_bar / a).acosh() - sigma / dp.r_bar, a / dp.r_bar];
    let n1_p = [cb, sb];
    let n2_p = [
        (6.0 * a * a + 2.0 * sigma * sigma - 1.0) * cb,
        4.0 * sigma * a * cb + sb,
    ];
    let d_p = [-2.0 * a, -2.0 * sigma];

    let g_phi = kp2 * der.df_dphi - der.de_dphi;
    let g_k = -2.0 * k * (f - 3.0 * kk) + kp2 * (der.df_dk - 3.0 * der.dk_dk)
        - (der.de_dk - 3.0 * der.decomp_dk)
        - 1.0
        - dp.theta1_bar.cos();
    let g_theta = k * dp.theta1_bar.sin();

    let mut out = [0.0; 2];
    for i in 0..2 {
        let lambda_p = n1_p[i] / d - n1 * d_p[i] / (d * d);
        let q_p =
            4.0 * (n1_p[i] * n2 + n1 * n2_p[i]) / (d * d) - 8.0 * n1 * n2 * d_p[i] / (d * d * d);
        let k_p = -0.5 * k * k * k * q_p;
        let lk_p = lambda_p * k + dp.lambda * k_p;
        out[i] = (g_phi + g_theta) * theta_p[i] + g_k * k_p
            - 2.0 * lk_p * dp.z_bar
            - 2.0 * dp.lambda * k * zbar_p[i];
    }
    Ok(GGradient {
        g_a: out[0],
        g_sigma: out[1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::QuadratureOptions;
    use crate::steady::z1_quadrature;
    use std::f64::consts::PI;

    #[test]
    fn matches_scaled_z1_at_pi() {
        let fp = FreeParams::new(0.9, 0.05).unwrap();
        let dp = derive_parameters(fp, 1.72).unwrap();
        let z = z1_quadrature(PI, &dp, &QuadratureOptions::default()).unwrap();
        let g = g_value(fp, 1.72).unwrap();
        assert!((g + 2.0 * dp.lambda * dp.k * z).abs() < 1e-12);
    }

    #[test]
    fn gradient_vs_central_differences() {
        let beta = 2.0;
        let fp = FreeParams::new(0.93, 0.04).unwrap();
        let gr = g_gradient(fp, beta).unwrap();
        let h = 1e-6;
        let g = |a: f64, s: f64| g_value(FreeParams { a, sigma: s }, beta).unwrap();
        let ga = (g(fp.a + h, fp.sigma) - g(fp.a - h, fp.sigma)) / (2.0 * h);
        let gs = (g(fp.a, fp.sigma + h) - g(fp.a, fp.sigma - h)) / (2.0 * h);
        assert!(
            (gr.g_a - ga).abs() <= 1e-6 * ga.abs().max(1.0),
            "{} {}",
            gr.g_a,
            ga
        );
        assert!(
            (gr.g_sigma - gs).abs() <= 1e-6 * gs.abs().max(1.0),
            "{} {}",
            gr.g_sigma,
            gs
        );
    }
}

//! Legendre elliptic integrals of the first and second kinds.
//!
//! Everything is built on Carlson's symmetric integrals `R_F` and `R_D`,
//! evaluated by the duplication theorem:
//!
//! ```text
//! F(φ, k) = sin φ · R_F(cos²φ, 1 − k² sin²φ, 1)
//! E(φ, k) = F(φ, k) − (k²/3) sin³φ · R_D(cos²φ, 1 − k² sin²φ, 1)
//! ```
//!
//! Only real arguments are supported: `0 ≤ k < 1` and `|φ| ≤ π/2`. Callers
//! reduce their angles into that range before calling.

use std::f64::consts::FRAC_PI_2;

use crate::error::EllipticError;

/// Relative truncation target for the duplication iterations.
const DUPLICATION_TOL: f64 = 1.0e-16;
const MAX_DUPLICATIONS: usize = 64;

/// Slack accepted on `|φ| ≤ π/2` for rounding in caller-side reductions.
const PHI_SLACK: f64 = 8.0 * f64::EPSILON;

/// Argument pair for the incomplete integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticArgs {
    pub phi: f64,
    pub k: f64,
}

impl EllipticArgs {
    pub fn new(phi: f64, k: f64) -> Result<Self, EllipticError> {
        check_modulus(k)?;
        if !phi.is_finite() || phi.abs() > FRAC_PI_2 + PHI_SLACK {
            return Err(EllipticError::Amplitude(phi));
        }
        Ok(Self {
            phi: phi.clamp(-FRAC_PI_2, FRAC_PI_2),
            k,
        })
    }
}

fn check_modulus(k: f64) -> Result<(), EllipticError> {
    if k.is_finite() && (0.0..1.0).contains(&k) {
        Ok(())
    } else {
        Err(EllipticError::Modulus(k))
    }
}

/// Carlson's `R_F(x, y, z)` for non-negative arguments, at most one zero.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    debug_assert!(x >= 0.0 && y >= 0.0 && z >= 0.0);
    let (mut x, mut y, mut z) = (x, y, z);
    let a0 = (x + y + z) / 3.0;
    let mut a = a0;
    let mut q = (3.0 * DUPLICATION_TOL).powf(-1.0 / 6.0)
        * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let (dx, dy) = (a0 - x, a0 - y);
    let mut scale = 1.0;
    for _ in 0..MAX_DUPLICATIONS {
        if q < a.abs() {
            break;
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sy * sz + sz * sx;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        a = 0.25 * (a + lambda);
        q *= 0.25;
        scale *= 0.25;
    }
    let xx = dx * scale / a;
    let yy = dy * scale / a;
    let zz = -xx - yy;
    let e2 = xx * yy - zz * zz;
    let e3 = xx * yy * zz;
    (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / a.sqrt()
}

/// Carlson's `R_D(x, y, z)`; `x, y ≥ 0` with at most one zero, `z > 0`.
pub fn carlson_rd(x: f64, y: f64, z: f64) -> f64 {
    debug_assert!(x >= 0.0 && y >= 0.0 && z > 0.0);
    let (mut x, mut y, mut z) = (x, y, z);
    let a0 = (x + y + 3.0 * z) / 5.0;
    let mut a = a0;
    let mut q = (0.25 * DUPLICATION_TOL).powf(-1.0 / 6.0)
        * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let (dx, dy) = (a0 - x, a0 - y);
    let mut scale = 1.0;
    let mut tail = 0.0;
    for _ in 0..MAX_DUPLICATIONS {
        if q < a.abs() {
            break;
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sy * sz + sz * sx;
        tail += scale / (sz * (z + lambda));
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        a = 0.25 * (a + lambda);
        q *= 0.25;
        scale *= 0.25;
    }
    let xx = dx * scale / a;
    let yy = dy * scale / a;
    let zz = -(xx + yy) / 3.0;
    let xy = xx * yy;
    let z2 = zz * zz;
    let e2 = xy - 6.0 * z2;
    let e3 = (3.0 * xy - 8.0 * z2) * zz;
    let e4 = 3.0 * (xy - z2) * z2;
    let e5 = xy * z2 * zz;
    let series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0
        - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0;
    scale * series / (a * a.sqrt()) + 3.0 * tail
}

/// The Carlson pieces shared by `F`, `E` and their derivatives.
#[derive(Debug, Clone, Copy)]
struct Pieces {
    sin: f64,
    cos: f64,
    delta2: f64,
    rf: f64,
    rd: f64,
}

fn pieces(phi: f64, k: f64) -> Pieces {
    let (sin, cos) = phi.sin_cos();
    let ks = k * sin;
    let delta2 = (1.0 - ks) * (1.0 + ks);
    let c2 = cos * cos;
    Pieces {
        sin,
        cos,
        delta2,
        rf: carlson_rf(c2, delta2, 1.0),
        rd: carlson_rd(c2, delta2, 1.0),
    }
}

impl Pieces {
    fn f(&self) -> f64 {
        self.sin * self.rf
    }

    /// `F − E = (k²/3) sin³φ R_D`, computed without cancellation.
    fn f_minus_e_over_k2(&self) -> f64 {
        self.sin * self.sin * self.sin * self.rd / 3.0
    }
}

/// Incomplete integral of the first kind `F(φ, k)`.
pub fn incomplete_f(phi: f64, k: f64) -> Result<f64, EllipticError> {
    let args = EllipticArgs::new(phi, k)?;
    Ok(pieces(args.phi, args.k).f())
}

/// Incomplete integral of the second kind `E(φ, k)`.
pub fn incomplete_e(phi: f64, k: f64) -> Result<f64, EllipticError> {
    let args = EllipticArgs::new(phi, k)?;
    let p = pieces(args.phi, args.k);
    Ok(p.f() - args.k * args.k * p.f_minus_e_over_k2())
}

/// Both incomplete integrals from one set of Carlson evaluations.
pub fn incomplete_fe(phi: f64, k: f64) -> Result<(f64, f64), EllipticError> {
    let args = EllipticArgs::new(phi, k)?;
    let p = pieces(args.phi, args.k);
    let f = p.f();
    Ok((f, f - args.k * args.k * p.f_minus_e_over_k2()))
}

/// Complete integral of the first kind `K(k) = F(π/2, k)`.
pub fn complete_k(k: f64) -> Result<f64, EllipticError> {
    check_modulus(k)?;
    Ok(carlson_rf(0.0, (1.0 - k) * (1.0 + k), 1.0))
}

/// Complete integral of the second kind `E(k) = E(π/2, k)`.
pub fn complete_e(k: f64) -> Result<f64, EllipticError> {
    check_modulus(k)?;
    let kp2 = (1.0 - k) * (1.0 + k);
    Ok(carlson_rf(0.0, kp2, 1.0) - k * k * carlson_rd(0.0, kp2, 1.0) / 3.0)
}

/// Both complete integrals `(K(k), E(k))`.
pub fn complete_ke(k: f64) -> Result<(f64, f64), EllipticError> {
    check_modulus(k)?;
    let kp2 = (1.0 - k) * (1.0 + k);
    let kk = carlson_rf(0.0, kp2, 1.0);
    Ok((kk, kk - k * k * carlson_rd(0.0, kp2, 1.0) / 3.0))
}

/// Truncated small-modulus expansions `φ ± (φ − sin φ cos φ) k²/4`.
///
/// Only meant as a cross-check of the production path for `k ≤ 0.1`.
pub fn series_small_k(phi: f64, k: f64) -> (f64, f64) {
    let corr = 0.25 * (phi - phi.sin() * phi.cos()) * k * k;
    (phi + corr, phi - corr)
}

/// Partial derivatives of the Legendre integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticDerivatives {
    pub df_dphi: f64,
    pub de_dphi: f64,
    pub df_dk: f64,
    pub de_dk: f64,
    pub dk_dk: f64,
    pub decomp_dk: f64,
}

/// Analytic derivatives of `F(φ,k)`, `E(φ,k)`, `K(k)` and `E(k)`.
///
/// The classical identities (`E_k = (E − F)/k`, `E'(k) = (E − K)/k`, ...)
/// divide by `k`; here the differences are taken from `R_D` directly so the
/// results stay accurate as `k → 0`, where every k-derivative tends to 0.
pub fn derivatives(phi: f64, k: f64) -> Result<EllipticDerivatives, EllipticError> {
    let args = EllipticArgs::new(phi, k)?;
    let (phi, k) = (args.phi, args.k);
    let kp2 = (1.0 - k) * (1.0 + k);
    let p = pieces(phi, k);
    let delta = p.delta2.sqrt();
    let f = p.f();
    let fe = p.f_minus_e_over_k2();

    // E − k'²F = k²(F − sin³φ R_D / 3)
    let df_dk = k * (f - fe) / kp2 - k * p.sin * p.cos / (kp2 * delta);
    let de_dk = -k * fe;

    let kk = carlson_rf(0.0, kp2, 1.0);
    let rd0 = carlson_rd(0.0, kp2, 1.0) / 3.0;
    let dk_dk = k * (kk - rd0) / kp2;
    let decomp_dk = -k * rd0;

    Ok(EllipticDerivatives {
        df_dphi: 1.0 / delta,
        de_dphi: delta,
        df_dk,
        de_dk,
        dk_dk,
        decomp_dk,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn zero_modulus_reduces_to_amplitude() {
        assert_relative_eq!(
            incomplete_f(FRAC_PI_2, 0.0).unwrap(),
            FRAC_PI_2,
            epsilon = 1e-15
        );
        assert_relative_eq!(incomplete_f(0.7, 0.0).unwrap(), 0.7, epsilon = 1e-15);
        assert_relative_eq!(
            incomplete_e(FRAC_PI_2, 0.0).unwrap(),
            FRAC_PI_2,
            epsilon = 1e-15
        );
        assert_relative_eq!(incomplete_e(1.234, 0.0).unwrap(), 1.234, epsilon = 1e-15);
        assert_relative_eq!(complete_k(0.0).unwrap(), FRAC_PI_2, epsilon = 1e-15);
        assert_relative_eq!(complete_e(0.0).unwrap(), FRAC_PI_2, epsilon = 1e-15);
    }

    #[test]
    fn rf_rd_special_values() {
        // R_F(0,1,1) = π/2, R_D(0,2,1) = 3 ∫... tabulated: 1.7972103521033883
        assert_relative_eq!(carlson_rf(0.0, 1.0, 1.0), FRAC_PI_2, epsilon = 1e-15);
        assert_relative_eq!(carlson_rf(1.0, 1.0, 1.0), 1.0, epsilon = 1e-15);
        assert_relative_eq!(carlson_rd(1.0, 1.0, 1.0), 1.0, epsilon = 1e-15);
        assert_relative_eq!(
            carlson_rd(0.0, 2.0, 1.0),
            1.797_210_352_103_388_3,
            epsilon = 1e-14
        );
        assert_relative_eq!(
            carlson_rf(0.5, 1.0, 0.0),
            1.854_074_677_301_372,
            epsilon = 1e-14
        );
    }

    #[test]
    fn known_complete_values() {
        // K(1/√2) = Γ(1/4)² / (4√π)
        let k = std::f64::consts::FRAC_1_SQRT_2;
        assert_relative_eq!(
            complete_k(k).unwrap(),
            1.854_074_677_301_372,
            epsilon = 1e-14
        );
        assert_relative_eq!(
            complete_e(k).unwrap(),
            1.350_643_881_047_675_5,
            epsilon = 1e-14
        );
    }

    #[test]
    fn odd_in_amplitude() {
        for &phi in &[0.1, 0.9, 1.5] {
            let f = incomplete_f(phi, 0.6).unwrap();
            let e = incomplete_e(phi, 0.6).unwrap();
            assert_eq!(incomplete_f(-phi, 0.6).unwrap(), -f);
            assert_eq!(incomplete_e(-phi, 0.6).unwrap(), -e);
        }
    }

    #[test]
    fn complete_matches_incomplete_at_quarter_period() {
        for &k in &[0.0, 0.1, 0.5, 0.9, 0.99] {
            let (f, e) = incomplete_fe(FRAC_PI_2, k).unwrap();
            let (kk, ee) = complete_ke(k).unwrap();
            assert!((f - kk).abs() <= 1e-14, "K mismatch at k={k}");
            assert!((e - ee).abs() <= 1e-14, "E mismatch at k={k}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            incomplete_f(0.5, 1.0),
            Err(EllipticError::Modulus(_))
        ));
        assert!(matches!(complete_k(1.2), Err(EllipticError::Modulus(_))));
        assert!(matches!(complete_e(-0.1), Err(EllipticError::Modulus(_))));
        assert!(matches!(
            incomplete_e(PI, 0.3),
            Err(EllipticError::Amplitude(_))
        ));
        assert!(matches!(
            incomplete_f(f64::NAN, 0.3),
            Err(EllipticError::Amplitude(_))
        ));
        assert!(derivatives(0.3, 1.0).is_err());
    }

    #[test]
    fn derivatives_vanish_at_zero_modulus() {
        let d = derivatives(1.0, 0.0).unwrap();
        assert_eq!(d.df_dk, 0.0);
        assert_eq!(d.de_dk, 0.0);
        assert_eq!(d.dk_dk, 0.0);
        assert_eq!(d.decomp_dk, 0.0);
        assert_relative_eq!(d.df_dphi, 1.0);
    }

    #[test]
    fn amplitude_derivative_closed_form() {
        let (phi, k) = (0.8_f64, 0.45_f64);
        let d = derivatives(phi, k).unwrap();
        let delta = (1.0 - k * k * phi.sin().powi(2)).sqrt();
        assert_relative_eq!(d.df_dphi, 1.0 / delta, epsilon = 1e-15);
        assert_relative_eq!(d.de_dphi, delta, epsilon = 1e-15);
    }

    #[test]
    fn small_k_complete_difference() {
        for &k in &[1e-3, 1e-2, 5e-2] {
            let (kk, ee) = complete_ke(k).unwrap();
            let lead = PI / 4.0 * k * k;
            assert!(((kk - ee) - lead).abs() <= k.powi(4));
        }
    }

    #[test]
    fn series_at_zero_is_identity() {
        assert_eq!(series_small_k(0.37, 0.0), (0.37, 0.37));
        let (f, e) = series_small_k(1.0, 0.05);
        let want = 0.5 * (1.0 - 1.0_f64.sin() * 1.0_f64.cos()) * 0.05 * 0.05;
        assert_relative_eq!(f - e, want, epsilon = 1e-15);
    }
}

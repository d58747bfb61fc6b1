//! Meridian curves `Γ₁`, `Γ₂` (nodoids) and `Γ₃` (catenoid) in the tangent
//! angle parametrization.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::DerivedParams;
use crate::elliptic::{carlson_rd, carlson_rf, complete_ke, incomplete_fe};
use crate::error::Error;
use crate::quadrature::{integrate, QuadratureOptions};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub r: f64,
    pub z: f64,
}

impl Point {
    pub fn new(r: f64, z: f64) -> Self {
        Self { r, z }
    }

    pub fn dist(&self, o: &Point) -> f64 {
        (self.r - o.r).hypot(self.z - o.z)
    }
}

/// One nodoid arc: `r(θ) = (sin θ − √(sin²θ + c²))/(2λ)` with `λ < 0`,
/// anchored so that `z(θ̄) = z̄`.
///
/// `c² = 4λ²a²` with `a = a_ℓ` for `Γ₁` and `a = 1` for `Γ₂`; the Legendre
/// modulus is `k = 1/√(1+c²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodoidArc {
    pub lambda: f64,
    pub c2: f64,
    pub k: f64,
    pub k_prime: f64,
    pub theta_bar: f64,
    pub z_bar: f64,
    kk: f64,
    ee: f64,
    rd0: f64,
    s_bar: f64,
}

impl NodoidArc {
    pub fn new(lambda: f64, c2: f64, theta_bar: f64, z_bar: f64) -> Result<Self, Error> {
        if !(lambda < 0.0) {
            return Err(Error::NonNegativeCurvature(lambda));
        }
        let norm = (1.0 + c2).sqrt();
        let k = 1.0 / norm;
        let k_prime = c2.sqrt() / norm;
        let (kk, ee) = complete_ke(k)?;
        let mut arc = Self {
            lambda,
            c2,
            k,
            k_prime,
            theta_bar,
            z_bar,
            kk,
            ee,
            rd0: carlson_rd(0.0, k_prime * k_prime, 1.0),
            s_bar: 0.0,
        };
        arc.s_bar = arc.s_odd(theta_bar);
        Ok(arc)
    }

    fn root(&self, s: f64) -> f64 {
        (s * s + self.c2).sqrt()
    }

    pub fn r(&self, theta: f64) -> f64 {
        let s = theta.sin();
        let root = self.root(s);
        if s > 0.0 {
            -self.c2 / (2.0 * self.lambda * (s + root))
        } else {
            (s - root) / (2.0 * self.lambda)
        }
    }

    /// `(dr/dθ, dz/dθ) = −(cos θ, sin θ)·r/√(sin²θ + c²)`.
    pub fn tangent(&self, theta: f64) -> (f64, f64) {
        let (s, c) = theta.sin_cos();
        let f = self.r(theta) / self.root(s);
        (-c * f, -s * f)
    }

    /// `√(r′² + z′²) = r/√(sin²θ + c²)`.
    pub fn speed(&self, theta: f64) -> f64 {
        self.r(theta) / self.root(theta.sin())
    }

    /// `J(u) = ∫₀ᵘ sin²x/√(sin²x + c²) dx` for `u ∈ [0, π]`, written so that
    /// nothing is divided by `k`.
    fn j(&self, u: f64) -> f64 {
        let k = self.k;
        let (sp, cp) = (FRAC_PI_2 - u).sin_cos();
        let cp2 = cp * cp;
        let delta2 = 1.0 - k * k * sp * sp;
        let f = sp * carlson_rf(cp2, delta2, 1.0);
        let rd = carlson_rd(cp2, delta2, 1.0);
        k * (sp * sp * sp * rd / 3.0 - self.rd0 / 3.0 - f + self.kk)
    }

    fn s_odd(&self, theta: f64) -> f64 {
        if theta < 0.0 {
            -self.j(-theta)
        } else {
            self.j(theta)
        }
    }

    /// `z(θ)` for any `θ ∈ [−π, π]` through the Legendre reduction.
    pub fn z(&self, theta: f64) -> Result<f64, Error> {
        if !(-PI..=PI).contains(&theta) {
            return Err(Error::AngleOutOfRange {
                name: "theta",
                value: theta,
                lo: -PI,
                hi: PI,
            });
        }
        let bracket = self.s_odd(theta) - self.s_bar + theta.cos() - self.theta_bar.cos();
        Ok(self.z_bar - bracket / (2.0 * self.lambda))
    }

    /// `z(θ)` from the incomplete integrals exactly as in the closed form
    /// for `θ ∈ (0, π]`, with the `1/k` prefactors.
    pub fn z_closed_form(&self, theta: f64) -> Result<f64, Error> {
        if !(theta > 0.0 && theta <= PI) {
            return Err(Error::AngleOutOfRange {
                name: "theta1",
                value: theta,
                lo: 0.0,
                hi: PI,
            });
        }
        let k = self.k;
        let kp2 = self.k_prime * self.k_prime;
        let (f1, e1) = incomplete_fe(FRAC_PI_2 - theta, k)?;
        let (f2, e2) = incomplete_fe(self.theta_bar + FRAC_PI_2, k)?;
        let inner = kp2 / k * (f1 + f2 - 2.0 * self.kk) - (e1 + e2 - 2.0 * self.ee) / k
            + theta.cos()
            - self.theta_bar.cos()
            - 2.0 * self.lambda * self.z_bar;
        Ok(-inner / (2.0 * self.lambda))
    }

    /// `z(θ) = z̄ + ∫_{θ̄}^{θ} z′(x) dx` by adaptive quadrature.
    pub fn z_quadrature(&self, theta: f64, opts: &QuadratureOptions) -> Result<f64, Error> {
        let v = integrate(|x| self.tangent(x).1, self.theta_bar, theta, opts)?;
        Ok(self.z_bar + v)
    }

    pub fn point(&self, theta: f64) -> Result<Point, Error> {
        Ok(Point::new(self.r(theta), self.z(theta)?))
    }

    /// `√(sin²θ + c²) − sin θ` without cancellation.
    fn gap(&self, s: f64) -> f64 {
        let root = self.root(s);
        if s > 0.0 {
            self.c2 / (root + s)
        } else {
            root - s
        }
    }

    /// `(r(θ) − r(θ̄), z(θ) − z̄)` with every difference formed analytically,
    /// so that short arcs far from the axis keep full relative accuracy.
    pub fn offset(&self, theta: f64) -> Result<Point, Error> {
        self.offset_by(theta - self.theta_bar)
    }

    /// [`NodoidArc::offset`] at `θ = θ̄ + δ`. Uniform steps in `δ` stay
    /// uniform, which they would not after rounding `θ̄ + δ`.
    pub fn offset_by(&self, delta: f64) -> Result<Point, Error> {
        let theta = self.theta_bar + delta;
        if !(-PI..=PI).contains(&theta) {
            return Err(Error::AngleOutOfRange {
                name: "theta",
                value: theta,
                lo: -PI,
                hi: PI,
            });
        }
        let (s, sb) = (theta.sin(), self.theta_bar.sin());
        let half_sum = self.theta_bar + 0.5 * delta;
        let sin_half = (0.5 * delta).sin();
        let ds = 2.0 * half_sum.cos() * sin_half;
        let dc = -2.0 * half_sum.sin() * sin_half;
        let shrink = (self.gap(s) + self.gap(sb)) / (self.root(s) + self.root(sb));
        let dr = ds * shrink / (2.0 * self.lambda);
        let dz = -(self.s_odd(theta) - self.s_bar + dc) / (2.0 * self.lambda);
        Ok(Point::new(dr, dz))
    }
}

fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<(), Error> {
    // Endpoints computed from the same closed forms may differ by a rounding.
    let slack = 4.0 * f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
    if value.is_finite() && value >= lo - slack && value <= hi + slack {
        Ok(())
    } else {
        Err(Error::AngleOutOfRange {
            name,
            value,
            lo,
            hi,
        })
    }
}

/// A point of `Γ₁`, `θ₁ ∈ [θ̄₁, θc]` (`θc = π` when not yet solved).
pub fn gamma1_point(theta1: f64, dp: &DerivedParams) -> Result<Point, Error> {
    check_range("theta1", theta1, dp.theta1_bar, dp.theta1_upper())?;
    dp.inner_arc()?.point(theta1)
}

/// A point of `Γ₂`, `θ₂ ∈ [0, θ̄₂]`.
pub fn gamma2_point(theta2: f64, dp: &DerivedParams) -> Result<Point, Error> {
    check_range("theta2", theta2, 0.0, dp.theta2_bar)?;
    dp.outer_arc()?.point(theta2)
}

/// A point of `Γ₃`: `r = A/sin θ₃`, `z = A ln((1 + cos θ₃)/sin θ₃)`.
pub fn gamma3_point(theta3: f64, dp: &DerivedParams) -> Result<Point, Error> {
    check_range("theta3", theta3, dp.theta3_bar, FRAC_PI_2)?;
    let (s, c) = theta3.sin_cos();
    Ok(Point::new(dp.a / s, dp.a * ((1.0 + c) / s).ln()))
}

/// `Γ₃` relative to the junction, `(r − r̄, z − z̄)` at `θ₃ = θ̄₃ + δ`.
pub fn gamma3_offset(delta: f64, dp: &DerivedParams) -> Result<Point, Error> {
    let tb = dp.theta3_bar;
    let t = tb + delta;
    check_range("theta3", t, tb, FRAC_PI_2)?;
    let half = 0.5 * delta;
    let dsin = 2.0 * (tb + half).cos() * half.sin();
    let dr = -dp.a * dsin / (t.sin() * tb.sin());
    // ln(tan(θ̄/2) / tan(θ/2)) = ln(1 + sin(−δ/2) / (cos(θ̄/2) sin(θ/2))).
    let ratio_m1 = (-half).sin() / ((0.5 * tb).cos() * (0.5 * t).sin());
    let dz = dp.a * ratio_m1.ln_1p();
    Ok(Point::new(dr, dz))
}

/// The three curves as offsets from the junction `(r̄, z̄)`, in the
/// orientation of [`ProfileSet::sample`] but stepped uniformly in
/// `δ = θ − θ̄`. Feed them to
/// [`discrete_mean_curvature_about`](super::curvature::discrete_mean_curvature_about)
/// with the junction as origin.
pub fn junction_frame_curves(dp: &DerivedParams, n: usize) -> Result<[Curve; 3], Error> {
    let theta_c = dp.theta_c.ok_or(Error::ContactAngleUnset)?;
    let inner = dp.inner_arc()?;
    let outer = dp.outer_arc()?;
    let shift = |mut c: Curve, by: f64| {
        c.theta.iter_mut().for_each(|t| *t += by);
        c
    };
    // Both nodoid arcs are anchored at the junction height z̄.
    Ok([
        shift(
            Curve::sample("gamma1", theta_c - dp.theta1_bar, 0.0, n, |d| {
                inner.offset_by(d)
            })?,
            dp.theta1_bar,
        ),
        shift(
            Curve::sample("gamma2", 0.0, -dp.theta2_bar, n, |d| outer.offset_by(d))?,
            dp.theta2_bar,
        ),
        shift(
            Curve::sample("gamma3", FRAC_PI_2 - dp.theta3_bar, 0.0, n, |d| {
                gamma3_offset(d, dp)
            })?,
            dp.theta3_bar,
        ),
    ])
}

/// `z₁(θ₁)` for `θ₁ ∈ (0, π]` from `F`, `E`, `K`, `E(k)`.
pub fn z1_legendre(theta1: f64, dp: &DerivedParams) -> Result<f64, Error> {
    dp.inner_arc()?.z_closed_form(theta1)
}

/// `z₁(θ₁)` by quadrature of the defining integral; any `θ₁ ∈ [−π, π]`.
pub fn z1_quadrature(
    theta1: f64,
    dp: &DerivedParams,
    opts: &QuadratureOptions,
) -> Result<f64, Error> {
    dp.inner_arc()?.z_quadrature(theta1, opts)
}

/// `z₂(θ₂)` through the same reduction with modulus `1/√(1+4λ²)`.
pub fn z2_legendre(theta2: f64, dp: &DerivedParams) -> Result<f64, Error> {
    dp.outer_arc()?.z(theta2)
}

pub fn z2_quadrature(
    theta2: f64,
    dp: &DerivedParams,
    opts: &QuadratureOptions,
) -> Result<f64, Error> {
    dp.outer_arc()?.z_quadrature(theta2, opts)
}

/// A sampled meridian curve with its parameter values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub name: String,
    pub theta: Vec<f64>,
    pub points: Vec<Point>,
}

impl Curve {
    /// Samples `f` at `n` equally spaced parameters from `from` to `to`.
    pub fn sample<F>(name: &str, from: f64, to: f64, n: usize, mut f: F) -> Result<Self, Error>
    where
        F: FnMut(f64) -> Result<Point, Error>,
    {
        if n < 2 {
            return Err(Error::InsufficientSamples { need: 2, got: n });
        }
        let mut theta = Vec::with_capacity(n);
        let mut points = Vec::with_capacity(n);
        for i in 0..n {
            let t = if i + 1 == n {
                to
            } else {
                from + (to - from) * i as f64 / (n - 1) as f64
            };
            theta.push(t);
            points.push(f(t)?);
        }
        Ok(Self {
            name: name.to_string(),
            theta,
            points,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first(&self) -> Point {
        self.points[0]
    }

    pub fn last(&self) -> Point {
        self.points[self.points.len() - 1]
    }

    pub fn translated(&self, dr: f64, dz: f64) -> Self {
        Self {
            name: self.name.clone(),
            theta: self.theta.clone(),
            points: self
                .points
                .iter()
                .map(|p| Point::new(p.r + dr, p.z + dz))
                .collect(),
        }
    }
}

/// The three sampled curves of a solved state and its distinguished points.
///
/// Each curve is ordered from its free end towards the junction except `Γ₂`,
/// which runs from the junction out to the cylinder wall; this is the
/// orientation in which the discrete mean curvature comes out as `λ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileSet {
    pub gamma1: Curve,
    pub gamma2: Curve,
    pub gamma3: Curve,
    pub junction: Point,
    pub contact: Point,
    pub neck: Point,
    pub wall: Point,
}

impl ProfileSet {
    /// Samples `n` points per curve; `dp` must carry `θc`.
    pub fn sample(dp: &DerivedParams, n: usize) -> Result<Self, Error> {
        let theta_c = dp.theta_c.ok_or(Error::ContactAngleUnset)?;
        let inner = dp.inner_arc()?;
        let outer = dp.outer_arc()?;
        let gamma1 = Curve::sample("gamma1", theta_c, dp.theta1_bar, n, |t| inner.point(t))?;
        let gamma2 = Curve::sample("gamma2", dp.theta2_bar, 0.0, n, |t| outer.point(t))?;
        let gamma3 = Curve::sample("gamma3", FRAC_PI_2, dp.theta3_bar, n, |t| {
            gamma3_point(t, dp)
        })?;
        Ok(Self {
            junction: Point::new(dp.r_bar, dp.z_bar),
            contact: Point::new(inner.r(theta_c), 0.0),
            neck: Point::new(dp.a, 0.0),
            wall: Point::new(1.0, dp.z2_star),
            gamma1,
            gamma2,
            gamma3,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steady::{derive_parameters, FreeParams};
    use approx::assert_abs_diff_eq;

    fn sample_dp() -> DerivedParams {
        derive_parameters(FreeParams::new(0.9, 0.05).unwrap(), 1.72).unwrap()
    }

    #[test]
    fn offsets_agree_with_points() {
        let dp = sample_dp().with_theta_c(2.5).unwrap();
        let j = Point::new(dp.r_bar, dp.z_bar);
        let frames = junction_frame_curves(&dp, 64).unwrap();
        let ps = ProfileSet::sample(&dp, 64).unwrap();
        for (local, abs) in frames.iter().zip([&ps.gamma1, &ps.gamma2, &ps.gamma3]) {
            for (p, q) in local.points.iter().zip(&abs.points) {
                assert_abs_diff_eq!(j.r + p.r, q.r, epsilon = 1e-12);
                assert_abs_diff_eq!(j.z + p.z, q.z, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn junction_closure() {
        let dp = sample_dp();
        for p in [
            gamma1_point(dp.theta1_bar, &dp).unwrap(),
            gamma2_point(dp.theta2_bar, &dp).unwrap(),
            gamma3_point(dp.theta3_bar, &dp).unwrap(),
        ] {
            assert_abs_diff_eq!(p.r, dp.r_bar, epsilon = 1e-12);
            assert_abs_diff_eq!(p.z, dp.z_bar, epsilon = 1e-12);
        }
    }

    #[test]
    fn neck_and_wall() {
        let dp = sample_dp();
        let p = gamma3_point(FRAC_PI_2, &dp).unwrap();
        assert_abs_diff_eq!(p.r, dp.a, epsilon = 1e-15);
        assert_abs_diff_eq!(p.z, 0.0, epsilon = 1e-15);
        let w = gamma2_point(0.0, &dp).unwrap();
        assert_abs_diff_eq!(w.r, 1.0, epsilon = 1e-14);
        assert!(dp.z2_star > 0.0);
    }

    #[test]
    fn three_z_routes_agree() {
        let dp = sample_dp();
        let inner = dp.inner_arc().unwrap();
        let opts = QuadratureOptions::default();
        for i in 1..=20 {
            let t = PI * i as f64 / 20.0;
            let a = inner.z(t).unwrap();
            let b = inner.z_closed_form(t).unwrap();
            let c = inner.z_quadrature(t, &opts).unwrap();
            assert_abs_diff_eq!(a, c, epsilon = 1e-11);
            assert_abs_diff_eq!(b, c, epsilon = 1e-10);
        }
        for i in 0..=20 {
            let t = dp.theta1_bar * i as f64 / 20.0;
            assert_abs_diff_eq!(
                inner.z(t).unwrap(),
                inner.z_quadrature(t, &opts).unwrap(),
                epsilon = 1e-11
            );
        }
    }

    #[test]
    fn legendre_rejects_nonpositive_angle() {
        let dp = sample_dp();
        assert!(z1_legendre(0.0, &dp).is_err());
        assert!(z1_legendre(-0.3, &dp).is_err());
        assert!(z1_legendre(PI, &dp).is_ok());
    }

    #[test]
    fn out_of_range_angles() {
        let dp = sample_dp();
        assert!(gamma3_point(0.5 * dp.theta3_bar, &dp).is_err());
        assert!(gamma2_point(-0.1, &dp).is_err());
        assert!(gamma1_point(dp.theta1_bar - 0.1, &dp).is_err());
    }

    #[test]
    fn catenary_relation() {
        let dp = sample_dp();
        for i in 0..=10 {
            let t = dp.theta3_bar + (FRAC_PI_2 - dp.theta3_bar) * i as f64 / 10.0;
            let p = gamma3_point(t, &dp).unwrap();
            assert_abs_diff_eq!(p.r, dp.a * (p.z / dp.a).cosh(), epsilon = 1e-14);
        }
    }
}

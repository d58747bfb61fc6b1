mod common;

use std::f64::consts::PI;

use nodoid_core::quadrature::QuadratureOptions;
use nodoid_core::quantities::{
    arc_length, diagnostics, effective_energy_with, gamma3_length, total_volume_with,
};
use nodoid_core::solvers::{solve_sigma, SolveOptions};
use nodoid_core::steady::{
    derive_parameters, gamma3_point, Curve, DerivedParams, FreeParams, PhysicalAngles, Point,
};

use common::admissible_sets;

/// Γ₃ depends on `(A, σ)` only; `β` just has to give a real `a_ℓ`.
fn corner_state() -> DerivedParams {
    [1.6, 1.65, 1.72, 2.0, 2.5, 3.0]
        .into_iter()
        .find_map(|b| derive_parameters(FreeParams { a: 0.8, sigma: 0.3 }, b).ok())
        .expect("some beta admits (0.8, 0.3)")
}

fn solved(beta: f64, theta_c: f64, a: f64) -> (DerivedParams, PhysicalAngles) {
    let pa = PhysicalAngles::new(beta, theta_c).unwrap();
    let sol = solve_sigma(a, &pa, &SolveOptions::default()).unwrap();
    let pa = pa.with_theta_c(sol.theta_c).unwrap();
    let dp = derive_parameters(
        FreeParams {
            a,
            sigma: sol.sigma,
        },
        beta,
    )
    .unwrap()
    .with_theta_c(sol.theta_c)
    .unwrap();
    (dp, pa)
}

#[test]
fn grain_boundary_length_is_sigma() {
    let dp = corner_state();
    assert!((gamma3_length(&dp).unwrap() - 0.3).abs() < 1e-12);
    assert_eq!(
        arc_length(&[Point::new(0.0, 0.0), Point::new(3.0, 4.0)]),
        5.0
    );
}

#[test]
fn polyline_length_converges_at_second_order() {
    let dp = corner_state();
    let err = |n: usize| {
        let c = Curve::sample("g3", dp.theta3_bar, PI / 2.0, n, |t| gamma3_point(t, &dp)).unwrap();
        (arc_length(&c.points) - 0.3).abs()
    };
    let errs: Vec<f64> = [25, 50, 100, 200].into_iter().map(err).collect();
    for w in errs.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!(
            (order - 2.0).abs() < 0.1,
            "observed order {order} from {errs:?}"
        );
    }
}

#[test]
fn hole_radius_bounds() {
    for s in admissible_sets(21, 40) {
        let d = diagnostics(&s.dp, &s.pa).unwrap();
        assert!(0.0 < d.r1_star, "r1* = {}", d.r1_star);
        assert!(
            d.r1_star < s.dp.a_ell,
            "r1* = {} >= a_ell = {}",
            d.r1_star,
            s.dp.a_ell
        );
        assert!(s.dp.a_ell < s.dp.r_bar);
    }
}

#[test]
fn integrals_stable_under_resolution_doubling() {
    let base = QuadratureOptions {
        abs_tol: 1e-13,
        rel_tol: 0.0,
        initial_panels: 4,
        max_subdivisions: 4000,
    };
    let fine = QuadratureOptions {
        initial_panels: 8,
        max_subdivisions: 8000,
        ..base
    };
    let mut states = vec![
        solved(1.72, PI, 0.995),
        solved(2.0, 11.0 * PI / 18.0, 0.993),
        solved(2.5, 2.0, 0.997),
    ];
    states.extend(admissible_sets(22, 10).into_iter().map(|s| (s.dp, s.pa)));
    for (dp, pa) in &states {
        let e = (
            effective_energy_with(dp, pa, &base).unwrap(),
            effective_energy_with(dp, pa, &fine).unwrap(),
        );
        let v = (
            total_volume_with(dp, pa, &base).unwrap(),
            total_volume_with(dp, pa, &fine).unwrap(),
        );
        assert!((e.0 - e.1).abs() <= 1e-9, "energy {e:?}");
        assert!((v.0 - v.1).abs() <= 1e-9, "volume {v:?}");
    }
}

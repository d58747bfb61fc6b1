//! Oracles shared by the integration tests. Nothing here calls into the
//! crate's own quadrature or root finders.
#![allow(dead_code)]

use nodoid_core::solvers::{theta_c_of, SolveOptions};
use nodoid_core::steady::{
    check_constraints, derive_parameters, sigma_max, ConstraintMode, DerivedParams, FreeParams,
    PhysicalAngles,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton on `P_n`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite 20-point Gauss-Legendre over `panels` equal panels.
pub fn gl_integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let rule = gauss_legendre(20);
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let mid = a + h * (p as f64 + 0.5);
        for &(x, w) in &rule {
            sum += w * f(mid + 0.5 * h * x);
        }
    }
    0.5 * h * sum
}

/// Fourth-order central difference.
pub fn central_diff(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A parameter set whose state is fully defined: `λ < 0`, `a_ℓ` real, a
/// contact angle exists and (C1)–(C5) hold.
#[derive(Debug, Clone)]
pub struct Admissible {
    pub fp: FreeParams,
    pub pa: PhysicalAngles,
    pub dp: DerivedParams,
}

pub fn admissible_sets(seed: u64, count: usize) -> Vec<Admissible> {
    let mut rng = rng(seed);
    let opts = SolveOptions::default();
    let mut out = Vec::with_capacity(count);
    let mut tries = 0;
    while out.len() < count {
        tries += 1;
        assert!(tries < 200 * count, "sampler starved after {tries} draws");
        let beta = rng.gen_range(1.65..3.05);
        let a = 1.0 - 10f64.powf(rng.gen_range(-4.0..-0.3));
        let sigma = sigma_max(a) * rng.gen_range(0.001..0.999);
        let fp = FreeParams { a, sigma };
        let Ok(dp) = derive_parameters(fp, beta) else {
            continue;
        };
        let Ok(theta_c) = theta_c_of(fp, beta, &opts) else {
            continue;
        };
        if !(theta_c > dp.theta1_bar + 1e-3 && theta_c > 1e-3) {
            continue;
        }
        let Ok(pa) = PhysicalAngles::new(beta, theta_c) else {
            continue;
        };
        let rep = check_constraints(fp, &pa, ConstraintMode::Sufficient);
        if !["C1", "C2", "C3", "C4", "C5"]
            .iter()
            .all(|n| rep.get(n).is_some_and(|c| c.satisfied))
        {
            continue;
        }
        let Ok(dp) = dp.with_theta_c(theta_c) else {
            continue;
        };
        out.push(Admissible { fp, pa, dp });
    }
    out
}

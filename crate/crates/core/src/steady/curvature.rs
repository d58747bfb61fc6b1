//! Discrete mean curvature of a sampled meridian curve.
//!
//! With `α` the sample index,
//!
//! ```text
//! H = (r_α z_αα − z_α r_αα) / (2 (r_α² + z_α²)^{3/2}) + z_α / (2 r √(r_α² + z_α²))
//! ```
//!
//! Derivatives are sixth-order central differences taken over a stride of
//! several samples. The stride is the power of two at which the curvature
//! agrees best with the curvature at twice the stride: too short a stride
//! lets rounding in the second difference through, too long a one loses
//! the curve's shape.

use super::curves::Point;
use crate::error::Error;

pub const MIN_CURVATURE_SAMPLES: usize = 16;

fn d1(f: [f64; 7], h: f64) -> f64 {
    (-f[0] + 9.0 * f[1] - 45.0 * f[2] + 45.0 * f[4] - 9.0 * f[5] + f[6]) / (60.0 * h)
}

fn d2(f: [f64; 7], h: f64) -> f64 {
    (2.0 * f[0] - 27.0 * f[1] + 270.0 * f[2] - 490.0 * f[3] + 270.0 * f[4] - 27.0 * f[5]
        + 2.0 * f[6])
        / (180.0 * h * h)
}

/// `H` at every sample whose stencil fits, as `(index, H)`.
pub fn discrete_mean_curvature(points: &[Point]) -> Result<Vec<(usize, f64)>, Error> {
    discrete_mean_curvature_about(points, Point::new(0.0, 0.0))
}

/// As [`discrete_mean_curvature`] for samples given as offsets from
/// `origin`. Differencing small offsets instead of absolute coordinates
/// keeps short curves far from the axis free of rounding noise.
pub fn discrete_mean_curvature_about(
    points: &[Point],
    origin: Point,
) -> Result<Vec<(usize, f64)>, Error> {
    let n = points.len();
    if n < MIN_CURVATURE_SAMPLES {
        return Err(Error::InsufficientSamples {
            need: MIN_CURVATURE_SAMPLES,
            got: n,
        });
    }
    let stride = choose_stride(points, origin);
    Ok((3 * stride..n - 3 * stride)
        .map(|i| (i, curvature_at(points, origin, i, stride)))
        .collect())
}

fn curvature_at(points: &[Point], origin: Point, i: usize, s: usize) -> f64 {
    let mut r = [0.0; 7];
    let mut z = [0.0; 7];
    for j in 0..7 {
        let p = points[i + j * s - 3 * s];
        r[j] = p.r;
        z[j] = p.z;
    }
    let h = s as f64;
    let (ra, za) = (d1(r, h), d1(z, h));
    let (raa, zaa) = (d2(r, h), d2(z, h));
    let speed2 = ra * ra + za * za;
    let speed = speed2.sqrt();
    (ra * zaa - za * raa) / (2.0 * speed2 * speed) + za / (2.0 * (origin.r + r[3]) * speed)
}

/// Powers of two `s` for which both `s` and `2s` leave interior samples;
/// picks the one minimizing `max |H_s − H_2s|`.
fn choose_stride(points: &[Point], origin: Point) -> usize {
    let n = points.len();
    let mut best = (1, f64::INFINITY);
    let mut s = 1;
    while 12 * s < n {
        let mut worst = 0.0_f64;
        // Every index valid for the doubled stencil, thinned on long curves.
        let step = ((n - 12 * s) / 512).max(1);
        for i in (6 * s..n - 6 * s).step_by(step) {
            let d =
                (curvature_at(points, origin, i, s) - curvature_at(points, origin, i, 2 * s)).abs();
            worst = worst.max(if d.is_nan() { f64::INFINITY } else { d });
        }
        if worst < best.1 {
            best = (s, worst);
        }
        s *= 2;
    }
    best.0
}

/// `max |H − expected|` over the sampled curve.
pub fn curvature_residual(points: &[Point], expected_h: f64) -> Result<f64, Error> {
    curvature_residual_about(points, Point::new(0.0, 0.0), expected_h)
}

/// `max |H − expected|` for samples given as offsets from `origin`.
pub fn curvature_residual_about(
    points: &[Point],
    origin: Point,
    expected_h: f64,
) -> Result<f64, Error> {
    Ok(discrete_mean_curvature_about(points, origin)?
        .into_iter()
        .map(|(_, h)| (h - expected_h).abs())
        .fold(0.0, f64::max))
}

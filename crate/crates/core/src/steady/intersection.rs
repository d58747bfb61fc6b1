//! Does `Γ₁` meet `Γ₃` anywhere other than the triple junction?

use std::f64::consts::FRAC_PI_2;

use super::curves::{gamma3_point, Curve, Point};
use super::{DerivedParams, PhysicalAngles};
use crate::error::Error;

const BASE_SAMPLES: usize = 64;
const MAX_LEVEL: usize = 6;

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.r - o.r) * (b.z - o.z) - (a.z - o.z) * (b.r - o.r)
}

fn segment_intersection(p0: Point, p1: Point, q0: Point, q1: Point) -> Option<Point> {
    let (dr, dz) = (p1.r - p0.r, p1.z - p0.z);
    let (er, ez) = (q1.r - q0.r, q1.z - q0.z);
    let denom = dr * ez - dz * er;
    let d1 = cross(q0, q1, p0);
    let d2 = cross(q0, q1, p1);
    let d3 = cross(p0, p1, q0);
    let d4 = cross(p0, p1, q1);
    let straddles = |x: f64, y: f64| (x <= 0.0 && y >= 0.0) || (x >= 0.0 && y <= 0.0);
    if !(straddles(d1, d2) && straddles(d3, d4)) {
        return None;
    }
    if denom == 0.0 {
        // Collinear overlap: report the first shared endpoint.
        for p in [p0, p1] {
            let t = if er.abs() > ez.abs() {
                (p.r - q0.r) / er
            } else {
                (p.z - q0.z) / ez
            };
            if (0.0..=1.0).contains(&t) {
                return Some(p);
            }
        }
        return Some(q0);
    }
    let t = ((q0.r - p0.r) * ez - (q0.z - p0.z) * er) / denom;
    Some(Point::new(p0.r + t * dr, p0.z + t * dz))
}

fn bbox(p: &[Point]) -> (f64, f64, f64, f64) {
    p.iter().fold(
        (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        ),
        |(a, b, c, d), q| (a.min(q.r), b.max(q.r), c.min(q.z), d.max(q.z)),
    )
}

/// Every crossing of two polylines.
pub fn polyline_intersections(a: &[Point], b: &[Point]) -> Vec<Point> {
    let mut out = Vec::new();
    if a.len() < 2 || b.len() < 2 {
        return out;
    }
    let (r0, r1, z0, z1) = bbox(b);
    for s in a.windows(2) {
        let (p0, p1) = (s[0], s[1]);
        if p0.r.max(p1.r) < r0 || p0.r.min(p1.r) > r1 || p0.z.max(p1.z) < z0 || p0.z.min(p1.z) > z1
        {
            continue;
        }
        for t in b.windows(2) {
            let (q0, q1) = (t[0], t[1]);
            if p0.r.max(p1.r) < q0.r.min(q1.r)
                || p0.r.min(p1.r) > q0.r.max(q1.r)
                || p0.z.max(p1.z) < q0.z.min(q1.z)
                || p0.z.min(p1.z) > q0.z.max(q1.z)
            {
                continue;
            }
            if let Some(x) = segment_intersection(p0, p1, q0, q1) {
                out.push(x);
            }
        }
    }
    out
}

/// True iff every crossing of `a` and `b` lies within `tol` of `at`.
pub fn polylines_meet_only_at(a: &[Point], b: &[Point], at: Point, tol: f64) -> bool {
    polyline_intersections(a, b)
        .iter()
        .all(|p| p.dist(&at) <= tol)
}

fn distance_to_segment(p: Point, q0: Point, q1: Point) -> f64 {
    let (er, ez) = (q1.r - q0.r, q1.z - q0.z);
    let len2 = er * er + ez * ez;
    let t = if len2 > 0.0 {
        (((p.r - q0.r) * er + (p.z - q0.z) * ez) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    p.dist(&Point::new(q0.r + t * er, q0.z + t * ez))
}

/// Largest deviation of a polyline from a smooth curve through its vertices,
/// estimated from second differences.
fn sag(p: &[Point]) -> f64 {
    p.windows(3)
        .map(|w| {
            let dr = w[0].r - 2.0 * w[1].r + w[2].r;
            let dz = w[0].z - 2.0 * w[1].z + w[2].z;
            dr.hypot(dz)
        })
        .fold(0.0, f64::max)
}

/// Checks `Γ₁ ∩ Γ₃ = {(r̄, z̄)}` on sampled polylines of both curves.
///
/// `a_ℓ < A` is accepted at once: `Γ₁` then lies in `r ≤ a_ℓ` below the
/// junction height while `Γ₃` lies in `r ≥ A`. Otherwise both curves are
/// sampled and refined until crossings away from the junction either repeat at
/// two consecutive resolutions or the curves are separated by more than the
/// sampling error. [`Error::Resolution`] is returned when neither happens
/// within the refinement cap.
pub fn intersection_check(dp: &DerivedParams, pa: &PhysicalAngles) -> Result<bool, Error> {
    if dp.a_ell < dp.a {
        return Ok(true);
    }
    let theta_c = dp.theta_c.unwrap_or(pa.theta_c);
    let inner = dp.inner_arc()?;
    let junction = Point::new(dp.r_bar, dp.z_bar);
    let mut crossed_before = false;
    for level in 0..=MAX_LEVEL {
        let n = BASE_SAMPLES << level;
        let g1 = Curve::sample("gamma1", theta_c, dp.theta1_bar, n, |t| inner.point(t))?;
        let g3 = Curve::sample("gamma3", FRAC_PI_2, dp.theta3_bar, n, |t| {
            gamma3_point(t, dp)
        })?;
        let seg = g1
            .points
            .windows(2)
            .chain(g3.points.windows(2))
            .map(|w| w[0].dist(&w[1]))
            .fold(0.0, f64::max);
        let radius = 4.0 * seg;
        let crossed = polyline_intersections(&g1.points, &g3.points)
            .iter()
            .any(|p| p.dist(&junction) > radius);
        if crossed {
            if crossed_before {
                return Ok(false);
            }
            crossed_before = true;
            continue;
        }
        crossed_before = false;
        let gap = g1
            .points
            .iter()
            .filter(|p| p.dist(&junction) > radius)
            .map(|&p| {
                g3.points
                    .windows(2)
                    .map(|w| distance_to_segment(p, w[0], w[1]))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(f64::INFINITY, f64::min);
        if gap > 4.0 * (sag(&g1.points) + sag(&g3.points)) {
            return Ok(true);
        }
    }
    Err(Error::Resolution(MAX_LEVEL))
}

//! Bracketed scalar root finding (Brent's method).

use crate::error::SolveError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
}

/// Finds a root of `f` in `[a, b]` given values of opposite sign at the ends.
///
/// Inverse quadratic / secant steps are accepted only while they land inside
/// the bracket and shrink it fast enough; otherwise the step is a bisection.
/// Stops when the bracket is narrower than `2·xtol + 4ε|x|` or `f(x) = 0`.
pub fn brent<F>(
    mut f: F,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    xtol: f64,
    max_iterations: usize,
) -> Result<Root, SolveError>
where
    F: FnMut(f64) -> Result<f64, SolveError>,
{
    if fa == 0.0 {
        return Ok(Root {
            x: a,
            fx: fa,
            iterations: 0,
        });
    }
    if fb == 0.0 {
        return Ok(Root {
            x: b,
            fx: fb,
            iterations: 0,
        });
    }
    if fa.signum() == fb.signum() {
        return Err(SolveError::IterationLimit { lo: a, hi: b });
    }
    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for it in 1..=max_iterations {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(Root {
                x: b,
                fx: fb,
                iterations: it,
            });
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b)?;
    }
    let (lo, hi) = if b < c { (b, c) } else { (c, b) };
    Err(SolveError::IterationLimit { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(f: impl Fn(f64) -> f64) -> impl FnMut(f64) -> Result<f64, SolveError> {
        move |x| Ok(f(x))
    }

    #[test]
    fn quadratic_root() {
        let f = |x: f64| -x * x + 2.0 * x + 1.0;
        let r = brent(ok(f), 2.0, 3.0, f(2.0), f(3.0), 1e-14, 100).unwrap();
        assert!((r.x - (1.0 + 2f64.sqrt())).abs() < 1e-13);
    }

    #[test]
    fn flat_plateau_still_converges() {
        // Constant on one side of the root, as happens with clamped residuals.
        let f = |x: f64| if x > 0.3 { 1.0 } else { x - 0.3 };
        let r = brent(ok(f), 0.0, 1.0, f(0.0), f(1.0), 1e-13, 200).unwrap();
        assert!((r.x - 0.3).abs() < 1e-12);
    }

    #[test]
    fn steep_function() {
        let f = |x: f64| (x - 1e-3).powi(3) * 1e6;
        let r = brent(ok(f), -1.0, 1.0, f(-1.0), f(1.0), 1e-15, 300).unwrap();
        assert!((r.x - 1e-3).abs() < 1e-5);
    }

    #[test]
    fn same_sign_is_rejected() {
        let f = |x: f64| x * x + 1.0;
        assert!(brent(ok(f), -1.0, 1.0, 2.0, 2.0, 1e-12, 10).is_err());
    }

    #[test]
    fn iteration_limit_reports_bracket() {
        let f = |x: f64| x - 0.123456789;
        match brent(ok(f), 0.0, 1.0, f(0.0), f(1.0), 1e-16, 1) {
            Err(SolveError::IterationLimit { lo, hi }) => {
                assert!(lo <= 0.123456789 && hi >= 0.123456789)
            }
            Ok(r) => assert!((r.x - 0.123456789).abs() < 1e-12),
            Err(e) => panic!("{e}"),
        }
    }
}

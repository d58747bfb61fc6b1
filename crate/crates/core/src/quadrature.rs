//! Adaptive Gauss–Kronrod (7/15) quadrature on finite intervals.

use crate::error::QuadratureError;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the odd Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Uniform panels the interval is split into before adapting.
    pub initial_panels: usize,
    pub max_subdivisions: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 0.0,
            initial_panels: 1,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureOptions {
    pub fn with_abs_tol(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            ..Self::default()
        }
    }

    /// Twice the initial panels and half the tolerance.
    pub fn doubled(self) -> Self {
        Self {
            abs_tol: 0.5 * self.abs_tol,
            rel_tol: 0.5 * self.rel_tol,
            initial_panels: 2 * self.initial_panels.max(1),
            max_subdivisions: 2 * self.max_subdivisions,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

fn kronrod<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> Result<Panel, QuadratureError> {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(centre);
    if !fc.is_finite() {
        return Err(QuadratureError::NonFinite(centre));
    }
    let mut gauss = fc * WG[3];
    let mut kron = fc * WGK[7];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let (a, b) = (centre - dx, centre + dx);
        let (fa, fb) = (f(a), f(b));
        if !fa.is_finite() {
            return Err(QuadratureError::NonFinite(a));
        }
        if !fb.is_finite() {
            return Err(QuadratureError::NonFinite(b));
        }
        kron += w * (fa + fb);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (fa + fb);
        }
    }
    let value = kron * half;
    let error = ((kron - gauss) * half).abs();
    Ok(Panel {
        lo,
        hi,
        value,
        error,
    })
}

/// Integrates `f` over `[lo, hi]` (either orientation).
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    opts: &QuadratureOptions,
) -> Result<f64, QuadratureError> {
    if lo == hi {
        return Ok(0.0);
    }
    if hi < lo {
        return integrate(f, hi, lo, opts).map(|v| -v);
    }
    let n = opts.initial_panels.max(1);
    let width = (hi - lo) / n as f64;
    let mut panels = Vec::with_capacity(n + 16);
    for i in 0..n {
        let a = lo + width * i as f64;
        let b = if i + 1 == n { hi } else { a + width };
        panels.push(kronrod(&mut f, a, b)?);
    }
    let mut splits = 0;
    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.error).sum();
        let target = opts.abs_tol.max(opts.rel_tol * total.abs());
        if err <= target {
            return Ok(total);
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.lo + p.hi);
        if splits >= opts.max_subdivisions || mid <= p.lo || mid >= p.hi {
            return Err(QuadratureError::SubdivisionLimit {
                lo,
                hi,
                estimate: total,
                error: err,
            });
        }
        panels.push(kronrod(&mut f, p.lo, mid)?);
        panels.push(kronrod(&mut f, mid, p.hi)?);
        splits += 1;
    }
}

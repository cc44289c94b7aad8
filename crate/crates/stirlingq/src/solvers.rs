//! Scalar optimization and root-finding kernels used by the analysis layer.

use crate::error::{Error, Result};

/// Inclusive geometric grid from `lo` to `hi` with `n ≥ 2` points.
pub(crate) fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    debug_assert!(n >= 2 && lo > 0.0 && hi > lo);
    let ratio = (hi / lo).powf(1.0 / (n - 1) as f64);
    let mut pts: Vec<f64> = (0..n).map(|i| lo * ratio.powi(i as i32)).collect();
    pts[0] = lo;
    pts[n - 1] = hi;
    pts
}

/// Inclusive linear grid from `lo` to `hi` with `n ≥ 2` points.
pub(crate) fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    debug_assert!(n >= 2 && hi > lo);
    let step = (hi - lo) / (n - 1) as f64;
    let mut pts: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
    pts[0] = lo;
    pts[n - 1] = hi;
    pts
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct GoldenMax {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

const INV_PHI: f64 = 0.618_033_988_749_894_8; // (√5 − 1)/2

/// Golden-section search for the maximum of `f` on `[lo, hi]`, narrowing the
/// bracket until its width is at most `tol_x`. `f` is assumed unimodal on
/// the bracket; evaluation errors propagate.
pub(crate) fn golden_section_max<F>(mut f: F, lo: f64, hi: f64, tol_x: f64) -> Result<GoldenMax>
where
    F: FnMut(f64) -> Result<f64>,
{
    debug_assert!(hi > lo && tol_x > 0.0);
    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut iterations = 0usize;
    while b - a > tol_x && iterations < 400 {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
        iterations += 1;
    }
    let (x, value) = if f1 > f2 { (x1, f1) } else { (x2, f2) };
    Ok(GoldenMax { x, value, iterations })
}

/// Bisection for a root of `f` on `[lo, hi]`; the endpoints must already
/// bracket a sign change. Narrows to width `tol_x` and returns the midpoint.
pub(crate) fn bisect_root<F>(mut f: F, lo: f64, hi: f64, tol_x: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut a = lo;
    let mut b = hi;
    let fa = f(a)?;
    let fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    let increasing = fb > fa;
    while b - a > tol_x {
        let mid = 0.5 * (a + b);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == increasing {
            b = mid;
        } else {
            a = mid;
        }
    }
    Ok(0.5 * (a + b))
}

//! Parameter grids and finite differences along them.

use crate::error::{Error, Result};

/// Inclusive sweep `start, start + step, ...`; a last point within half a
/// step of `stop` is snapped onto it.
pub fn sweep_points(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(Error::NonUniformGrid("sweep bounds must be finite"));
    }
    if step <= 0.0 {
        return Err(Error::NonUniformGrid("sweep step must be positive"));
    }
    if start >= stop {
        return Err(Error::NonUniformGrid("sweep start must be below stop"));
    }
    let count = ((stop - start) / step + 0.5).floor() as usize + 1;
    let mut points: Vec<f64> = (0..count).map(|i| start + step * i as f64).collect();
    if let Some(last) = points.last_mut() {
        if (*last - stop).abs() <= 0.5 * step {
            *last = stop;
        }
    }
    Ok(points)
}

/// Derivative of `ys` on the uniform grid `xs`: central differences inside,
/// one-sided differences at the two ends.
pub fn scan_derivative(xs: &[f64], ys: &[f64]) -> Result<Vec<f64>> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch {
            expected: xs.len(),
            actual: ys.len(),
        });
    }
    let n = xs.len();
    if n < 3 {
        return Err(Error::NonUniformGrid("need at least three points"));
    }
    let h = (xs[n - 1] - xs[0]) / (n - 1) as f64;
    if !(h > 0.0) {
        return Err(Error::NonUniformGrid("abscissae must increase"));
    }
    for w in xs.windows(2) {
        if ((w[1] - w[0]) - h).abs() > 1e-6 * h {
            return Err(Error::NonUniformGrid("spacing is not uniform"));
        }
    }
    let mut out = Vec::with_capacity(n);
    out.push((ys[1] - ys[0]) / (xs[1] - xs[0]));
    for i in 1..n - 1 {
        out.push((ys[i + 1] - ys[i - 1]) / (xs[i + 1] - xs[i - 1]));
    }
    out.push((ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]));
    Ok(out)
}

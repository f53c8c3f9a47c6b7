//! Least-squares line fit and small summary statistics.

/// Ordinary least squares fit of `y = intercept + slope * x`.
/// Returns `(intercept, slope)`. Requires at least two points.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2);
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    (my - slope * mx, slope)
}

/// Slope of `ln y` against `ln x`; every value must be positive.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    linear_fit(&lx, &ly).1
}

pub fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Population standard deviation.
pub fn std_dev(v: &[f64]) -> f64 {
    let m = mean(v);
    (v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / v.len() as f64).sqrt()
}

/// Standard deviation divided by |mean|.
pub fn rel_std_dev(v: &[f64]) -> f64 {
    std_dev(v) / mean(v).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [0.5, 2.5, 4.5, 6.5];
        let (a, b) = linear_fit(&xs, &ys);
        assert!((a + 1.5).abs() < 1e-12);
        assert!((b - 2.0).abs() < 1e-12);
    }

    #[test]
    fn power_law_slope() {
        let xs = [1e-2f64, 3e-3, 1e-3];
        let ys: Vec<f64> = xs.iter().map(|x| 4.0 * x.powf(1.97)).collect();
        assert!((loglog_slope(&xs, &ys) - 1.97).abs() < 1e-10);
    }

    #[test]
    fn flat_series_has_zero_rel_std() {
        assert!(rel_std_dev(&[2.0, 2.0, 2.0]) < 1e-15);
    }
}

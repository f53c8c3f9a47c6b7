//! Point finite-difference stencils on uniform spacing.

/// First derivative, 2nd-order central.
#[inline]
pub fn d1_c2(fm1: f64, fp1: f64, h: f64) -> f64 {
    (fp1 - fm1) / (2.0 * h)
}

/// First derivative, 4th-order central.
#[inline]
pub fn d1_c4(fm2: f64, fm1: f64, fp1: f64, fp2: f64, h: f64) -> f64 {
    (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h)
}

/// Second derivative, 2nd-order central.
#[inline]
pub fn d2_c2(fm1: f64, f0: f64, fp1: f64, h: f64) -> f64 {
    (fp1 - 2.0 * f0 + fm1) / (h * h)
}

/// Second derivative, 4th-order central.
#[inline]
pub fn d2_c4(fm2: f64, fm1: f64, f0: f64, fp1: f64, fp2: f64, h: f64) -> f64 {
    (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h)
}

/// First derivative at the left end, 2nd-order one-sided (forward).
#[inline]
pub fn d1_forward2(f0: f64, f1: f64, f2: f64, h: f64) -> f64 {
    (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h)
}

/// First derivative at the right end, 2nd-order one-sided (backward).
#[inline]
pub fn d1_backward2(f0: f64, f1: f64, f2: f64, h: f64) -> f64 {
    (3.0 * f0 - 4.0 * f1 + f2) / (2.0 * h)
}

/// First derivative of a sampled line at index `i`: central in the interior,
/// one-sided 2nd-order at the ends.
pub fn d1_line(f: &[f64], i: usize, h: f64) -> f64 {
    let n = f.len();
    if i == 0 {
        d1_forward2(f[0], f[1], f[2], h)
    } else if i == n - 1 {
        d1_backward2(f[n - 1], f[n - 2], f[n - 3], h)
    } else {
        d1_c2(f[i - 1], f[i + 1], h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencil_orders() {
        let f = |x: f64| (1.3 * x).sin();
        let df = |x: f64| 1.3 * (1.3 * x).cos();
        let d2f = |x: f64| -1.69 * (1.3 * x).sin();
        let x = 0.4;
        for &h in &[1e-2, 5e-3] {
            let e2 = (d1_c2(f(x - h), f(x + h), h) - df(x)).abs();
            assert!(e2 < 1.0 * h * h);
            let e4 =
                (d1_c4(f(x - 2.0 * h), f(x - h), f(x + h), f(x + 2.0 * h), h) - df(x)).abs();
            assert!(e4 < 2.0 * h.powi(4));
            let s2 = (d2_c2(f(x - h), f(x), f(x + h), h) - d2f(x)).abs();
            assert!(s2 < 1.0 * h * h);
            let s4 = (d2_c4(f(x - 2.0 * h), f(x - h), f(x), f(x + h), f(x + 2.0 * h), h)
                - d2f(x))
            .abs();
            assert!(s4 < 2.0 * h.powi(4));
            let o2 = (d1_forward2(f(x), f(x + h), f(x + 2.0 * h), h) - df(x)).abs();
            assert!(o2 < 2.0 * h * h);
        }
    }
}

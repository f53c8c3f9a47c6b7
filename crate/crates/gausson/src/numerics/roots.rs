//! Scalar root finding: plain bisection and Newton with a bisection safeguard.

use crate::error::{Error, Result};

/// Bisection on `[a, b]`; requires a sign change. Converges unconditionally.
pub fn bisect<F>(mut f: F, mut a: f64, mut b: f64, xtol: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut fa = f(a)?;
    if fa == 0.0 {
        return Ok(a);
    }
    let fb = f(b)?;
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::CharInversion(format!(
            "no sign change on [{a}, {b}]: f(a)={fa:.3e}, f(b)={fb:.3e}"
        )));
    }
    for _ in 0..max_iter {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= xtol * m.abs().max(1.0) {
            return Ok(m);
        }
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    Ok(0.5 * (a + b))
}

/// Newton iteration constrained to `[lo, hi]`, falling back to bisection of
/// the bracket whenever a step leaves it or the derivative degenerates.
/// `f` returns `(value, derivative)`.
pub fn newton_bracketed<F>(
    mut f: F,
    x0: f64,
    mut lo: f64,
    mut hi: f64,
    xtol: f64,
    ftol: f64,
    max_iter: usize,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<(f64, f64)>,
{
    let (mut flo, _) = f(lo)?;
    let (fhi, _) = f(hi)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo * fhi > 0.0 {
        return Err(Error::CharInversion(format!(
            "newton bracket [{lo}, {hi}] has no sign change"
        )));
    }
    let mut x = x0.clamp(lo, hi);
    for _ in 0..max_iter {
        let (fx, dfx) = f(x)?;
        if fx.abs() <= ftol {
            return Ok(x);
        }
        if fx * flo < 0.0 {
            hi = x;
        } else {
            lo = x;
            flo = fx;
        }
        if (hi - lo).abs() <= xtol * x.abs().max(1.0) {
            return Ok(0.5 * (lo + hi));
        }
        let step_ok = dfx != 0.0 && dfx.is_finite();
        let x_new = if step_ok { x - fx / dfx } else { f64::NAN };
        x = if step_ok && x_new > lo && x_new < hi {
            x_new
        } else {
            0.5 * (lo + hi)
        };
    }
    Ok(x)
}

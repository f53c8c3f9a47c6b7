//! Dormand-Prince 5(4) embedded Runge-Kutta pair with PI-free step control
//! and bisection-based event location.
//!
//! The right-hand side may fail (e.g. a guarded radicand collapses); failures
//! abort the integration and surface the error to the caller.

use crate::error::{Error, Result};

/// Integrator options. Tolerances follow the usual mixed criterion
/// `|err_i| <= atol + rtol * |y_i|`.
#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Initial step magnitude; chosen automatically when `None`.
    pub h0: Option<f64>,
    /// Upper bound on the step magnitude.
    pub h_max: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rtol: 1e-10,
            atol: 1e-14,
            h0: None,
            h_max: f64::INFINITY,
            max_steps: 100_000,
        }
    }
}

/// Dense record of accepted steps plus the located event, if any.
#[derive(Debug, Clone)]
pub struct OdeSolution<const N: usize> {
    pub s: Vec<f64>,
    pub y: Vec<[f64; N]>,
    /// `(s*, y(s*))` where the event function first crossed zero.
    pub event: Option<(f64, [f64; N])>,
    pub n_steps: usize,
}

impl<const N: usize> OdeSolution<N> {
    pub fn last(&self) -> (f64, [f64; N]) {
        (*self.s.last().unwrap(), *self.y.last().unwrap())
    }
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// 4th-order weights for the error estimate.
const E1: f64 = B1 - 5179.0 / 57600.0;
const E3: f64 = B3 - 7571.0 / 16695.0;
const E4: f64 = B4 - 393.0 / 640.0;
const E5: f64 = B5 + 92097.0 / 339200.0;
const E6: f64 = B6 - 187.0 / 2100.0;
const E7: f64 = -1.0 / 40.0;

fn axpy<const N: usize>(y: &[f64; N], terms: &[(f64, &[f64; N])], h: f64) -> [f64; N] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..N {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// One Dormand-Prince step from `(s, y)` with step `h`.
/// Returns `(y_next, err_norm, k_last)` where `k_last` is f at the endpoint
/// (FSAL).
fn dopri5_step<const N: usize, F>(
    f: &mut F,
    s: f64,
    y: &[f64; N],
    k1: &[f64; N],
    h: f64,
    rtol: f64,
    atol: f64,
) -> Result<([f64; N], f64, [f64; N])>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
{
    let y2 = axpy(y, &[(A21, k1)], h);
    let k2 = f(s + h / 5.0, &y2)?;
    let y3 = axpy(y, &[(A31, k1), (A32, &k2)], h);
    let k3 = f(s + 3.0 * h / 10.0, &y3)?;
    let y4 = axpy(y, &[(A41, k1), (A42, &k2), (A43, &k3)], h);
    let k4 = f(s + 4.0 * h / 5.0, &y4)?;
    let y5 = axpy(y, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)], h);
    let k5 = f(s + 8.0 * h / 9.0, &y5)?;
    let y6 = axpy(
        y,
        &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
        h,
    );
    let k6 = f(s + h, &y6)?;
    let y7 = axpy(y, &[(B1, k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)], h);
    let k7 = f(s + h, &y7)?;

    let mut err_sq = 0.0;
    for i in 0..N {
        let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        let sc = atol + rtol * y[i].abs().max(y7[i].abs());
        let r = e / sc;
        err_sq += r * r;
    }
    let err = (err_sq / N as f64).sqrt();
    Ok((y7, err, k7))
}

/// Integrate `dy/ds = f(s, y)` from `s0` to `s_end` (either direction).
///
/// When `event` is provided, integration stops at the first sign change of
/// the event function between accepted steps; the crossing is located by
/// bisection with re-integration of the bracketing sub-step, to an `s`
/// resolution of `1e-14 * max(1, |s|)`.
pub fn integrate<const N: usize, F, G>(
    mut f: F,
    s0: f64,
    y0: [f64; N],
    s_end: f64,
    opts: &OdeOptions,
    event: Option<&G>,
) -> Result<OdeSolution<N>>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
    G: Fn(f64, &[f64; N]) -> f64,
{
    integrate_impl(&mut f, s0, y0, s_end, opts, event)
}

fn integrate_impl<const N: usize, F, G>(
    f: &mut F,
    s0: f64,
    y0: [f64; N],
    s_end: f64,
    opts: &OdeOptions,
    event: Option<&G>,
) -> Result<OdeSolution<N>>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
    G: Fn(f64, &[f64; N]) -> f64,
{
    let dir = (s_end - s0).signum();
    let span = (s_end - s0).abs();
    let mut sol = OdeSolution {
        s: vec![s0],
        y: vec![y0],
        event: None,
        n_steps: 0,
    };
    if span == 0.0 {
        return Ok(sol);
    }

    let mut s = s0;
    let mut y = y0;
    let mut k1 = f(s, &y)?;

    let mut h = match opts.h0 {
        Some(h0) => h0.abs(),
        None => {
            // Conservative heuristic: step so that the first-order change is
            // a small fraction of the tolerance scale.
            let fy: f64 = k1.iter().map(|v| v * v).sum::<f64>().sqrt();
            let yy: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
            let scale = (yy + opts.atol) / (fy + 1e-300);
            (1e-2 * scale).min(span / 10.0).max(1e-12 * span.max(1.0))
        }
    }
    .min(opts.h_max)
    .min(span);

    let mut g_prev = event.map(|g| g(s, &y));

    while (s - s_end) * dir < 0.0 {
        if sol.n_steps >= opts.max_steps {
            return Err(Error::Construction {
                what: "step limit exceeded".into(),
                tau: s,
                z: y[0],
                phi: if N > 1 { y[1] } else { 0.0 },
            });
        }
        let remaining = (s_end - s).abs();
        let h_try = h.min(remaining);
        if h_try < 1e-15 * s.abs().max(1.0) {
            return Err(Error::Construction {
                what: "step size underflow".into(),
                tau: s,
                z: y[0],
                phi: if N > 1 { y[1] } else { 0.0 },
            });
        }
        let (y_new, err, k_new) = dopri5_step(f, s, &y, &k1, dir * h_try, opts.rtol, opts.atol)?;
        sol.n_steps += 1;
        if err <= 1.0 {
            let s_new = s + dir * h_try;
            // Event check on the accepted interval [s, s_new].
            if let (Some(g), Some(gp)) = (event, g_prev) {
                let gn = g(s_new, &y_new);
                if gp == 0.0 {
                    sol.event = Some((s, y));
                    return Ok(sol);
                }
                if gp * gn <= 0.0 && gn != gp {
                    let (se, ye) = locate_event(f, s, &y, s_new, gp, g, opts)?;
                    sol.s.push(se);
                    sol.y.push(ye);
                    sol.event = Some((se, ye));
                    return Ok(sol);
                }
                g_prev = Some(gn);
            }
            s = s_new;
            y = y_new;
            k1 = k_new;
            sol.s.push(s);
            sol.y.push(y);
        }
        let fac = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h = (h_try * fac).min(opts.h_max);
    }
    Ok(sol)
}

/// Bisection on the event function over one accepted step, re-integrating
/// the sub-step from the step's start for every probe.
fn locate_event<const N: usize, F, G>(
    f: &mut F,
    s_lo: f64,
    y_lo: &[f64; N],
    s_hi: f64,
    g_lo: f64,
    g: &G,
    opts: &OdeOptions,
) -> Result<(f64, [f64; N])>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
    G: Fn(f64, &[f64; N]) -> f64,
{
    let sub_opts = OdeOptions {
        h0: Some(((s_hi - s_lo).abs() / 4.0).max(1e-14)),
        ..*opts
    };
    let mut lo = s_lo;
    let mut hi = s_hi;
    let sign_lo = g_lo.signum();
    let mut y_at = |s_probe: f64| -> Result<[f64; N]> {
        if s_probe == s_lo {
            return Ok(*y_lo);
        }
        let sol = integrate_impl::<N, F, fn(f64, &[f64; N]) -> f64>(
            f,
            s_lo,
            *y_lo,
            s_probe,
            &sub_opts,
            None,
        )?;
        Ok(sol.last().1)
    };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= 1e-14 * mid.abs().max(1.0) {
            let ym = y_at(mid)?;
            return Ok((mid, ym));
        }
        let ym = y_at(mid)?;
        let gm = g(mid, &ym);
        if gm == 0.0 {
            return Ok((mid, ym));
        }
        if gm.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let ym = y_at(0.5 * (lo + hi))?;
    Ok((0.5 * (lo + hi), ym))
}

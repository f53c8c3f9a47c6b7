//! Ground-state form factors and the nonlinearities they induce.
//!
//! A radial, positive, strictly decreasing form factor `psi1(r)` determines
//! the nonlinearity through the charge equilibrium equation
//! `lap psi1 = G1'(psi1^2) psi1`: inverting the monotone map `r -> psi1^2(r)`
//! gives `G1'(s) = lap psi1(r(s)) / psi1(r(s))` on `0 < s <= psi1^2(0)`,
//! extended to larger `s` by a C^1 continuation. Size dependence enters only
//! through the exact scaling `G_a'(s) = a^-2 G1'(a^3 s)`,
//! `G_a(s) = a^-5 G1(a^3 s)`.

use crate::error::{Error, Result};
use crate::numerics::{interp::MonotoneCubic, quad, roots};

/// Families of ground-state form factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GroundStateKind {
    /// `c_pw (1 + r^2)^-p`, requires `p > 3/4` for a finite L2 norm.
    PowerLaw { p: f64 },
    /// `c_e exp(-(r^2 + 1)^p)`, `p > 0`.
    Exponential { p: f64 },
    /// `C_g exp(-r^2 / 2)` with `C_g = pi^-3/4`; the gausson profile.
    Gaussian,
}

/// Radial form factor `psi1` with analytic derivatives and its family data.
#[derive(Debug, Clone)]
pub struct GroundState {
    pub kind: GroundStateKind,
    /// Normalization constant (`c_pw`, `c_e`, or `C_g`).
    pub norm_const: f64,
    /// Target L2 norm of the scaled profile (independent of `a`).
    pub norm_target: f64,
}

/// `C_g = pi^(-3/4)`.
pub fn gaussian_amplitude() -> f64 {
    std::f64::consts::PI.powf(-0.75)
}

pub fn make_ground_state(kind: GroundStateKind, _unused: f64) -> Result<GroundState> {
    GroundState::new(kind)
}

impl GroundState {
    pub fn new(kind: GroundStateKind) -> Result<Self> {
        let norm_const = match kind {
            GroundStateKind::PowerLaw { p } => {
                if !(p > 0.75) {
                    return Err(Error::Parameter(format!(
                        "power-law family requires p > 3/4, got {p}"
                    )));
                }
                // 4 pi c^2 Int r^2 (1+r^2)^(-2p) dr = 1.
                let (i, _) = quad::integrate(
                    |r| r * r * (1.0 + r * r).powf(-2.0 * p),
                    0.0,
                    power_law_tail_radius(p),
                    1e-13,
                    1e-13,
                );
                let tail = power_law_tail_integral(p);
                (4.0 * std::f64::consts::PI * (i + tail)).sqrt().recip()
            }
            GroundStateKind::Exponential { p } => {
                if !(p > 0.0) {
                    return Err(Error::Parameter(format!(
                        "exponential family requires p > 0, got {p}"
                    )));
                }
                let (i, _) = quad::integrate(
                    |r| r * r * (-2.0 * (r * r + 1.0).powf(p)).exp(),
                    0.0,
                    60.0f64.powf(1.0 / (2.0 * p).min(2.0)).max(12.0),
                    1e-15,
                    1e-13,
                );
                (4.0 * std::f64::consts::PI * i).sqrt().recip()
            }
            GroundStateKind::Gaussian => gaussian_amplitude(),
        };
        Ok(GroundState {
            kind,
            norm_const,
            norm_target: 1.0,
        })
    }

    /// `psi1(r)`.
    pub fn value(&self, r: f64) -> f64 {
        let c = self.norm_const;
        match self.kind {
            GroundStateKind::PowerLaw { p } => c * (1.0 + r * r).powf(-p),
            GroundStateKind::Exponential { p } => c * (-(r * r + 1.0).powf(p)).exp(),
            GroundStateKind::Gaussian => c * (-0.5 * r * r).exp(),
        }
    }

    /// `psi1'(r)`.
    pub fn dvalue(&self, r: f64) -> f64 {
        let c = self.norm_const;
        match self.kind {
            GroundStateKind::PowerLaw { p } => {
                -2.0 * p * c * r * (1.0 + r * r).powf(-p - 1.0)
            }
            GroundStateKind::Exponential { p } => {
                let u = r * r + 1.0;
                -2.0 * p * r * u.powf(p - 1.0) * self.value(r)
            }
            GroundStateKind::Gaussian => -r * self.value(r),
        }
    }

    /// `psi1''(r)`.
    pub fn d2value(&self, r: f64) -> f64 {
        let c = self.norm_const;
        match self.kind {
            GroundStateKind::PowerLaw { p } => {
                let u = 1.0 + r * r;
                -2.0 * p * c * u.powf(-p - 1.0)
                    + 4.0 * p * (p + 1.0) * c * r * r * u.powf(-p - 2.0)
            }
            GroundStateKind::Exponential { p } => {
                let u = r * r + 1.0;
                let v = self.value(r);
                (-2.0 * p * u.powf(p - 1.0) - 4.0 * p * (p - 1.0) * r * r * u.powf(p - 2.0)
                    + 4.0 * p * p * r * r * u.powf(2.0 * (p - 1.0)))
                    * v
            }
            GroundStateKind::Gaussian => (r * r - 1.0) * self.value(r),
        }
    }

    /// 3D radial Laplacian `psi'' + (2/r) psi'`, with the `r -> 0` limit
    /// `3 psi''(0)`.
    pub fn laplacian(&self, r: f64) -> f64 {
        if r < 1e-12 {
            3.0 * self.d2value(0.0)
        } else {
            self.d2value(r) + 2.0 * self.dvalue(r) / r
        }
    }

    /// Scaled profile `a^(-3/2) psi1(r/a)`.
    pub fn scaled_value(&self, r: f64, a: f64) -> f64 {
        a.powf(-1.5) * self.value(r / a)
    }

    /// L2 norm of the unit-scale profile by radial quadrature.
    pub fn l2_norm(&self) -> f64 {
        let r_max = match self.kind {
            GroundStateKind::PowerLaw { p } => power_law_tail_radius(p),
            _ => 30.0,
        };
        let (i, _) = quad::integrate(
            |r| {
                let v = self.value(r);
                v * v * r * r
            },
            0.0,
            r_max,
            1e-13,
            1e-12,
        );
        let tail = match self.kind {
            GroundStateKind::PowerLaw { p } => self.norm_const * self.norm_const
                * power_law_tail_integral(p),
            _ => 0.0,
        };
        (4.0 * std::f64::consts::PI * (i + tail)).sqrt()
    }
}

/// Radius beyond which the power-law norm tail is handled analytically.
fn power_law_tail_radius(_p: f64) -> f64 {
    1e4
}

/// `Int_{R}^{inf} r^2 (1+r^2)^(-2p) dr ~ Int r^(2-4p) dr = R^(3-4p)/(4p-3)`
/// with the next-order correction `(1+r^2)^-2p = r^-4p (1 + r^-2)^-2p`.
fn power_law_tail_integral(p: f64) -> f64 {
    let r = power_law_tail_radius(p);
    let lead = r.powf(3.0 - 4.0 * p) / (4.0 * p - 3.0);
    let corr = -2.0 * p * r.powf(1.0 - 4.0 * p) / (4.0 * p - 1.0);
    lead + corr
}

/// Mode switch: the linear KG equation is the `G' == 0` member of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NlMode {
    Nonlinear,
    Linear,
}

#[derive(Debug, Clone)]
enum G1Repr {
    /// Closed-form logarithmic nonlinearity of the gausson.
    Logarithmic,
    /// Closed-form power-law nonlinearity (valid for all `s >= 0`).
    PowerLaw { p: f64, c: f64 },
    /// Numeric inversion of a ground state, with a C^1 extension above
    /// `s0 = psi1^2(0)`.
    Derived {
        gs: GroundState,
        /// ln(s) ascending; `rs` descending correspondingly.
        ln_s: Vec<f64>,
        rs: Vec<f64>,
        interp: MonotoneCubic,
        s0: f64,
        /// Value of G1' at s0 (the r -> 0 limit).
        g_at_s0: f64,
        extension: Extension,
    },
    /// Linear mode: `G' == 0`.
    Zero,
}

#[derive(Debug, Clone)]
enum Extension {
    /// Use the family's closed form beyond `s0` (power-law, gaussian).
    ClosedForm(GroundStateKind, f64),
    /// Cubic Hermite bridge on `[s0, 2 s0]` then constant continuation.
    HermiteThenConstant {
        s_lo: f64,
        s_hi: f64,
        v: f64,
        slope_lo: f64,
    },
}

/// The nonlinearity `G`: `g1_prime`/`g1` at unit scale plus the exact size
/// scaling, the 1D-reduced form for the logarithmic family, and the linear
/// mode. Pure and immutable after construction.
#[derive(Debug, Clone)]
pub struct Nonlinearity {
    repr: G1Repr,
    pub mode: NlMode,
    pub holder_alpha: f64,
    /// The s-interval where a smooth extension replaces the inverted formula
    /// (exponential family only).
    pub extension_breakpoints: Option<(f64, f64)>,
}

impl Nonlinearity {
    /// The logarithmic nonlinearity `G1'(s) = -ln(s / C_g^2) - 3`.
    pub fn logarithmic() -> Self {
        Nonlinearity {
            repr: G1Repr::Logarithmic,
            mode: NlMode::Nonlinear,
            holder_alpha: 0.9,
            extension_breakpoints: None,
        }
    }

    /// Linear mode: `G' == 0`, `G == 0`.
    pub fn linear() -> Self {
        Nonlinearity {
            repr: G1Repr::Zero,
            mode: NlMode::Linear,
            holder_alpha: 0.9,
            extension_breakpoints: None,
        }
    }

    /// Closed-form power-law nonlinearity for the family `c (1+r^2)^-p`.
    pub fn power_law_closed(gs: &GroundState) -> Result<Self> {
        match gs.kind {
            GroundStateKind::PowerLaw { p } => Ok(Nonlinearity {
                repr: G1Repr::PowerLaw {
                    p,
                    c: gs.norm_const,
                },
                mode: NlMode::Nonlinear,
                holder_alpha: 0.9,
                extension_breakpoints: None,
            }),
            _ => Err(Error::Parameter("not a power-law ground state".into())),
        }
    }

    /// Is the exact 1D transverse reduction available (logarithmic or linear)?
    pub fn supports_reduction(&self) -> bool {
        matches!(self.repr, G1Repr::Logarithmic | G1Repr::Zero)
    }

    /// `G1'(s)` at unit scale.
    pub fn g1_prime(&self, s: f64) -> f64 {
        match &self.repr {
            G1Repr::Zero => 0.0,
            G1Repr::Logarithmic => log_g1_prime(s),
            G1Repr::PowerLaw { p, c } => power_g1_prime(*p, *c, s),
            G1Repr::Derived {
                gs,
                ln_s,
                rs,
                interp,
                s0,
                g_at_s0,
                extension,
            } => {
                if s >= *s0 {
                    return extension_value(extension, s);
                }
                let x = s.ln();
                if x <= ln_s[0] {
                    // Below the table: clamp to the outermost tabulated radius.
                    let r = rs[0];
                    return gs.laplacian(r) / gs.value(r);
                }
                if x >= *ln_s.last().unwrap() {
                    return *g_at_s0;
                }
                let r = invert_radius(gs, ln_s, rs, interp, s);
                gs.laplacian(r) / gs.value(r)
            }
        }
    }

    /// `G1(s) = Int_0^s G1'`, with `G1(0) = 0`.
    pub fn g1(&self, s: f64) -> f64 {
        if s == 0.0 {
            return 0.0;
        }
        match &self.repr {
            G1Repr::Zero => 0.0,
            G1Repr::Logarithmic => log_g1(s),
            G1Repr::PowerLaw { p, c } => power_g1(*p, *c, s),
            G1Repr::Derived { .. } => {
                let (v, _) = quad::integrate_result(|u| Ok(self.g1_prime(u)), 0.0, s, 1e-12, 1e-11)
                    .expect("g1 quadrature");
                v
            }
        }
    }

    /// Size-scaled pair `(G_a'(s), G_a(s)) = (a^-2 G1'(a^3 s), a^-5 G1(a^3 s))`.
    ///
    /// `s = 0` returns `(0, 0)`: `G(0) = 0` by the removable limit, and no
    /// physical expression uses `G'` at exactly zero amplitude.
    pub fn eval(&self, s: f64, a: f64) -> (f64, f64) {
        if self.mode == NlMode::Linear || s == 0.0 {
            return (0.0, 0.0);
        }
        let sa = a * a * a * s;
        (
            self.g1_prime(sa) / (a * a),
            self.g1(sa) / (a * a * a * a * a),
        )
    }

    /// 1D-reduced pair `(G_{a,1D}'(u), G_{a,1D}(u))` for the transverse-
    /// integrated field; only the logarithmic family reduces exactly.
    pub fn eval_1d(&self, u: f64, a: f64) -> Option<(f64, f64)> {
        match self.repr {
            G1Repr::Zero => Some((0.0, 0.0)),
            G1Repr::Logarithmic => {
                if u == 0.0 {
                    return Some((0.0, 0.0));
                }
                let au = a * u;
                let l = (std::f64::consts::PI.sqrt() * au).ln();
                Some((-(l + 1.0) / (a * a), -au * l / (a * a * a)))
            }
            _ => None,
        }
    }
}

fn log_g1_prime(s: f64) -> f64 {
    let cg2 = gaussian_amplitude().powi(2);
    -(s / cg2).ln() - 3.0
}

fn log_g1(s: f64) -> f64 {
    // -s [ln s + ln pi^(3/2) + 2]
    -s * (s.ln() + 1.5 * std::f64::consts::PI.ln() + 2.0)
}

fn power_g1_prime(p: f64, c: f64, s: f64) -> f64 {
    let w = (s / (c * c)).powf(1.0 / (2.0 * p));
    2.0 * p * (2.0 * p - 1.0) * w - 4.0 * p * (p + 1.0) * w * w
}

fn power_g1(p: f64, c: f64, s: f64) -> f64 {
    let c2 = c * c;
    let u = s / c2;
    let e1 = 1.0 + 1.0 / (2.0 * p);
    let e2 = 1.0 + 1.0 / p;
    c2 * (4.0 * p * p * (2.0 * p - 1.0) / (2.0 * p + 1.0) * u.powf(e1)
        - 4.0 * p * p * u.powf(e2))
}

fn extension_value(ext: &Extension, s: f64) -> f64 {
    match ext {
        Extension::ClosedForm(kind, c) => match kind {
            GroundStateKind::Gaussian => log_g1_prime(s),
            GroundStateKind::PowerLaw { p } => power_g1_prime(*p, *c, s),
            GroundStateKind::Exponential { .. } => unreachable!("exponential uses hermite"),
        },
        Extension::HermiteThenConstant {
            s_lo,
            s_hi,
            v,
            slope_lo,
        } => {
            if s >= *s_hi {
                return *v;
            }
            // Cubic Hermite on [s_lo, s_hi] from (v, slope_lo) to (v, 0).
            let h = s_hi - s_lo;
            let t = (s - s_lo) / h;
            let t2 = t * t;
            let t3 = t2 * t;
            let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
            let h10 = t3 - 2.0 * t2 + t;
            let h01 = -2.0 * t3 + 3.0 * t2;
            h00 * v + h10 * h * slope_lo + h01 * v
        }
    }
}

fn invert_radius(
    gs: &GroundState,
    ln_s: &[f64],
    rs: &[f64],
    interp: &MonotoneCubic,
    s: f64,
) -> f64 {
    let x = s.ln();
    let idx = match ln_s.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
        Ok(i) => return rs[i],
        Err(i) => i,
    };
    // Bracket in r: table is ascending in ln_s, descending in r.
    let (r_hi, r_lo) = (rs[idx - 1], rs[idx]);
    let r_guess = interp.eval(x);
    roots::newton_bracketed(
        |r| {
            let v = gs.value(r);
            Ok((v * v - s, 2.0 * v * gs.dvalue(r)))
        },
        r_guess,
        r_lo,
        r_hi,
        1e-14,
        1e-15 * s,
        60,
    )
    .unwrap_or(r_guess)
}

/// Reverse-engineer the nonlinearity from a ground state by numeric inversion
/// of `r -> psi1^2(r)` (2048-node log-spaced table refined by Newton), with a
/// C^1 extension above `s0 = psi1^2(0)`.
pub fn nonlinearity_from_ground_state(gs: &GroundState) -> Result<Nonlinearity> {
    const N_TABLE: usize = 2048;
    let r_lo: f64 = 3e-6;
    // Push the table tail to where psi1^2 has dropped 60 decades.
    let s0 = gs.value(0.0).powi(2);
    let target = s0 * 1e-60;
    let mut r_hi = 1.0;
    while gs.value(r_hi).powi(2) > target {
        r_hi *= 2.0;
        if r_hi > 1e18 {
            break;
        }
    }
    let lg_lo = r_lo.ln();
    let lg_hi = r_hi.ln();
    let mut ln_s = Vec::with_capacity(N_TABLE);
    let mut rs = Vec::with_capacity(N_TABLE);
    for i in (0..N_TABLE).rev() {
        let r = (lg_lo + (lg_hi - lg_lo) * i as f64 / (N_TABLE - 1) as f64).exp();
        let v = gs.value(r);
        if v <= 0.0 {
            return Err(Error::Inversion(format!(
                "ground state not positive at r = {r}"
            )));
        }
        if gs.dvalue(r) >= 0.0 && r > 0.0 {
            return Err(Error::Inversion(format!(
                "ground state not strictly decreasing at r = {r}"
            )));
        }
        let x = 2.0 * v.ln();
        if let Some(last) = ln_s.last() {
            if x <= *last {
                return Err(Error::Inversion(format!(
                    "non-monotone samples near r = {r}"
                )));
            }
        }
        ln_s.push(x);
        rs.push(r);
    }
    let interp = MonotoneCubic::new(ln_s.clone(), rs.clone());
    let g_at_s0 = 3.0 * gs.d2value(0.0) / gs.value(0.0);
    let (extension, breakpoints) = match gs.kind {
        GroundStateKind::Exponential { .. } => {
            // Interval [s0, 2 s0] = [c_e^2 e^-2, 2 c_e^2 e^-2]; left slope from
            // the inverted branch by a one-sided difference.
            let ds = 1e-6 * s0;
            let tmp = Nonlinearity {
                repr: G1Repr::Derived {
                    gs: gs.clone(),
                    ln_s: ln_s.clone(),
                    rs: rs.clone(),
                    interp: MonotoneCubic::new(ln_s.clone(), rs.clone()),
                    s0: f64::INFINITY,
                    g_at_s0,
                    extension: Extension::ClosedForm(GroundStateKind::Gaussian, 0.0),
                },
                mode: NlMode::Nonlinear,
                holder_alpha: 0.9,
                extension_breakpoints: None,
            };
            let slope_lo =
                (g_at_s0 - tmp.g1_prime(s0 - ds)) / ds;
            (
                Extension::HermiteThenConstant {
                    s_lo: s0,
                    s_hi: 2.0 * s0,
                    v: g_at_s0,
                    slope_lo,
                },
                Some((s0, 2.0 * s0)),
            )
        }
        kind => (Extension::ClosedForm(kind, gs.norm_const), None),
    };
    Ok(Nonlinearity {
        repr: G1Repr::Derived {
            gs: gs.clone(),
            ln_s,
            rs,
            interp,
            s0,
            g_at_s0,
            extension,
        },
        mode: NlMode::Nonlinear,
        holder_alpha: 0.9,
        extension_breakpoints: breakpoints,
    })
}

/// Max over the grid of `|lap psi1 - G1'(psi1^2) psi1|` using analytic
/// derivatives of the ground state (`a = 1`).
pub fn equilibrium_residual(gs: &GroundState, nl: &Nonlinearity, r_grid: &[f64]) -> f64 {
    r_grid
        .iter()
        .map(|&r| {
            let v = gs.value(r);
            (gs.laplacian(r) - nl.g1_prime(v * v) * v).abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn gaussian_amplitude_is_pi_to_minus_three_quarters() {
        let gs = GroundState::new(GroundStateKind::Gaussian).unwrap();
        assert_eq!(gs.value(0.0), std::f64::consts::PI.powf(-0.75));
    }

    #[test]
    fn power_law_p1_profile_and_monotonicity() {
        let gs = GroundState::new(GroundStateKind::PowerLaw { p: 1.0 }).unwrap();
        // psi ~ (1+r^2)^-1 up to the normalization constant.
        let ratio = gs.value(2.0) / gs.value(0.0);
        assert!((ratio - 1.0 / 5.0).abs() < 1e-14);
        let g = grid(0.0, 20.0, 400);
        for w in g.windows(2) {
            assert!(gs.value(w[1]) < gs.value(w[0]));
        }
        for &r in &g[1..] {
            assert!(gs.dvalue(r) < 0.0);
        }
    }

    #[test]
    fn power_law_below_three_quarters_is_rejected() {
        assert!(GroundState::new(GroundStateKind::PowerLaw { p: 0.5 }).is_err());
        assert!(GroundState::new(GroundStateKind::PowerLaw { p: 0.75 }).is_err());
    }

    #[test]
    fn unit_norm_for_all_families() {
        for kind in [
            GroundStateKind::Gaussian,
            GroundStateKind::PowerLaw { p: 1.0 },
            GroundStateKind::PowerLaw { p: 2.0 },
            GroundStateKind::Exponential { p: 0.5 },
            GroundStateKind::Exponential { p: 1.0 },
        ] {
            let gs = GroundState::new(kind).unwrap();
            let n = gs.l2_norm();
            assert!(
                (n - 1.0).abs() < 1e-8,
                "{kind:?}: norm {n} != 1"
            );
        }
    }

    #[test]
    fn scaled_norm_is_a_independent() {
        let gs = GroundState::new(GroundStateKind::Gaussian).unwrap();
        for a in [0.25, 1.0, 3.0] {
            let (i, _) = quad::integrate(
                |r| {
                    let v = gs.scaled_value(r, a);
                    v * v * r * r
                },
                0.0,
                40.0 * a,
                1e-14,
                1e-12,
            );
            assert!((4.0 * std::f64::consts::PI * i - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn derived_gaussian_matches_logarithmic_closed_form() {
        let gs = GroundState::new(GroundStateKind::Gaussian).unwrap();
        let derived = nonlinearity_from_ground_state(&gs).unwrap();
        let cg2 = gaussian_amplitude().powi(2);
        // Log-spaced sweep of s in [1e-8, C_g^2].
        let n = 300;
        for i in 0..=n {
            let s = 1e-8 * (cg2 / 1e-8).powf(i as f64 / n as f64);
            let want = log_g1_prime(s);
            let got = derived.g1_prime(s);
            assert!(
                (got - want).abs() < 1e-10,
                "s={s:e}: derived {got} vs closed {want}"
            );
        }
    }

    #[test]
    fn gaussian_g1_prime_at_cg2_is_minus_three() {
        let nl = Nonlinearity::logarithmic();
        let cg2 = gaussian_amplitude().powi(2);
        assert!((nl.g1_prime(cg2) + 3.0).abs() < 1e-13);
    }

    #[test]
    fn exponential_family_matches_derived_value() {
        // At s = c_e^2 e^-4 the inverted closed form gives
        // 1 - 4/L - 4/L^2 - 8/L^3 with L = 4, i.e. -0.375.
        let gs = GroundState::new(GroundStateKind::Exponential { p: 0.5 }).unwrap();
        let nl = nonlinearity_from_ground_state(&gs).unwrap();
        let c2 = gs.norm_const * gs.norm_const;
        let s = c2 * (-4.0f64).exp();
        assert!(
            (nl.g1_prime(s) + 0.375).abs() < 1e-9,
            "got {}",
            nl.g1_prime(s)
        );
        // And across the inverted branch the L = ln(c^2/s) series holds.
        for l in [3.0f64, 5.0, 8.0, 12.0] {
            let s = c2 * (-l).exp();
            let want = 1.0 - 4.0 / l - 4.0 / (l * l) - 8.0 / (l * l * l);
            assert!(
                (nl.g1_prime(s) - want).abs() < 1e-8,
                "L={l}: {} vs {want}",
                nl.g1_prime(s)
            );
        }
    }

    #[test]
    fn exponential_extension_is_c1_and_constant_beyond() {
        let gs = GroundState::new(GroundStateKind::Exponential { p: 0.5 }).unwrap();
        let nl = nonlinearity_from_ground_state(&gs).unwrap();
        let (s_lo, s_hi) = nl.extension_breakpoints.unwrap();
        // Continuity at both breakpoints.
        assert!((nl.g1_prime(s_lo * (1.0 - 1e-9)) - nl.g1_prime(s_lo)).abs() < 1e-6);
        assert!((nl.g1_prime(s_hi) - nl.g1_prime(s_hi * 4.0)).abs() < 1e-13);
        assert!((nl.g1_prime(s_hi * 4.0) + 3.0).abs() < 1e-9);
    }

    #[test]
    fn eval_g_scaling_is_exact_by_construction() {
        let nl = Nonlinearity::logarithmic();
        for (s, a) in [(0.3, 2.0), (1.7e-3, 0.2), (0.9, 5.5), (12.0, 0.03)] {
            let (gp, _) = nl.eval(s, a);
            let (gp1, _) = nl.eval(a * a * a * s, 1.0);
            assert_eq!(gp, gp1 / (a * a));
        }
    }

    #[test]
    fn eval_g_examples() {
        let nl = Nonlinearity::logarithmic();
        let cg2 = gaussian_amplitude().powi(2);
        // a = 1, s = C_g^2: the log vanishes.
        assert!((nl.eval(cg2, 1.0).0 + 3.0).abs() < 1e-13);
        // a = 2, s = C_g^2/8: a^3 s = C_g^2, gprime = -3 / a^2.
        assert!((nl.eval(cg2 / 8.0, 2.0).0 + 0.75).abs() < 1e-13);
        // a = 1, s = 1: G = -(1.5 ln pi + 2).
        let want = -(1.5 * std::f64::consts::PI.ln() + 2.0);
        assert!((nl.eval(1.0, 1.0).1 - want).abs() < 1e-13);
        // G(0) = 0 by the removable limit.
        assert_eq!(nl.eval(0.0, 1.0), (0.0, 0.0));
        // Linear mode is identically zero.
        assert_eq!(Nonlinearity::linear().eval(0.7, 2.0), (0.0, 0.0));
    }

    #[test]
    fn derived_gaussian_g1_matches_closed_form_antiderivative() {
        let gs = GroundState::new(GroundStateKind::Gaussian).unwrap();
        let derived = nonlinearity_from_ground_state(&gs).unwrap();
        for s in [1e-4, 0.05, gaussian_amplitude().powi(2)] {
            let want = log_g1(s);
            let got = derived.g1(s);
            assert!(
                (got - want).abs() < 1e-8 * (1.0 + want.abs()),
                "s={s}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn equilibrium_gaussian_logarithmic_is_machine_small() {
        let gs = GroundState::new(GroundStateKind::Gaussian).unwrap();
        let nl = Nonlinearity::logarithmic();
        let res = equilibrium_residual(&gs, &nl, &grid(0.01, 12.0, 2000));
        assert!(res < 1e-10, "residual {res}");
    }

    #[test]
    fn equilibrium_power_law_derived() {
        let gs = GroundState::new(GroundStateKind::PowerLaw { p: 1.0 }).unwrap();
        let nl = nonlinearity_from_ground_state(&gs).unwrap();
        let res = equilibrium_residual(&gs, &nl, &grid(0.01, 20.0, 1200));
        assert!(res < 1e-8, "residual {res}");
    }

    #[test]
    fn equilibrium_fails_without_nonlinearity() {
        let gs = GroundState::new(GroundStateKind::Gaussian).unwrap();
        let nl = Nonlinearity::linear();
        let res = equilibrium_residual(&gs, &nl, &grid(0.01, 12.0, 500));
        assert!(res > 1.0, "residual {res}");
    }

    #[test]
    fn holder_bound_suprema_are_modest() {
        // |G1(|psi|^2)| / |psi|^(1+alpha) over |psi| in (0, 1], alpha = 0.9.
        let alpha = 0.9;
        let families: Vec<Nonlinearity> = vec![
            Nonlinearity::logarithmic(),
            nonlinearity_from_ground_state(
                &GroundState::new(GroundStateKind::PowerLaw { p: 1.0 }).unwrap(),
            )
            .unwrap(),
            nonlinearity_from_ground_state(
                &GroundState::new(GroundStateKind::Exponential { p: 0.5 }).unwrap(),
            )
            .unwrap(),
        ];
        for nl in &families {
            let mut sup: f64 = 0.0;
            for i in 1..=400 {
                let psi = i as f64 / 400.0;
                let ratio = nl.g1(psi * psi).abs() / psi.powf(1.0 + alpha);
                sup = sup.max(ratio);
            }
            assert!(sup.is_finite() && sup < 100.0, "sup {sup}");
        }
    }
}

//! Gauss hypergeometric evaluation in the two regimes the matching problem
//! needs: a direct power series away from the unit argument, and the
//! logarithmic connection expansion about x = 1 for lower parameter
//! c = a + b - m (m a nonnegative integer).
//!
//! All series arithmetic on the direct path is carried through the real
//! symmetric product t = nu (nu + m + 1), which stays real even when nu is
//! complex with real t. On the connection path the upper parameter is carried
//! as an exact integer + offset pair so that the expansion stays fully
//! conditioned arbitrarily close to the poles at nonpositive integer a.

use crate::error::{Error, Result};
use crate::specfun::gamma::{cos_pi, digamma_raw, factorial, gamma, sin_pi};
use std::f64::consts::PI;

/// Evaluation knobs; defaults follow the solver's needs.
#[derive(Debug, Clone, Copy)]
pub struct Hyp2f1Config {
    /// Direct series is used for x <= x_switch, the connection expansion above.
    pub x_switch: f64,
    /// Termination threshold for series terms.
    pub series_eps: f64,
    /// Maximum number of series terms before reporting divergence.
    pub max_terms: usize,
    /// Distance below which a parameter counts as sitting on a pole.
    pub pole_delta: f64,
}

impl Default for Hyp2f1Config {
    fn default() -> Self {
        Hyp2f1Config {
            x_switch: 0.75,
            series_eps: 1e-16,
            max_terms: 10_000,
            pole_delta: 1e-13,
        }
    }
}

/// Parameters of 2F1(-nu, nu + m + 1; c; x) expressed through the real
/// product t = nu (nu + m + 1).
#[derive(Debug, Clone, Copy)]
pub struct SymmetricF1Params {
    /// t = nu (nu + m + 1); real for both solution branches.
    pub t: f64,
    /// Sum of the two angular indices; a + b = m + 1.
    pub m: u32,
    /// Lower parameter (a positive integer in the matching problem).
    pub c: u32,
    /// Series argument in [0, 1).
    pub x: f64,
}

/// Direct power series for 2F1(-nu, nu+m+1; c; x) via the real recurrence
/// T_{n+1} = T_n (n^2 + n(m+1) - t) x / ((c+n)(n+1)).
pub fn f1_series(p: &SymmetricF1Params, cfg: &Hyp2f1Config) -> Result<f64> {
    if !(0.0..1.0).contains(&p.x) {
        return Err(Error::Domain {
            name: "x",
            value: p.x,
            constraint: "f1_series requires 0 <= x < 1",
        });
    }
    if p.x > cfg.x_switch {
        return Err(Error::Domain {
            name: "x",
            value: p.x,
            constraint: "above x_switch; use f1_near_unit on this side",
        });
    }
    f1_series_raw(p.t, p.m, p.c, p.x, cfg)
}

pub(crate) fn f1_series_raw(t: f64, m: u32, c: u32, x: f64, cfg: &Hyp2f1Config) -> Result<f64> {
    f1_series_scaled(t, m, c, x, cfg).map(Scaled::to_f64)
}

/// Series sum with a tracked power-of-two exponent, so strongly repulsive
/// inner solutions (Bessel-like growth past the f64 range) stay evaluable.
pub(crate) fn f1_series_scaled(
    t: f64,
    m: u32,
    c: u32,
    x: f64,
    cfg: &Hyp2f1Config,
) -> Result<Scaled> {
    let mf = m as f64;
    let cf = c as f64;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut e = 0i64;
    let mut quiet = 0u32;
    let damp = 2.0f64.powi(-900);
    for n in 0..cfg.max_terms {
        let nf = n as f64;
        term *= (nf * nf + nf * (mf + 1.0) - t) * x / ((cf + nf) * (nf + 1.0));
        sum += term;
        if sum.abs() > 1e250 || term.abs() > 1e250 {
            sum *= damp;
            term *= damp;
            e += 900;
        }
        let floor = if e == 0 { 1.0 + sum.abs() } else { sum.abs() };
        if term.abs() < cfg.series_eps * floor {
            quiet += 1;
            if quiet >= 3 {
                return Ok(Scaled { m: sum, e }.normalized());
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::SeriesDivergence {
        t,
        m,
        c,
        x,
        max_terms: cfg.max_terms,
    })
}

/// A real number m * 2^e, for products and differences whose intermediate
/// magnitudes pass outside the f64 range.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Scaled {
    pub m: f64,
    pub e: i64,
}

impl Scaled {
    pub fn from_f64(x: f64) -> Self {
        Scaled { m: x, e: 0 }.normalized()
    }

    pub fn normalized(mut self) -> Self {
        if self.m == 0.0 || !self.m.is_finite() {
            self.e = 0;
            return self;
        }
        while self.m.abs() > 1e150 {
            self.m *= 2.0f64.powi(-500);
            self.e += 500;
        }
        while self.m.abs() < 1e-150 {
            self.m *= 2.0f64.powi(500);
            self.e -= 500;
        }
        self
    }

    pub fn mul(self, o: Scaled) -> Self {
        Scaled {
            m: self.m * o.m,
            e: self.e + o.e,
        }
        .normalized()
    }

    pub fn sub(self, o: Scaled) -> Self {
        // align onto the larger exponent; the smaller side may underflow away
        if self.e >= o.e {
            let shift = (self.e - o.e).min(2000) as i32;
            Scaled {
                m: self.m - o.m * 2.0f64.powi(-shift),
                e: self.e,
            }
            .normalized()
        } else {
            let shift = (o.e - self.e).min(2000) as i32;
            Scaled {
                m: self.m * 2.0f64.powi(-shift) - o.m,
                e: o.e,
            }
            .normalized()
        }
    }

    pub fn abs(self) -> Self {
        Scaled {
            m: self.m.abs(),
            e: self.e,
        }
    }

    pub fn add_mag(self, o: Scaled) -> Self {
        let a = self.abs();
        let b = o.abs();
        let (hi, lo) = if a.e >= b.e { (a, b) } else { (b, a) };
        let shift = (hi.e - lo.e).min(2000) as i32;
        Scaled {
            m: hi.m + lo.m * 2.0f64.powi(-shift),
            e: hi.e,
        }
        .normalized()
    }

    /// |self| <= factor * |other|
    pub fn magnitude_le(self, factor: f64, other: Scaled) -> bool {
        if self.m == 0.0 {
            return true;
        }
        if other.m == 0.0 {
            return false;
        }
        let lhs = (self.e - other.e) as f64 * std::f64::consts::LN_2 + self.m.abs().ln()
            - other.m.abs().ln();
        lhs <= factor.ln()
    }

    pub fn to_f64(self) -> f64 {
        if self.e > 2000 {
            return self.m * f64::INFINITY;
        }
        if self.e < -2000 {
            return self.m * 0.0;
        }
        self.m * 2.0f64.powi(self.e as i32)
    }

    pub fn div(self, o: Scaled) -> Self {
        Scaled {
            m: self.m / o.m,
            e: self.e - o.e,
        }
        .normalized()
    }
}

/// An exact integer + fractional-offset representation of a real parameter,
/// normalized so the offset lies in (-1/2, 1/2]. Keeps pole distances exact.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ShiftedReal {
    pub base: i64,
    pub frac: f64,
}

impl ShiftedReal {
    pub fn new(base: i64, frac: f64) -> Self {
        let mut b = base;
        let mut f = frac;
        while f > 0.5 {
            b += 1;
            f -= 1.0;
        }
        while f <= -0.5 {
            b -= 1;
            f += 1.0;
        }
        ShiftedReal { base: b, frac: f }
    }

    pub fn from_f64(x: f64) -> Self {
        let base = x.round();
        ShiftedReal::new(base as i64, x - base)
    }

    pub fn value(&self) -> f64 {
        self.base as f64 + self.frac
    }

    pub fn neg(&self) -> Self {
        ShiftedReal::new(-self.base, -self.frac)
    }

    pub fn add_int(&self, d: i64) -> Self {
        ShiftedReal {
            base: self.base + d,
            frac: self.frac,
        }
    }
}

fn parity_sign(n: i64) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Parameters of the logarithmic connection expansion of 2F1(a, b; a+b-m; x)
/// about x = 1.
#[derive(Debug, Clone, Copy)]
pub struct ConnectionExpansionParams {
    pub a: f64,
    pub b: f64,
    /// Pole order m >= 0; the lower parameter is a + b - m.
    pub m: u32,
    /// The small quantity 1 - x, in (0, 1).
    pub one_minus_x: f64,
}

/// Full connection expansion of 2F1(a, b; a+b-m; x) about x = 1, valid for
/// one_minus_x below the switch complement. Errors when a or b sits within
/// `pole_delta` of a nonpositive integer; the internal solver path avoids the
/// guard by carrying the offset exactly.
pub fn f1_near_unit(p: &ConnectionExpansionParams, cfg: &Hyp2f1Config) -> Result<f64> {
    let w = p.one_minus_x;
    if !(w > 0.0 && w < 1.0) {
        return Err(Error::Domain {
            name: "one_minus_x",
            value: w,
            constraint: "f1_near_unit requires 0 < 1-x < 1",
        });
    }
    if w > 1.0 - cfg.x_switch {
        return Err(Error::Domain {
            name: "one_minus_x",
            value: w,
            constraint: "too far from x = 1; use f1_series on this side",
        });
    }
    for (name, v) in [("a", p.a), ("b", p.b)] {
        let near = (v - v.round()).abs();
        if v < 0.5 && near < cfg.pole_delta {
            return Err(Error::PoleProximity {
                name,
                value: v,
                delta: cfg.pole_delta,
            });
        }
    }
    connection_eval(ShiftedReal::from_f64(p.a), p.b, p.m, w, cfg)
}

/// Connection expansion core: 2F1(a, b; a+b-m; 1-w) with a carried exactly as
/// integer + offset. The digamma poles of the log series and the reciprocal
/// gamma prefactors are combined analytically (sin * cot -> cos) so the value
/// stays fully accurate for offsets down to the underflow threshold.
pub(crate) fn connection_eval(
    a: ShiftedReal,
    b: f64,
    m: u32,
    w: f64,
    cfg: &Hyp2f1Config,
) -> Result<f64> {
    let a_val = a.value();
    let c = a_val + b - m as f64;
    let ln_w = w.ln();
    let m_i = m as i64;
    let mf = m as f64;
    // a on or left of zero: split the digamma/gamma poles off analytically
    let pole_split = a.base <= 0;

    let gamma_c = gamma(c);
    let gamma_b = gamma(b);
    let gamma_bm = gamma(b - mf);

    // finite (1-x)^{-m} pre-sum
    let mut pre = 0.0;
    if m >= 1 {
        let inv_gamma_a = if pole_split {
            parity_sign(a.base) * sin_pi(a.frac) * gamma(1.0 - a_val) / PI
        } else {
            1.0 / gamma(a_val)
        };
        let coef = gamma(mf) * gamma_c * inv_gamma_a / gamma_b;
        let mut term = w.powi(-(m as i32));
        let mut s = 0.0;
        for j in 0..m_i {
            s += term;
            if j + 1 < m_i {
                let jf = j as f64;
                term *= (a_val - mf + jf) * (b - mf + jf) * w / ((jf + 1.0) * (1.0 - mf + jf));
            }
        }
        pre = coef * s;
    }

    // coefficients of the infinite log series
    let (big_c, big_ck) = if pole_split {
        let g1ma = gamma(1.0 + mf - a_val);
        let inv_gamma_am = parity_sign(a.base - m_i) * sin_pi(a.frac) * g1ma / PI;
        let c1 = parity_sign(m_i) * gamma_c * inv_gamma_am / gamma_bm;
        let ck = parity_sign(a.base) * gamma_c * g1ma * cos_pi(a.frac) / gamma_bm;
        (c1, ck)
    } else {
        (
            parity_sign(m_i) * gamma_c / (gamma(a_val - mf) * gamma_bm),
            0.0,
        )
    };

    // sum over k of (a)_k (b)_k / (k! (k+m)!) w^k (h_k - ln w), with the
    // cot(pi f) part of psi(a+k) for a+k <= 0 collected into big_ck
    let mut p = 1.0 / factorial(m);
    let mut s_reg = 0.0;
    let mut s_pole = 0.0;
    let mut quiet = 0u32;
    let mut converged = false;
    for k in 0..cfg.max_terms {
        let kf = k as f64;
        let ki = k as i64;
        let in_pole_set = pole_split && a.base + ki <= 0;
        let psi_a = if in_pole_set {
            digamma_raw(1.0 - a_val - kf)
        } else {
            digamma_raw(a_val + kf)
        };
        let h_reg =
            digamma_raw(kf + 1.0) + digamma_raw(kf + mf + 1.0) - psi_a - digamma_raw(b + kf);
        s_reg += p * (h_reg - ln_w);
        if in_pole_set {
            s_pole += p;
        }
        p *= (a_val + kf) * (b + kf) * w / ((kf + 1.0) * (kf + mf + 1.0));
        if p.abs() * (ln_w.abs() + 10.0) < cfg.series_eps * (1.0 + s_reg.abs()) {
            quiet += 1;
            if quiet >= 2 {
                converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    if !converged {
        return Err(Error::SeriesDivergence {
            t: -a_val * b,
            m,
            c: 0,
            x: 1.0 - w,
            max_terms: cfg.max_terms,
        });
    }

    let mut total = pre + big_c * s_reg;
    if pole_split {
        total += big_ck * s_pole;
    }
    Ok(total)
}

/// Value and z-derivative of the solution regular at z = +1,
/// F(z) = 2F1(-nu, nu+m+1; c; (1-z)/2), evaluated at 1 - x = w.
///
/// Chooses the direct series or the connection expansion by the argument;
/// nu arrives as an exact integer + offset pair.
pub(crate) fn outer_pair(
    nu: ShiftedReal,
    m_sum: u32,
    c: u32,
    w: f64,
    cfg: &Hyp2f1Config,
) -> Result<(f64, f64)> {
    let nu_val = nu.value();
    let t = nu_val * (nu_val + m_sum as f64 + 1.0);
    let x = 1.0 - w;
    let cf = c as f64;
    let (f1, f2) = if x <= cfg.x_switch {
        (
            f1_series_raw(t, m_sum, c, x, cfg)?,
            f1_series_raw(t - m_sum as f64 - 2.0, m_sum + 2, c + 1, x, cfg)?,
        )
    } else {
        // pole order of the connection: m = a + b - c with a = -nu
        let m_conn = m_sum + 1 - c;
        let a = nu.neg();
        let b = m_sum as f64 + 1.0 + nu_val;
        (
            connection_eval(a, b, m_conn, w, cfg)?,
            connection_eval(a.add_int(1), b + 1.0, m_conn + 1, w, cfg)?,
        )
    };
    // d/dz = -1/2 d/dx and d/dx 2F1 = (ab/c) 2F1(a+1,b+1;c+1;.), ab = -t
    Ok((f1, t / (2.0 * cf) * f2))
}

/// Value and z-derivative of the solution regular at z = -1,
/// F(z) = 2F1(-nu, nu+m+1; c; (1+z)/2) with nu possibly complex, carried
/// through the real product t; evaluated at (1+z)/2 = x (direct series).
/// Exponent-scaled so that strongly repulsive cores stay in range.
pub(crate) fn inner_pair(
    t: f64,
    m_sum: u32,
    c: u32,
    x: f64,
    cfg: &Hyp2f1Config,
) -> Result<(Scaled, Scaled)> {
    let f1 = f1_series_scaled(t, m_sum, c, x, cfg)?;
    let f2 = f1_series_scaled(t - m_sum as f64 - 2.0, m_sum + 2, c + 1, x, cfg)?;
    let df = f2.mul(Scaled::from_f64(-(t / (2.0 * c as f64))));
    Ok((f1, df))
}

/// d/dz ln F of the outer solution; errors at a node of F.
pub(crate) fn log_derivative_outer(
    nu: ShiftedReal,
    m_sum: u32,
    c: u32,
    w: f64,
    cfg: &Hyp2f1Config,
) -> Result<f64> {
    let (f, df) = outer_pair(nu, m_sum, c, w, cfg)?;
    if f == 0.0 || !(df / f).is_finite() {
        return Err(Error::ZeroCrossing {
            side: "outer",
            z: 1.0 - 2.0 * w,
        });
    }
    Ok(df / f)
}

/// d/dz ln F of the inner solution; errors at a node of F.
pub(crate) fn log_derivative_inner(
    t: f64,
    m_sum: u32,
    c: u32,
    x: f64,
    cfg: &Hyp2f1Config,
) -> Result<f64> {
    let (f, df) = inner_pair(t, m_sum, c, x, cfg)?;
    let r = df.div(f).to_f64();
    if f.m == 0.0 || !r.is_finite() {
        return Err(Error::ZeroCrossing {
            side: "inner",
            z: 2.0 * x - 1.0,
        });
    }
    Ok(r)
}

/// d/dz ln F for the inner (left) and outer (right) solutions sharing the
/// same symmetric product t, evaluated at z_match in (-1, 1).
///
/// The left solution uses lower parameter `c_left` and argument (1+z)/2, the
/// right one `c_right` and (1-z)/2. Sides whose argument exceeds the series
/// switch go through the connection expansion, which requires the real
/// nu branch t >= -(m+1)^2/4.
pub fn f1_log_derivative(
    t: f64,
    m: u32,
    c_left: u32,
    c_right: u32,
    z_match: f64,
    cfg: &Hyp2f1Config,
) -> Result<(f64, f64)> {
    if !(-1.0 < z_match && z_match < 1.0) {
        return Err(Error::Domain {
            name: "z_match",
            value: z_match,
            constraint: "f1_log_derivative requires -1 < z < 1",
        });
    }
    let x_left = (1.0 + z_match) / 2.0;
    let x_right = (1.0 - z_match) / 2.0;

    let left = if x_left <= cfg.x_switch {
        log_derivative_inner(t, m, c_left, x_left, cfg)?
    } else {
        -outer_branch(t, m, c_left, 1.0 - x_left, cfg)?
    };
    let right = if x_right <= cfg.x_switch {
        // same functional form as the inner side up to the d/dz sign
        -log_derivative_inner(t, m, c_right, x_right, cfg)?
    } else {
        outer_branch(t, m, c_right, 1.0 - x_right, cfg)?
    };
    Ok((left, right))
}

/// Helper: outer-style log-derivative from t alone (requires the real branch).
fn outer_branch(t: f64, m: u32, c: u32, w: f64, cfg: &Hyp2f1Config) -> Result<f64> {
    let mf = m as f64;
    let disc = (mf + 1.0) * (mf + 1.0) / 4.0 + t;
    if disc < 0.0 {
        return Err(Error::Domain {
            name: "t",
            value: t,
            constraint: "connection path requires the real-nu branch t >= -(m+1)^2/4",
        });
    }
    let nu = -(mf + 1.0) / 2.0 + disc.sqrt();
    log_derivative_outer(ShiftedReal::from_f64(nu), m, c, w, cfg)
}

//! Low-energy phase shifts for a single adiabatic channel.
//!
//! The radial equation -u'' + lambda(rho) u = k^2 u is integrated in the
//! log radius: with s = ln rho and u = sqrt(rho) v(s), the equation becomes
//! v'' = W(s) v with W = (N+1)^2 - (k rho)^2 + rho^2 V_eff(rho), which a
//! fixed-step Numerov scheme handles on one uniform grid from the core out
//! to the matching radius. The eigenvalue is tabulated on a log grid and
//! splined; beyond the switch radius the channel's asymptotic model takes
//! over. The phase is read off derivative-free from two sampled radii
//! against sqrt(rho) J_{N+1}, sqrt(rho) Y_{N+1}, Richardson-extrapolated
//! over step halving, and corrected for the first-order effect of the
//! potential tail beyond the matching radius.

mod spline;

pub use spline::CubicSpline;

use crate::adiabatic::{self, SolverConfig, RHO_MIN};
use crate::asymptotics::{self, AsymptoticModel, ModelKind};
use crate::channel::{Channel, StepPotential};
use crate::error::{Error, Result};
use crate::specfun::{bessel_jy, bessel_jy_extended};
use std::f64::consts::PI;

/// Single-channel radial scattering problem at reduced wave number k.
#[derive(Debug, Clone)]
pub struct RadialProblem {
    pub channel: Channel,
    pub potential: StepPotential,
    pub k: f64,
    pub rho_min: f64,
    pub rho_max: f64,
    pub tail_model: AsymptoticModel,
}

impl RadialProblem {
    /// Defaults: rho_min = 0.75, rho_max = 20/k, tail model chosen by the
    /// channel class (two-term inverse log for l1 = 0, inverse power else).
    pub fn new(channel: Channel, potential: StepPotential, k: f64) -> Result<Self> {
        if !k.is_finite() || k <= 0.0 {
            return Err(Error::Domain {
                name: "k",
                value: k,
                constraint: "wave number must be positive and finite",
            });
        }
        let tail_model = if channel.abs_l1() == 0 {
            asymptotics::coefficients_log(&channel, &potential)?
        } else {
            asymptotics::coefficient_q(&channel, &potential)?
        };
        let rho_min = 0.75;
        let rho_max = (20.0 / k).max(rho_min * 4.0);
        Ok(RadialProblem {
            channel,
            potential,
            k,
            rho_min,
            rho_max,
            tail_model,
        })
    }
}

/// Integration and extraction knobs.
#[derive(Debug, Clone, Copy)]
pub struct PhaseConfig {
    /// Exact eigenvalues are splined up to here; the tail model beyond.
    pub rho_switch: f64,
    /// Knots per decade of the eigenvalue spline.
    pub spline_per_decade: usize,
    /// Numerov step in s = ln rho (halved once for Richardson).
    pub h: f64,
    /// Two-radius extraction agreement required, in radians.
    pub consistency_tol: f64,
    /// Matching-radius shifts attempted on an ill-conditioned extraction.
    pub max_retries: usize,
    pub solver: SolverConfig,
}

impl Default for PhaseConfig {
    fn default() -> Self {
        PhaseConfig {
            rho_switch: 1e3,
            spline_per_decade: 16,
            h: 1.0 / 880.0,
            consistency_tol: 1e-4,
            max_retries: 3,
            solver: SolverConfig::default(),
        }
    }
}

/// Extraction record behind the plain phase-shift value.
#[derive(Debug, Clone, Copy)]
pub struct PhaseShiftDetail {
    /// Phase shift in (-pi/2, pi/2], modulo pi.
    pub delta: f64,
    /// Step-halving spread before Richardson extrapolation.
    pub step_error: f64,
    /// Two-radius extraction spread after tail correction.
    pub consistency: f64,
    pub rho_max_used: f64,
}

/// Phase shift with default configuration.
pub fn channel_phase_shift(problem: &RadialProblem) -> Result<f64> {
    Ok(channel_phase_shift_with(problem, &PhaseConfig::default())?.delta)
}

/// Phase shift with explicit configuration and extraction diagnostics.
pub fn channel_phase_shift_with(
    problem: &RadialProblem,
    cfg: &PhaseConfig,
) -> Result<PhaseShiftDetail> {
    if problem.rho_min.is_nan() || problem.rho_min <= RHO_MIN {
        return Err(Error::Domain {
            name: "rho_min",
            value: problem.rho_min,
            constraint: "integration must start above 1/sqrt(2)",
        });
    }
    if problem.rho_max.is_nan() || problem.rho_max <= 2.0 * problem.rho_min {
        return Err(Error::Domain {
            name: "rho_max",
            value: problem.rho_max,
            constraint: "matching radius must sit well outside the core",
        });
    }
    if problem.potential.is_free() {
        return Ok(PhaseShiftDetail {
            delta: 0.0,
            step_error: 0.0,
            consistency: 0.0,
            rho_max_used: problem.rho_max,
        });
    }

    let mut rho_max = problem.rho_max;
    let mut last_spread = f64::INFINITY;
    for retry in 0..=cfg.max_retries {
        let run = integrate_and_extract(problem, cfg, rho_max)?;
        if run.consistency <= cfg.consistency_tol {
            return Ok(run);
        }
        last_spread = run.consistency;
        if retry < cfg.max_retries {
            rho_max *= 1.25;
        }
    }
    Err(Error::MatchingIllConditioned {
        retries: cfg.max_retries,
        rho_max,
        spread: last_spread,
    })
}

struct TailIntegral<'a> {
    model: &'a AsymptoticModel,
}

impl TailIntegral<'_> {
    /// int_R^inf V_model(rho) d rho, analytic per model class.
    fn beyond(&self, r: f64) -> f64 {
        match self.model.kind {
            ModelKind::InversePower => {
                let a1 = self.model.channel.abs_l1();
                let q = self.model.q.expect("power tail carries q");
                let p = 2 * a1 + 1;
                q / (p as f64 * r.powi(p as i32))
            }
            _ => {
                // S(p) = int_R^inf d rho /(rho^2 L^p) = 1/(R L^p) - p B S(p+1)
                let (a, b) = (self.model.a, self.model.b);
                let lr = a + b * r.ln();
                let s = |p: f64| -> f64 {
                    let mut acc = 0.0;
                    let mut coef = 1.0;
                    for j in 0..6 {
                        acc += coef / (r * lr.powf(p + j as f64));
                        coef *= -(p + j as f64) * b;
                    }
                    acc
                };
                let np1 = (self.model.channel.order() + 1) as f64;
                s(1.0) + s(2.0) / (4.0 * np1 * np1)
            }
        }
    }
}

fn integrate_and_extract(
    problem: &RadialProblem,
    cfg: &PhaseConfig,
    rho_max: f64,
) -> Result<PhaseShiftDetail> {
    let ch = &problem.channel;
    let k = problem.k;
    let order = ch.order() + 1;
    let np1 = order as f64;
    let s0 = problem.rho_min.ln();

    // extraction layout in coarse-step units
    let h = cfg.h;
    let quarter_wave = (1.0 + PI / (2.0 * k * rho_max)).ln();
    let i_a1 = ((rho_max.ln() - s0) / h).round().max(4.0) as usize;
    let di_b = (quarter_wave / h).ceil().max(1.0) as usize;
    let i_a2 = i_a1 + ((1.1f64.ln() / h).ceil() as usize).max(di_b + 2);
    let i_b2 = i_a2 + di_b;
    let n_coarse = i_b2 + 1;

    // eigenvalue table: y(s) = rho^2 V_eff on a log grid up to the switch
    let s_end = s0 + n_coarse as f64 * h;
    let spline_top = cfg.rho_switch.min(s_end.exp() * 1.05);
    let ds = (10.0f64).ln() / cfg.spline_per_decade as f64;
    let mut knots_s = Vec::new();
    let mut s = s0;
    while s < spline_top.ln() {
        knots_s.push(s);
        s += ds;
    }
    knots_s.push(spline_top.ln());
    let grid: Vec<f64> = knots_s.iter().map(|s| s.exp()).collect();
    let swept = adiabatic::sweep(ch, &problem.potential, &grid, &cfg.solver)?;
    let mut ys = Vec::with_capacity(swept.len());
    for point in swept {
        let sol = point.result?;
        ys.push(point.rho * point.rho * sol.v_eff);
    }
    let table = CubicSpline::natural(knots_s, ys);

    let tail = TailIntegral {
        model: &problem.tail_model,
    };
    let y_at = |s: f64| -> Result<f64> {
        if s <= table.x_max() {
            Ok(table.eval(s))
        } else {
            let rho = s.exp();
            Ok(rho * rho * asymptotics::model_v_eff(&problem.tail_model, rho)?)
        }
    };

    // W on the fine (half-step) grid; the coarse run reads every other entry
    let n_fine = 2 * n_coarse;
    let hf = h / 2.0;
    let mut w_fine = Vec::with_capacity(n_fine + 1);
    for i in 0..=n_fine {
        let s = s0 + i as f64 * hf;
        let rho = s.exp();
        let krho = k * rho;
        w_fine.push(np1 * np1 - krho * krho + y_at(s)?);
    }

    let sample_coarse = [i_a1, i_a1 + di_b, i_a2, i_b2];
    let sample_fine: Vec<usize> = sample_coarse.iter().map(|i| 2 * i).collect();
    let coarse_w: Vec<f64> = w_fine.iter().copied().step_by(2).collect();
    let v_coarse = numerov(&coarse_w, h, &sample_coarse);
    let v_fine = numerov(&w_fine, hf, &sample_fine);

    let extract = |v: &[f64; 4]| -> Result<(f64, f64)> {
        let mut deltas = [0.0f64; 2];
        for (seg, d) in deltas.iter_mut().enumerate() {
            let (ia, ib) = (sample_coarse[2 * seg], sample_coarse[2 * seg + 1]);
            let (va, vb) = (v[2 * seg], v[2 * seg + 1]);
            let (ra, rb) = ((s0 + ia as f64 * h).exp(), (s0 + ib as f64 * h).exp());
            let (fa, ga) = free_pair(order, k, ra)?;
            let (fb, gb) = free_pair(order, k, rb)?;
            let ua = ra.sqrt() * va;
            let ub = rb.sqrt() * vb;
            // atan of the ratio keeps precision for tiny phases, where the
            // atan2 branch near pi would round the phase away entirely
            let mut delta = ((ua * fb - ub * fa) / (ua * gb - ub * ga)).atan();
            // first-order effect of the tail left beyond the sampling radius
            delta -= tail.beyond(ra) / (2.0 * k);
            *d = fold(delta);
        }
        Ok((deltas[0], deltas[1]))
    };
    let (c1, c2) = extract(&v_coarse)?;
    let (f1, f2) = extract(&v_fine)?;

    // Richardson in h^4 per segment, with mod-pi alignment
    let rich = |coarse: f64, fine: f64| (16.0 * fine - align(coarse, fine)) / 15.0;
    let d1 = rich(c1, f1);
    let d2 = rich(c2, f2);
    let delta = fold(d1);
    Ok(PhaseShiftDetail {
        delta,
        step_error: (align(c1, f1) - f1).abs(),
        consistency: (align(d2, d1) - d1).abs(),
        rho_max_used: rho_max,
    })
}

/// (sqrt(rho) J_order(k rho), sqrt(rho) Y_order(k rho)).
fn free_pair(order: u32, k: f64, rho: f64) -> Result<(f64, f64)> {
    let (j, y) = bessel_jy_extended(order, k * rho)?;
    Ok((rho.sqrt() * j, rho.sqrt() * y))
}

/// Fold into the principal band (-pi/2, pi/2].
fn fold(mut d: f64) -> f64 {
    while d > PI / 2.0 {
        d -= PI;
    }
    while d <= -PI / 2.0 {
        d += PI;
    }
    d
}

/// Shift `a` by a multiple of pi to land next to `b`.
fn align(a: f64, b: f64) -> f64 {
    a - PI * ((a - b) / PI).round()
}

/// Fixed-step Numerov for v'' = W v; returns v at the requested indices,
/// jointly rescaled whenever the growing solution threatens overflow.
fn numerov(w: &[f64], h: f64, samples: &[usize]) -> [f64; 4] {
    let n = w.len();
    let h2 = h * h;
    let mut out = [0.0f64; 4];
    let mut v_prev = 1e-250f64;
    let mut v_cur = v_prev * ((w[0].max(0.04)).sqrt() * h).exp();
    let record = |out: &mut [f64; 4], idx: usize, v: f64| {
        for (slot, &want) in samples.iter().enumerate() {
            if want == idx {
                out[slot] = v;
            }
        }
    };
    record(&mut out, 0, v_prev);
    record(&mut out, 1, v_cur);
    for i in 1..n - 1 {
        let a = 1.0 - h2 * w[i + 1] / 12.0;
        let b = 2.0 * (1.0 + 5.0 * h2 * w[i] / 12.0) * v_cur;
        let c = (1.0 - h2 * w[i - 1] / 12.0) * v_prev;
        let v_next = (b - c) / a;
        v_prev = v_cur;
        v_cur = v_next;
        record(&mut out, i + 1, v_cur);
        if v_cur.abs() > 1e200 {
            v_prev *= 1e-200;
            v_cur *= 1e-200;
            for slot in out.iter_mut() {
                *slot *= 1e-200;
            }
        }
    }
    out
}

/// Hard-disc phase shift tan(delta_L) = J_L(k sigma) / Y_L(k sigma), as the
/// principal value in (-pi/2, pi/2].
pub fn hard_disc_phase_shift(l: u32, k_sigma: f64) -> Result<f64> {
    if k_sigma.is_nan() || k_sigma <= 0.0 || k_sigma > 10.0 {
        return Err(Error::Domain {
            name: "k_sigma",
            value: k_sigma,
            constraint: "hard-disc phase shift is evaluated for 0 < k sigma <= 10",
        });
    }
    let (j, y) = bessel_jy(l, k_sigma)?;
    // the ratio form keeps the principal value exact even when J/Y underflows
    // the resolution of the atan2 branch near pi
    Ok(fold((j / y).atan()))
}

/// Tail-dominance report for the inverse-power class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MottMasseyReport {
    /// Power-law exponent of the radial potential, s = 2|l1| + 2.
    pub s_exponent: u32,
    /// Smallest harmonic order the channel class admits, N = |l1|.
    pub min_order: u32,
    /// N + 1 > (s-2)/2; true throughout the class.
    pub tail_dominant: bool,
    /// Predicted low-energy exponent: delta proportional to k^{2|l1|}.
    pub phase_exponent: u32,
}

/// Criterion for tail-dominant threshold behaviour when |l1| >= 1.
pub fn mott_massey_criterion(channel: &Channel) -> Result<MottMasseyReport> {
    let a1 = channel.abs_l1();
    if a1 == 0 {
        return Err(Error::WrongChannelClass {
            expected: "|l1| >= 1 (the l1 = 0 class follows the inverse-log law)",
            channel: *channel,
        });
    }
    let s_exponent = 2 * a1 + 2;
    Ok(MottMasseyReport {
        s_exponent,
        min_order: a1,
        tail_dominant: a1 + 1 > (s_exponent - 2) / 2,
        phase_exponent: 2 * a1,
    })
}

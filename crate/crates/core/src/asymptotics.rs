//! Closed-form asymptotic coefficients and model potentials for the two
//! large-rho classes: inverse-logarithmic decay for l1 = 0 and inverse-power
//! decay for |l1| >= 1, plus machine-readable comparisons against exact
//! sweeps.

use crate::adiabatic::{self, SolverConfig};
use crate::channel::{Channel, StepPotential};
use crate::error::{Error, Result};
use crate::specfun::{bessel_i, binomial, harmonic};

/// Which asymptotic form a model evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// One-term inverse logarithm, rho^2 V = 1/(A + B ln rho).
    Kl,
    /// Shifted one-term form, rho^2 V = 1/(A* + B* ln rho).
    Wider,
    /// Two-term form, rho^2 V = 1/(A + B ln rho) + 1/(4(N+1)^2 (A + B ln rho)^2).
    Best,
    /// rho^2 V = q / rho^{2|l1|}.
    InversePower,
}

/// Asymptotic coefficients for one channel, with the model-kind tag.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticModel {
    pub kind: ModelKind,
    pub a: f64,
    pub b: f64,
    pub a_star: f64,
    pub b_star: f64,
    /// Inverse-power amplitude; present only for the |l1| >= 1 class.
    pub q: Option<f64>,
    pub channel: Channel,
    pub potential: StepPotential,
}

impl AsymptoticModel {
    /// Re-tag the same coefficients with another log-class model kind.
    pub fn with_kind(mut self, kind: ModelKind) -> Self {
        self.kind = kind;
        self
    }
}

/// The tilde-A combination: sqrt(8) I0 / (sqrt(v0) I1) - H_l - H_{l+|l2|} + ln 2.
pub fn a_tilde(channel: &Channel, potential: &StepPotential) -> Result<f64> {
    let x = potential.bessel_argument();
    let i0 = bessel_i(0, x)?;
    let i1 = bessel_i(1, x)?;
    Ok(8.0f64.sqrt() * i0 / (potential.v0bar().sqrt() * i1)
        - harmonic(channel.l())
        - harmonic(channel.l() + channel.abs_l2())
        + 2.0f64.ln())
}

/// Inverse-log coefficients A, B, A*, B* for an l1 = 0 channel.
pub fn coefficients_log(channel: &Channel, potential: &StepPotential) -> Result<AsymptoticModel> {
    if channel.abs_l1() != 0 {
        return Err(Error::WrongChannelClass {
            expected: "l1 = 0 (inverse-logarithmic class)",
            channel: *channel,
        });
    }
    if potential.is_free() {
        return Err(Error::Domain {
            name: "v0bar",
            value: 0.0,
            constraint: "log-class coefficients need v0bar > 0 (I1 term vanishes)",
        });
    }
    let np1 = (channel.order() + 1) as f64;
    // direct grouping of the published A formula
    let x = potential.bessel_argument();
    let i0 = bessel_i(0, x)?;
    let i1 = bessel_i(1, x)?;
    let a_direct =
        (2.0 * i0 / (x * i1) - harmonic(channel.l()) - harmonic(channel.l() + channel.abs_l2())
            + 2.0f64.ln())
            / (4.0 * np1);
    // tilde-A route; the two groupings must agree to rounding
    let a_route = a_tilde(channel, potential)? / (4.0 * np1);
    debug_assert!((a_direct - a_route).abs() <= 1e-13 * a_direct.abs());
    let b = 1.0 / (2.0 * np1);
    Ok(AsymptoticModel {
        kind: ModelKind::Best,
        a: a_direct,
        b,
        a_star: a_direct - 1.0 / (4.0 * np1 * np1),
        b_star: b,
        q: None,
        channel: *channel,
        potential: *potential,
    })
}

/// Inverse-power amplitude q for a |l1| >= 1 channel.
pub fn coefficient_q(channel: &Channel, potential: &StepPotential) -> Result<AsymptoticModel> {
    let a1 = channel.abs_l1();
    if a1 == 0 {
        return Err(Error::WrongChannelClass {
            expected: "|l1| >= 1 (inverse-power class)",
            channel: *channel,
        });
    }
    if potential.is_free() {
        return Err(Error::Domain {
            name: "v0bar",
            value: 0.0,
            constraint: "inverse-power coefficient needs v0bar > 0",
        });
    }
    let x = potential.bessel_argument();
    let n = channel.order();
    let l = channel.l();
    let np1 = (n + 1) as f64;
    let i_a = bessel_i(a1, x)?;
    let i_a1 = bessel_i(a1 + 1, x)?;
    let inv_q = 2.0f64.powi(a1 as i32 - 2) / (np1 * binomial(n - l, a1) * binomial(a1 + l, a1))
        * (1.0 / a1 as f64 + 2.0 * i_a / (x * i_a1));
    let model = coefficients_for_power(channel, potential, 1.0 / inv_q);
    Ok(model)
}

fn coefficients_for_power(channel: &Channel, potential: &StepPotential, q: f64) -> AsymptoticModel {
    AsymptoticModel {
        kind: ModelKind::InversePower,
        a: f64::NAN,
        b: f64::NAN,
        a_star: f64::NAN,
        b_star: f64::NAN,
        q: Some(q),
        channel: *channel,
        potential: *potential,
    }
}

/// Model value of V_eff(rho) for the tagged kind.
pub fn model_v_eff(model: &AsymptoticModel, rho: f64) -> Result<f64> {
    if rho.is_nan() || rho <= 1.0 {
        return Err(Error::Domain {
            name: "rho",
            value: rho,
            constraint: "asymptotic models are only evaluated for rho > 1",
        });
    }
    let rho2 = rho * rho;
    match model.kind {
        ModelKind::Kl | ModelKind::Wider | ModelKind::Best => {
            let (a, b) = match model.kind {
                ModelKind::Wider => (model.a_star, model.b_star),
                _ => (model.a, model.b),
            };
            let denom = a + b * rho.ln();
            if denom <= 0.0 {
                return Err(Error::Domain {
                    name: "rho",
                    value: rho,
                    constraint: "below the logarithmic pole of the model",
                });
            }
            let mut v = 1.0 / denom;
            if model.kind == ModelKind::Best {
                let np1 = (model.channel.order() + 1) as f64;
                v += 1.0 / (4.0 * np1 * np1 * denom * denom);
            }
            Ok(v / rho2)
        }
        ModelKind::InversePower => {
            let q = model.q.expect("inverse-power model carries q");
            let a1 = model.channel.abs_l1() as i32;
            Ok(q / rho2.powi(a1 + 1))
        }
    }
}

/// One comparison row for the inverse-log class.
#[derive(Debug, Clone, Copy)]
pub struct LogComparisonRow {
    pub rho: f64,
    pub v_exact: f64,
    pub v_kl: f64,
    pub v_wider: f64,
    pub v_best: f64,
    pub rel_err_kl: f64,
    pub rel_err_wider: f64,
    pub rel_err_best: f64,
}

/// One comparison row for the inverse-power class.
#[derive(Debug, Clone, Copy)]
pub struct PowerComparisonRow {
    pub rho: f64,
    pub v_exact: f64,
    pub v_model: f64,
    pub rel_err: f64,
    /// rho^{2|l1|+2} V_exact / q; tends to 1 from the asymptotic law.
    pub scaled_ratio: f64,
}

/// Model-vs-exact table over a rho grid.
#[derive(Debug, Clone)]
pub enum ModelComparison {
    Log(Vec<LogComparisonRow>),
    Power(Vec<PowerComparisonRow>),
}

/// Exact sweep against the channel's asymptotic models, with relative errors.
pub fn compare_models(
    channel: &Channel,
    potential: &StepPotential,
    rho_grid: &[f64],
    cfg: &SolverConfig,
) -> Result<ModelComparison> {
    let sweep = adiabatic::sweep(channel, potential, rho_grid, cfg)?;
    if channel.abs_l1() == 0 {
        let base = coefficients_log(channel, potential)?;
        let mut rows = Vec::with_capacity(sweep.len());
        for point in sweep {
            let sol = point.result?;
            let v_kl = model_v_eff(&base.with_kind(ModelKind::Kl), point.rho)?;
            let v_wider = model_v_eff(&base.with_kind(ModelKind::Wider), point.rho)?;
            let v_best = model_v_eff(&base.with_kind(ModelKind::Best), point.rho)?;
            rows.push(LogComparisonRow {
                rho: point.rho,
                v_exact: sol.v_eff,
                v_kl,
                v_wider,
                v_best,
                rel_err_kl: (v_kl - sol.v_eff) / sol.v_eff,
                rel_err_wider: (v_wider - sol.v_eff) / sol.v_eff,
                rel_err_best: (v_best - sol.v_eff) / sol.v_eff,
            });
        }
        Ok(ModelComparison::Log(rows))
    } else {
        let model = coefficient_q(channel, potential)?;
        let q = model.q.expect("power model carries q");
        let p = 2 * channel.abs_l1() as i32 + 2;
        let mut rows = Vec::with_capacity(sweep.len());
        for point in sweep {
            let sol = point.result?;
            let v_model = model_v_eff(&model, point.rho)?;
            rows.push(PowerComparisonRow {
                rho: point.rho,
                v_exact: sol.v_eff,
                v_model,
                rel_err: (v_model - sol.v_eff) / sol.v_eff,
                scaled_ratio: sol.v_eff * point.rho.powi(p) / q,
            });
        }
        Ok(ModelComparison::Power(rows))
    }
}

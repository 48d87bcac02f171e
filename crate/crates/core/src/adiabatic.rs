//! Exact adiabatic eigenvalues by matching logarithmic derivatives of the
//! inner and outer hypergeometric solutions at the edge of the step support,
//! z = -1 + 1/rho^2.
//!
//! The root in nu1 is located as an offset eps = nu1 - l from the channel's
//! node index; eps is carried exactly through the special-function layer, so
//! roots sitting within 1e-14 of the pole (the deep inverse-power regime at
//! large rho) are still resolved to full relative precision.

use crate::channel::{Channel, StepPotential};
use crate::error::{Error, Result};
use crate::specfun::{inner_pair, outer_pair, Hyp2f1Config, Scaled, ShiftedReal};
use rayon::prelude::*;

pub const RHO_MIN: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Root-finder and series knobs for the matching solver.
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    pub hyp: Hyp2f1Config,
    /// Smallest offset from the integer ends of the bracket in the main scan.
    pub bracket_delta: f64,
    /// Points in the geometric scan of (l + delta, l + 1 - delta).
    pub scan_points: usize,
    /// Floor for the extended downward scan toward the pole.
    pub deep_floor: f64,
    /// Relative tolerance on the root offset.
    pub nu_tol_rel: f64,
    /// Residual acceptance threshold relative to the derivative magnitudes.
    pub residual_tol_rel: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            hyp: Hyp2f1Config::default(),
            bracket_delta: 1e-10,
            scan_points: 64,
            deep_floor: 1e-300,
            nu_tol_rel: 1e-14,
            residual_tol_rel: 1e-9,
        }
    }
}

/// One adiabatic solution at fixed hyperradius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdiabaticSolution {
    /// Hyperradius in units of the potential range.
    pub rho: f64,
    /// Outer-solution degree nu1.
    pub nu1: f64,
    /// nu1 - l carried at full precision (nu1 itself saturates near integers).
    pub nu1_excess: f64,
    /// Adiabatic eigenvalue lambda(rho) = ((2 nu1 + |l1| + |l2| + 1)^2 - 1/4)/rho^2.
    pub lambda: f64,
    /// Effective potential, lambda minus the free centrifugal term.
    pub v_eff: f64,
    /// Matching residual at the accepted root.
    pub residual: f64,
}

/// lambda from the eigenvalue formula, given nu1 and the channel.
pub fn lambda_from_nu1(channel: &Channel, rho: f64, nu1: f64) -> f64 {
    let s = 2.0 * nu1 + channel.m_sum() as f64 + 1.0;
    (s * s - 0.25) / (rho * rho)
}

/// V_eff from the eigenvalue by subtracting the free centrifugal term.
pub fn v_eff_from_lambda(channel: &Channel, rho: f64, lambda: f64) -> f64 {
    lambda - channel.centrifugal_coeff() / (rho * rho)
}

fn check_rho(rho: f64) -> Result<()> {
    if rho.is_nan() || rho <= RHO_MIN {
        return Err(Error::Domain {
            name: "rho",
            value: rho,
            constraint: "matching requires rho > 1/sqrt(2); the step covers all z below",
        });
    }
    Ok(())
}

struct ResidualParts {
    /// Wronskian-style numerator F_out' F_in - F_in' F_out: vanishes exactly
    /// at the eigenvalues and, unlike the log-derivative difference, carries
    /// no poles where one solution has a node at the matching point.
    numerator: Scaled,
    /// Magnitude scale of the numerator's two products.
    scale: Scaled,
    f_outer: f64,
    f_inner: Scaled,
}

impl ResidualParts {
    /// Log-derivative difference, the conventional matching function.
    fn ratio(&self) -> Result<f64> {
        let denom = Scaled::from_f64(self.f_outer).mul(self.f_inner);
        let r = self.numerator.div(denom).to_f64();
        if denom.m == 0.0 || !r.is_finite() {
            return Err(Error::ZeroCrossing {
                side: "outer",
                z: f64::NAN,
            });
        }
        Ok(r)
    }

    /// Sign of the numerator, the quantity the bracketing works on.
    fn sign(&self) -> f64 {
        if self.numerator.m == 0.0 {
            0.0
        } else {
            self.numerator.m.signum()
        }
    }

    /// Signed log-compressed numerator for diagnostics.
    fn compressed(&self) -> f64 {
        if self.numerator.m == 0.0 {
            return 0.0;
        }
        let mag = self.numerator.e as f64 * std::f64::consts::LN_2 + self.numerator.m.abs().ln();
        self.numerator.m.signum() * mag.max(1e-300)
    }
}

fn residual_parts(
    channel: &Channel,
    potential: &StepPotential,
    rho: f64,
    nu: ShiftedReal,
    cfg: &SolverConfig,
) -> Result<ResidualParts> {
    let m_sum = channel.m_sum();
    let c_outer = channel.abs_l2() + 1;
    let c_inner = channel.abs_l1() + 1;
    let w = 0.5 / (rho * rho); // (1+z)/2 at the matching point
    let nu_val = nu.value();
    let t1 = nu_val * (nu_val + m_sum as f64 + 1.0);
    let t2 = t1 - rho * rho * potential.v0bar() / 4.0;

    let attach = |e: Error| e.with_context(format!("{channel} at rho={rho}, nu1={nu_val}"));
    let (f_outer, df_outer) = outer_pair(nu, m_sum, c_outer, w, &cfg.hyp).map_err(attach)?;
    let attach = |e: Error| e.with_context(format!("{channel} at rho={rho}, nu1={nu_val}"));
    let (f_inner, df_inner) = inner_pair(t2, m_sum, c_inner, w, &cfg.hyp).map_err(attach)?;
    let a = Scaled::from_f64(df_outer).mul(f_inner);
    let b = df_inner.mul(Scaled::from_f64(f_outer));
    Ok(ResidualParts {
        numerator: a.sub(b),
        scale: a.add_mag(b),
        f_outer,
        f_inner,
    })
}

/// Difference of outer and inner logarithmic z-derivatives at the matching
/// point, as a function of the trial degree nu1. Zero at the eigenvalues;
/// poles where a solution carries a node through the matching point.
pub fn matching_residual(
    channel: &Channel,
    potential: &StepPotential,
    rho: f64,
    nu1_trial: f64,
    cfg: &SolverConfig,
) -> Result<f64> {
    check_rho(rho)?;
    let nu = ShiftedReal::from_f64(nu1_trial);
    residual_parts(channel, potential, rho, nu, cfg)?.ratio()
}

fn solution_from_offset(channel: &Channel, rho: f64, eps: f64, residual: f64) -> AdiabaticSolution {
    let l = channel.l() as f64;
    let np1 = (channel.order() + 1) as f64;
    // rho^2 V_eff / 4 = eps^2 + (N+1) eps, exact in the offset
    let v_eff = 4.0 * (eps * eps + np1 * eps) / (rho * rho);
    let lambda = v_eff + channel.centrifugal_coeff() / (rho * rho);
    AdiabaticSolution {
        rho,
        nu1: l + eps,
        nu1_excess: eps,
        lambda,
        v_eff,
        residual,
    }
}

/// Principal-root solve with the default configuration.
pub fn solve(channel: &Channel, potential: &StepPotential, rho: f64) -> Result<AdiabaticSolution> {
    solve_with(channel, potential, rho, &SolverConfig::default())
}

/// Principal-root solve: locate nu1 in (l, l+1) such that the logarithmic
/// derivatives match, and populate the eigenvalue and effective potential.
pub fn solve_with(
    channel: &Channel,
    potential: &StepPotential,
    rho: f64,
    cfg: &SolverConfig,
) -> Result<AdiabaticSolution> {
    solve_impl(channel, potential, rho, cfg, None)
}

fn solve_impl(
    channel: &Channel,
    potential: &StepPotential,
    rho: f64,
    cfg: &SolverConfig,
    warm_eps: Option<f64>,
) -> Result<AdiabaticSolution> {
    check_rho(rho)?;
    if potential.is_free() {
        // free basis is exact: nu1 = l, V_eff = 0
        return Ok(solution_from_offset(channel, rho, 0.0, 0.0));
    }
    let l = channel.l() as i64;
    let res = |eps: f64| -> Result<ResidualParts> {
        residual_parts(channel, potential, rho, ShiftedReal::new(l, eps), cfg)
    };

    // warm start from a previous root: try a tight bracket around it first
    if let Some(hint) = warm_eps {
        if hint > 0.0 && hint < 1.0 {
            let lo = (hint / 8.0).max(cfg.deep_floor);
            let hi = (hint * 8.0).min(1.0 - cfg.bracket_delta);
            if let (Ok(a), Ok(b)) = (res(lo), res(hi)) {
                if a.sign() != 0.0 && b.sign() != 0.0 && a.sign() != b.sign() {
                    if let Some(sol) = refine(channel, rho, cfg, &res, lo, a.sign(), hi)? {
                        return Ok(sol);
                    }
                }
            }
        }
    }

    // geometric scan of the offset, crowded toward the lower pole where the
    // roots accumulate at large rho; a downward ladder follows if the main
    // band shows no crossing (deep inverse-power roots at large rho)
    let delta = cfg.bracket_delta;
    let n = cfg.scan_points.max(8);
    let lo_edge = delta.ln();
    let hi_edge = (1.0 - delta).ln();
    let primary: Vec<f64> = (0..=n)
        .map(|i| (lo_edge + (hi_edge - lo_edge) * i as f64 / n as f64).exp())
        .collect();
    let mut deep: Vec<f64> = Vec::new();
    let mut d = delta * 1e-2;
    while d > cfg.deep_floor {
        deep.push(d);
        d *= 1e-2;
    }
    deep.reverse(); // ascending, ending just below the primary band

    let mut trace: Vec<(f64, f64)> = Vec::new();
    let walk = |band: &[f64], trace: &mut Vec<(f64, f64)>| -> Result<Option<AdiabaticSolution>> {
        let mut prev: Option<(f64, f64)> = None;
        for &eps in band {
            match res(eps) {
                Ok(parts) => {
                    trace.push((eps, parts.compressed()));
                    if parts.sign() == 0.0 {
                        return Ok(Some(solution_from_offset(channel, rho, eps, 0.0)));
                    }
                    if let Some((pe, pv)) = prev {
                        if pv != parts.sign() {
                            if let Some(sol) = refine(channel, rho, cfg, &res, pe, pv, eps)? {
                                return Ok(Some(sol));
                            }
                        }
                    }
                    prev = Some((eps, parts.sign()));
                }
                Err(_) => {
                    // series failure for this trial; skip the point
                    prev = None;
                }
            }
        }
        Ok(None)
    };
    if let Some(sol) = walk(&primary, &mut trace)? {
        return Ok(sol);
    }
    let mut deep_band = deep;
    deep_band.push(primary[0]);
    if let Some(sol) = walk(&deep_band, &mut trace)? {
        return Ok(sol);
    }
    let lo = *deep_band.first().unwrap_or(&delta);
    Err(Error::BracketFailure {
        channel: *channel,
        rho,
        lo,
        hi: 1.0 - delta,
        n_points: trace.len(),
        trace,
    })
}

type ResidualEval<'a> = &'a dyn Fn(f64) -> Result<ResidualParts>;

/// Bisection on the numerator's sign in u = ln(eps); the numerator spans
/// many orders of magnitude across a bracket, so only its sign is trusted.
/// A converged point failing the scaled-residual acceptance is rejected.
fn refine(
    channel: &Channel,
    rho: f64,
    cfg: &SolverConfig,
    res: ResidualEval,
    lo: f64,
    sign_lo: f64,
    hi: f64,
) -> Result<Option<AdiabaticSolution>> {
    let (mut a, mut b) = (lo.ln(), hi.ln());
    for _ in 0..220 {
        let tol = cfg
            .nu_tol_rel
            .max(4.0 * f64::EPSILON * a.abs().max(b.abs()));
        if (b - a).abs() < tol {
            break;
        }
        let mid = 0.5 * (a + b);
        let parts = res(mid.exp())?;
        let s = parts.sign();
        if s == 0.0 {
            a = mid;
            b = mid;
            break;
        }
        if s == sign_lo {
            a = mid;
        } else {
            b = mid;
        }
    }
    let eps = (0.5 * (a + b)).exp();
    let parts = res(eps)?;
    if parts
        .numerator
        .magnitude_le(cfg.residual_tol_rel, parts.scale)
    {
        let reported = parts.ratio().unwrap_or(0.0);
        Ok(Some(solution_from_offset(channel, rho, eps, reported)))
    } else {
        Ok(None)
    }
}

/// A swept grid with per-point outcomes; failures are collected, not fatal.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub rho: f64,
    pub result: Result<AdiabaticSolution>,
}

fn check_grid(grid: &[f64]) -> Result<()> {
    for pair in grid.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::Domain {
                name: "rho_grid",
                value: pair[1],
                constraint: "grid must be strictly increasing",
            });
        }
    }
    match grid.first() {
        Some(&first) => check_rho(first),
        None => Err(Error::Domain {
            name: "rho_grid",
            value: f64::NAN,
            constraint: "grid must be non-empty",
        }),
    }
}

/// Sweep a rho grid serially, warm-starting each point from the previous root.
pub fn sweep(
    channel: &Channel,
    potential: &StepPotential,
    grid: &[f64],
    cfg: &SolverConfig,
) -> Result<Vec<SweepPoint>> {
    check_grid(grid)?;
    let mut out = Vec::with_capacity(grid.len());
    let mut hint: Option<f64> = None;
    for &rho in grid {
        let result = solve_impl(channel, potential, rho, cfg, hint);
        if let Ok(sol) = &result {
            hint = Some(sol.nu1_excess);
        }
        out.push(SweepPoint { rho, result });
    }
    Ok(out)
}

/// Sweep a rho grid with independent per-point solves in parallel; results
/// agree with the serial sweep to solver tolerance.
pub fn sweep_independent(
    channel: &Channel,
    potential: &StepPotential,
    grid: &[f64],
    cfg: &SolverConfig,
) -> Result<Vec<SweepPoint>> {
    check_grid(grid)?;
    Ok(grid
        .par_iter()
        .map(|&rho| SweepPoint {
            rho,
            result: solve_with(channel, potential, rho, cfg),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pot10() -> StepPotential {
        StepPotential::from_lambda_star(10.0).unwrap()
    }

    #[test]
    fn free_case_is_exact() {
        let ch = Channel::new(1, -2, 3);
        let free = StepPotential::from_v0bar(0.0).unwrap();
        let sol = solve(&ch, &free, 2.5).unwrap();
        assert_eq!(sol.nu1, 3.0);
        assert_eq!(sol.v_eff, 0.0);
        let np1 = (ch.order() + 1) as f64;
        assert!((sol.lambda - (np1 * np1 - 0.25) / (2.5 * 2.5)).abs() < 1e-14);
    }

    #[test]
    fn free_residual_vanishes_toward_integer_nu() {
        let ch = Channel::new(0, 0, 1);
        let free = StepPotential::from_v0bar(0.0).unwrap();
        let r1 = matching_residual(&ch, &free, 5.0, 1.0 + 1e-3, &SolverConfig::default()).unwrap();
        let r2 = matching_residual(&ch, &free, 5.0, 1.0 + 1e-6, &SolverConfig::default()).unwrap();
        assert!(r2.abs() < r1.abs());
        assert!(r2.abs() < 1e-3);
    }

    #[test]
    fn residual_changes_sign_in_first_band() {
        // Lambda* = 10, channel (0,0,0), rho = 5: root inside nu1 in (0, 0.1)
        let ch = Channel::new(0, 0, 0);
        let cfg = SolverConfig::default();
        let lo = matching_residual(&ch, &pot10(), 5.0, 1e-6, &cfg).unwrap();
        let hi = matching_residual(&ch, &pot10(), 5.0, 0.1, &cfg).unwrap();
        assert!(lo.signum() != hi.signum(), "lo={lo} hi={hi}");
    }

    #[test]
    fn residual_near_pole_is_inner_dominated() {
        // as nu1 -> l+ the outer derivative collapses through the h0 pole and
        // the residual tends to minus the inner derivative (negative side)
        let ch = Channel::new(0, 0, 0);
        let cfg = SolverConfig::default();
        let r = matching_residual(&ch, &pot10(), 5.0, 1e-9, &cfg).unwrap();
        assert!(r < 0.0);
    }

    #[test]
    fn table_value_for_lowest_channel() {
        // Lambda* = 10, channel (0,0,0), rho = 5
        let sol = solve(&Channel::new(0, 0, 0), &pot10(), 5.0).unwrap();
        assert!(
            (sol.v_eff - 0.011754562).abs() < 5e-9,
            "v_eff = {}",
            sol.v_eff
        );
    }

    #[test]
    fn sign_symmetry_in_momenta() {
        let pot = pot10();
        let base = solve(&Channel::new(1, 2, 1), &pot, 5.0).unwrap();
        for ch in [
            Channel::new(-1, 2, 1),
            Channel::new(1, -2, 1),
            Channel::new(-1, -2, 1),
        ] {
            let sol = solve(&ch, &pot, 5.0).unwrap();
            assert_eq!(sol.nu1_excess, base.nu1_excess);
            assert_eq!(sol.v_eff, base.v_eff);
        }
    }

    #[test]
    fn sweep_matches_independent_solves() {
        let ch = Channel::new(0, 0, 0);
        let pot = pot10();
        let cfg = SolverConfig::default();
        let grid = [5.0, 7.5, 11.0, 16.0, 24.0];
        let swept = sweep(&ch, &pot, &grid, &cfg).unwrap();
        for p in &swept {
            let direct = solve(&ch, &pot, p.rho).unwrap();
            let s = p.result.as_ref().unwrap();
            assert!(
                (s.v_eff - direct.v_eff).abs() <= 1e-12 * direct.v_eff.abs(),
                "rho={}",
                p.rho
            );
        }
    }

    #[test]
    fn singleton_grid_sweep_reduces_to_solve() {
        let ch = Channel::new(0, 0, 0);
        let pot = pot10();
        let swept = sweep(&ch, &pot, &[5.0], &SolverConfig::default()).unwrap();
        let direct = solve(&ch, &pot, 5.0).unwrap();
        assert_eq!(swept.len(), 1);
        assert_eq!(swept[0].result.as_ref().unwrap().v_eff, direct.v_eff);
    }

    #[test]
    fn rejects_small_rho() {
        let ch = Channel::new(0, 0, 0);
        assert!(solve(&ch, &pot10(), 0.5).is_err());
        assert!(matching_residual(&ch, &pot10(), 0.7, 0.1, &SolverConfig::default()).is_err());
    }

    #[test]
    fn deep_inverse_power_root_is_resolved() {
        // |l1| = 2 at rho = 1000: the root offset is ~8e-15, far below the
        // main scan floor; the extended ladder must still find it and the
        // scaled potential must approach the inverse-power coefficient
        let ch = Channel::new(2, 0, 0);
        let sol = solve(&ch, &pot10(), 1000.0).unwrap();
        let scaled = sol.v_eff * 1000.0f64.powi(6);
        assert!(
            (scaled - 0.096323).abs() < 0.02 * 0.096323,
            "rho^6 V_eff = {scaled}"
        );
    }
}

//! Command implementations: each builds a table, fills the sidecar and
//! returns the process exit code.

use crate::args::*;
use crate::output::{emit, fmt_g12, Check, Sidecar, Table};
use crate::reference::{self, last_digit_tol};
use anyhow::{bail, Result};
use hyperadia::adiabatic::{self, AdiabaticSolution};
use hyperadia::asymptotics::{self, ModelComparison};
use hyperadia::phaseshift::{
    channel_phase_shift_with, hard_disc_phase_shift, PhaseConfig, RadialProblem,
};
use hyperadia::ritz::{ritz_eigenvalues, RitzBasisSpec};
use hyperadia::Channel;
use rayon::prelude::*;
use std::time::Instant;

fn install_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build()?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

fn channel_cols(ch: &Channel) -> [String; 3] {
    [ch.l1().to_string(), ch.l2().to_string(), ch.l().to_string()]
}

fn solution_cols(sol: &AdiabaticSolution) -> [String; 4] {
    [
        fmt_g12(sol.nu1),
        fmt_g12(sol.lambda),
        fmt_g12(sol.v_eff),
        format!("{:.3e}", sol.residual),
    ]
}

pub fn direct(args: &DirectArgs) -> Result<i32> {
    let started = Instant::now();
    let tol = args.output.tolerances()?;
    let pot = args.potential.resolve(None)?;
    let mut table = Table::new(vec![
        "l1", "l2", "l", "rho", "nu1", "lambda", "v_eff", "residual", "error",
    ]);
    let mut sidecar = Sidecar::new("direct");

    let jobs: Vec<(Channel, f64)> = args
        .channels
        .channels
        .iter()
        .flat_map(|ch| args.rho.iter().map(move |rho| (*ch, *rho)))
        .collect();
    let solved: Vec<_> = install_pool(args.output.jobs, || {
        jobs.par_iter()
            .map(|(ch, rho)| adiabatic::solve_with(ch, &pot, *rho, &tol.solver))
            .collect::<Vec<_>>()
    })?;
    for ((ch, rho), result) in jobs.iter().zip(solved) {
        let mut row: Vec<String> = channel_cols(ch).to_vec();
        row.push(fmt_g12(*rho));
        match result {
            Ok(sol) => {
                row.extend(solution_cols(&sol));
                row.push(String::new());
            }
            Err(e) => {
                row.extend(["", "", "", ""].map(String::from));
                let msg = format!("{ch} rho={rho}: {e}");
                row.push(e.to_string().replace(',', ";"));
                sidecar.row_errors.push(msg);
            }
        }
        table.push(row);
    }
    sidecar.finish(started);
    emit(
        &table,
        &args.output.format,
        args.output.out.as_ref(),
        &sidecar,
    )
}

pub fn sweep(args: &SweepArgs) -> Result<i32> {
    let started = Instant::now();
    let tol = args.output.tolerances()?;
    let pot = args.potential.resolve(None)?;
    let mut table = Table::new(vec![
        "l1", "l2", "l", "rho", "nu1", "lambda", "v_eff", "residual", "error",
    ]);
    let mut sidecar = Sidecar::new("sweep");
    for ch in &args.channels.channels {
        let points = install_pool(args.output.jobs, || {
            if args.independent {
                adiabatic::sweep_independent(ch, &pot, &args.rho_grid.0, &tol.solver)
            } else {
                adiabatic::sweep(ch, &pot, &args.rho_grid.0, &tol.solver)
            }
        })??;
        for point in points {
            let mut row: Vec<String> = channel_cols(ch).to_vec();
            row.push(fmt_g12(point.rho));
            match point.result {
                Ok(sol) => {
                    row.extend(solution_cols(&sol));
                    row.push(String::new());
                }
                Err(e) => {
                    row.extend(["", "", "", ""].map(String::from));
                    sidecar
                        .row_errors
                        .push(format!("{ch} rho={}: {e}", point.rho));
                    row.push(e.to_string().replace(',', ";"));
                }
            }
            table.push(row);
        }
    }
    sidecar.finish(started);
    emit(
        &table,
        &args.output.format,
        args.output.out.as_ref(),
        &sidecar,
    )
}

pub fn asym(args: &AsymArgs) -> Result<i32> {
    let started = Instant::now();
    let pot = args.potential.resolve(None)?;
    let mut table = Table::new(vec![
        "l1", "l2", "l", "N", "class", "a", "b", "a_star", "b_star", "q",
    ]);
    let mut sidecar = Sidecar::new("asym");
    for ch in &args.channels.channels {
        let mut row: Vec<String> = channel_cols(ch).to_vec();
        row.push(ch.order().to_string());
        if ch.abs_l1() == 0 {
            let m = asymptotics::coefficients_log(ch, &pot)?;
            row.push("inverse-log".into());
            row.extend([
                fmt_g12(m.a),
                fmt_g12(m.b),
                fmt_g12(m.a_star),
                fmt_g12(m.b_star),
                String::new(),
            ]);
        } else {
            let m = asymptotics::coefficient_q(ch, &pot)?;
            row.push("inverse-power".into());
            row.extend([
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                fmt_g12(m.q.unwrap()),
            ]);
        }
        table.push(row);
    }
    sidecar.finish(started);
    emit(
        &table,
        &args.output.format,
        args.output.out.as_ref(),
        &sidecar,
    )
}

pub fn matrix(args: &MatrixArgs) -> Result<i32> {
    let started = Instant::now();
    let tol = args.output.tolerances()?;
    let pot = args.potential.resolve(None)?;
    let mut table = Table::new(vec![
        "l1",
        "l2",
        "l",
        "rho",
        "n_max",
        "v_eff_ritz",
        "v_eff_direct",
        "gap",
    ]);
    let mut sidecar = Sidecar::new("matrix");
    for ch in &args.channels.channels {
        let rows =
            hyperadia::ritz::convergence_study(ch, &pot, args.rho, &args.n_max, &tol.solver)?;
        for r in rows {
            let mut row: Vec<String> = channel_cols(ch).to_vec();
            row.push(fmt_g12(args.rho));
            row.push(r.n_max.to_string());
            row.extend([
                fmt_g12(r.v_eff_ritz),
                fmt_g12(r.v_eff_direct),
                fmt_g12(r.gap),
            ]);
            table.push(row);
        }
    }
    sidecar.finish(started);
    emit(
        &table,
        &args.output.format,
        args.output.out.as_ref(),
        &sidecar,
    )
}

pub fn table1(args: &RefTableArgs) -> Result<i32> {
    let started = Instant::now();
    let tol = args.output.tolerances()?;
    let (reference, ref_path) = reference::load()?;
    let pot = args
        .potential
        .resolve(Some(reference.potential.lambda_star))?;
    let [l1, l2, l] = reference.table1.channel;
    let ch = Channel::new(l1 as i32, l2 as i32, l as u32);
    let rho = reference.rho;

    let mut table = Table::new(vec!["n_max", "v_eff_ritz", "v_eff_direct", "gap"]);
    let mut sidecar = Sidecar::new("table1");
    sidecar.reference_data = ref_path;

    let direct = adiabatic::solve_with(&ch, &pot, rho, &tol.solver)?;
    let n_max: Vec<u32> = reference.table1.rows.iter().map(|r| r.n_max).collect();
    let rows = hyperadia::ritz::convergence_study(&ch, &pot, rho, &n_max, &tol.solver)?;
    for (row, want) in rows.iter().zip(&reference.table1.rows) {
        table.push(vec![
            row.n_max.to_string(),
            fmt_g12(row.v_eff_ritz),
            fmt_g12(row.v_eff_direct),
            fmt_g12(row.gap),
        ]);
        sidecar.checks.push(Check::new(
            format!("table1/n_max={}", row.n_max),
            row.v_eff_ritz,
            want.v_eff.parse()?,
            reference.table1.ritz_abs_tol * tol.ref_tol_scale,
            &reference.table1.source,
        ));
    }
    sidecar.checks.push(Check::new(
        "table1/direct".into(),
        direct.v_eff,
        reference.table1.direct.parse()?,
        reference.table1.direct_abs_tol * tol.ref_tol_scale,
        &reference.table1.source,
    ));
    sidecar.finish(started);
    emit(
        &table,
        &args.output.format,
        args.output.out.as_ref(),
        &sidecar,
    )
}

pub fn table2(args: &RefTableArgs) -> Result<i32> {
    let started = Instant::now();
    let tol = args.output.tolerances()?;
    let (reference, ref_path) = reference::load()?;
    let pot = args
        .potential
        .resolve(Some(reference.potential.lambda_star))?;
    let rho = reference.rho;

    let mut table = Table::new(vec![
        "parity",
        "inplane",
        "N",
        "v_eff_ritz",
        "l",
        "l1",
        "l2",
        "v_eff_direct",
        "n_max",
    ]);
    let mut sidecar = Sidecar::new("table2");
    sidecar.reference_data = ref_path;
    sidecar.notes.push(
        "the four 9-digit truncated-column rows match the n_max=140 truncation, \
         not the stated 100; checks run at the stated cutoff"
            .into(),
    );

    let rows = &reference.table2.rows;
    let computed: Vec<_> = install_pool(args.output.jobs, || {
        rows.par_iter()
            .map(|row| -> hyperadia::Result<(AdiabaticSolution, f64)> {
                let ch = Channel::new(row.l1, row.l2, row.l);
                let direct = adiabatic::solve_with(&ch, &pot, rho, &tol.solver)?;
                let spec = RitzBasisSpec::new(ch, row.stated_n_max)?;
                let ritz = ritz_eigenvalues(&spec, &pot, rho)?.v_eff(&ch);
                Ok((direct, ritz))
            })
            .collect::<Vec<_>>()
    })?;
    for (row, outcome) in rows.iter().zip(computed) {
        let (direct, ritz) = outcome?;
        table.push(vec![
            row.parity.clone(),
            row.inplane.to_string(),
            row.order.to_string(),
            fmt_g12(ritz),
            row.l.to_string(),
            row.l1.to_string(),
            row.l2.to_string(),
            fmt_g12(direct.v_eff),
            row.stated_n_max.to_string(),
        ]);
        let id = format!("table2/l={},l1={},l2={}", row.l, row.l1, row.l2);
        sidecar.checks.push(Check::new(
            format!("{id}/direct"),
            direct.v_eff,
            row.direct.parse()?,
            last_digit_tol(&row.direct) * tol.ref_tol_scale,
            &reference.table2.source,
        ));
        sidecar.checks.push(Check::new(
            format!("{id}/ritz@{}", row.stated_n_max),
            ritz,
            row.ritz.parse()?,
            last_digit_tol(&row.ritz) * tol.ref_tol_scale,
            &reference.table2.source,
        ));
    }
    sidecar.finish(started);
    emit(
        &table,
        &args.output.format,
        args.output.out.as_ref(),
        &sidecar,
    )
}

pub fn table3(args: &RefTableArgs) -> Result<i32> {
    let started = Instant::now();
    let tol = args.output.tolerances()?;
    let (reference, ref_path) = reference::load()?;
    let pot = args
        .potential
        .resolve(Some(reference.potential.lambda_star))?;

    let mut table = Table::new(vec![
        "parity", "inplane", "N", "l1", "l", "l2", "a_fit", "a", "a_star",
    ]);
    let mut sidecar = Sidecar::new("table3");
    sidecar.reference_data = ref_path;
    for row in &reference.table3.rows {
        let ch = Channel::new(row.l1, row.l2, row.l);
        let m = asymptotics::coefficients_log(&ch, &pot)?;
        table.push(vec![
            row.parity.clone(),
            row.inplane.to_string(),
            row.order.to_string(),
            row.l1.to_string(),
            row.l.to_string(),
            row.l2.to_string(),
            row.a_fit.clone(),
            fmt_g12(m.a),
            fmt_g12(m.a_star),
        ]);
        let id = format!("table3/l1={},l={},l2={}", row.l1, row.l, row.l2);
        let tol_abs = reference.table3.abs_tol * tol.ref_tol_scale;
        sidecar.checks.push(Check::new(
            format!("{id}/a"),
            m.a,
            row.a.parse()?,
            tol_abs,
            &reference.table3.source,
        ));
        sidecar.checks.push(Check::new(
            format!("{id}/a_star"),
            m.a_star,
            row.a_star.parse()?,
            tol_abs,
            &reference.table3.source,
        ));
    }
    sidecar.finish(started);
    emit(
        &table,
        &args.output.format,
        args.output.out.as_ref(),
        &sidecar,
    )
}

pub fn fig2(args: &Fig2Args) -> Result<i32> {
    let started = Instant::now();
    let tol = args.output.tolerances()?;
    let pot = args.potential.resolve(Some(10.0))?;
    let grid = match &args.rho_grid {
        Some(g) => g.0.clone(),
        None => crate::args::parse_grid("50:1e4:25:log")?.0,
    };
    let ch = Channel::new(0, 0, 0);
    let cmp = asymptotics::compare_models(&ch, &pot, &grid, &tol.solver)?;
    let rows = match cmp {
        ModelComparison::Log(rows) => rows,
        ModelComparison::Power(_) => unreachable!("the lowest channel is log class"),
    };
    let mut table = Table::new(vec![
        "rho",
        "v_exact",
        "v_kl",
        "v_wider",
        "v_best",
        "rel_err_kl",
        "rel_err_wider",
        "rel_err_best",
    ]);
    let mut sidecar = Sidecar::new("fig2");
    let mut ordering_ok = true;
    let mut best_near_1e3 = f64::NAN;
    for r in &rows {
        table.push(vec![
            fmt_g12(r.rho),
            fmt_g12(r.v_exact),
            fmt_g12(r.v_kl),
            fmt_g12(r.v_wider),
            fmt_g12(r.v_best),
            fmt_g12(r.rel_err_kl),
            fmt_g12(r.rel_err_wider),
            fmt_g12(r.rel_err_best),
        ]);
        ordering_ok &= r.rel_err_best.abs() <= r.rel_err_wider.abs()
            && r.rel_err_wider.abs() <= r.rel_err_kl.abs();
        if (r.rho.log10() - 3.0).abs() < 0.11 {
            best_near_1e3 = r.rel_err_best.abs();
        }
    }
    sidecar.checks.push(Check::new(
        "fig2/error-ordering(best<=wider<=kl)".into(),
        ordering_ok as u8 as f64,
        1.0,
        0.0,
        "model-consistency",
    ));
    if best_near_1e3.is_finite() {
        sidecar.checks.push(Check::new(
            "fig2/|rel_err_best|@rho~1e3".into(),
            best_near_1e3,
            0.0,
            0.01 * tol.ref_tol_scale,
            "model-consistency",
        ));
    }
    sidecar.finish(started);
    emit(
        &table,
        &args.output.format,
        args.output.out.as_ref(),
        &sidecar,
    )
}

pub fn fig3(args: &Fig3Args) -> Result<i32> {
    let started = Instant::now();
    let tol = args.output.tolerances()?;
    let (reference, ref_path) = reference::load()?;
    let pot = args
        .potential
        .resolve(Some(reference.potential.lambda_star))?;
    let Some(ref_row) = reference.fig3.rows.iter().find(|r| r.l1 == args.l1) else {
        bail!(
            "no published inverse-power coefficient for --l1 {}",
            args.l1
        );
    };
    let ch = Channel::new(ref_row.l1 as i32, ref_row.l2, ref_row.l);
    let grid = match &args.rho_grid {
        Some(g) => g.0.clone(),
        None => crate::args::parse_grid("5:1e3:25:log")?.0,
    };
    let cmp = asymptotics::compare_models(&ch, &pot, &grid, &tol.solver)?;
    let rows = match cmp {
        ModelComparison::Power(rows) => rows,
        ModelComparison::Log(_) => unreachable!("fig3 channels carry l1 >= 1"),
    };
    let q = asymptotics::coefficient_q(&ch, &pot)?.q.unwrap();

    let mut table = Table::new(vec!["rho", "v_exact", "v_model", "rel_err", "scaled_ratio"]);
    let mut sidecar = Sidecar::new("fig3");
    sidecar.reference_data = ref_path;
    for r in &rows {
        table.push(vec![
            fmt_g12(r.rho),
            fmt_g12(r.v_exact),
            fmt_g12(r.v_model),
            fmt_g12(r.rel_err),
            fmt_g12(r.scaled_ratio),
        ]);
    }
    sidecar.checks.push(Check::new(
        format!("fig3/q(l1={})", args.l1),
        q,
        ref_row.q.parse()?,
        reference.fig3.abs_tol * tol.ref_tol_scale,
        &reference.fig3.source,
    ));
    if let Some(last) = rows.last() {
        sidecar.checks.push(Check::new(
            format!("fig3/scaled_ratio@rho={}", fmt_g12(last.rho)),
            last.scaled_ratio,
            1.0,
            0.02 * tol.ref_tol_scale,
            "model-consistency",
        ));
    }
    sidecar.finish(started);
    emit(
        &table,
        &args.output.format,
        args.output.out.as_ref(),
        &sidecar,
    )
}

pub fn phase(args: &PhaseArgs) -> Result<i32> {
    let started = Instant::now();
    let tol = args.output.tolerances()?;

    let mut sidecar = Sidecar::new("phase");
    let mut table = Table::new(vec!["k", "delta", "step_error", "consistency"]);
    let deltas: Vec<(f64, f64)> = if args.hard_disc {
        let mut out = Vec::new();
        for &k in &args.k_grid.0 {
            let d = hard_disc_phase_shift(args.l, k)?;
            table.push(vec![fmt_g12(k), fmt_g12(d), String::new(), String::new()]);
            out.push((k, d));
        }
        out
    } else {
        let Some(ch) = args.channel else {
            bail!("give --channel l1,l2,l or --hard-disc");
        };
        let pot = args.potential.resolve(None)?;
        let phase_cfg = PhaseConfig {
            solver: tol.solver,
            ..PhaseConfig::default()
        };
        let k_grid = args.k_grid.0.clone();
        let results: Vec<_> = install_pool(args.output.jobs, || {
            k_grid
                .par_iter()
                .map(|&k| {
                    let problem = RadialProblem::new(ch, pot, k)?;
                    channel_phase_shift_with(&problem, &phase_cfg)
                })
                .collect::<Vec<_>>()
        })?;
        let mut out = Vec::new();
        for (&k, detail) in args.k_grid.0.iter().zip(results) {
            let detail = detail?;
            table.push(vec![
                fmt_g12(k),
                fmt_g12(detail.delta),
                format!("{:.3e}", detail.step_error),
                format!("{:.3e}", detail.consistency),
            ]);
            out.push((k, detail.delta));
        }
        out
    };

    // fitted law parameters: inverse-log constant at the smallest k, and the
    // log-log slope across the grid
    if let Some(&(k_min, d_min)) = deltas.first() {
        sidecar.notes.push(format!(
            "delta*ln(k) at k={}: {}",
            fmt_g12(k_min),
            fmt_g12(d_min * k_min.ln())
        ));
    }
    if deltas.len() >= 2 && deltas.iter().all(|(_, d)| *d != 0.0) {
        let n = deltas.len() as f64;
        let mx = deltas.iter().map(|(k, _)| k.ln()).sum::<f64>() / n;
        let my = deltas.iter().map(|(_, d)| d.abs().ln()).sum::<f64>() / n;
        let num: f64 = deltas
            .iter()
            .map(|(k, d)| (k.ln() - mx) * (d.abs().ln() - my))
            .sum();
        let den: f64 = deltas.iter().map(|(k, _)| (k.ln() - mx).powi(2)).sum();
        sidecar
            .notes
            .push(format!("log-log slope of |delta|: {}", fmt_g12(num / den)));
    }
    sidecar.finish(started);
    emit(
        &table,
        &args.output.format,
        args.output.out.as_ref(),
        &sidecar,
    )
}

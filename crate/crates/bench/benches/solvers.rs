use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperadia::adiabatic::{self, SolverConfig};
use hyperadia::phaseshift::{channel_phase_shift, RadialProblem};
use hyperadia::ritz::{ritz_eigenvalues, RitzBasisSpec};
use hyperadia::specfun::{f1_series, Hyp2f1Config, SymmetricF1Params};
use hyperadia::{Channel, StepPotential};
use std::hint::black_box;

fn pot10() -> StepPotential {
    StepPotential::from_lambda_star(10.0).unwrap()
}

fn bench_series(c: &mut Criterion) {
    let cfg = Hyp2f1Config::default();
    c.bench_function("f1_series moderate argument", |b| {
        let p = SymmetricF1Params {
            t: 3.7,
            m: 2,
            c: 2,
            x: 0.6,
        };
        b.iter(|| f1_series(black_box(&p), &cfg).unwrap())
    });
}

fn bench_solve(c: &mut Criterion) {
    let pot = pot10();
    let mut group = c.benchmark_group("adiabatic solve");
    for rho in [5.0, 100.0, 1e4] {
        group.bench_with_input(BenchmarkId::from_parameter(rho), &rho, |b, &rho| {
            let ch = Channel::new(0, 0, 0);
            b.iter(|| adiabatic::solve(&ch, &pot, black_box(rho)).unwrap())
        });
    }
    group.finish();

    c.bench_function("sweep 32 points with continuation", |b| {
        let ch = Channel::new(0, 0, 0);
        let cfg = SolverConfig::default();
        let grid: Vec<f64> = (0..32).map(|i| 5.0 * 1.25f64.powi(i)).collect();
        b.iter(|| adiabatic::sweep(&ch, &pot, black_box(&grid), &cfg).unwrap())
    });
}

fn bench_ritz(c: &mut Criterion) {
    let pot = pot10();
    let mut group = c.benchmark_group("ritz eigenvalues");
    group.sample_size(20);
    for n_max in [60u32, 140] {
        group.bench_with_input(BenchmarkId::from_parameter(n_max), &n_max, |b, &n_max| {
            let spec = RitzBasisSpec::new(Channel::new(0, 0, 0), n_max).unwrap();
            b.iter(|| ritz_eigenvalues(black_box(&spec), &pot, 5.0).unwrap())
        });
    }
    group.finish();
}

fn bench_phase(c: &mut Criterion) {
    let pot = pot10();
    let mut group = c.benchmark_group("phase shift");
    group.sample_size(10);
    group.bench_function("channel (0,0,0) at k=1e-3", |b| {
        let problem = RadialProblem::new(Channel::new(0, 0, 0), pot, 1e-3).unwrap();
        b.iter(|| channel_phase_shift(black_box(&problem)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_series, bench_solve, bench_ritz, bench_phase);
criterion_main!(benches);

//! Implementation-vs-oracle checks: every special function is held against
//! the extended-precision brute-force series, and the outer log-derivative
//! (hence the connection expansion) against an independent ODE integration.

mod common;

use common::{
    ode_outer_log_derivative, oracle_bessel_i, oracle_bessel_jy, oracle_digamma_half_integer,
    oracle_digamma_integer,
};
use hyperadia::specfun::{bessel_i, bessel_jy, digamma, f1_log_derivative, Hyp2f1Config};

#[test]
fn bessel_i_against_series_oracle() {
    for order in 0..=6u32 {
        for &x in &[
            1e-3,
            0.1,
            0.628_318_530_717_958_6,
            1.0,
            3.7,
            12.0,
            35.0,
            50.0,
        ] {
            let got = bessel_i(order, x).unwrap();
            let want = oracle_bessel_i(order, x);
            let rel = ((got - want) / want).abs();
            assert!(rel < 1e-13, "I_{order}({x}): rel {rel:e}");
        }
    }
}

#[test]
fn bessel_jy_against_series_oracle() {
    for order in 0..=5u32 {
        for &x in &[1e-4, 0.01, 0.3, 1.0, 4.0, 9.5, 16.0, 20.0] {
            let (j, y) = bessel_jy(order, x).unwrap();
            let (jo, yo) = oracle_bessel_jy(order, x);
            assert!(((j - jo) / jo).abs() < 1e-10, "J_{order}({x}): {j} vs {jo}");
            assert!(((y - yo) / yo).abs() < 1e-10, "Y_{order}({x}): {y} vs {yo}");
        }
    }
}

#[test]
fn digamma_against_exact_lattice_values() {
    for n in 1..=30u32 {
        let got = digamma(n as f64).unwrap();
        let want = oracle_digamma_integer(n);
        assert!((got - want).abs() < 1e-12 * (1.0 + want.abs()), "psi({n})");
        let got = digamma(n as f64 - 0.5).unwrap();
        let want = oracle_digamma_half_integer(n - 1);
        assert!(
            (got - want).abs() < 1e-12 * (1.0 + want.abs()),
            "psi({n}-1/2)"
        );
    }
}

#[test]
fn outer_log_derivative_against_ode_integration() {
    // the ODE route validates the connection expansion with entirely
    // different numerics, including a near-pole offset
    let cfg = Hyp2f1Config::default();
    let cases: &[(f64, u32, u32, f64)] = &[
        // (nu, |l1|, |l2|, rho)
        (0.0687407252922294, 0, 0, 5.0),
        (1.07634360405776, 0, 0, 5.0),
        (0.00182162441932325, 1, 1, 5.0),
        (2.3, 2, 1, 3.0),
        (1.0 + 1e-8, 1, 0, 60.0),
    ];
    for &(nu, a1, a2, rho) in cases {
        let z_match = -1.0 + 1.0 / (rho * rho);
        let m = a1 + a2;
        let t = nu * (nu + m as f64 + 1.0);
        let (_, right) = f1_log_derivative(t, m, a1 + 1, a2 + 1, z_match, &cfg).unwrap();
        let ode = ode_outer_log_derivative(nu, a1, a2, z_match);
        let rel = ((right - ode) / ode).abs();
        assert!(
            rel < 2e-7,
            "nu={nu}, a1={a1}, a2={a2}, rho={rho}: {right} vs {ode} (rel {rel:e})"
        );
    }
}

#[test]
fn oracle_self_checks() {
    // the oracle machinery itself reproduces textbook values
    assert!((oracle_bessel_i(0, 0.0) - 1.0).abs() < 1e-60);
    let (j0, y0) = oracle_bessel_jy(0, 0.01);
    assert!((j0 - 0.999_975_000_156_249_5).abs() < 1e-18);
    assert!((y0 - -3.005_455_637_083_646).abs() < 1e-15);
    assert!((oracle_digamma_integer(1) + hyperadia::specfun::EULER_GAMMA).abs() < 1e-15);
    assert!((oracle_digamma_half_integer(0) - (-1.963_510_026_021_423_5)).abs() < 1e-14);
}

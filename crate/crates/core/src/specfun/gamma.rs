//! Gamma, digamma and harmonic numbers on the real line.
//!
//! Positive arguments go through a Lanczos approximation (g = 7, 9 terms);
//! negative non-integer arguments through the reflection formulas
//! Gamma(x) Gamma(1-x) = pi / sin(pi x) and psi(x) = psi(1-x) - pi cot(pi x).

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_gamma(x: f64) -> f64 {
    // valid for x > 0.5
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x - 1.0 + i as f64);
    }
    let t = x - 0.5 + LANCZOS_G;
    (2.0 * PI).sqrt() * t.powf(x - 0.5) * (-t).exp() * acc
}

/// Factorial n! as f64, exact for n <= 22 and correctly rounded beyond.
pub fn factorial(n: u32) -> f64 {
    let mut v = 1.0f64;
    for k in 2..=n {
        v *= k as f64;
    }
    v
}

/// Binomial coefficient C(n, p) = n! / (p! (n-p)!).
pub fn binomial(n: u32, p: u32) -> f64 {
    if p > n {
        return 0.0;
    }
    let p = p.min(n - p);
    let mut v = 1.0f64;
    for i in 0..p {
        v = v * (n - i) as f64 / (i + 1) as f64;
    }
    v
}

/// Gamma(x) for real x, poles excluded.
pub fn gamma(x: f64) -> f64 {
    if x > 0.5 {
        // integers resolve to exact factorials
        if x == x.round() && x <= 171.0 {
            return factorial(x as u32 - 1);
        }
        lanczos_gamma(x)
    } else {
        // reflection; infinite at nonpositive integers
        let s = sin_pi(x);
        if s == 0.0 {
            return f64::INFINITY;
        }
        PI / (s * lanczos_gamma(1.0 - x))
    }
}

/// sin(pi x) with the integer part removed exactly.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - x.round();
    let s = (PI * r).sin();
    // sin(pi(n + r)) = (-1)^n sin(pi r)
    if (x.round() as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// cos(pi x) with the integer part removed exactly.
pub fn cos_pi(x: f64) -> f64 {
    let r = x - x.round();
    let c = (PI * r).cos();
    if (x.round() as i64) % 2 == 0 {
        c
    } else {
        -c
    }
}

/// Digamma psi(x); returns a domain error at the poles x = 0, -1, -2, ...
pub fn digamma(x: f64) -> Result<f64> {
    if x <= 0.0 && (x - x.round()).abs() < 1e-13 {
        return Err(Error::Domain {
            name: "x",
            value: x,
            constraint: "digamma pole at nonpositive integers",
        });
    }
    Ok(digamma_raw(x))
}

/// Digamma without the pole guard; caller keeps arguments off the poles.
pub(crate) fn digamma_raw(x: f64) -> f64 {
    if x < 0.0 {
        // psi(x) = psi(1-x) - pi cot(pi x)
        return digamma_raw(1.0 - x) - PI * cos_pi(x) / sin_pi(x);
    }
    let mut result = 0.0;
    let mut z = x;
    while z < 8.0 {
        result -= 1.0 / z;
        z += 1.0;
    }
    // asymptotic expansion with Bernoulli coefficients
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    result += z.ln() - 0.5 * inv;
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2
                                * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * 691.0 / 32760.0)))));
    result - series
}

/// Harmonic number H_n = sum_{p=1..n} 1/p, with H_0 = 0.
pub fn harmonic(n: u32) -> f64 {
    let mut h = 0.0;
    for p in 1..=n {
        h += 1.0 / p as f64;
    }
    h
}

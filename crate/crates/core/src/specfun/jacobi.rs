//! Jacobi polynomials by the three-term recurrence, plus the flat-measure
//! norms used to orthonormalize the angular basis.

use crate::error::{Error, Result};

/// P_n^{alpha,beta}(z) by the standard three-term recurrence.
///
/// Requires alpha, beta > -1 and z in [-1, 1].
pub fn jacobi_polynomial(n: u32, alpha: f64, beta: f64, z: f64) -> Result<f64> {
    if alpha.is_nan() || alpha <= -1.0 {
        return Err(Error::Domain {
            name: "alpha",
            value: alpha,
            constraint: "jacobi_polynomial requires alpha > -1",
        });
    }
    if beta.is_nan() || beta <= -1.0 {
        return Err(Error::Domain {
            name: "beta",
            value: beta,
            constraint: "jacobi_polynomial requires beta > -1",
        });
    }
    if !(-1.0..=1.0).contains(&z) {
        return Err(Error::Domain {
            name: "z",
            value: z,
            constraint: "jacobi_polynomial requires -1 <= z <= 1",
        });
    }
    let mut buf = Vec::new();
    jacobi_sequence(n, alpha, beta, z, &mut buf);
    Ok(buf[n as usize])
}

/// Fill `out` with P_0..P_{n_max}^{alpha,beta}(z).
pub(crate) fn jacobi_sequence(n_max: u32, alpha: f64, beta: f64, z: f64, out: &mut Vec<f64>) {
    out.clear();
    out.push(1.0);
    if n_max == 0 {
        return;
    }
    out.push((alpha + 1.0) + (alpha + beta + 2.0) * (z - 1.0) / 2.0);
    for n in 2..=n_max {
        let n = n as f64;
        let c1 = 2.0 * n * (n + alpha + beta) * (2.0 * n + alpha + beta - 2.0);
        let c2 = (2.0 * n + alpha + beta - 1.0) * (alpha * alpha - beta * beta);
        let c3 = (2.0 * n + alpha + beta - 1.0)
            * (2.0 * n + alpha + beta)
            * (2.0 * n + alpha + beta - 2.0);
        let c4 = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * (2.0 * n + alpha + beta);
        let len = out.len();
        let v = ((c2 + c3 * z) * out[len - 1] - c4 * out[len - 2]) / c1;
        out.push(v);
    }
}

/// Flat-measure norm h_n = int_{-1}^{1} (1-z)^alpha (1+z)^beta [P_n^{alpha,beta}]^2 dz
/// for integer parameters, computed as a stable product.
pub(crate) fn jacobi_norm(n: u32, alpha: u32, beta: u32) -> f64 {
    // 2^(a+b+1)/(2n+a+b+1) * Gamma(n+a+1) Gamma(n+b+1) / (Gamma(n+a+b+1) n!)
    let m = alpha + beta;
    let mut v = 2.0f64.powi(m as i32 + 1) / (2 * n + m + 1) as f64;
    for i in 1..=beta {
        v *= (n + i) as f64;
    }
    for i in (alpha + 1)..=m {
        v /= (n + i) as f64;
    }
    v
}

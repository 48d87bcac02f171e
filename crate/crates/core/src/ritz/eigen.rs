//! Dense symmetric eigensolver: cyclic Jacobi rotations with eigenvectors.
//! Plenty for the desk-scale matrices here (<= 256 x 256) and keeps the
//! rotation product orthogonal to rounding.

use crate::error::{Error, Result};

/// Dense square matrix in row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    /// Max-norm of Q^T Q - I.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                let mut dot = 0.0;
                for k in 0..n {
                    dot += self.get(k, i) * self.get(k, j);
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Eigenvalues (ascending) and the matching eigenvector columns of a
/// symmetric matrix, by cyclic Jacobi sweeps.
pub fn symmetric_eigen(mat: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    let n = mat.n;
    let mut a = mat.clone();
    let mut q = Matrix::identity(n);
    if n == 0 {
        return Ok((Vec::new(), q));
    }

    let off_norm = |a: &Matrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += a.get(i, j) * a.get(i, j);
            }
        }
        s.sqrt()
    };
    let fro: f64 = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| a.get(i, j) * a.get(i, j))
        .sum::<f64>()
        .sqrt()
        .max(f64::MIN_POSITIVE);

    let mut converged = false;
    for _sweep in 0..60 {
        if off_norm(&a) <= 1e-15 * fro {
            converged = true;
            break;
        }
        for p in 0..n {
            for r in (p + 1)..n {
                let apr = a.get(p, r);
                if apr == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let arr = a.get(r, r);
                if apr.abs() <= 1e-18 * (app.abs() + arr.abs()) {
                    continue;
                }
                // Jacobi rotation annihilating a[p][r]
                let theta = (arr - app) / (2.0 * apr);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akr = a.get(k, r);
                    a.set(k, p, c * akp - s * akr);
                    a.set(k, r, s * akp + c * akr);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let ark = a.get(r, k);
                    a.set(p, k, c * apk - s * ark);
                    a.set(r, k, s * apk + c * ark);
                }
                for k in 0..n {
                    let qkp = q.get(k, p);
                    let qkr = q.get(k, r);
                    q.set(k, p, c * qkp - s * qkr);
                    q.set(k, r, s * qkp + c * qkr);
                }
            }
        }
    }
    if !converged && off_norm(&a) > 1e-12 * fro {
        return Err(Error::Eigensolver {
            reason: format!(
                "jacobi sweeps did not converge: off-diagonal norm {:e} of {:e}",
                off_norm(&a),
                fro
            ),
        });
    }

    // sort ascending, permute eigenvector columns alongside
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).partial_cmp(&a.get(j, j)).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a.get(i, i)).collect();
    let mut vectors = Matrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for k in 0..n {
            vectors.set(k, new_col, q.get(k, old_col));
        }
    }
    Ok((values, vectors))
}

//! Truncated Rayleigh-Ritz eigenvalues in the orthonormalized angular basis
//! at fixed (l1, l2): the potential matrix over the step support plus the
//! diagonal centrifugal term, diagonalized by a dense symmetric eigensolver.
//! Upper bounds converging onto the exact matching eigenvalues from above.

mod eigen;
mod quad;

pub use eigen::{symmetric_eigen, Matrix};
pub use quad::gauss_legendre;

use crate::adiabatic::{self, SolverConfig, RHO_MIN};
use crate::channel::{Channel, StepPotential};
use crate::error::{Error, Result};
use crate::specfun::{jacobi_norm, jacobi_sequence};

/// Basis truncation for one channel: keep angular functions of order
/// N' = 2 l' + |l1| + |l2| up to `n_max`.
#[derive(Debug, Clone, Copy)]
pub struct RitzBasisSpec {
    pub channel: Channel,
    pub n_max: u32,
    pub quadrature_nodes: usize,
}

impl RitzBasisSpec {
    /// Default quadrature: basis size + 8 nodes, raised if needed so that all
    /// polynomial products over the step interval integrate exactly.
    pub fn new(channel: Channel, n_max: u32) -> Result<Self> {
        let spec = RitzBasisSpec {
            channel,
            n_max,
            quadrature_nodes: 0,
        };
        let len = spec.basis_len()?;
        let min_exact = spec.min_exact_nodes(len);
        Ok(RitzBasisSpec {
            quadrature_nodes: (len + 8).max(min_exact),
            ..spec
        })
    }

    pub fn with_quadrature_nodes(mut self, nodes: usize) -> Result<Self> {
        let len = self.basis_len()?;
        let min_exact = self.min_exact_nodes(len);
        if nodes < min_exact {
            return Err(Error::Domain {
                name: "quadrature_nodes",
                value: nodes as f64,
                constraint: "fewer nodes than exactness of the basis products requires",
            });
        }
        self.quadrature_nodes = nodes;
        Ok(self)
    }

    /// Retained radial indices are l' = 0 .. (n_max - |l1| - |l2|)/2.
    pub fn basis_len(&self) -> Result<usize> {
        let m = self.channel.m_sum();
        if self.n_max < m {
            return Err(Error::Domain {
                name: "n_max",
                value: self.n_max as f64,
                constraint: "below the channel's minimal harmonic order |l1|+|l2|",
            });
        }
        Ok(((self.n_max - m) / 2) as usize + 1)
    }

    fn min_exact_nodes(&self, basis_len: usize) -> usize {
        // integrand degree <= (m + 2 l'_max); n nodes are exact to 2n-1
        let m = self.channel.m_sum() as usize;
        (basis_len - 1) + m.div_ceil(2) + 1
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if rho.is_nan() || rho <= RHO_MIN {
        return Err(Error::Domain {
            name: "rho",
            value: rho,
            constraint: "the step support must not cover the full angular range",
        });
    }
    Ok(())
}

/// Unit-normalized basis values phi_0..phi_{L}(z) for the channel.
fn basis_values(channel: &Channel, l_max: u32, z: f64, scratch: &mut Vec<f64>) -> Vec<f64> {
    let a1 = channel.abs_l1();
    let a2 = channel.abs_l2();
    jacobi_sequence(l_max, a2 as f64, a1 as f64, z, scratch);
    let weight = (1.0 + z).powi(a1 as i32 / 2) * (1.0 - z).powi(a2 as i32 / 2) * {
        // odd angular indices leave half powers behind
        let mut half = 1.0;
        if a1 % 2 == 1 {
            half *= (1.0 + z).sqrt();
        }
        if a2 % 2 == 1 {
            half *= (1.0 - z).sqrt();
        }
        half
    };
    scratch
        .iter()
        .enumerate()
        .map(|(n, p)| weight * p / jacobi_norm(n as u32, a2, a1).sqrt())
        .collect()
}

/// Potential matrix M_{l l'} = v0bar * int over the step support of
/// phi_l phi_l' dz, by Gauss-Legendre on [-1, -1 + 1/rho^2].
pub fn potential_matrix(
    spec: &RitzBasisSpec,
    potential: &StepPotential,
    rho: f64,
) -> Result<Matrix> {
    check_rho(rho)?;
    let size = spec.basis_len()?;
    let l_max = (size - 1) as u32;
    let mut mat = Matrix::zeros(size);
    if potential.is_free() {
        return Ok(mat);
    }
    let (nodes, weights) = gauss_legendre(spec.quadrature_nodes);
    let half = 0.5 / (rho * rho);
    let mut scratch = Vec::new();
    for (x, w) in nodes.iter().zip(&weights) {
        let z = -1.0 + half * (x + 1.0);
        let wt = w * half * potential.v0bar();
        let phi = basis_values(&spec.channel, l_max, z, &mut scratch);
        for (i, pi) in phi.iter().enumerate() {
            let wi = wt * pi;
            for (j, pj) in phi.iter().enumerate().skip(i) {
                let v = mat.get(i, j) + wi * pj;
                mat.set(i, j, v);
            }
        }
    }
    // symmetric by construction: mirror the accumulated upper triangle
    for i in 0..size {
        for j in (i + 1)..size {
            let v = mat.get(i, j);
            mat.set(j, i, v);
        }
    }
    Ok(mat)
}

/// Truncated spectrum at one hyperradius.
#[derive(Debug, Clone)]
pub struct RitzSpectrum {
    /// Eigenvalue estimates, ascending; index l' labels the radial family.
    pub eigenvalues: Vec<f64>,
    pub n_max: u32,
    pub rho: f64,
}

impl RitzSpectrum {
    /// Effective potential of the l-th family: eigenvalue minus the free
    /// centrifugal term of order N = 2l + |l1| + |l2|.
    pub fn v_eff(&self, channel: &Channel) -> f64 {
        let lam = self.eigenvalues[channel.l() as usize];
        lam - channel.centrifugal_coeff() / (self.rho * self.rho)
    }
}

/// Eigenvalues of diag((N'+1)^2 - 1/4)/rho^2 + potential matrix.
pub fn ritz_eigenvalues(
    spec: &RitzBasisSpec,
    potential: &StepPotential,
    rho: f64,
) -> Result<RitzSpectrum> {
    let mut h = potential_matrix(spec, potential, rho)?;
    let size = h.n();
    let m = spec.channel.m_sum();
    for lp in 0..size {
        let np1 = (2 * lp as u32 + m + 1) as f64;
        let v = h.get(lp, lp) + (np1 * np1 - 0.25) / (rho * rho);
        h.set(lp, lp, v);
    }
    let (eigenvalues, vectors) = symmetric_eigen(&h)?;
    let orth = vectors.orthogonality_residual();
    if orth > 1e-12 {
        return Err(Error::Eigensolver {
            reason: format!("eigenvector orthogonality residual {orth:e} exceeds 1e-12"),
        });
    }
    Ok(RitzSpectrum {
        eigenvalues,
        n_max: spec.n_max,
        rho,
    })
}

/// One row of a truncation-convergence table.
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceRow {
    pub n_max: u32,
    pub v_eff_ritz: f64,
    pub v_eff_direct: f64,
    /// Ritz minus direct; positive and shrinking as n_max grows.
    pub gap: f64,
}

/// Ritz-vs-direct study over ascending basis cutoffs.
pub fn convergence_study(
    channel: &Channel,
    potential: &StepPotential,
    rho: f64,
    n_max_list: &[u32],
    cfg: &SolverConfig,
) -> Result<Vec<ConvergenceRow>> {
    for pair in n_max_list.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::Domain {
                name: "n_max_list",
                value: pair[1] as f64,
                constraint: "cutoff list must be strictly ascending",
            });
        }
    }
    let direct = adiabatic::solve_with(channel, potential, rho, cfg)?;
    let mut rows = Vec::with_capacity(n_max_list.len());
    for &n_max in n_max_list {
        let spec = RitzBasisSpec::new(*channel, n_max)?;
        let spectrum = ritz_eigenvalues(&spec, potential, rho)?;
        let v_eff_ritz = spectrum.v_eff(channel);
        rows.push(ConvergenceRow {
            n_max,
            v_eff_ritz,
            v_eff_direct: direct.v_eff,
            gap: v_eff_ritz - direct.v_eff,
        });
    }
    Ok(rows)
}

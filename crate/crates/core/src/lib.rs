//! Adiabatic eigenvalues and effective potentials for two particles in a
//! plane interacting through a repulsive step potential, with a third
//! particle as a spectator.
//!
//! In dual polar coordinates the angular eigenproblem at frozen hyperradius
//! separates, and the eigenfunctions on either side of the step edge
//! z = -1 + 1/rho^2 are Gauss hypergeometric functions. Matching their
//! logarithmic derivatives gives the adiabatic eigenvalue lambda(rho) and
//! the effective potential V_eff(rho) exactly. The crate provides:
//!
//! - [`specfun`]: the special functions involved, with series and
//!   connection-formula evaluation paths;
//! - [`adiabatic`]: the matching solver and sweeps over the hyperradius;
//! - [`asymptotics`]: closed-form large-rho coefficients and model
//!   potentials of the inverse-log and inverse-power classes;
//! - [`ritz`]: truncated-basis eigenvalues converging onto the exact ones
//!   from above;
//! - [`phaseshift`]: low-energy phase shifts of a single adiabatic channel
//!   and the analytic reference laws.

pub mod adiabatic;
pub mod asymptotics;
mod channel;
mod error;
pub mod phaseshift;
pub mod ritz;
pub mod specfun;

pub use channel::{Channel, StepPotential};
pub use error::{Error, Result};

//! Self-contained special functions in exactly the parameter regimes the
//! matching problem requires. Everything here is a pure function; the only
//! state is immutable constants.

mod bessel;
mod gamma;
mod hyp2f1;
mod jacobi;

pub(crate) use bessel::bessel_jy_extended;
pub use bessel::{bessel_i, bessel_jy};
pub use gamma::{binomial, digamma, factorial, gamma, harmonic, EULER_GAMMA};
pub use hyp2f1::{
    f1_log_derivative, f1_near_unit, f1_series, ConnectionExpansionParams, Hyp2f1Config,
    SymmetricF1Params,
};
pub use jacobi::jacobi_polynomial;

pub(crate) use hyp2f1::{inner_pair, outer_pair, Scaled, ShiftedReal};
pub(crate) use jacobi::{jacobi_norm, jacobi_sequence};

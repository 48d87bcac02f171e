use crate::channel::Channel;
use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error(
        "series for 2F1 did not converge within {max_terms} terms (t={t}, m={m}, c={c}, x={x})"
    )]
    SeriesDivergence {
        t: f64,
        m: u32,
        c: u32,
        x: f64,
        max_terms: usize,
    },

    #[error("hypergeometric parameter {name}={value} is within {delta} of a nonpositive integer")]
    PoleProximity {
        name: &'static str,
        value: f64,
        delta: f64,
    },

    #[error("{side} solution vanishes at the matching point z={z} (node crossing); perturb nu and retry")]
    ZeroCrossing { side: &'static str, z: f64 },

    #[error("argument {name}={value} outside the valid domain: {constraint}")]
    Domain {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("no sign change while bracketing nu1 for {channel} at rho={rho}; scanned {n_points} points in ({lo:e}, {hi:e})")]
    BracketFailure {
        channel: Channel,
        rho: f64,
        lo: f64,
        hi: f64,
        n_points: usize,
        /// (nu1 offset from l, residual) pairs recorded during the scan.
        trace: Vec<(f64, f64)>,
    },

    #[error("symmetric eigensolver failed: {reason}")]
    Eigensolver { reason: String },

    #[error("operation requires {expected}, got {channel}")]
    WrongChannelClass {
        expected: &'static str,
        channel: Channel,
    },

    #[error("phase matching stayed ill-conditioned after {retries} retries (last rho_max={rho_max}, spread={spread})")]
    MatchingIllConditioned {
        retries: usize,
        rho_max: f64,
        spread: f64,
    },

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wrap with channel/rho context while keeping the root cause.
    pub fn with_context(self, context: String) -> Self {
        Error::Context {
            context,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

//! Conserved quantum numbers of the pair + spectator problem and the
//! dimensionless step-potential strength.

use std::f64::consts::PI;
use std::fmt;

/// One scattering channel: pair angular momentum `l1`, spectator angular
/// momentum `l2` and the radial node index `l`.
///
/// Every derived quantity depends on `l1`, `l2` only through their absolute
/// values, so channels related by sign flips are physically identical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Channel {
    l1: i32,
    l2: i32,
    l: u32,
}

impl Channel {
    pub fn new(l1: i32, l2: i32, l: u32) -> Self {
        Channel { l1, l2, l }
    }

    pub fn l1(&self) -> i32 {
        self.l1
    }

    pub fn l2(&self) -> i32 {
        self.l2
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn abs_l1(&self) -> u32 {
        self.l1.unsigned_abs()
    }

    pub fn abs_l2(&self) -> u32 {
        self.l2.unsigned_abs()
    }

    /// |l1| + |l2|, the sum entering the hypergeometric parameters.
    pub fn m_sum(&self) -> u32 {
        self.abs_l1() + self.abs_l2()
    }

    /// Harmonic order N = 2l + |l1| + |l2|.
    pub fn order(&self) -> u32 {
        2 * self.l + self.m_sum()
    }

    /// Total inplane angular momentum l1 + l2.
    pub fn inplane_momentum(&self) -> i32 {
        self.l1 + self.l2
    }

    /// Free centrifugal coefficient ((N+1)^2 - 1/4).
    pub fn centrifugal_coeff(&self) -> f64 {
        let np1 = (self.order() + 1) as f64;
        np1 * np1 - 0.25
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "channel(l1={}, l2={}, l={})", self.l1, self.l2, self.l)
    }
}

/// Repulsive binary step potential of unit range in units of sigma.
///
/// `v0bar` is the dimensionless strength (2m/hbar^2) V0 sigma^2. The thermal
/// parameterization Lambda* = (h^2 / (m V0 sigma^2))^(1/2) converts through
/// v0bar = 8 pi^2 / Lambda*^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepPotential {
    v0bar: f64,
}

impl StepPotential {
    pub fn from_v0bar(v0bar: f64) -> crate::Result<Self> {
        if !v0bar.is_finite() || v0bar < 0.0 {
            return Err(crate::Error::Domain {
                name: "v0bar",
                value: v0bar,
                constraint: "must be finite and >= 0",
            });
        }
        Ok(StepPotential { v0bar })
    }

    pub fn from_lambda_star(lambda_star: f64) -> crate::Result<Self> {
        if lambda_star.is_nan() || lambda_star <= 0.0 {
            return Err(crate::Error::Domain {
                name: "lambda_star",
                value: lambda_star,
                constraint: "must be > 0",
            });
        }
        Self::from_v0bar(8.0 * PI * PI / (lambda_star * lambda_star))
    }

    pub fn v0bar(&self) -> f64 {
        self.v0bar
    }

    pub fn lambda_star(&self) -> f64 {
        (8.0 * PI * PI / self.v0bar).sqrt()
    }

    /// sqrt(v0bar / 2), the argument of the modified Bessel functions in the
    /// asymptotic coefficients.
    pub fn bessel_argument(&self) -> f64 {
        (self.v0bar / 2.0).sqrt()
    }

    pub fn is_free(&self) -> bool {
        self.v0bar == 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_follows_node_index_and_momenta() {
        let ch = Channel::new(-2, 1, 3);
        assert_eq!(ch.order(), 2 * 3 + 2 + 1);
        assert_eq!(ch.m_sum(), 3);
        assert_eq!(ch.inplane_momentum(), -1);
    }

    #[test]
    fn lambda_star_round_trip() {
        let pot = StepPotential::from_lambda_star(10.0).unwrap();
        assert!((pot.v0bar() - 8.0 * PI * PI / 100.0).abs() < 1e-15);
        assert!((pot.lambda_star() - 10.0).abs() < 1e-12);
        // bessel argument for Lambda*=10 is exactly 2 pi / 10
        assert!((pot.bessel_argument() - 2.0 * PI / 10.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_negative_strength() {
        assert!(StepPotential::from_v0bar(-1.0).is_err());
        assert!(StepPotential::from_lambda_star(0.0).is_err());
    }
}

//! Shared test support: a fixed-point big-decimal type for brute-force
//! series oracles (~64 significant digits), the series oracles themselves,
//! and an independent ODE integrator for the outer-solution log-derivative.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::str::FromStr;

/// Working precision in decimal digits after the point.
const DIGITS: u32 = 64;

/// Fixed-point decimal: value = mantissa / 10^DIGITS.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BigFix(BigInt);

fn scale() -> BigInt {
    BigInt::from(10u32).pow(DIGITS)
}

impl BigFix {
    pub fn zero() -> Self {
        BigFix(BigInt::zero())
    }

    pub fn from_u64(v: u64) -> Self {
        BigFix(BigInt::from(v) * scale())
    }

    pub fn from_i64(v: i64) -> Self {
        BigFix(BigInt::from(v) * scale())
    }

    /// Exact conversion of an f64 (mantissa times power of two).
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite());
        if x == 0.0 {
            return BigFix::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if exp_bits == 0 {
            (frac, -1074i64)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075)
        };
        let m = BigInt::from(mant) * BigInt::from(sign);
        let scaled = m * scale();
        BigFix(if exp >= 0 {
            scaled << exp as usize
        } else {
            div_round(scaled, BigInt::from(1u8) << (-exp) as usize)
        })
    }

    /// Parse a decimal literal with arbitrary digits (used for constants).
    pub fn parse(s: &str) -> Self {
        let neg = s.starts_with('-');
        let s = s.trim_start_matches('-');
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        let mut mant = BigInt::from_str(int_part).unwrap() * scale();
        let take = frac_part.len().min(DIGITS as usize);
        if take > 0 {
            let digits = &frac_part[..take];
            let v = BigInt::from_str(digits).unwrap()
                * BigInt::from(10u32).pow(DIGITS - digits.len() as u32);
            mant += v;
        }
        BigFix(if neg { -mant } else { mant })
    }

    pub fn add(&self, o: &Self) -> Self {
        BigFix(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &Self) -> Self {
        BigFix(&self.0 - &o.0)
    }

    pub fn neg(&self) -> Self {
        BigFix(-&self.0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        BigFix(div_round(&self.0 * &o.0, scale()))
    }

    pub fn div(&self, o: &Self) -> Self {
        assert!(!o.0.is_zero());
        BigFix(div_round(&self.0 * scale(), o.0.clone()))
    }

    pub fn div_u64(&self, d: u64) -> Self {
        BigFix(div_round(self.0.clone(), BigInt::from(d)))
    }

    pub fn mul_u64(&self, d: u64) -> Self {
        BigFix(&self.0 * BigInt::from(d))
    }

    pub fn abs(&self) -> Self {
        BigFix(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Magnitude comparison against 10^-(DIGITS - guard).
    pub fn below_tail(&self, guard: u32) -> bool {
        self.0.abs() < BigInt::from(10u32).pow(guard)
    }

    pub fn to_f64(&self) -> f64 {
        // format exactly and let the standard parser round correctly
        let neg = self.0.is_negative();
        let digits = self.0.abs().to_string();
        let digits = format!("{:0>width$}", digits, width = DIGITS as usize + 1);
        let split = digits.len() - DIGITS as usize;
        let s = format!(
            "{}{}.{}",
            if neg { "-" } else { "" },
            &digits[..split],
            &digits[split..]
        );
        s.parse().unwrap()
    }
}

fn div_round(num: BigInt, den: BigInt) -> BigInt {
    let two = BigInt::from(2u8);
    let half = &den / &two;
    if num.is_negative() {
        (num - half) / den
    } else {
        (num + half) / den
    }
}

pub fn const_pi() -> BigFix {
    BigFix::parse(
        "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899",
    )
}

pub fn const_euler_gamma() -> BigFix {
    BigFix::parse(
        "0.57721566490153286060651209008240243104215933593992359880576723488486772677766467",
    )
}

pub fn const_ln2() -> BigFix {
    BigFix::parse(
        "0.69314718055994530941723212145817656807550013436025525412068000949339362196969471",
    )
}

/// ln(x) via range reduction to [2/3, 4/3) and the atanh series.
pub fn big_ln(x: &BigFix) -> BigFix {
    assert!(x.0.is_positive());
    let mut m = x.clone();
    let mut k = 0i64;
    let two = BigFix::from_u64(2);
    let four_thirds = BigFix::from_u64(4).div_u64(3);
    let two_thirds = BigFix::from_u64(2).div_u64(3);
    while m >= four_thirds {
        m = BigFix(div_round(m.0, BigInt::from(2u8)));
        k += 1;
    }
    while m < two_thirds {
        m = m.mul(&two);
        k -= 1;
    }
    // ln m = 2 atanh((m-1)/(m+1))
    let one = BigFix::from_u64(1);
    let r = m.sub(&one).div(&m.add(&one));
    let r2 = r.mul(&r);
    let mut term = r.clone();
    let mut sum = r;
    let mut n = 1u64;
    loop {
        term = term.mul(&r2);
        n += 2;
        let inc = term.div_u64(n);
        sum = sum.add(&inc);
        if inc.below_tail(4) {
            break;
        }
    }
    let ln_m = sum.mul(&two);
    let k_ln2 = if k >= 0 {
        const_ln2().mul_u64(k as u64)
    } else {
        const_ln2().mul_u64((-k) as u64).neg()
    };
    ln_m.add(&k_ln2)
}

/// Brute-force series oracle for the modified Bessel function I_n(x).
pub fn oracle_bessel_i(order: u32, x: f64) -> f64 {
    let xf = BigFix::from_f64(x);
    let half = xf.div_u64(2);
    let q = half.mul(&half);
    let mut term = BigFix::from_u64(1);
    for k in 1..=order as u64 {
        term = term.mul(&half).div_u64(k);
    }
    let mut sum = term.clone();
    for k in 1..2000u64 {
        term = term.mul(&q).div_u64(k * (k + order as u64));
        sum = sum.add(&term);
        if term.below_tail(4) {
            break;
        }
    }
    sum.to_f64()
}

/// Brute-force series oracle for (J_n(x), Y_n(x)).
pub fn oracle_bessel_jy(order: u32, x: f64) -> (f64, f64) {
    let n = order as u64;
    let xf = BigFix::from_f64(x);
    let half = xf.div_u64(2);
    let q = half.mul(&half);
    let gamma = const_euler_gamma();
    let pi = const_pi();

    let mut term = BigFix::from_u64(1);
    for k in 1..=n {
        term = term.mul(&half).div_u64(k);
    }
    let mut j = term.clone();
    // h_k = psi(k+1) + psi(n+k+1) = -2 gamma + H_k + H_{n+k}
    let mut h = gamma.mul_u64(2).neg();
    for p in 1..=n {
        h = h.add(&BigFix::from_u64(1).div_u64(p));
    }
    let mut ylog = term.mul(&h);
    let mut k = 1u64;
    loop {
        term = term.mul(&q).div_u64(k * (k + n)).neg();
        j = j.add(&term);
        h = h
            .add(&BigFix::from_u64(1).div_u64(k))
            .add(&BigFix::from_u64(1).div_u64(k + n));
        ylog = ylog.add(&term.mul(&h));
        if term.below_tail(4) && k > (x / 2.0) as u64 {
            break;
        }
        k += 1;
        assert!(k < 3000, "oracle series stalled");
    }

    let mut pre = BigFix::zero();
    if n > 0 {
        let mut fact = BigFix::from_u64(1);
        for p in 2..n {
            fact = fact.mul_u64(p);
        }
        // fact = (n-1)!; t_0 = (n-1)! (x/2)^{-n}
        let mut powi = BigFix::from_u64(1);
        for _ in 0..n {
            powi = powi.div(&half);
        }
        let mut t = fact.mul(&powi);
        pre = t.clone();
        for k in 1..n {
            t = t.mul(&q).div_u64(k * (n - k));
            pre = pre.add(&t);
        }
    }

    let ln_half = big_ln(&half);
    let y = ln_half.mul(&j).mul_u64(2).sub(&pre).sub(&ylog).div(&pi);
    (j.to_f64(), y.to_f64())
}

/// Exact-series digamma at positive integers: psi(n) = -gamma + H_{n-1}.
pub fn oracle_digamma_integer(n: u32) -> f64 {
    assert!(n >= 1);
    let mut h = BigFix::zero();
    for p in 1..n as u64 {
        h = h.add(&BigFix::from_u64(1).div_u64(p));
    }
    h.sub(&const_euler_gamma()).to_f64()
}

/// Exact-series digamma at half-integers:
/// psi(n + 1/2) = -gamma - 2 ln 2 + 2 sum_{j=1..n} 1/(2j-1).
pub fn oracle_digamma_half_integer(n: u32) -> f64 {
    let mut s = BigFix::zero();
    for j in 1..=n as u64 {
        s = s.add(&BigFix::from_u64(1).div_u64(2 * j - 1));
    }
    s.mul_u64(2)
        .sub(&const_euler_gamma())
        .sub(&const_ln2().mul_u64(2))
        .to_f64()
}

/// Independent check of the outer-solution logarithmic derivative: integrate
/// the defining ODE (1-z^2) F'' - ((m+2) z + a2 - a1) F' + t F = 0 downward
/// from the regular series at z = 1 to the matching point, with fixed-step
/// RK4, and return F'(z)/F(z).
pub fn ode_outer_log_derivative(nu: f64, a1: u32, a2: u32, z_match: f64) -> f64 {
    let coarse = ode_outer_log_derivative_n(nu, a1, a2, z_match, 20_000);
    let fine = ode_outer_log_derivative_n(nu, a1, a2, z_match, 40_000);
    assert!(
        (coarse - fine).abs() <= 5e-7 * (1.0 + fine.abs()),
        "oracle step control: {coarse} vs {fine}"
    );
    fine
}

fn ode_outer_log_derivative_n(nu: f64, a1: u32, a2: u32, z_match: f64, n_steps: usize) -> f64 {
    let m = (a1 + a2) as f64;
    let c = a2 as f64 + 1.0;
    let t = nu * (nu + m + 1.0);

    // local series about z = 1 in y = (1-z)/2 for the initial condition
    let y0: f64 = 0.05;
    let (mut f, mut df_dy) = (1.0f64, 0.0f64);
    let mut term = 1.0f64;
    for n in 0..200 {
        let nf = n as f64;
        let next = term * (nf * nf + nf * (m + 1.0) - t) / ((c + nf) * (nf + 1.0));
        df_dy += next * (nf + 1.0) * y0.powi(n);
        term = next;
        let inc = term * y0.powi(n + 1);
        f += inc;
        if inc.abs() < 1e-19 * f.abs() {
            break;
        }
    }
    // integrate in tau = ln(1+z): the chart removes the stiffness of the
    // z = -1 singular point, so fixed-step RK4 stays accurate however close
    // the matching point sits to the endpoint
    let z0 = 1.0 - 2.0 * y0;
    let tau0 = (1.0 + z0).ln();
    let tau_end = (1.0 + z_match).ln();
    // state = [F, dF/dtau]; dF/dtau = (1+z) dF/dz
    let mut state = [f, df_dy * -0.5 * (1.0 + z0)];
    let rhs = |tau: f64, s: [f64; 2]| -> [f64; 2] {
        let e = tau.exp(); // 1 + z
        let fdd = s[1]
            + (((m + 2.0) * (e - 1.0) + a2 as f64 - a1 as f64) * s[1] - t * e * s[0]) / (2.0 - e);
        [s[1], fdd]
    };
    let h = (tau_end - tau0) / n_steps as f64;
    let mut tau = tau0;
    for _ in 0..n_steps {
        let k1 = rhs(tau, state);
        let s2 = [state[0] + 0.5 * h * k1[0], state[1] + 0.5 * h * k1[1]];
        let k2 = rhs(tau + 0.5 * h, s2);
        let s3 = [state[0] + 0.5 * h * k2[0], state[1] + 0.5 * h * k2[1]];
        let k3 = rhs(tau + 0.5 * h, s3);
        let s4 = [state[0] + h * k3[0], state[1] + h * k3[1]];
        let k4 = rhs(tau + h, s4);
        state = [
            state[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            state[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        ];
        tau += h;
        // keep the magnitude in range; the log-derivative is scale-free
        let scale = state[0].abs().max(state[1].abs());
        if scale > 1e200 {
            state[0] /= scale;
            state[1] /= scale;
        }
    }
    // back to d/dz: dF/dz = dF/dtau / (1+z)
    state[1] / state[0] / (1.0 + z_match)
}

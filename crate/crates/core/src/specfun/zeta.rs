use std::f64::consts::PI;

use super::gamma::log_gamma;
use crate::error::{Error, Result};
use crate::C64;

const HEAD: usize = 50;

// B_2, B_4, ..., B_24 divided by (2k)!
const BERNOULLI_OVER_FACT: [f64; 12] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43867.0 / 798.0 / 6_402_373_705_728_000.0,
    -174_611.0 / 330.0 / 2_432_902_008_176_640_000.0,
    854_513.0 / 138.0 / 1.124_000_727_777_607_7e21,
    -236_364_091.0 / 2730.0 / 6.204_484_017_332_394_4e23,
];

// Euler-Maclaurin tail of sum_{n >= 0} (n + x0)^{-s} starting at x = x0 + N,
// without the x^{1-s}/(s-1) term.
fn em_tail(s: C64, x: f64) -> C64 {
    let lx = x.ln();
    let xs = (-s * lx).exp();
    let mut acc = xs * 0.5;
    // rising product s (s+1) ... (s + 2k - 2), times x^{-s-2k+1}
    let mut rising = s;
    let mut pow = xs / x;
    for (k, &b) in BERNOULLI_OVER_FACT.iter().enumerate() {
        acc += rising * pow * b;
        let kk = 2.0 * (k as f64 + 1.0);
        rising *= (s + (kk - 1.0)) * (s + kk);
        pow /= x * x;
    }
    acc
}

// (x^{1-s} - 1)/(s - 1), continuous at s = 1 where it equals -ln x.
fn regular_pole_term(s: C64, x: f64) -> C64 {
    let w = (C64::new(1.0, 0.0) - s) * x.ln();
    let ratio = if w.norm() < 1e-5 {
        C64::new(1.0, 0.0) + w / 2.0 + w * w / 6.0
    } else {
        (w.exp() - 1.0) / w
    };
    -ratio * x.ln()
}

/// Hurwitz zeta minus its pole: `zeta(s, alpha) - 1/(s - 1)`.
pub fn hurwitz_zeta_regular(s: C64, alpha: f64) -> Result<C64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!("Hurwitz parameter {alpha} outside (0, 1]")));
    }
    let mut head = C64::new(0.0, 0.0);
    for n in 0..HEAD {
        head += (-s * (n as f64 + alpha).ln()).exp();
    }
    let x = HEAD as f64 + alpha;
    Ok(head + regular_pole_term(s, x) + em_tail(s, x))
}

pub fn hurwitz_zeta(s: C64, alpha: f64) -> Result<C64> {
    if s == C64::new(1.0, 0.0) {
        return Err(Error::Pole("Hurwitz zeta at s = 1".into()));
    }
    Ok(hurwitz_zeta_regular(s, alpha)? + 1.0 / (s - 1.0))
}

pub fn riemann_zeta(s: C64) -> Result<C64> {
    if s == C64::new(1.0, 0.0) {
        return Err(Error::Pole("zeta at s = 1".into()));
    }
    if s.re < 0.0 {
        let one_minus = C64::new(1.0, 0.0) - s;
        let lg = log_gamma(one_minus)?;
        let log_factor = s * 2f64.ln() + (s - 1.0) * PI.ln() + lg;
        return Ok(log_factor.exp() * (s * PI / 2.0).sin() * riemann_zeta(one_minus)?);
    }
    hurwitz_zeta(s, 1.0)
}

/// `pi^{-s/2} Gamma(s/2) zeta(s)`.
pub fn completed_xi(s: C64) -> Result<C64> {
    if s == C64::new(0.0, 0.0) || s == C64::new(1.0, 0.0) {
        return Err(Error::Pole(format!("completed zeta at {s}")));
    }
    if s.re < 0.5 {
        return completed_xi_direct(C64::new(1.0, 0.0) - s);
    }
    completed_xi_direct(s)
}

pub(crate) fn completed_xi_direct(s: C64) -> Result<C64> {
    let lg = log_gamma(s / 2.0)?;
    Ok((lg - s / 2.0 * PI.ln()).exp() * riemann_zeta(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn special_values() {
        assert!((riemann_zeta(c(2.0, 0.0)).unwrap() - PI * PI / 6.0).norm() < 1e-14);
        assert!((riemann_zeta(c(4.0, 0.0)).unwrap() - PI.powi(4) / 90.0).norm() < 1e-14);
        assert!((riemann_zeta(c(0.0, 0.0)).unwrap() + 0.5).norm() < 1e-14);
        assert!((riemann_zeta(c(-1.0, 0.0)).unwrap() + 1.0 / 12.0).norm() < 1e-14);
        assert!(riemann_zeta(c(-2.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(matches!(riemann_zeta(c(1.0, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn first_zeros() {
        for &t in &[14.134_725_141_734_693, 21.022_039_638_771_555, 25.010_857_580_145_688] {
            assert!(riemann_zeta(c(0.5, t)).unwrap().norm() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn direct_sum_agreement() {
        let s = c(3.0, 7.0);
        let mut sum = C64::new(0.0, 0.0);
        for n in 1..200_000 {
            sum += (-s * (n as f64).ln()).exp();
        }
        assert!((riemann_zeta(s).unwrap() - sum).norm() < 1e-10);
    }

    #[test]
    fn hurwitz_half() {
        // zeta(s, 1/2) = (2^s - 1) zeta(s)
        for &s in &[c(0.3, 2.0), c(2.5, -9.0), c(0.5, 40.0)] {
            let lhs = hurwitz_zeta(s, 0.5).unwrap();
            let rhs = ((s * 2f64.ln()).exp() - 1.0) * riemann_zeta(s).unwrap();
            assert!((lhs - rhs).norm() < 1e-12 * rhs.norm().max(1.0), "s={s}");
        }
    }

    #[test]
    fn regular_part_at_one_is_minus_digamma() {
        // zeta(s, 1) - 1/(s-1) -> Euler's constant
        let g = hurwitz_zeta_regular(c(1.0, 0.0), 1.0).unwrap();
        assert!((g - 0.577_215_664_901_532_9).norm() < 1e-14);
    }

    #[test]
    fn xi_is_symmetric() {
        for &s in &[c(0.2, 3.0), c(0.7, 11.0), c(0.45, 27.0)] {
            let a = completed_xi_direct(s).unwrap();
            let b = completed_xi_direct(c(1.0, 0.0) - s).unwrap();
            assert!((a - b).norm() < 1e-12 * a.norm(), "s={s}");
        }
        assert!(completed_xi(c(-2.0, 0.0)).unwrap().norm() > 0.1);
    }
}

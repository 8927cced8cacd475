//! Regularized quadrature for archimedean zeta integrals.
//!
//! The oscillatory Gaussian `psi(a x^2 / 2)` is damped to `e^{-pi eps x^2}` (or
//! `e^{-2 pi eps |z|^2}` on `C`), integrated, and extrapolated to `eps = 0`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::{integrate, QuadOptions};
use crate::specfun::rgamma;
use crate::C64;

#[derive(Debug, Clone, Serialize)]
pub struct ArchOracleOptions {
    /// Strictly decreasing, at least two entries.
    pub eps: Vec<f64>,
    /// Rotate the radial contour towards the steepest-descent ray.
    pub rotate: bool,
    pub radial_tol: f64,
    pub angular_tol: f64,
}

impl Default for ArchOracleOptions {
    fn default() -> Self {
        ArchOracleOptions { eps: vec![1e-3, 5e-4, 2.5e-4], rotate: true, radial_tol: 1e-13, angular_tol: 1e-11 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ArchOracle {
    /// Extrapolated value.
    pub value: C64,
    /// Raw regularized values along the schedule.
    pub raw: Vec<C64>,
}

impl ArchOracle {
    /// Ratios `|r_i - r_{i+1}| / |r_{i+1} - r_{i+2}|` along the schedule.
    pub fn consistency_ratios(&self) -> Vec<f64> {
        self.raw
            .windows(3)
            .map(|w| (w[0] - w[1]).norm() / (w[1] - w[2]).norm())
            .collect()
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Repeated Richardson extrapolation for an error expansion in powers of `eps`
/// with the schedule halving at every step.
fn richardson(raw: &[C64]) -> C64 {
    let mut row = raw.to_vec();
    let mut factor = 2.0;
    while row.len() > 1 {
        row = row.windows(2).map(|w| (w[1] * factor - w[0]) / (factor - 1.0)).collect();
        factor *= 2.0;
    }
    row[0]
}

fn check_schedule(eps: &[f64]) -> Result<()> {
    if eps.len() < 2 || eps.windows(2).any(|w| (w[1] - 0.5 * w[0]).abs() > 1e-12 * w[0]) {
        return Err(Error::Input("eps schedule must halve at each step and have two or more entries".into()));
    }
    Ok(())
}

/// `int_0^inf r^{sigma - 1} e^{-A r^2 - B r} dr` for `Re A > 0`, `Re sigma > 0`.
pub fn half_line(a: C64, b: C64, sigma: C64, rotate: bool, tol: f64) -> Result<C64> {
    if a.re <= 0.0 || sigma.re <= 0.0 {
        return Err(Error::Domain("half-line integral needs Re A > 0 and Re sigma > 0".into()));
    }
    // ray r = rho e^{i phi}; keep the peak of |e^{-A' rho^2 - B' rho}| below e
    let mut phi = 0.0;
    if rotate {
        for lambda in [1.0, 0.75, 0.5, 0.25, 0.0] {
            let p = -lambda * a.arg() / 2.0;
            let ar = (a * C64::from_polar(1.0, 2.0 * p)).re;
            let br = (b * C64::from_polar(1.0, p)).re;
            let growth = if br < 0.0 { br * br / (4.0 * ar) } else { 0.0 };
            if growth <= 1.0 {
                phi = p;
                break;
            }
        }
    }
    let a1 = a * C64::from_polar(1.0, 2.0 * phi);
    let b1 = b * C64::from_polar(1.0, phi);
    let lead = (c(0.0, phi) * sigma).exp();

    // series on [0, h]
    let h = {
        let (qa, qb) = (a1.norm(), b1.norm());
        let root = if qa > 0.0 { (-qb + (qb * qb + 4.0 * qa).sqrt()) / (2.0 * qa) } else { 1.0 / qb.max(1e-300) };
        root.min(1.0)
    };
    let mut e_prev = c(0.0, 0.0);
    let mut e_cur = c(1.0, 0.0);
    let mut head = c(0.0, 0.0);
    let mut hk = (sigma * h.ln()).exp();
    let mut small = 0;
    for k in 0..400 {
        let term = e_cur * hk / (sigma + k as f64);
        head += term;
        if term.norm() < 1e-18 * head.norm() {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
        let next = (-b1 * e_cur - a1 * e_prev * 2.0) / (k as f64 + 1.0);
        e_prev = e_cur;
        e_cur = next;
        hk *= h;
    }

    // tail on [h, R]
    let log_mag = |r: f64| -a1.re * r * r - b1.re * r + (sigma.re - 1.0) * r.ln();
    let mut r_max = h.max(1.0);
    while log_mag(r_max) > -46.0 || r_max * a1.re + b1.re < 0.0 {
        r_max *= 1.25;
        if r_max > 1e7 {
            return Err(Error::Convergence("no cutoff for the half-line integral".into()));
        }
    }
    let phase = a1.im.abs() * r_max * r_max + b1.im.abs() * r_max;
    let n_init = ((phase / PI).ceil() as usize + 8).min(200_000);
    let f = |r: f64| -> Result<C64> { Ok(((sigma - 1.0) * r.ln() - a1 * r * r - b1 * r).exp()) };
    let (tail, _) = integrate(&f, &[h, r_max], n_init, QuadOptions { rel_tol: tol, max_panels: 2_000_000, noise: 1e-15 * (1.0 + phase), min_width: 0.0 })?;
    Ok(lead * (head + tail))
}

/// `zeta_f(s, chi)` on `R` for `f = psi(a x^2 / 2 + b x)`; `odd` selects the sign character.
pub fn oracle_real_mellin(a: f64, b: f64, s: C64, odd: bool, opts: &ArchOracleOptions) -> Result<ArchOracle> {
    check_schedule(&opts.eps)?;
    if a == 0.0 {
        return Err(Error::Domain("degenerate character, a = 0".into()));
    }
    let mut raw = Vec::new();
    for &eps in &opts.eps {
        let aa = c(PI * eps, PI * a);
        let plus = half_line(aa, c(0.0, 2.0 * PI * b), s, opts.rotate, opts.radial_tol)?;
        let minus = half_line(aa, c(0.0, -2.0 * PI * b), s, opts.rotate, opts.radial_tol)?;
        raw.push(if odd { plus - minus } else { plus + minus });
    }
    Ok(ArchOracle { value: richardson(&raw), raw })
}

fn angular<G>(g: &G, breaks: &[f64], opts: &ArchOracleOptions) -> Result<C64>
where
    G: Fn(f64) -> Result<C64> + Sync,
{
    // the ray choice in `half_line` switches with the angle, leaving jumps at roundoff level
    let q = QuadOptions { rel_tol: opts.angular_tol, max_panels: 200_000, noise: 10.0 * opts.radial_tol, min_width: 1e-9 };
    Ok(integrate(g, breaks, 8, q)?.0)
}

/// `Z_{a,b}(s, n)` on `C` for `psi_C(a |z|^2 / 2 + b z)`.
pub fn oracle_complex_hermitian(a: f64, b: C64, s: C64, n: i64, opts: &ArchOracleOptions) -> Result<ArchOracle> {
    check_schedule(&opts.eps)?;
    let (bn, beta) = (b.norm(), b.arg());
    let mut raw = Vec::new();
    for &eps in &opts.eps {
        let aa = c(2.0 * PI * eps, 2.0 * PI * a);
        let g = |t: f64| -> Result<C64> {
            let bb = c(0.0, 4.0 * PI * bn * (t + beta).cos());
            Ok(C64::from_polar(2.0, n as f64 * t) * half_line(aa, bb, 2.0 * s, opts.rotate, opts.radial_tol)?)
        };
        raw.push(angular(&g, &[0.0, 2.0 * PI], opts)?);
    }
    Ok(ArchOracle { value: richardson(&raw), raw })
}

/// `zeta_{a,b}(s, n)` on `C` for `psi_C(a z^2 / 2 + b z)`.
pub fn oracle_complex_square(a: C64, b: C64, s: C64, n: i64, opts: &ArchOracleOptions) -> Result<ArchOracle> {
    check_schedule(&opts.eps)?;
    let (an, alpha) = (a.norm(), a.arg());
    let (bn, beta) = (b.norm(), b.arg());
    // the phase a|z|^2 cos(2 theta + alpha) is stationary in r where the cosine vanishes
    let mut breaks = vec![0.0, 2.0 * PI];
    for k in 0..4 {
        let t = ((PI / 2.0 + k as f64 * PI - alpha) / 2.0).rem_euclid(2.0 * PI);
        breaks.push(t);
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|x, y| (*x - *y).abs() < 1e-14);
    let mut raw = Vec::new();
    for &eps in &opts.eps {
        let g = |t: f64| -> Result<C64> {
            let aa = c(2.0 * PI * eps, 2.0 * PI * an * (2.0 * t + alpha).cos());
            let bb = c(0.0, 4.0 * PI * bn * (t + beta).cos());
            Ok(C64::from_polar(2.0, n as f64 * t) * half_line(aa, bb, 2.0 * s, opts.rotate, opts.radial_tol)?)
        };
        raw.push(angular(&g, &breaks, opts)?);
    }
    Ok(ArchOracle { value: richardson(&raw), raw })
}

/// Radial integral on `R^n` for `psi(a |x|^2 / 2 + <b, x>)` with `|b| = bnorm`.
pub fn oracle_radial(n: u32, a: f64, bnorm: f64, s: C64, opts: &ArchOracleOptions) -> Result<ArchOracle> {
    check_schedule(&opts.eps)?;
    if n == 1 {
        return oracle_real_mellin(a, bnorm, s, false, opts);
    }
    if n == 0 {
        return Err(Error::Domain("dimension must be positive".into()));
    }
    // area of the unit sphere S^{n-2}
    let m = (n - 1) as f64 / 2.0;
    let area = 2.0 * PI.powf(m) * rgamma(c(m, 0.0)).re;
    let mut raw = Vec::new();
    for &eps in &opts.eps {
        let aa = c(PI * eps, PI * a);
        let g = |t: f64| -> Result<C64> {
            let bb = c(0.0, 2.0 * PI * bnorm * t.cos());
            Ok(half_line(aa, bb, s, opts.rotate, opts.radial_tol)? * t.sin().powi(n as i32 - 2))
        };
        raw.push(area * angular(&g, &[0.0, PI], opts)?);
    }
    Ok(ArchOracle { value: richardson(&raw), raw })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;

    #[test]
    fn half_line_gaussian_moment() {
        // int_0^inf r^{s-1} e^{-A r^2} dr = Gamma(s/2) / (2 A^{s/2})
        for a in [c(1.0, 0.0), c(0.01, 3.0), c(0.2, -2.0)] {
            for s in [c(0.7, 0.0), c(1.5, 2.0)] {
                let want = gamma(s / 2.0).unwrap() / (2.0 * (a.ln() * s / 2.0).exp());
                for rotate in [false, true] {
                    let got = half_line(a, c(0.0, 0.0), s, rotate, 1e-13).unwrap();
                    assert!((got - want).norm() < 1e-10 * want.norm(), "{a} {s} {rotate}: {got} vs {want}");
                }
            }
        }
    }

    #[test]
    fn richardson_removes_linear_and_quadratic_terms() {
        let f = |e: f64| c(1.0, 2.0) + c(3.0, -1.0) * e + c(0.5, 0.5) * e * e;
        let raw = vec![f(0.1), f(0.05), f(0.025)];
        assert!((richardson(&raw) - c(1.0, 2.0)).norm() < 1e-13);
    }
}

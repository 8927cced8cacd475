//! Kummer's confluent hypergeometric function `1F1(u; v; z)`.
//!
//! The Taylor series is summed with compensated accumulation. When the
//! partial sums are far larger than the result the series is only used
//! near the origin and the value is carried to `z` by re-expanding the
//! Kummer equation `z F'' + (v - z) F' - u F = 0` in short Taylor steps.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::C64;

/// Largest `|z|` accepted.
pub const Z_MAX: f64 = 40.0;
/// Cancellation ratio above which results carry a precision warning.
pub const WARN_RATIO: f64 = 1e12;
// Above this ratio the direct series is abandoned for continuation.
const CONTINUE_RATIO: f64 = 1e3;
const MAX_TERMS: usize = 20_000;

/// A value together with diagnostics about how it was obtained.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EvalQuality {
    pub value: C64,
    /// Largest partial sum magnitude divided by `|value|`.
    pub cancellation_ratio: f64,
    pub terms_used: usize,
    pub precision_warning: bool,
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    re: f64,
    im: f64,
    cre: f64,
    cim: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: C64) {
        fn step(s: &mut f64, c: &mut f64, x: f64) {
            let t = *s + x;
            if s.abs() >= x.abs() {
                *c += (*s - t) + x;
            } else {
                *c += (x - t) + *s;
            }
            *s = t;
        }
        step(&mut self.re, &mut self.cre, x.re);
        step(&mut self.im, &mut self.cim, x.im);
    }

    pub(crate) fn value(&self) -> C64 {
        C64::new(self.re + self.cre, self.im + self.cim)
    }
}

pub fn hyp1f1(u: C64, v: f64, z: C64) -> Result<C64> {
    Ok(hyp1f1_quality(u, v, z)?.value)
}

pub fn hyp1f1_quality(u: C64, v: f64, z: C64) -> Result<EvalQuality> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::Domain(format!("1F1 lower parameter must be positive, got {v}")));
    }
    if !(z.norm() <= Z_MAX) {
        return Err(Error::Domain(format!("1F1 argument |z| = {} exceeds {Z_MAX}", z.norm())));
    }
    if !u.re.is_finite() || !u.im.is_finite() {
        return Err(Error::Domain("non-finite 1F1 parameter".into()));
    }
    let direct = series(u, v, z)?;
    if direct.cancellation_ratio <= CONTINUE_RATIO || z.norm() <= 1.0 {
        return Ok(finish(direct));
    }
    let cont = continuation(u, v, z)?;
    Ok(finish(cont))
}

fn finish(mut q: EvalQuality) -> EvalQuality {
    q.precision_warning = q.cancellation_ratio > WARN_RATIO;
    q
}

fn series(u: C64, v: f64, z: C64) -> Result<EvalQuality> {
    let mut term = C64::new(1.0, 0.0);
    let mut acc = CompensatedSum::default();
    acc.add(term);
    let mut peak: f64 = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let factor = (u + kf) * z / ((v + kf) * (kf + 1.0));
        term *= factor;
        acc.add(term);
        let sum = acc.value();
        peak = peak.max(sum.norm()).max(term.norm());
        if term == C64::new(0.0, 0.0) {
            return Ok(quality(sum, peak, k + 2));
        }
        let ratio = factor.norm();
        if ratio < 0.5 && term.norm() <= 1e-17 * sum.norm().max(1e-300) {
            return Ok(quality(sum, peak, k + 2));
        }
    }
    Err(Error::Convergence(format!("1F1 series for u={u}, v={v}, z={z}")))
}

fn quality(value: C64, peak: f64, terms: usize) -> EvalQuality {
    let mag = value.norm();
    let ratio = if mag > 0.0 { (peak / mag).max(1.0) } else { f64::INFINITY };
    EvalQuality { value, cancellation_ratio: ratio, terms_used: terms, precision_warning: false }
}

fn continuation(u: C64, v: f64, z: C64) -> Result<EvalQuality> {
    let r = z.norm();
    let r0 = (1.0 / (1.0 + u.norm())).min(0.5).min(r);
    let dir = z / r;
    let mut zj = dir * r0;
    let f0 = series(u, v, zj)?;
    let d0 = series(u + 1.0, v + 1.0, zj)?;
    let mut f = f0.value;
    let mut df = d0.value * u / v;
    let mut worst = f0.cancellation_ratio.max(d0.cancellation_ratio);
    let mut terms = f0.terms_used + d0.terms_used;
    let rate = u.norm().sqrt();
    let mut guard = 0;
    while (z - zj).norm() > 0.0 {
        guard += 1;
        if guard > 100_000 {
            return Err(Error::Convergence("1F1 continuation stalled".into()));
        }
        let a = zj.norm();
        let len = (0.5 * a).min(1.0 / (1.0 + rate / a.sqrt()));
        let remaining = (z - zj).norm();
        let h = if remaining <= len { z - zj } else { dir * len };
        let (nf, ndf, peak, used) = taylor_step(u, v, zj, f, df, h)?;
        worst = worst.max(peak / nf.norm().max(1e-300));
        terms += used;
        f = nf;
        df = ndf;
        zj = if remaining <= len { z } else { zj + h };
    }
    Ok(EvalQuality { value: f, cancellation_ratio: worst.max(1.0), terms_used: terms, precision_warning: false })
}

// One re-expansion of the Kummer equation about `zj`, evaluated at `zj + h`.
fn taylor_step(u: C64, v: f64, zj: C64, f: C64, df: C64, h: C64) -> Result<(C64, C64, f64, usize)> {
    let mut c_prev = f;
    let mut c_cur = df;
    let mut hp = h;
    let mut val = CompensatedSum::default();
    let mut der = CompensatedSum::default();
    val.add(c_prev);
    val.add(c_cur * hp);
    der.add(c_cur);
    let mut peak = f.norm().max((c_cur * hp).norm());
    let mut small = 0;
    for m in 0..400usize {
        let mf = m as f64;
        let next = ((u + mf) * c_prev - (mf + 1.0) * (mf + v - zj) * c_cur) / (zj * ((mf + 1.0) * (mf + 2.0)));
        // derivative picks up (m + 2) c_{m+2} h^{m+1}
        der.add(next * hp * (mf + 2.0));
        hp *= h;
        let t = next * hp;
        val.add(t);
        peak = peak.max(t.norm());
        let s = val.value().norm().max(1e-300);
        if t.norm() <= 1e-18 * s {
            small += 1;
            if small >= 3 {
                return Ok((val.value(), der.value(), peak, m + 3));
            }
        } else {
            small = 0;
        }
        c_prev = c_cur;
        c_cur = next;
    }
    Err(Error::Convergence("1F1 Taylor step did not settle".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn elementary_cases() {
        // 1F1(v; v; z) = e^z
        for &z in &[c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 30.0)] {
            let got = hyp1f1(c(1.5, 0.0), 1.5, z).unwrap();
            assert!((got - z.exp()).norm() < 1e-12 * z.exp().norm().max(1.0), "{z}");
        }
        // 1F1(1; 2; z) = (e^z - 1)/z
        let z = c(0.3, -4.0);
        let want = (z.exp() - 1.0) / z;
        assert!((hyp1f1(c(1.0, 0.0), 2.0, z).unwrap() - want).norm() < 1e-14);
        // polynomial case
        assert!((hyp1f1(c(-2.0, 0.0), 1.0, c(3.0, 0.0)).unwrap() - c(1.0 - 6.0 + 4.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn imaginary_argument_large_parameter() {
        // 1F1(u; 2u; 2iz) = e^{iz} Gamma(u+1/2) (z/2)^{1/2-u} J_{u-1/2}(z); with u = 1/2
        // this is e^{iz} J_0(z). Check J_0 against its own series at z = 12.
        let z = 12.0;
        let mut j0 = 0.0;
        let mut t = 1.0;
        let mut k = 0.0;
        while k < 80.0 {
            j0 += t;
            k += 1.0;
            t *= -(z * z / 4.0) / (k * k);
        }
        let got = hyp1f1(c(0.5, 0.0), 1.0, c(0.0, 2.0 * z)).unwrap();
        let want = c(0.0, z).exp() * j0;
        assert!((got - want).norm() < 1e-9, "{got} vs {want}");
    }

    #[test]
    fn continuation_matches_series_where_both_work() {
        let u = c(0.25, 9.0);
        let z = c(0.0, 6.0);
        let s = series(u, 0.5, z).unwrap();
        let k = continuation(u, 0.5, z).unwrap();
        assert!((s.value - k.value).norm() < 1e-10 * s.value.norm() * s.cancellation_ratio.max(1.0));
    }

    #[test]
    fn domain_checks() {
        assert!(hyp1f1(c(1.0, 0.0), 0.0, c(1.0, 0.0)).is_err());
        assert!(hyp1f1(c(1.0, 0.0), 1.0, c(41.0, 0.0)).is_err());
        let _ = PI;
    }
}

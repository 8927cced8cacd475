//! Zero location and certification.
//!
//! Three independent tools: companion-matrix roots for exponential polynomials,
//! a sign-change count on the unit circle for self-inversive polynomials, and
//! argument-principle winding numbers for general analytic functions.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic_zeta::{PadicFactor, ZeroPolynomial};
use crate::C64;

/// How a zero was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ZeroMethod {
    CompanionRoots,
    SignChange,
    WindingBisection,
}

impl ZeroMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            ZeroMethod::CompanionRoots => "companion",
            ZeroMethod::SignChange => "sign-change",
            ZeroMethod::WindingBisection => "winding+bisection",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroReport {
    pub location: C64,
    pub multiplicity: u32,
    pub method: ZeroMethod,
    pub certified: bool,
    /// `|f|` at the reported zero.
    pub residual: f64,
}

/// Axis-aligned rectangle in the `s`-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rect {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Rect {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Self {
        Rect { re_min, re_max, im_min, im_max }
    }

    pub fn square(center: C64, half: f64) -> Self {
        Rect::new(center.re - half, center.re + half, center.im - half, center.im + half)
    }

    pub fn contains(&self, z: C64) -> bool {
        z.re > self.re_min && z.re < self.re_max && z.im > self.im_min && z.im < self.im_max
    }
}

fn horner(coeffs: &[C64], x: C64) -> C64 {
    coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

fn horner_derivative(coeffs: &[C64], x: C64) -> C64 {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(C64::new(0.0, 0.0), |acc, (j, &c)| acc * x + c * j as f64)
}

/// Simultaneous Aberth-Ehrlich iteration for the roots of a polynomial with
/// non-vanishing leading and constant coefficients.
fn aberth(c: &[C64]) -> Result<Vec<C64>> {
    let n = c.len() - 1;
    let r = (c[0] / c[n]).norm().powf(1.0 / n as f64);
    let mut x: Vec<C64> = (0..n).map(|k| C64::from_polar(r, 2.0 * PI * k as f64 / n as f64 + 0.4)).collect();
    for _ in 0..500 {
        let mut biggest = 0.0f64;
        for k in 0..n {
            let w = horner(c, x[k]) / horner_derivative(c, x[k]);
            let repulsion: C64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (x[k] - x[j])).sum();
            let step = w / (1.0 - w * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                x[k] -= step;
                biggest = biggest.max(step.norm() / x[k].norm().max(1e-300));
            }
        }
        if biggest < 1e-14 {
            return Ok(x);
        }
    }
    Err(Error::Convergence("Aberth iteration".into()))
}

/// All roots of `sum coeffs[j] x^j` from the eigenvalues of the companion matrix,
/// followed by a few Newton steps on the original polynomial.
pub fn poly_roots(coeffs: &[C64]) -> Result<Vec<C64>> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::Domain("zero polynomial".into()));
    }
    let mut c: Vec<C64> = coeffs.to_vec();
    while c.last().map(|x| x.norm() <= 1e-15 * scale).unwrap_or(false) {
        c.pop();
    }
    let mut zero_roots = 0;
    while c.first().map(|x| x.norm() <= 1e-15 * scale).unwrap_or(false) {
        c.remove(0);
        zero_roots += 1;
    }
    let n = c.len() - 1;
    let mut roots = vec![C64::new(0.0, 0.0); zero_roots];
    if n == 0 {
        return Ok(roots);
    }
    let lead = c[n];
    let mut m = DMatrix::<C64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    // nalgebra's unshifted iteration can stall on cyclic companions such as `x^n - c`
    let eig: Vec<C64> = match nalgebra::Schur::try_new(m, f64::EPSILON, 10_000).and_then(|sch| sch.eigenvalues()) {
        Some(e) => e.iter().copied().collect(),
        None => aberth(&c)?,
    };
    for mut x in eig {
        for _ in 0..8 {
            let d = horner_derivative(&c, x);
            if d.norm() == 0.0 {
                break;
            }
            let step = horner(&c, x) / d;
            let next = x - step;
            if horner(&c, next).norm() >= horner(&c, x).norm() {
                break;
            }
            x = next;
        }
        if !(x.re.is_finite() && x.im.is_finite()) {
            return Err(Error::RootPolish(format!("non-finite root {x}")));
        }
        roots.push(x);
    }
    Ok(roots)
}

/// `eps` with `c[N - j] = eps * conj(c[j])`, if the polynomial is self-inversive.
pub fn self_inversive_unit(coeffs: &[C64], tol: f64) -> Option<C64> {
    let n = coeffs.len().checked_sub(1)?;
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if coeffs[0].norm() <= tol * scale {
        return None;
    }
    let eps = coeffs[n] / coeffs[0].conj();
    if (eps.norm() - 1.0).abs() > tol {
        return None;
    }
    let ok = (0..=n).all(|j| (coeffs[n - j] - eps * coeffs[j].conj()).norm() <= tol * scale);
    ok.then_some(eps)
}

/// Angles in `[0, 2 pi)` where the real function `Re(eps^{-1/2} e^{-iN phi/2} P(e^{i phi}))`
/// changes sign, each refined by bisection.
pub fn unit_circle_sign_changes(coeffs: &[C64], samples: usize) -> Result<Vec<f64>> {
    let n = coeffs.len() - 1;
    let eps = self_inversive_unit(coeffs, 1e-10)
        .ok_or_else(|| Error::Certification("polynomial is not self-inversive".into()))?;
    let rot = eps.sqrt().inv();
    let real = |phi: f64| -> f64 {
        let x = C64::from_polar(1.0, phi);
        (rot * C64::from_polar(1.0, -(n as f64) * phi / 2.0) * horner(coeffs, x)).re
    };
    let h = 2.0 * PI / samples as f64;
    let values: Vec<f64> = (0..=samples).map(|i| real(i as f64 * h)).collect();
    let mut out = Vec::new();
    for i in 0..samples {
        let (mut lo, mut hi) = (i as f64 * h, (i + 1) as f64 * h);
        let (flo, fhi) = (values[i], values[i + 1]);
        if flo == 0.0 {
            out.push(lo);
            continue;
        }
        if flo * fhi >= 0.0 {
            continue;
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if real(mid) * flo > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push((0.5 * (lo + hi)).rem_euclid(2.0 * PI));
    }
    Ok(out)
}

/// Certified roots of a zero polynomial, mapped to the strip `0 <= Im s < period`.
pub fn certify_polynomial(poly: &ZeroPolynomial) -> Result<Vec<(C64, C64, bool)>> {
    let n = poly.degree();
    let roots = poly_roots(&poly.coeffs)?;
    let scale = poly.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let angles = unit_circle_sign_changes(&poly.coeffs, 4096)?;
    if angles.len() != n {
        return Err(Error::Certification(format!("{} sign changes for degree {n}", angles.len())));
    }
    let mut used = vec![false; angles.len()];
    let mut out = Vec::with_capacity(n);
    for x in roots {
        let on_circle = (x.norm() - 1.0).abs() <= 1e-10;
        let residual_ok = poly.eval(x).norm() <= 1e-10 * scale;
        let arg = x.arg().rem_euclid(2.0 * PI);
        let hit = angles.iter().enumerate().position(|(i, &a)| {
            let d = (a - arg).abs();
            !used[i] && d.min(2.0 * PI - d) < 1e-7
        });
        if let Some(i) = hit {
            used[i] = true;
        }
        out.push((x, poly.s_of_root(x), on_circle && residual_ok && hit.is_some()));
    }
    Ok(out)
}

/// Zeros of a finite-place factor in its fundamental strip.
pub fn exp_poly_roots(factor: &PadicFactor) -> Result<Vec<ZeroReport>> {
    let Some(poly) = factor.zero_polynomial() else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for (_, s, certified) in certify_polynomial(&poly)? {
        let residual = factor.eval_corrected(s)?.norm();
        out.push(ZeroReport { location: s, multiplicity: 1, method: ZeroMethod::CompanionRoots, certified, residual });
    }
    sort_reports(&mut out);
    Ok(out)
}

/// Translates a strip of zeros by the period to cover `t_min <= Im s <= t_max`.
pub fn periodic_family(base: &[ZeroReport], period: f64, t_min: f64, t_max: f64) -> Vec<ZeroReport> {
    let mut out = Vec::new();
    for z in base {
        let k0 = ((t_min - z.location.im) / period).floor() as i64;
        let k1 = ((t_max - z.location.im) / period).ceil() as i64;
        for k in k0..=k1 {
            let loc = z.location + C64::new(0.0, k as f64 * period);
            if loc.im >= t_min && loc.im <= t_max {
                out.push(ZeroReport { location: loc, ..z.clone() });
            }
        }
    }
    sort_reports(&mut out);
    out
}

/// Canonical order: by imaginary part, then real part.
pub fn sort_reports(v: &mut [ZeroReport]) {
    v.sort_by(|a, b| {
        a.location
            .im
            .total_cmp(&b.location.im)
            .then(a.location.re.total_cmp(&b.location.re))
    });
}

const MAX_DEPTH: u32 = 40;
const BOUNDARY_DIST: f64 = 1e-4;

fn newton_polish<F>(f: &F, mut z: C64, iters: usize) -> Result<(C64, f64)>
where
    F: Fn(C64) -> Result<C64>,
{
    let mut last = f64::INFINITY;
    for _ in 0..iters {
        let h = 1e-6 * (1.0 + z.norm());
        let d = (f(z + h)? - f(z - h)?) / (2.0 * h);
        let v = f(z)?;
        if d.norm() == 0.0 {
            break;
        }
        let step = v / d;
        z -= step;
        last = step.norm();
        if last < 1e-14 * (1.0 + z.norm()) {
            break;
        }
    }
    Ok((z, last))
}

fn arg_step(a: C64, b: C64) -> f64 {
    (b / a).arg()
}

/// Phase accumulated along a segment, with interval halving wherever a step exceeds `pi/4`.
fn edge_phase<F>(f: &F, a: C64, b: C64) -> Result<f64>
where
    F: Fn(C64) -> Result<C64> + Sync,
{
    let len = (b - a).norm();
    let m = ((len / 0.02).ceil() as usize).max(16);
    let pts: Vec<C64> = (0..=m).map(|i| a + (b - a) * (i as f64 / m as f64)).collect();
    let vals: Vec<C64> = pts.par_iter().map(|&z| f(z)).collect::<Result<_>>()?;
    for (i, v) in vals.iter().enumerate() {
        if v.norm() == 0.0 || !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::BoundaryZero(format!("value {v} at {}", pts[i])));
        }
    }
    // a local minimum of |f| on the edge may hide a zero close to it
    for i in 1..m {
        if vals[i].norm() <= vals[i - 1].norm() && vals[i].norm() <= vals[i + 1].norm() {
            check_boundary(f, pts[i], a, b)?;
        }
    }
    let mut total = 0.0;
    for i in 0..m {
        total += refine_phase(f, pts[i], pts[i + 1], vals[i], vals[i + 1], 0)?;
    }
    Ok(total)
}

fn check_boundary<F>(f: &F, z: C64, a: C64, b: C64) -> Result<()>
where
    F: Fn(C64) -> Result<C64>,
{
    let (root, step) = newton_polish(f, z, 30)?;
    if !step.is_finite() || step > 1e-8 * (1.0 + root.norm()) {
        return Ok(());
    }
    let dir = (b - a) / (b - a).norm();
    let rel = (root - a) / dir;
    let t = rel.re.clamp(0.0, (b - a).norm());
    let dist = (root - (a + dir * t)).norm();
    if dist < BOUNDARY_DIST {
        return Err(Error::BoundaryZero(format!("zero near {root} on the contour")));
    }
    Ok(())
}

fn refine_phase<F>(f: &F, a: C64, b: C64, fa: C64, fb: C64, depth: u32) -> Result<f64>
where
    F: Fn(C64) -> Result<C64>,
{
    let d = arg_step(fa, fb);
    if d.abs() < PI / 4.0 {
        return Ok(d);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::NonInteger(format!("phase unresolved between {a} and {b}")));
    }
    let mid = 0.5 * (a + b);
    let fm = f(mid)?;
    if fm.norm() == 0.0 {
        return Err(Error::BoundaryZero(format!("zero at {mid}")));
    }
    Ok(refine_phase(f, a, mid, fa, fm, depth + 1)? + refine_phase(f, mid, b, fm, fb, depth + 1)?)
}

/// Number of zeros minus poles of `f` inside `rect` by argument tracking.
pub fn winding_count<F>(f: &F, rect: &Rect) -> Result<i64>
where
    F: Fn(C64) -> Result<C64> + Sync,
{
    let c = [
        C64::new(rect.re_min, rect.im_min),
        C64::new(rect.re_max, rect.im_min),
        C64::new(rect.re_max, rect.im_max),
        C64::new(rect.re_min, rect.im_max),
    ];
    let mut total = 0.0;
    for i in 0..4 {
        total += edge_phase(f, c[i], c[(i + 1) % 4])?;
    }
    let w = total / (2.0 * PI);
    if (w - w.round()).abs() > 1e-3 {
        return Err(Error::NonInteger(format!("winding {w}")));
    }
    Ok(w.round() as i64)
}

/// Winding count of `rect` summed over horizontal slabs of height about `chunk`,
/// with the cuts moved at least `1e-3` away from the heights in `avoid`.
pub fn chunked_winding<F>(f: &F, rect: &Rect, chunk: f64, avoid: &[ZeroReport]) -> Result<i64>
where
    F: Fn(C64) -> Result<C64> + Sync,
{
    let (t0, t1) = (rect.im_min, rect.im_max);
    let pieces = ((t1 - t0) / chunk).ceil().max(1.0) as usize;
    let mut cuts = vec![t0];
    for i in 1..pieces {
        let mut t = t0 + (t1 - t0) * i as f64 / pieces as f64;
        while avoid.iter().any(|z| (z.location.im - t).abs() < 1e-3) {
            t += 2.5e-3;
        }
        cuts.push(t);
    }
    cuts.push(t1);
    let mut total = 0;
    for w in cuts.windows(2) {
        total += winding_count(f, &Rect::new(rect.re_min, rect.re_max, w[0], w[1]))?;
    }
    Ok(total)
}

/// Settings for [`line_zeros`].
#[derive(Debug, Clone, Copy)]
pub struct LineScan {
    pub step: f64,
    /// A dip counts when its minimum is below `dip * (neighbouring samples)`.
    pub dip: f64,
    /// Newton residual relative to the neighbouring sample size.
    pub residual_tol: f64,
    /// Half-width of the certification square.
    pub cert_half: f64,
}

impl Default for LineScan {
    fn default() -> Self {
        LineScan { step: 0.05, dip: 1e-3, residual_tol: 1e-10, cert_half: 1e-3 }
    }
}

fn golden_min<G: Fn(f64) -> f64>(g: G, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..60 {
        if gc < gd {
            b = d;
            d = c;
            gd = gc;
            c = b - r * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + r * (b - a);
            gd = g(d);
        }
    }
    if gc < gd {
        (c, gc)
    } else {
        (d, gd)
    }
}

/// Zeros near the vertical line `Re s = re` for `t0 <= Im s <= t1`.
pub fn line_zeros<F>(f: &F, re: f64, t0: f64, t1: f64, scan: LineScan) -> Result<Vec<ZeroReport>>
where
    F: Fn(C64) -> Result<C64> + Sync,
{
    if scan.step <= 0.0 || t1 <= t0 {
        return Err(Error::Input("line scan needs step > 0 and t1 > t0".into()));
    }
    // pad the grid so that minima at the ends have neighbours on both sides
    let (a, b) = (t0 - 2.0 * scan.step, t1 + 2.0 * scan.step);
    let n = ((b - a) / scan.step).ceil() as usize;
    let ts: Vec<f64> = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
    let g: Vec<f64> = ts
        .par_iter()
        .map(|&t| f(C64::new(re, t)).map(|v| v.norm()))
        .collect::<Result<_>>()?;
    let candidates: Vec<usize> = (1..n).filter(|&i| g[i] <= g[i - 1] && g[i] <= g[i + 1]).collect();
    let found: Vec<Option<ZeroReport>> = candidates
        .par_iter()
        .map(|&i| -> Result<Option<ZeroReport>> {
            let scale = g[i - 1].max(g[i + 1]);
            let modulus = |t: f64| f(C64::new(re, t)).map(|v| v.norm()).unwrap_or(f64::INFINITY);
            let (tm, gm) = golden_min(modulus, ts[i - 1], ts[i + 1]);
            if gm > scan.dip * scale {
                return Ok(None);
            }
            let (z, step) = newton_polish(f, C64::new(re, tm), 60)?;
            let residual = f(z)?.norm();
            let converged = step.is_finite() && step < 1e-10 * (1.0 + z.norm()) && residual <= scan.residual_tol * scale;
            let mult = winding_count(f, &Rect::square(z, scan.cert_half)).unwrap_or(0);
            Ok(Some(ZeroReport {
                location: z,
                multiplicity: mult.max(1) as u32,
                method: ZeroMethod::WindingBisection,
                certified: converged && mult >= 1,
                residual,
            }))
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<ZeroReport> = Vec::new();
    for z in found.into_iter().flatten() {
        if z.location.im < t0 - 1e-9 || z.location.im > t1 + 1e-9 {
            continue;
        }
        if out.iter().all(|o| (o.location - z.location).norm() > 1e-6) {
            out.push(z);
        }
    }
    sort_reports(&mut out);
    Ok(out)
}

/// Sum of multiplicities of certified reports inside `rect`.
pub fn count_inside(reports: &[ZeroReport], rect: &Rect) -> i64 {
    reports
        .iter()
        .filter(|z| z.certified && rect.contains(z.location))
        .map(|z| z.multiplicity as i64)
        .sum()
}

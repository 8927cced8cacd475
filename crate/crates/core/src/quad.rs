//! Adaptive Gauss–Kronrod (10/21) quadrature for complex integrands.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::C64;

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077562369210815,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: C64,
    abs: f64,
    err: f64,
}

fn gk21<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(f64) -> Result<C64>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut k = fc * WGK[10];
    let mut abs = fc.norm() * WGK[10];
    let mut g = C64::new(0.0, 0.0);
    for i in 0..10 {
        let x = h * XGK[i];
        let (f1, f2) = (f(c - x)?, f(c + x)?);
        k += (f1 + f2) * WGK[i];
        abs += (f1.norm() + f2.norm()) * WGK[i];
        if i % 2 == 1 {
            g += (f1 + f2) * WG[i / 2];
        }
    }
    let value = k * h;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Convergence(format!("non-finite integrand on [{a}, {b}]")));
    }
    Ok(Panel { a, b, value, abs: abs * h.abs(), err: ((k - g) * h).norm() })
}

/// Settings for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// Target error relative to `int |f|`.
    pub rel_tol: f64,
    pub max_panels: usize,
    /// Panels are accepted once the error estimate falls below `noise * int |f|` on the panel.
    pub noise: f64,
    /// Panels narrower than this are accepted as they are.
    pub min_width: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { rel_tol: 1e-12, max_panels: 400_000, noise: 1e-15, min_width: 0.0 }
    }
}

/// Integral of `f` over `[a, b]` started from `n_init` equal panels per breakpoint gap.
///
/// Returns the value and the estimate of `int |f|`.
pub fn integrate<F>(f: &F, breaks: &[f64], n_init: usize, opts: QuadOptions) -> Result<(C64, f64)>
where
    F: Fn(f64) -> Result<C64> + Sync,
{
    let mut edges = Vec::new();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        for i in 0..n_init.max(1) {
            edges.push((a + (b - a) * i as f64 / n_init as f64, a + (b - a) * (i + 1) as f64 / n_init as f64));
        }
    }
    if edges.is_empty() {
        return Ok((C64::new(0.0, 0.0), 0.0));
    }
    let first: Vec<Panel> = edges.par_iter().map(|&(a, b)| gk21(f, a, b)).collect::<Result<_>>()?;
    let l1: f64 = first.iter().map(|p| p.abs).sum();
    let total_len: f64 = edges.iter().map(|(a, b)| b - a).sum();
    let tol = opts.rel_tol * l1.max(f64::MIN_POSITIVE);
    let budget = opts.max_panels / first.len().max(1) + 8;
    let refined: Vec<C64> = first
        .par_iter()
        .map(|p| refine(f, *p, tol * (p.b - p.a) / total_len, opts, budget))
        .collect::<Result<_>>()?;
    let mut sum = C64::new(0.0, 0.0);
    for v in refined {
        sum += v;
    }
    Ok((sum, l1))
}

fn refine<F>(f: &F, p: Panel, tol: f64, opts: QuadOptions, budget: usize) -> Result<C64>
where
    F: Fn(f64) -> Result<C64>,
{
    let mut stack = vec![(p, tol)];
    let mut sum = C64::new(0.0, 0.0);
    let mut used = 0usize;
    while let Some((q, t)) = stack.pop() {
        if q.err <= t.max(opts.noise * q.abs) || (q.b - q.a) < opts.min_width.max(1e-14 * (1.0 + q.a.abs())) {
            sum += q.value;
            continue;
        }
        used += 1;
        if used > budget {
            return Err(Error::Convergence(format!("panel budget exhausted near [{}, {}]", q.a, q.b)));
        }
        let m = 0.5 * (q.a + q.b);
        stack.push((gk21(f, q.a, m)?, 0.5 * t));
        stack.push((gk21(f, m, q.b)?, 0.5 * t));
    }
    Ok(sum)
}

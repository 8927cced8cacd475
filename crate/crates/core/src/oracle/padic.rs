//! Mellin transforms over `Q_p` and `Q_p^n` from exact residue-class sums.
//!
//! These do not use any closed form: the transform is the sum over shells
//! `p^j Z_p^*` of the exactly computed unit averages, with the two tails
//! checked to have reached their limiting values.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{unit_average, PAdicRational, PadicCharacter, PadicSdc, QuadraticPhase, SUM_LIMIT};
use crate::C64;

#[derive(Debug, Clone, Serialize)]
pub struct PadicOracle {
    pub value: C64,
    pub window: (i64, i64),
}

#[derive(Debug, Clone, Copy)]
pub struct PadicOracleOptions {
    /// Extra residue level beyond the minimal exact one.
    pub margin: u32,
    /// Extra shells on each side of the default window.
    pub widen: i64,
    /// Shells at each end that must already equal the tail value.
    pub guard: usize,
}

impl Default for PadicOracleOptions {
    fn default() -> Self {
        Self { margin: 0, widen: 0, guard: 2 }
    }
}

const TAIL_TOL: f64 = 1e-11;
// Character sums below this size are exact cancellations; rounding noise
// would otherwise be amplified by p^{-js} on far shells.
const SNAP: f64 = 1e-12;

fn snap(v: C64) -> C64 {
    if v.norm() < SNAP {
        C64::new(0.0, 0.0)
    } else {
        v
    }
}

/// Exact unit averages on the shells `p^j Z_p^*` of a window.
#[derive(Debug, Clone, Serialize)]
pub struct ShellTable {
    pub p: u64,
    pub window: (i64, i64),
    pub shells: Vec<C64>,
    /// Limiting value above the window.
    pub top: C64,
    pub at_p: C64,
}

// Window from the valuation of `a` and the triviality index of `f`; the
// support of the unit average cannot start below `-v(a) - T` nor below
// `ceil(-v(a)/2) - 1`, and is constant from `T` on.
fn default_window(fs: &[&PadicSdc], guard: usize, widen: i64) -> Result<(i64, i64)> {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for f in fs {
        let va = f.a.valuation().expect("a is non-zero");
        let t = f.triviality_index((-va).div_euclid(2) - 2)?;
        let shift = (-va).div_euclid(2) + (-va).rem_euclid(2);
        lo = lo.min((-va - t).min(shift - 1));
        hi = hi.max(t.max(0));
    }
    Ok((lo - guard as i64 - widen, hi + guard as i64 + widen))
}

impl ShellTable {
    pub fn build(f: &PadicSdc, chi: &PadicCharacter, opts: PadicOracleOptions) -> Result<Self> {
        let p = f.p();
        let window = default_window(&[f], opts.guard, opts.widen)?;
        let mut shells = Vec::new();
        for j in window.0..=window.1 {
            let y = PAdicRational::p_power(p, j);
            shells.push(snap(unit_average(f, chi.unit.as_ref(), &y, opts.margin)?));
        }
        let top = if chi.is_ramified() { C64::new(0.0, 0.0) } else { C64::new(1.0, 0.0) };
        let t = Self { p, window, shells, top, at_p: chi.at_p };
        t.check(opts.guard)?;
        Ok(t)
    }

    pub fn build_vector(fs: &[PadicSdc], opts: PadicOracleOptions) -> Result<Self> {
        let p = fs.first().ok_or_else(|| Error::Input("empty coordinate list".into()))?.p();
        let refs: Vec<&PadicSdc> = fs.iter().collect();
        let window = default_window(&refs, opts.guard, opts.widen)?;
        let mut shells = Vec::new();
        for j in window.0..=window.1 {
            let y = PAdicRational::p_power(p, j);
            shells.push(snap(primitive_vector_average(fs, &y, opts.margin)?));
        }
        let t = Self { p, window, shells, top: C64::new(1.0, 0.0), at_p: C64::new(1.0, 0.0) };
        t.check(opts.guard)?;
        Ok(t)
    }

    fn check(&self, guard: usize) -> Result<()> {
        let n = self.shells.len();
        if n < 2 * guard + 1 {
            return Err(Error::Input("summation window shorter than the guards".into()));
        }
        for (i, v) in self.shells[..guard].iter().enumerate() {
            if v.norm() > TAIL_TOL {
                return Err(Error::SupportEscape(format!("shell {} carries {v}", self.window.0 + i as i64)));
            }
        }
        for (i, v) in self.shells[n - guard..].iter().enumerate() {
            if (v - self.top).norm() > TAIL_TOL {
                let j = self.window.1 - guard as i64 + 1 + i as i64;
                return Err(Error::SupportEscape(format!("shell {j} has {v}, expected {}", self.top)));
            }
        }
        Ok(())
    }

    /// `sum_j theta(p^j) chi(p)^j p^{-js}` plus the geometric upper tail.
    pub fn mellin(&self, s: C64) -> Result<C64> {
        let w = self.at_p * (-s * (self.p as f64).ln()).exp();
        let mut acc = crate::specfun::CompensatedSum::default();
        for (i, v) in self.shells.iter().enumerate() {
            if v.norm() > 0.0 {
                acc.add(v * w.powi((self.window.0 + i as i64) as i32));
            }
        }
        if self.top.norm() > 0.0 {
            if (w - 1.0).norm() < 1e-14 {
                return Err(Error::Pole(format!("geometric tail at s = {s}")));
            }
            acc.add(self.top * w.powi(self.window.1 as i32 + 1) / (C64::new(1.0, 0.0) - w));
        }
        Ok(acc.value())
    }
}

/// Mellin transform of a second degree character on `Q_p` against `chi |x|^s`.
pub fn oracle_padic_mellin(f: &PadicSdc, chi: &PadicCharacter, s: C64, opts: PadicOracleOptions) -> Result<PadicOracle> {
    let t = ShellTable::build(f, chi, opts)?;
    Ok(PadicOracle { value: t.mellin(s)?, window: t.window })
}

/// Average of `f(r c)` over primitive vectors `c` of `Z_p^n`, where
/// `f(x) = prod_i f_i(x_i)`.
///
/// The sum over primitive residues is the full box minus the box of
/// residues divisible by `p`, and both boxes factor over coordinates.
pub fn primitive_vector_average(fs: &[PadicSdc], r: &PAdicRational, margin: u32) -> Result<C64> {
    let p = r.p();
    let phases: Vec<QuadraticPhase> = fs.iter().map(|f| f.phase_at(r)).collect::<Result<_>>()?;
    let m = phases.iter().map(|ph| ph.constancy_level()).max().unwrap_or(0).max(1) + margin;
    let side = p.checked_pow(m).filter(|&c| c <= SUM_LIMIT).ok_or_else(|| {
        Error::Domain(format!("vector residue side {p}^{m} too large"))
    })?;
    let mut full = C64::new(1.0, 0.0);
    let mut inner = C64::new(1.0, 0.0);
    for ph in &phases {
        let mut all = crate::specfun::CompensatedSum::default();
        let mut div = crate::specfun::CompensatedSum::default();
        for x in 0..side {
            let v = ph.eval(x);
            all.add(v);
            if x % p == 0 {
                div.add(v);
            }
        }
        full *= all.value() / side as f64;
        inner *= div.value() / (side / p) as f64;
    }
    let n = fs.len() as i32;
    let share = (p as f64).powi(-n);
    Ok((full - inner * share) / (1.0 - share))
}

/// Same average by direct enumeration of all primitive residues.
pub fn primitive_vector_average_enumerated(fs: &[PadicSdc], r: &PAdicRational, margin: u32) -> Result<C64> {
    let p = r.p();
    let phases: Vec<QuadraticPhase> = fs.iter().map(|f| f.phase_at(r)).collect::<Result<_>>()?;
    let m = phases.iter().map(|ph| ph.constancy_level()).max().unwrap_or(0).max(1) + margin;
    let side = p.checked_pow(m).ok_or_else(|| Error::Domain("vector residue level too large".into()))?;
    let total = side
        .checked_pow(fs.len() as u32)
        .filter(|&t| t <= SUM_LIMIT)
        .ok_or_else(|| Error::Domain(format!("{side}^{} vector residues is too many", fs.len())))?;
    let tables: Vec<Vec<C64>> = phases.iter().map(|ph| (0..side).map(|x| ph.eval(x)).collect()).collect();
    let mut acc = crate::specfun::CompensatedSum::default();
    let mut count = 0u64;
    let mut idx = vec![0u64; fs.len()];
    for _ in 0..total {
        if idx.iter().any(|&x| x % p != 0) {
            let mut prod = C64::new(1.0, 0.0);
            for (t, &x) in tables.iter().zip(&idx) {
                prod *= t[x as usize];
            }
            acc.add(prod);
            count += 1;
        }
        for d in idx.iter_mut() {
            *d += 1;
            if *d < side {
                break;
            }
            *d = 0;
        }
    }
    Ok(acc.value() / count as f64)
}

/// Radial Mellin transform on `Q_p^n`, normalized so that `n = 1` agrees
/// with [`oracle_padic_mellin`] for the trivial character.
pub fn oracle_padic_vector(fs: &[PadicSdc], s: C64, opts: PadicOracleOptions) -> Result<PadicOracle> {
    let t = ShellTable::build_vector(fs, opts)?;
    Ok(PadicOracle { value: t.mellin(s)?, window: t.window })
}

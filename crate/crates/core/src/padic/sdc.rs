use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::character::DirichletCharData;
use super::rational::PAdicRational;
use crate::error::{Error, Result};
use crate::C64;

/// Largest number of residues summed in one exact average.
pub const SUM_LIMIT: u64 = 20_000_000;

/// `psi_p(x) = exp(2 pi i lambda(x))`.
pub fn psi_p(x: &PAdicRational) -> C64 {
    let (r, k) = x.frac_lambda();
    if k == 0 {
        return C64::new(1.0, 0.0);
    }
    let pk = BigInt::from(x.p()).pow(k);
    // reduce the angle exactly before converting
    let num = (&r * 2u32).to_f64().unwrap_or(0.0);
    let den = pk.to_f64().unwrap_or(f64::INFINITY);
    C64::from_polar(1.0, PI * num / den)
}

/// Second degree character `x -> psi_p(a x^2 / 2 + b x)` on `Q_p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PadicSdc {
    pub a: PAdicRational,
    pub b: PAdicRational,
}

impl PadicSdc {
    pub fn new(a: PAdicRational, b: PAdicRational) -> Result<Self> {
        if a.p() != b.p() {
            return Err(Error::Input("a and b live over different primes".into()));
        }
        if a.is_zero() {
            return Err(Error::Input("a must be non-zero".into()));
        }
        Ok(Self { a, b })
    }

    pub fn parse(p: u64, a: &str, b: &str) -> Result<Self> {
        Self::new(PAdicRational::parse(p, a)?, PAdicRational::parse(p, b)?)
    }

    pub fn p(&self) -> u64 {
        self.a.p()
    }

    pub fn eval(&self, x: &PAdicRational) -> C64 {
        let two = PAdicRational::new(self.p(), 2, 1).expect("prime checked");
        let q = self.a.mul(x).mul(x).div(&two).expect("two is non-zero");
        psi_p(&q.add(&self.b.mul(x)))
    }

    /// `x -> f(c x)`.
    pub fn scaled(&self, c: &PAdicRational) -> Self {
        Self { a: self.a.mul(c).mul(c), b: self.b.mul(c) }
    }

    /// Phase of `x -> f(y x)` on `Z_p`, reduced to integer arithmetic.
    pub fn phase_at(&self, y: &PAdicRational) -> Result<QuadraticPhase> {
        let two = PAdicRational::new(self.p(), 2, 1)?;
        let a = self.a.mul(y).mul(y).div(&two)?;
        let b = self.b.mul(y);
        QuadraticPhase::new(&a, &b)
    }

    /// Least `k >= lower` with `x -> f(p^k x)` identically one on `Z_p`.
    pub fn triviality_index(&self, lower: i64) -> Result<i64> {
        let p = self.p();
        for k in lower..lower + 400 {
            let ph = self.phase_at(&PAdicRational::p_power(p, k))?;
            if ph.is_trivial() {
                return Ok(k);
            }
        }
        Err(Error::Convergence("no triviality index found".into()))
    }

    /// `theta_f(y) = int_{Z_p} f(y x) dx`, summed exactly over residues.
    pub fn theta(&self, y: &PAdicRational) -> Result<C64> {
        let phase = self.phase_at(y)?;
        let m = phase.constancy_level();
        let p = self.p();
        let count = p.checked_pow(m).filter(|&c| c <= SUM_LIMIT).ok_or_else(|| {
            Error::Domain(format!("theta sum over {p}^{m} residues is too large"))
        })?;
        let mut acc = crate::specfun::CompensatedSum::default();
        for x in 0..count {
            acc.add(phase.eval(x));
        }
        Ok(acc.value() / count as f64)
    }
}

/// `x -> psi_p((A x^2 + B x) / p^D)` for integers `x`.
#[derive(Debug, Clone)]
pub struct QuadraticPhase {
    p: u64,
    depth: u32,
    modulus: u64,
    a: u64,
    b: u64,
    va: Option<i64>,
    vb: Option<i64>,
}

impl QuadraticPhase {
    pub fn new(a: &PAdicRational, b: &PAdicRational) -> Result<Self> {
        let p = a.p();
        let va = a.valuation();
        let vb = b.valuation();
        let depth = [0, va.map_or(0, |v| -v), vb.map_or(0, |v| -v)].into_iter().max().unwrap_or(0);
        let modulus = p
            .checked_pow(depth as u32)
            .filter(|&m| m < (1u64 << 62))
            .ok_or_else(|| Error::Domain(format!("phase modulus {p}^{depth} too large")))?;
        let shift = PAdicRational::p_power(p, depth);
        let ai = a.mul(&shift).residue(depth as u32)?.to_u64().unwrap_or(0);
        let bi = b.mul(&shift).residue(depth as u32)?.to_u64().unwrap_or(0);
        Ok(Self { p, depth: depth as u32, modulus, a: ai, b: bi, va, vb })
    }

    pub fn eval(&self, x: u64) -> C64 {
        if self.depth == 0 {
            return C64::new(1.0, 0.0);
        }
        let m = self.modulus as u128;
        let x = x as u128 % m;
        let x2 = x * x % m;
        let r = (self.a as u128 * x2 % m + self.b as u128 * x % m) % m;
        C64::from_polar(1.0, 2.0 * PI * (r as f64) / self.modulus as f64)
    }

    /// Whether the phase is identically one on `Z_p`.
    pub fn is_trivial(&self) -> bool {
        let m = self.constancy_level();
        if m == 0 {
            return true;
        }
        let n = self.p.pow(m);
        (0..n).all(|x| (self.eval(x) - 1.0).norm() < 1e-13)
    }

    /// Least `M` with `x -> phase(x)` constant on cosets of `p^M Z_p`.
    pub fn constancy_level(&self) -> u32 {
        let v2 = if self.p == 2 { 1 } else { 0 };
        let mut m: i64 = 0;
        if let Some(va) = self.va {
            // 2 A x p^M t and A p^{2M} t^2 must be integral
            m = m.max(-(va + v2)).max((-va + 1).div_euclid(2));
        }
        if let Some(vb) = self.vb {
            m = m.max(-vb);
        }
        m.max(0) as u32
    }
}

/// `(1/#reps) sum_u f(u y) chi(u)` over units modulo `p^m`, i.e. the average of
/// `f(u y) chi(u)` over `Z_p^*`. `margin` raises the level beyond the minimum.
pub fn unit_average(f: &PadicSdc, chi: Option<&DirichletCharData>, y: &PAdicRational, margin: u32) -> Result<C64> {
    let p = f.p();
    if let Some(c) = chi {
        if c.p != p {
            return Err(Error::Input("character and character sum over different primes".into()));
        }
    }
    let phase = f.phase_at(y)?;
    let cond = chi.map_or(0, |c| c.conductor_level());
    let m = phase.constancy_level().max(cond).max(1) + margin;
    let count = p.checked_pow(m).filter(|&c| c <= SUM_LIMIT).ok_or_else(|| {
        Error::Domain(format!("unit average over {p}^{m} residues is too large"))
    })?;
    let mut acc = crate::specfun::CompensatedSum::default();
    let mut n = 0u64;
    for u in 1..count {
        if u % p == 0 {
            continue;
        }
        let w = match chi {
            Some(c) => c.value(u as i64),
            None => C64::new(1.0, 0.0),
        };
        acc.add(phase.eval(u) * w);
        n += 1;
    }
    Ok(acc.value() / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u64, n: i64, d: i64) -> PAdicRational {
        PAdicRational::new(p, n, d).unwrap()
    }

    #[test]
    fn psi_values() {
        assert!((psi_p(&q(5, 1, 5)) - C64::from_polar(1.0, 2.0 * PI / 5.0)).norm() < 1e-15);
        assert!((psi_p(&q(5, 3, 1)) - 1.0).norm() < 1e-15);
        // additivity
        let x = q(3, 7, 27);
        let y = q(3, -4, 9);
        assert!((psi_p(&x.add(&y)) - psi_p(&x) * psi_p(&y)).norm() < 1e-14);
    }

    #[test]
    fn phase_agrees_with_direct_evaluation() {
        let f = PadicSdc::new(q(3, 1, 9), q(3, 2, 3)).unwrap();
        let y = q(3, 1, 3);
        let ph = f.phase_at(&y).unwrap();
        for x in 0..50u64 {
            let direct = f.eval(&y.mul(&q(3, x as i64, 1)));
            assert!((ph.eval(x) - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn two_adic_unit_average_table() {
        // lambda(1_{Z_2^*}) psi_2(x^2/2) on 2^j
        let f = PadicSdc::new(q(2, 1, 1), q(2, 0, 1)).unwrap();
        let val = |j: i64| unit_average(&f, None, &PAdicRational::p_power(2, j), 0).unwrap();
        assert!((val(1) - 1.0).norm() < 1e-14);
        assert!((val(3) - 1.0).norm() < 1e-14);
        assert!((val(0) + 1.0).norm() < 1e-14);
        assert!((val(-1) - C64::from_polar(1.0, PI / 4.0)).norm() < 1e-14);
        assert!(val(-2).norm() < 1e-14);
        assert!(val(-4).norm() < 1e-14);
    }

    #[test]
    fn theta_of_unramified_character_is_one_on_integers() {
        let f = PadicSdc::new(q(5, 1, 1), q(5, 0, 1)).unwrap();
        assert!((f.theta(&q(5, 1, 1)).unwrap() - 1.0).norm() < 1e-14);
        // quadratic Gauss sums over Z/25 and Z/125
        assert!((f.theta(&q(5, 1, 5)).unwrap() - 0.2).norm() < 1e-14);
        assert!((f.theta(&q(5, 1, 25)).unwrap() - 0.04).norm() < 1e-14);
    }
}

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::DirichletCharacter;
use crate::C64;

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128 % m as u128;
    let mut b128 = b as u128 % m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % m as u128;
        }
        b128 = b128 * b128 % m as u128;
        e >>= 1;
    }
    b = r as u64;
    b
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest `g` that generates `(Z/p^n)^*` for every `n` (odd `p`).
pub fn primitive_root(p: u64) -> Result<u64> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::Domain(format!("primitive roots are only provided for odd primes, got {p}")));
    }
    let factors = prime_factors(p - 1);
    let g = (2..p)
        .find(|&g| factors.iter().all(|&l| pow_mod(g, (p - 1) / l, p) != 1))
        .ok_or_else(|| Error::Domain(format!("{p} has no primitive root")))?;
    if pow_mod(g, p - 1, p * p) == 1 {
        Ok(g + p)
    } else {
        Ok(g)
    }
}

/// A character of `(Z/p^n)^*`, `p` odd, given by `chi(g) = exp(2 pi i t / phi(p^n))`.
#[derive(Debug, Clone, Serialize)]
pub struct DirichletCharData {
    pub p: u64,
    pub n: u32,
    pub t: u64,
    pub generator: u64,
    #[serde(skip)]
    table: Vec<C64>,
}

impl PartialEq for DirichletCharData {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.n == o.n && self.t == o.t
    }
}

pub(crate) const TABLE_LIMIT: u64 = 2_000_000;

impl DirichletCharData {
    pub fn new(p: u64, n: u32, t: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("character level must be at least 1".into()));
        }
        let g = primitive_root(p)?;
        let modulus = p.checked_pow(n).filter(|&m| m <= TABLE_LIMIT).ok_or_else(|| {
            Error::Domain(format!("character modulus {p}^{n} too large"))
        })?;
        let phi = modulus / p * (p - 1);
        let t = t % phi;
        let mut table = vec![C64::new(0.0, 0.0); modulus as usize];
        let mut x = 1u64;
        for j in 0..phi {
            let k = (t as u128 * j as u128 % phi as u128) as f64;
            table[x as usize] = C64::from_polar(1.0, 2.0 * PI * k / phi as f64);
            x = x * g % modulus;
        }
        Ok(Self { p, n, t, generator: g, table })
    }

    /// All characters of `(Z/p^n)^*`.
    pub fn all(p: u64, n: u32) -> Result<Vec<Self>> {
        let modulus = p.pow(n);
        let phi = modulus / p * (p - 1);
        (0..phi).map(|t| Self::new(p, n, t)).collect()
    }

    pub fn modulus(&self) -> u64 {
        self.table.len() as u64
    }

    pub fn phi(&self) -> u64 {
        self.modulus() / self.p * (self.p - 1)
    }

    /// Value on an integer; zero when `p` divides it.
    pub fn value(&self, u: i64) -> C64 {
        self.table[u.rem_euclid(self.modulus() as i64) as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.t == 0
    }

    pub fn is_even(&self) -> bool {
        self.value(-1).re > 0.0
    }

    /// Least `m` such that the character is trivial on `1 + p^m Z_p`.
    pub fn conductor_level(&self) -> u32 {
        if self.is_trivial() {
            return 0;
        }
        let q = self.modulus() as i64;
        (1..=self.n)
            .find(|&m| {
                let step = self.p.pow(m) as i64;
                (0..q / step).all(|j| (self.value(1 + j * step) - 1.0).norm() < 1e-12)
            })
            .unwrap_or(self.n)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.p, self.n, (self.phi() - self.t) % self.phi()).expect("valid parameters")
    }

    pub fn to_dirichlet(&self) -> DirichletCharacter {
        DirichletCharacter::from_values(self.modulus(), self.table.clone()).expect("table is a character")
    }
}


/// Multiplicative character of `Q_p^*` (without the `|x|^s` part): a
/// character of the units, extended by a chosen value on `p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PadicCharacter {
    pub unit: Option<DirichletCharData>,
    pub at_p: C64,
}

impl PadicCharacter {
    pub fn trivial() -> Self {
        Self { unit: None, at_p: C64::new(1.0, 0.0) }
    }

    /// Unramified character with `chi(p) = value`.
    pub fn unramified(value: C64) -> Self {
        Self { unit: None, at_p: value }
    }

    /// Ramified character with `chi(p) = 1`.
    pub fn ramified(chi: DirichletCharData) -> Self {
        let unit = if chi.is_trivial() { None } else { Some(chi) };
        Self { unit, at_p: C64::new(1.0, 0.0) }
    }

    pub fn with_at_p(mut self, value: C64) -> Self {
        self.at_p = value;
        self
    }

    pub fn is_ramified(&self) -> bool {
        self.unit.is_some()
    }

    pub fn conductor_level(&self) -> u32 {
        self.unit.as_ref().map_or(0, |c| c.conductor_level())
    }

    /// Value on `p^v u` for an integer unit `u`.
    pub fn value(&self, v: i64, u: i64) -> C64 {
        let unit = self.unit.as_ref().map_or(C64::new(1.0, 0.0), |c| c.value(u));
        self.at_p.powi(v as i32) * unit
    }
}

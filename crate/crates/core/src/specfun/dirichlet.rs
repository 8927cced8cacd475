use num_integer::Integer;
use serde::Serialize;

use super::zeta::{hurwitz_zeta_regular, riemann_zeta};
use crate::error::{Error, Result};
use crate::C64;

/// A Dirichlet character stored as its value table modulo `q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<C64>,
}

impl DirichletCharacter {
    pub fn trivial(modulus: u64) -> Self {
        let values = (0..modulus.max(1))
            .map(|a| if a.gcd(&modulus) == 1 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
            .collect();
        Self { modulus: modulus.max(1), values }
    }

    /// Build from explicit values `chi(0), ..., chi(q - 1)`.
    ///
    /// Values must vanish off the units, have modulus one on them and be
    /// multiplicative.
    pub fn from_values(modulus: u64, values: Vec<C64>) -> Result<Self> {
        if modulus == 0 || values.len() as u64 != modulus {
            return Err(Error::Input("character table length must equal the modulus".into()));
        }
        for a in 0..modulus {
            let unit = a.gcd(&modulus) == 1 || modulus == 1;
            let v = values[a as usize];
            if unit && (v.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::Input(format!("chi({a}) is not a root of unity")));
            }
            if !unit && v.norm() > 1e-12 {
                return Err(Error::Input(format!("chi({a}) must vanish")));
            }
        }
        for a in 0..modulus {
            for b in 0..modulus {
                let ab = (a * b % modulus) as usize;
                if (values[a as usize] * values[b as usize] - values[ab]).norm() > 1e-10 {
                    return Err(Error::Input("character table is not multiplicative".into()));
                }
            }
        }
        Ok(Self { modulus, values })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value(&self, n: i64) -> C64 {
        let q = self.modulus as i64;
        self.values[n.rem_euclid(q) as usize]
    }

    pub fn is_even(&self) -> bool {
        self.value(-1).re > 0.0
    }

    pub fn is_principal(&self) -> bool {
        (0..self.modulus)
            .all(|a| a.gcd(&self.modulus) != 1 || (self.values[a as usize] - 1.0).norm() < 1e-12)
    }

    /// Smallest modulus the character is induced from.
    pub fn conductor(&self) -> u64 {
        let q = self.modulus;
        let mut best = q;
        for d in 1..=q {
            if q % d != 0 || d >= best {
                continue;
            }
            let induced = (1..q).filter(|a| a.gcd(&q) == 1 && a % d == 1 % d.max(1)).all(|a| {
                (self.values[a as usize] - 1.0).norm() < 1e-10
            });
            if induced {
                best = d;
            }
        }
        best
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    pub fn product(&self, other: &Self) -> Self {
        let q = self.modulus.lcm(&other.modulus);
        let values = (0..q as i64).map(|a| self.value(a) * other.value(a)).collect();
        Self { modulus: q, values }
    }

    pub fn conj(&self) -> Self {
        Self { modulus: self.modulus, values: self.values.iter().map(|v| v.conj()).collect() }
    }
}

/// `L(s, chi)` via Hurwitz zeta values.
pub fn dirichlet_l(s: C64, chi: &DirichletCharacter) -> Result<C64> {
    let q = chi.modulus();
    if q == 1 {
        return riemann_zeta(s);
    }
    let mut total = C64::new(0.0, 0.0);
    let mut mass = C64::new(0.0, 0.0);
    for a in 1..=q {
        let v = chi.value(a as i64);
        if v.norm() == 0.0 {
            continue;
        }
        total += v * hurwitz_zeta_regular(s, a as f64 / q as f64)?;
        mass += v;
    }
    if mass.norm() > 1e-9 {
        if (s - 1.0).norm() == 0.0 {
            return Err(Error::Pole("principal L-function at s = 1".into()));
        }
        total += mass / (s - 1.0);
    }
    Ok((-s * (q as f64).ln()).exp() * total)
}

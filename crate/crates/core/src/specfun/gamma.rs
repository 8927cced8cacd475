use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::C64;

// Stirling series coefficients B_{2k} / (2k (2k - 1)), k = 1..10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

// Below this modulus the argument is shifted upwards before Stirling.
const SHIFT_TO: f64 = 17.0;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn is_nonpositive_integer(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Logarithm of the gamma function.
///
/// The imaginary part is not reduced to a principal branch; only
/// `exp(log_gamma(z)) == gamma(z)` is guaranteed.
pub fn log_gamma(z: C64) -> Result<C64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("gamma at {}", z.re)));
    }
    if z.re < 0.5 {
        // reflection
        let s = (z * PI).sin();
        let rest = log_gamma(C64::new(1.0, 0.0) - z)?;
        return Ok(C64::new(PI.ln(), 0.0) - s.ln() - rest);
    }
    Ok(shifted_stirling(z))
}

fn shifted_stirling(z: C64) -> C64 {
    let mut w = z;
    let mut log_prod = C64::new(0.0, 0.0);
    let mut prod = C64::new(1.0, 0.0);
    while w.norm() < SHIFT_TO {
        prod *= w;
        if prod.norm() > 1e200 {
            log_prod += prod.ln();
            prod = C64::new(1.0, 0.0);
        }
        w += 1.0;
    }
    log_prod += prod.ln();
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut corr = C64::new(0.0, 0.0);
    let mut p = inv;
    for &c in STIRLING.iter() {
        corr += p * c;
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + LN_SQRT_2PI + corr - log_prod
}

pub fn gamma(z: C64) -> Result<C64> {
    Ok(log_gamma(z)?.exp())
}

/// `Gamma(a) / Gamma(b)` evaluated through logarithms.
pub fn gamma_ratio(a: C64, b: C64) -> Result<C64> {
    Ok((log_gamma(a)? - log_gamma(b)?).exp())
}

/// `1 / Gamma(z)`, zero at the poles of gamma.
pub fn rgamma(z: C64) -> C64 {
    if is_nonpositive_integer(z) {
        return C64::new(0.0, 0.0);
    }
    match log_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => C64::new(0.0, 0.0),
    }
}

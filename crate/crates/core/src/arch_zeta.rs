//! Local zeta integrals at the archimedean places.
//!
//! Conventions: `psi_R(x) = e^{-2 pi i x}`, `psi_C(z) = e^{-2 pi i (z + conj z)}`,
//! the measure on `C` is `2 dx dy` and `|z|_C = |z|^2`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{gamma, hyp1f1, rgamma};
use crate::C64;

/// Second degree character at an archimedean place.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ArchSdc {
    /// `psi_R(a x^2 / 2 + b x)`.
    Real { a: f64, b: f64 },
    /// `psi_C(a |z|^2 / 2 + b z)`, `a > 0`.
    ComplexHermitian { a: f64, b: C64 },
    /// `psi_C(a z^2 / 2 + b z)`.
    ComplexSquare { a: C64, b: C64 },
    /// `psi_R(a |x|^2 / 2 + <b, x>)` on `R^n`, depending on `b` through its norm.
    RealRadial { n: u32, a: f64, bnorm: f64 },
}

/// Unitary character of the unit group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArchCharacter {
    Trivial,
    RealSign,
    /// `c_n(z) = (z / |z|)^n`.
    ComplexCn(i64),
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn expi(x: C64) -> C64 {
    (c(0.0, 1.0) * x).exp()
}

fn pow_real(base: f64, e: C64) -> C64 {
    (e * base.ln()).exp()
}

fn real_trivial_pos(a: f64, b: f64, s: C64) -> Result<C64> {
    let pre = expi(-s * PI / 4.0) * pow_real(a, -s / 2.0) * gamma(s / 2.0)? * pow_real(PI, -s / 2.0);
    if b == 0.0 {
        return Ok(pre);
    }
    Ok(pre * hyp1f1(s / 2.0, 0.5, c(0.0, PI * b * b / a))?)
}

fn real_sign_pos(a: f64, b: f64, s: C64) -> Result<C64> {
    if b == 0.0 {
        return Ok(c(0.0, 0.0));
    }
    let t = (s + 1.0) / 2.0;
    let pre = c(0.0, -2.0 * PI * b) * expi(-(s + 1.0) * PI / 4.0) * pow_real(a, -t) * gamma(t)? * pow_real(PI, -t);
    Ok(pre * hyp1f1(t, 1.5, c(0.0, PI * b * b / a))?)
}

/// `zeta_f(s, chi)` for `f = psi_R(a x^2 / 2 + b x)`.
pub fn zeta_real(a: f64, b: f64, s: C64, chi: ArchCharacter) -> Result<C64> {
    if a == 0.0 {
        return Err(Error::Domain("degenerate character, a = 0".into()));
    }
    let eval = |a: f64, b: f64, s: C64| match chi {
        ArchCharacter::Trivial => real_trivial_pos(a, b, s),
        ArchCharacter::RealSign => real_sign_pos(a, b, s),
        ArchCharacter::ComplexCn(_) => Err(Error::Domain("c_n is a character of C".into())),
    };
    if a > 0.0 {
        eval(a, b, s)
    } else {
        // f_{-a,-b} is the conjugate of f_{a,b}
        Ok(eval(-a, -b, s.conj())?.conj())
    }
}

/// `Z_{a,b}(s, n)` for `psi_C(a |z|^2 / 2 + b z)` at `|z|_C^s c_n(z)`.
pub fn zeta_complex_hermitian(a: f64, b: C64, s: C64, n: i64) -> Result<C64> {
    if a <= 0.0 {
        return Err(Error::Domain("hermitian form needs a > 0".into()));
    }
    // z -> conj z exchanges c_n and c_{-n} and b with conj b
    let (b, n) = if n < 0 { (b.conj(), -n) } else { (b, n) };
    let z = c(0.0, 2.0 * PI * b.norm_sqr() / a);
    let two_pi = 2.0 * PI;
    if n == 0 {
        return Ok(expi(-s * PI / 2.0) * pow_real(a, -s) * gamma(s)? * pow_real(two_pi, 1.0 - s) * hyp1f1(s, 1.0, z)?);
    }
    if b.norm() == 0.0 {
        return Ok(c(0.0, 0.0));
    }
    let nf = n as f64;
    let mut fact = 1.0;
    for j in 2..=n {
        fact *= j as f64;
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let lin = (b.conj() * (two_pi / a).sqrt()).powi(n as i32);
    Ok(sign
        * expi(-(s - nf / 2.0) * PI / 2.0)
        * pow_real(a, -s)
        * gamma(s + nf / 2.0)?
        * pow_real(two_pi, 1.0 - s)
        * lin
        / fact
        * hyp1f1(s + nf / 2.0, 1.0 + nf, z)?)
}

fn cn(a: C64, m: f64) -> C64 {
    C64::from_polar(1.0, m * a.arg())
}

/// `zeta_{a,b}(s, n)` for `psi_C(a z^2 / 2 + b z)`; supported for `b = 0` or `n = 0`.
pub fn zeta_complex_square(a: C64, b: C64, s: C64, n: i64) -> Result<C64> {
    if a.norm() == 0.0 {
        return Err(Error::Domain("degenerate character, a = 0".into()));
    }
    if n % 2 != 0 && b.norm() == 0.0 {
        return Ok(c(0.0, 0.0));
    }
    if b.norm() == 0.0 {
        let m = (n / 2) as f64;
        let q = n.unsigned_abs() as f64 / 4.0;
        let rot = c(0.0, -1.0).powi((n / 2).unsigned_abs() as i32);
        return Ok(pow_real(a.norm(), -s)
            * cn(a, -m)
            * rot
            * pow_real(PI, 1.0 - s)
            * gamma(s / 2.0 + q)?
            * rgamma(1.0 - s / 2.0 + q));
    }
    if n != 0 {
        return Err(Error::Domain("complex square form supports b != 0 only for n = 0".into()));
    }
    // rescale to a = 1: only beta^2 = b^2 / a and |beta|^2 enter
    let beta2 = b * b / a;
    let beta_abs2 = b.norm_sqr() / a.norm();
    let z1 = c(0.0, PI) * beta2;
    let z2 = c(0.0, PI) * beta2.conj();
    let t = (s + 1.0) / 2.0;
    let s1 = gamma(s / 2.0)? * rgamma(1.0 - s / 2.0) * hyp1f1(s / 2.0, 0.5, z1)? * hyp1f1(s / 2.0, 0.5, z2)?;
    let s2 = 4.0 * PI * beta_abs2 * gamma(t)? * rgamma(1.0 - t) * hyp1f1(t, 1.5, z1)? * hyp1f1(t, 1.5, z2)?;
    Ok(pow_real(a.norm(), -s) * pow_real(PI, 1.0 - s) * (s1 - s2))
}

/// Radial factor on `R^n` for `psi_R(a |x|^2 / 2 + <b, x>)`, `a > 0`.
pub fn zeta_rn_radial(n: u32, a: f64, bnorm: f64, s: C64) -> Result<C64> {
    if a <= 0.0 || n == 0 {
        return Err(Error::Domain("radial factor needs a > 0 and n >= 1".into()));
    }
    let half_n = n as f64 / 2.0;
    let area = PI.powf(half_n) * rgamma(c(half_n, 0.0)).re;
    let pre = expi(-s * PI / 4.0) * pow_real(a, -s / 2.0) * area * gamma(s / 2.0)? * pow_real(PI, -s / 2.0);
    if bnorm == 0.0 {
        return Ok(pre);
    }
    Ok(pre * hyp1f1(s / 2.0, half_n, c(0.0, PI * bnorm * bnorm / a))?)
}

/// Dispatch over all archimedean forms.
pub fn zeta_arch(f: &ArchSdc, chi: ArchCharacter, s: C64) -> Result<C64> {
    match (*f, chi) {
        (ArchSdc::Real { a, b }, ArchCharacter::Trivial | ArchCharacter::RealSign) => zeta_real(a, b, s, chi),
        (ArchSdc::ComplexHermitian { a, b }, ArchCharacter::Trivial) => zeta_complex_hermitian(a, b, s, 0),
        (ArchSdc::ComplexHermitian { a, b }, ArchCharacter::ComplexCn(n)) => zeta_complex_hermitian(a, b, s, n),
        (ArchSdc::ComplexSquare { a, b }, ArchCharacter::Trivial) => zeta_complex_square(a, b, s, 0),
        (ArchSdc::ComplexSquare { a, b }, ArchCharacter::ComplexCn(n)) => zeta_complex_square(a, b, s, n),
        (ArchSdc::RealRadial { n, a, bnorm }, ArchCharacter::Trivial) => zeta_rn_radial(n, a, bnorm, s),
        _ => Err(Error::Domain(format!("character {chi:?} does not match {f:?}"))),
    }
}

/// Weil index `gamma_f`.
pub fn weil_index_arch(f: &ArchSdc) -> Result<C64> {
    match *f {
        ArchSdc::Real { a, b } => {
            if a == 0.0 {
                return Err(Error::Domain("degenerate character, a = 0".into()));
            }
            Ok(C64::from_polar(1.0, -a.signum() * PI / 4.0 + PI * b * b / a))
        }
        ArchSdc::ComplexHermitian { a, b } => {
            if a <= 0.0 {
                return Err(Error::Domain("hermitian form needs a > 0".into()));
            }
            Ok(C64::from_polar(1.0, -PI / 2.0 + 2.0 * PI * b.norm_sqr() / a))
        }
        ArchSdc::ComplexSquare { a, b } => {
            if a.norm() == 0.0 {
                return Err(Error::Domain("degenerate character, a = 0".into()));
            }
            Ok(C64::from_polar(1.0, 2.0 * PI * (b * b / a).re))
        }
        ArchSdc::RealRadial { n, a, bnorm } => {
            if a == 0.0 {
                return Err(Error::Domain("degenerate character, a = 0".into()));
            }
            Ok(C64::from_polar(1.0, -(n as f64) * a.signum() * PI / 4.0 + PI * bnorm * bnorm / a))
        }
    }
}

/// Tate's `rho(s, chi)` on `R` from the Gamma quotient.
pub fn tate_rho_real(chi: ArchCharacter, s: C64) -> Result<C64> {
    let half = |t: C64| -> Result<C64> { Ok(gamma(t / 2.0)? * pow_real(PI, -t / 2.0)) };
    match chi {
        ArchCharacter::Trivial => Ok(half(s)? / half(1.0 - s)?),
        ArchCharacter::RealSign => Ok(c(0.0, 1.0) * half(s + 1.0)? / half(2.0 - s)?),
        ArchCharacter::ComplexCn(_) => Err(Error::Domain("c_n is a character of C".into())),
    }
}

/// Tate's `rho(s, c_n)` on `C`.
pub fn tate_rho_complex(n: i64, s: C64) -> Result<C64> {
    let m = n.unsigned_abs() as f64 / 2.0;
    let two_pi = 2.0 * PI;
    Ok(c(0.0, -1.0).powi(n.unsigned_abs() as i32) * pow_real(two_pi, 1.0 - 2.0 * s) * gamma(s + m)? * rgamma(1.0 - s + m))
}

/// `rho(s, chi)` on `R` read off the local functional equation of a reference character
/// (`psi(x^2/2)` for the trivial character, `psi(x^2/2 + x)` for the sign).
pub fn tate_rho_real_self_consistent(chi: ArchCharacter, s: C64) -> Result<C64> {
    let b = if chi == ArchCharacter::RealSign { 1.0 } else { 0.0 };
    let f = ArchSdc::Real { a: 1.0, b };
    let lhs = zeta_real(1.0, b, s, chi)?;
    let rhs = weil_index_arch(&f)? * zeta_real(1.0, b, 1.0 - s.conj(), chi)?.conj();
    Ok(lhs / rhs)
}

/// `|lhs - rhs| / max(|lhs|, |rhs|)` for the local functional equation on `R`.
pub fn local_fe_residual_real(a: f64, b: f64, chi: ArchCharacter, s: C64) -> Result<f64> {
    let f = ArchSdc::Real { a, b };
    let lhs = zeta_real(a, b, s, chi)?;
    let sign = if chi == ArchCharacter::RealSign { a.signum() } else { 1.0 };
    let rhs = weil_index_arch(&f)? * tate_rho_real(chi, s)? * pow_real(a.abs(), 0.5 - s) * sign * zeta_real(a, b, 1.0 - s.conj(), chi)?.conj();
    let scale = lhs.norm().max(rhs.norm());
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok((lhs - rhs).norm() / scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_one() {
        let z = zeta_real(1.0, 0.0, c(1.0, 0.0), ArchCharacter::Trivial).unwrap();
        assert!((z - C64::from_polar(1.0, -PI / 4.0)).norm() < 1e-14);
        let h = zeta_complex_hermitian(1.0, c(0.0, 0.0), c(1.0, 0.0), 0).unwrap();
        assert!((h - c(0.0, -1.0)).norm() < 1e-14);
        assert_eq!(zeta_real(2.0, 0.0, c(0.3, 1.0), ArchCharacter::RealSign).unwrap(), c(0.0, 0.0));
        assert_eq!(zeta_complex_hermitian(2.0, c(0.0, 0.0), c(0.3, 1.0), 2).unwrap(), c(0.0, 0.0));
        assert_eq!(zeta_complex_square(c(1.0, 1.0), c(0.0, 0.0), c(0.3, 1.0), 3).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn complex_square_vanishes_at_two() {
        assert!(zeta_complex_square(c(1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0), 0).unwrap().norm() < 1e-15);
    }

    #[test]
    fn weil_index_examples() {
        let g = weil_index_arch(&ArchSdc::Real { a: 1.0, b: 1.0 }).unwrap();
        assert!((g + C64::from_polar(1.0, -PI / 4.0)).norm() < 1e-14);
    }

    #[test]
    fn value_at_one_is_weil_index_over_root() {
        for f in [
            ArchSdc::Real { a: 2.0, b: 0.5 },
            ArchSdc::Real { a: -0.7, b: 1.1 },
            ArchSdc::ComplexHermitian { a: 1.5, b: c(0.3, -0.4) },
            ArchSdc::ComplexSquare { a: c(0.8, 0.6), b: c(0.2, 0.5) },
        ] {
            let z = zeta_arch(&f, ArchCharacter::Trivial, c(1.0, 0.0)).unwrap();
            let modulus = match f {
                ArchSdc::Real { a, .. } => a.abs(),
                ArchSdc::ComplexHermitian { a, .. } => a * a,
                ArchSdc::ComplexSquare { a, .. } => a.norm_sqr(),
                ArchSdc::RealRadial { a, n, .. } => a.abs().powi(n as i32),
            };
            let want = weil_index_arch(&f).unwrap() / modulus.sqrt();
            assert!((z - want).norm() < 1e-12, "{f:?}: {z} vs {want}");
        }
    }

    #[test]
    fn rho_real_routes_agree() {
        for chi in [ArchCharacter::Trivial, ArchCharacter::RealSign] {
            for s in [c(0.3, 0.0), c(0.5, 2.0), c(0.8, -4.0)] {
                let a = tate_rho_real(chi, s).unwrap();
                let b = tate_rho_real_self_consistent(chi, s).unwrap();
                assert!((a - b).norm() < 1e-10 * a.norm(), "{chi:?} {s}: {a} vs {b}");
            }
        }
        let half = tate_rho_real(ArchCharacter::Trivial, c(0.5, 0.0)).unwrap();
        assert!((half - 1.0).norm() < 1e-14);
        assert!((tate_rho_complex(0, c(0.5, 0.0)).unwrap().norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn radial_collapses_to_real() {
        for s in [c(0.4, 0.0), c(1.2, 3.0)] {
            let r = zeta_rn_radial(1, 1.3, 0.7, s).unwrap();
            let z = zeta_real(1.3, 0.7, s, ArchCharacter::Trivial).unwrap();
            assert!((r - z).norm() < 1e-13 * z.norm());
        }
    }
}

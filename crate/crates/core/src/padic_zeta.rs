//! Closed forms for local zeta integrals of second degree characters over `Q_p`
//! and radial ones over `Q_p^n`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{oracle_padic_mellin, PadicOracleOptions};
use crate::padic::{psi_p, unit_average, DirichletCharData, PAdicRational, PadicCharacter, PadicSdc};
use crate::C64;

const PROFILE_TOL: f64 = 1e-11;

/// Shape of the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FactorKind {
    /// `1 / (1 - chi(p) p^{-s})`.
    RationalInQs,
    /// Two exponential terms, zeros on a vertical line.
    TwoTermExp,
    /// The 2-adic factor of `psi_2(x^2/2)`.
    Qp2Special,
    /// Radial factor on `Q_p^n`.
    VectorTheta,
    /// Identically zero.
    Vanishing,
}

/// `theta_f = 1_{p^k Z_p} + c |y|^{-n} 1_{v(y) <= -k'}` with `k' = max(k + delta, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaProfile {
    pub k: u32,
    pub delta: u32,
    pub gamma: C64,
    /// `gamma * q^{n delta / 2}`.
    pub c: C64,
}

impl ThetaProfile {
    pub fn k_prime(&self) -> u32 {
        (self.k + self.delta).max(1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum FactorBody {
    Unramified { profile: ThetaProfile },
    Ramified { k: u32, delta: u32, theta_k: C64, theta_neg: C64 },
    Vanishing,
}

/// Polynomial in `X = q^{s - center} / chi(p)` whose roots give all zeros.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroPolynomial {
    /// Ascending coefficients.
    pub coeffs: Vec<C64>,
    pub p: u64,
    pub center: f64,
    pub twist: C64,
}

impl ZeroPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    /// The zero `s` with imaginary part in `[0, 2 pi / ln p)` belonging to root `x`.
    pub fn s_of_root(&self, x: C64) -> C64 {
        let lp = (self.p as f64).ln();
        let mut s = (x * self.twist).ln() / lp + self.center;
        let period = 2.0 * PI / lp;
        s.im = s.im.rem_euclid(period);
        s
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / (self.p as f64).ln()
    }
}

/// Local factor at a finite place.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PadicFactor {
    pub p: u64,
    /// Dimension of the underlying space (`1` for `Q_p`).
    pub dim: u32,
    pub kind: FactorKind,
    /// `f` was replaced by `x -> f(p^shift x)`.
    pub shift: i64,
    pub at_p: C64,
    pub body: FactorBody,
}

impl PadicFactor {
    fn w(&self, s: C64) -> C64 {
        self.at_p * (-s * (self.p as f64).ln()).exp()
    }

    pub fn eval(&self, s: C64) -> Result<C64> {
        let w = self.w(s);
        let one = C64::new(1.0, 0.0);
        let scale = w.powi(self.shift as i32);
        let body = match &self.body {
            FactorBody::Vanishing => return Ok(C64::new(0.0, 0.0)),
            FactorBody::Unramified { profile } => {
                if (one - w).norm() < 1e-14 {
                    return Err(Error::Pole(format!("local factor at p = {} has a pole at {s}", self.p)));
                }
                let qn = (self.p as f64).powi(self.dim as i32);
                let u = one / (w * qn);
                let first = (one - u) * w.powi(profile.k as i32) / (one - w);
                let second = profile.c * u.powi(profile.k_prime() as i32);
                (first + second) / (1.0 - 1.0 / qn)
            }
            FactorBody::Ramified { k, delta, theta_k, theta_neg } => {
                theta_k * w.powi(*k as i32) + theta_neg * w.powi(-((k + delta) as i32))
            }
        };
        Ok(scale * body)
    }

    /// `(1 - chi(p) p^{-s}) zeta_f(s)` for unramified factors, `zeta_f(s)` otherwise.
    /// Entire in `s`; its zeros are the zeros of the factor.
    pub fn eval_corrected(&self, s: C64) -> Result<C64> {
        let w = self.w(s);
        let one = C64::new(1.0, 0.0);
        match &self.body {
            FactorBody::Unramified { profile } => {
                let qn = (self.p as f64).powi(self.dim as i32);
                let u = one / (w * qn);
                let num = (one - u) * w.powi(profile.k as i32) + profile.c * u.powi(profile.k_prime() as i32) * (one - w);
                Ok(w.powi(self.shift as i32) * num / (1.0 - 1.0 / qn))
            }
            _ => self.eval(s),
        }
    }

    /// Whether the factor carries the `(1 - chi(p) p^{-s})` correction.
    pub fn is_unramified(&self) -> bool {
        matches!(self.body, FactorBody::Unramified { .. })
    }

    pub fn gamma(&self) -> Option<C64> {
        match &self.body {
            FactorBody::Unramified { profile } => Some(profile.gamma),
            _ => None,
        }
    }

    /// Root-of-unity coefficient of a ramified two-term factor.
    pub fn omega(&self) -> Option<C64> {
        match &self.body {
            FactorBody::Ramified { k, delta, theta_k, theta_neg } if 2 * k + delta > 0 => {
                let q = self.p as f64;
                Some(theta_neg * q.powf(*k as f64 + *delta as f64 / 2.0) / theta_k)
            }
            _ => None,
        }
    }

    /// Polynomial describing the zeros, `None` when the factor has none.
    pub fn zero_polynomial(&self) -> Option<ZeroPolynomial> {
        let qn_half = (self.p as f64).powf(self.dim as f64 / 2.0);
        let coeffs = match &self.body {
            FactorBody::Vanishing => return None,
            FactorBody::Unramified { profile } => {
                let n = (2 * profile.k + profile.delta) as usize;
                if n == 0 {
                    return None;
                }
                let g = profile.gamma;
                let mut c = vec![C64::new(0.0, 0.0); n + 1];
                c[0] += 1.0;
                c[1] -= 1.0 / qn_half;
                c[n] += g;
                c[n - 1] -= g / qn_half;
                c
            }
            FactorBody::Ramified { k, delta, theta_k, theta_neg } => {
                let n = (2 * k + delta) as usize;
                if n == 0 {
                    return None;
                }
                let q = self.p as f64;
                let mut c = vec![C64::new(0.0, 0.0); n + 1];
                c[0] = *theta_k;
                c[n] = theta_neg * q.powf(*k as f64 + *delta as f64 / 2.0);
                c
            }
        };
        Some(ZeroPolynomial { coeffs, p: self.p, center: self.dim as f64 / 2.0, twist: self.at_p })
    }
}

/// Rescaling exponent bringing `v(a)` to `target` or `target + 1`.
fn normalizing_shift(f: &PadicSdc, target: i64) -> i64 {
    let va = f.a.valuation().expect("a is non-zero");
    (target - va).div_euclid(2) + (target - va).rem_euclid(2)
}

/// Unramified profile of `f`, which must satisfy `v(a) in {0, 1}`.
pub fn theta_profile(f: &PadicSdc) -> Result<ThetaProfile> {
    let p = f.p();
    let va = f.a.valuation().expect("a is non-zero");
    if !(0..=1).contains(&va) {
        return Err(Error::Domain(format!("profile needs v(a) in {{0, 1}}, got {va}")));
    }
    let delta = va as u32;
    let k = f.triviality_index(0)? as u32;
    let kp = (k + delta).max(1) as i64;
    let q = p as f64;
    let theta = |j: i64| f.theta(&PAdicRational::p_power(p, j));
    let c = theta(-kp)? * q.powi(kp as i32);
    let gamma = c / q.powf(delta as f64 / 2.0);
    // confirm the two-piece shape on neighbouring shells
    for j in (-kp - 1)..=(k as i64 + 1) {
        let want = if j >= k as i64 {
            C64::new(1.0, 0.0)
        } else if j <= -kp {
            c * q.powi(j as i32)
        } else {
            C64::new(0.0, 0.0)
        };
        if (theta(j)? - want).norm() > PROFILE_TOL {
            return Err(Error::Precision(format!("theta profile mismatch at shell {j}")));
        }
    }
    if (gamma.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::Precision(format!("Weil index {gamma} is not of modulus one")));
    }
    Ok(ThetaProfile { k, delta, gamma, c })
}

/// Closed form of `zeta_f(s, chi)` over `Q_p`.
pub fn local_factor(f: &PadicSdc, chi: &PadicCharacter) -> Result<PadicFactor> {
    match &chi.unit {
        None => local_factor_unramified(f, chi.at_p),
        Some(c) => local_factor_ramified(f, c, chi.at_p),
    }
}

/// Unramified character `chi(p)^{v(x)}`.
pub fn local_factor_unramified(f: &PadicSdc, at_p: C64) -> Result<PadicFactor> {
    let p = f.p();
    let shift = normalizing_shift(f, 0);
    let g = f.scaled(&PAdicRational::p_power(p, shift));
    let profile = theta_profile(&g)?;
    let kind = if profile.k == 0 && profile.delta == 0 {
        FactorKind::RationalInQs
    } else if p == 2 && profile.delta == 0 && g.b.is_zero() && is_one_mod_8(&g.a) {
        FactorKind::Qp2Special
    } else {
        FactorKind::TwoTermExp
    };
    Ok(PadicFactor { p, dim: 1, kind, shift, at_p, body: FactorBody::Unramified { profile } })
}

fn is_one_mod_8(a: &PAdicRational) -> bool {
    a.residue(3).map(|r| r == 1.into()).unwrap_or(false)
}

/// Ramified character of odd conductor, `chi(p) = at_p`.
pub fn local_factor_ramified(f: &PadicSdc, chi: &DirichletCharData, at_p: C64) -> Result<PadicFactor> {
    let p = f.p();
    if p == 2 || chi.p != p {
        return Err(Error::Domain("ramified factors need an odd prime matching the character".into()));
    }
    let n = chi.conductor_level() as i64;
    if n == 0 {
        return local_factor_unramified(f, at_p);
    }
    let shift = normalizing_shift(f, -n);
    let g = f.scaled(&PAdicRational::p_power(p, shift));
    let delta = (g.a.valuation().expect("non-zero") + n) as u32;
    let theta = |j: i64| unit_average(&g, Some(chi), &PAdicRational::p_power(p, j), 0);
    // theta vanishes below the additive-triviality shell and above it plus one;
    // when that shell is negative the support sits on shell 0, so scan j >= 0
    let top = (g.triviality_index(-n)? - n).max(0) + 2;
    let vanishing = PadicFactor { p, dim: 1, kind: FactorKind::Vanishing, shift, at_p, body: FactorBody::Vanishing };
    let mut support = Vec::new();
    for j in 0..=top {
        if theta(j)?.norm() > PROFILE_TOL {
            support.push(j);
        }
    }
    let k = match support.as_slice() {
        [] => return Ok(vanishing),
        [k] => *k,
        _ => return Err(Error::Precision(format!("support on several shells {support:?}"))),
    };
    let neg = -k - delta as i64;
    let theta_k = theta(k)?;
    // with 2k + delta = 0 both terms sit on the same shell
    let theta_neg = if neg == k { C64::new(0.0, 0.0) } else { theta(neg)? };
    for j in [k - 1, k + 1, k + 2, neg - 1, neg - 2, neg + 1] {
        if j == k || j == neg {
            continue;
        }
        if theta(j)?.norm() > PROFILE_TOL {
            return Err(Error::Precision(format!("unexpected support on shell {j}")));
        }
    }
    if theta_k.norm() < PROFILE_TOL && theta_neg.norm() < PROFILE_TOL {
        return Ok(vanishing);
    }
    if neg != k && (theta_k.norm() < PROFILE_TOL || theta_neg.norm() < PROFILE_TOL) {
        return Err(Error::Precision("only one of the two shells is supported".into()));
    }
    Ok(PadicFactor {
        p,
        dim: 1,
        kind: FactorKind::TwoTermExp,
        shift,
        at_p,
        body: FactorBody::Ramified { k: k as u32, delta, theta_k, theta_neg },
    })
}

/// `zeta_f(s)` for `f = psi_2(x^2/2)`.
pub fn qp2_special(s: C64) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let two_s = (s * 2f64.ln()).exp();
    if (one - one / two_s).norm() < 1e-14 {
        return Err(Error::Pole(format!("2-adic factor at {s}")));
    }
    let gamma = C64::from_polar(1.0, PI / 4.0);
    let num = 2.0 / two_s * (one - two_s / 2.0) + gamma * two_s * (one - one / two_s);
    Ok(num / (one - one / two_s))
}

/// Radial factor on `Q_p^n` for `f(x) = prod_i f_i(x_i)`, all `v(a_i)` equal.
pub fn padic_vector_factor(fs: &[PadicSdc]) -> Result<PadicFactor> {
    let first = fs.first().ok_or_else(|| Error::Input("empty coordinate list".into()))?;
    let p = first.p();
    let va = first.a.valuation().expect("non-zero");
    if fs.iter().any(|f| f.p() != p || f.a.valuation() != Some(va)) {
        return Err(Error::Domain("coordinates need a common prime and equal |a|".into()));
    }
    let shift = normalizing_shift(first, 0);
    let c = PAdicRational::p_power(p, shift);
    let profiles: Vec<ThetaProfile> = fs.iter().map(|f| theta_profile(&f.scaled(&c))).collect::<Result<_>>()?;
    let n = fs.len() as u32;
    let k = profiles.iter().map(|pr| pr.k).max().unwrap_or(0);
    let delta = profiles[0].delta;
    let gamma: C64 = profiles.iter().map(|pr| pr.gamma).product();
    let cc = gamma * (p as f64).powf((n * delta) as f64 / 2.0);
    let profile = ThetaProfile { k, delta, gamma, c: cc };
    let kind = if k == 0 && delta == 0 { FactorKind::RationalInQs } else { FactorKind::VectorTheta };
    Ok(PadicFactor {
        p,
        dim: n,
        kind,
        shift,
        at_p: C64::new(1.0, 0.0),
        body: FactorBody::Unramified { profile },
    })
}

/// Normalized Gauss sum `p^{-n/2} sum_e chi(e) psi_p(e / p^n)` at the conductor.
pub fn rho0_gauss_sum(chi: &DirichletCharData) -> Result<C64> {
    let n = chi.conductor_level();
    if n == 0 {
        return Err(Error::Domain("root number needs a ramified character".into()));
    }
    let p = chi.p;
    let m = p.pow(n);
    let mut acc = crate::specfun::CompensatedSum::default();
    for e in 1..m {
        if e % p == 0 {
            continue;
        }
        acc.add(chi.value(e as i64) * psi_p(&PAdicRational::new(p, e as i64, m as i64)?));
    }
    Ok(acc.value() / (m as f64).sqrt())
}

/// Tate's local factor `rho(s, chi)` for the standard character of `Q_p`.
pub fn tate_rho_padic(p: u64, chi: &PadicCharacter, s: C64) -> Result<C64> {
    let q = p as f64;
    let one = C64::new(1.0, 0.0);
    match &chi.unit {
        None => {
            let w = chi.at_p * (-s * q.ln()).exp();
            let u = one / (q * w);
            if (one - w).norm() < 1e-14 {
                return Err(Error::Pole(format!("rho at {s}")));
            }
            Ok((one - u) / (one - w))
        }
        Some(c) => {
            let n = c.conductor_level() as f64;
            // chi(-p^{-n}) |p^{-n}|^{s - 1/2} rho0
            let sign = c.value(-1);
            Ok(sign * chi.at_p.powf(-n) * ((s - 0.5) * n * q.ln()).exp() * rho0_gauss_sum(c)?)
        }
    }
}

/// Weil index of `f`, read off `zeta_f(1)` from the residue-sum oracle.
pub fn weil_index_padic(f: &PadicSdc) -> Result<C64> {
    let q = f.p() as f64;
    let z1 = oracle_padic_mellin(f, &PadicCharacter::trivial(), C64::new(1.0, 0.0), PadicOracleOptions::default())?;
    Ok(z1.value * (1.0 - 1.0 / q) * f.a.abs_p().sqrt())
}

//! Adelic assembly over `Q`.
//!
//! `Xi_f(s, chi) = zeta_inf * prod_{p in S, p not | q} (1 - chi(p) p^{-s}) zeta_p
//!                 * prod_{p | q} zeta_p * L(s, chi)`.
//!
//! Outside `S` the character is `psi_p(x^2/2)` and contributes its Euler factor
//! through `L`. The idele class character attached to a primitive `chi` mod `q`
//! has local components `sign^delta` at infinity, `chi(p)^{v(x)}` at `p` not
//! dividing `q`, and at `p | q` the conjugate `p`-component of `chi` on units
//! together with `prod_{p' != p} chi_{p'}(p)` on `p`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::arch_zeta::{weil_index_arch, zeta_real, ArchCharacter, ArchSdc};
use crate::error::{Error, Result};
use crate::padic::{DirichletCharData, PAdicRational, PadicCharacter, PadicSdc};
use crate::padic_zeta::{local_factor, weil_index_padic, PadicFactor};
use crate::specfun::{completed_xi, dirichlet_l, DirichletCharacter};
use crate::zeros::{chunked_winding, line_zeros, sort_reports, LineScan, Rect, ZeroReport};
use crate::C64;

/// Place of `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Place {
    Infinite,
    Finite(u64),
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

/// Factorizable second degree character together with a Dirichlet character.
#[derive(Debug, Clone, Serialize)]
pub struct GlobalSpec {
    /// `(a, b)` of `psi_R(a x^2 / 2 + b x)`.
    pub arch: (f64, f64),
    /// Characters at the finite places of `S`, keyed by prime.
    pub finite: BTreeMap<u64, PadicSdc>,
    /// Prime-power components of `chi`, one per odd prime dividing `q`, each primitive.
    pub chi: Vec<DirichletCharData>,
}

impl GlobalSpec {
    /// Builds a spec; `2` and the primes dividing `q` are added to `S` with `psi_p(x^2/2)`
    /// when absent.
    pub fn new(arch: (f64, f64), finite: Vec<PadicSdc>, chi: Vec<DirichletCharData>) -> Result<Self> {
        if arch.0 == 0.0 {
            return Err(Error::Domain("degenerate character at infinity, a = 0".into()));
        }
        let mut map = BTreeMap::new();
        for f in finite {
            if map.insert(f.p(), f).is_some() {
                return Err(Error::Input("a prime appears twice in S".into()));
            }
        }
        let mut seen = Vec::new();
        for c in &chi {
            if seen.contains(&c.p) {
                return Err(Error::Input(format!("two components of chi at p = {}", c.p)));
            }
            seen.push(c.p);
            if c.conductor_level() != c.n || c.n == 0 {
                return Err(Error::Domain(format!("component of chi at p = {} is not primitive", c.p)));
            }
        }
        for p in std::iter::once(2).chain(seen.iter().copied()) {
            map.entry(p).or_insert_with(|| standard(p));
        }
        Ok(Self { arch, finite: map, chi })
    }

    /// `{inf: psi(x^2/2), 2: psi_2(x^2/2)}` with trivial `chi`.
    pub fn reference() -> Self {
        Self::new((1.0, 0.0), vec![], vec![]).expect("valid reference spec")
    }

    pub fn modulus(&self) -> u64 {
        self.chi.iter().map(|c| c.modulus()).product()
    }

    /// `chi` as a Dirichlet character mod `q`.
    pub fn dirichlet(&self) -> DirichletCharacter {
        self.chi
            .iter()
            .fold(DirichletCharacter::trivial(1), |acc, c| acc.product(&c.to_dirichlet()))
    }

    fn chi_value(&self, n: i64) -> C64 {
        self.chi.iter().map(|c| c.value(n)).product()
    }

    pub fn is_odd(&self) -> bool {
        self.chi_value(-1).re < 0.0
    }

    pub fn places(&self) -> Vec<Place> {
        std::iter::once(Place::Infinite).chain(self.finite.keys().map(|&p| Place::Finite(p))).collect()
    }

    /// Whether the local component at `p` is ramified.
    pub fn ramified_at(&self, p: u64) -> bool {
        self.chi.iter().any(|c| c.p == p)
    }

    pub fn arch_character(&self) -> ArchCharacter {
        if self.is_odd() {
            ArchCharacter::RealSign
        } else {
            ArchCharacter::Trivial
        }
    }

    /// Local component of the idele class character at `p`.
    pub fn local_character(&self, p: u64) -> PadicCharacter {
        match self.chi.iter().find(|c| c.p == p) {
            Some(c) => {
                let at_p = self.chi.iter().filter(|o| o.p != p).map(|o| o.value(p as i64)).product();
                PadicCharacter::ramified(c.conj()).with_at_p(at_p)
            }
            None => PadicCharacter::unramified(self.chi_value(p as i64)),
        }
    }

    /// Closed-form local factors at the finite places of `S`.
    pub fn local_factors(&self) -> Result<BTreeMap<u64, PadicFactor>> {
        self.finite.iter().map(|(&p, f)| Ok((p, local_factor(f, &self.local_character(p))?))).collect()
    }

    /// `gamma_f = prod_v gamma_{f_v}`.
    pub fn weil_index(&self) -> Result<C64> {
        let mut g = weil_index_arch(&ArchSdc::Real { a: self.arch.0, b: self.arch.1 })?;
        for f in self.finite.values() {
            g *= weil_index_padic(f)?;
        }
        Ok(g)
    }

    /// Idele modulus `|a|` and `chi(a)` for the idele `(a_v)`.
    pub fn idele_data(&self) -> Result<(f64, C64)> {
        let a_inf = self.arch.0;
        let mut modulus = a_inf.abs();
        let mut value = if self.is_odd() && a_inf < 0.0 { C64::new(-1.0, 0.0) } else { C64::new(1.0, 0.0) };
        for (&p, f) in &self.finite {
            modulus *= f.a.abs_p();
            let v = f.a.valuation().expect("non-zero");
            let w = self.local_character(p);
            let level = w.conductor_level();
            let u = if level == 0 {
                1
            } else {
                let r = f.a.unit_part().residue(level)?;
                i64::try_from(r).map_err(|_| Error::Input("unit residue overflow".into()))?
            };
            value *= w.value(v, u);
        }
        Ok((modulus, value))
    }
}

fn standard(p: u64) -> PadicSdc {
    PadicSdc::new(PAdicRational::one(p), PAdicRational::zero(p)).expect("a = 1 is non-degenerate")
}

/// Values of the pieces of `Xi_f` at one point.
#[derive(Debug, Clone, Serialize)]
pub struct GlobalFactorization {
    pub s: C64,
    /// `zeta_{f_v}(s, chi_v)`; at `p` in `S` not dividing `q` the Euler factor is removed.
    pub local: Vec<(Place, C64)>,
    /// Primes whose `(1 - chi(p) p^{-s})` correction is folded into `local`.
    pub corrected: Vec<u64>,
    pub l_value: C64,
    pub value: C64,
}

/// `Xi_f(s, chi)` with the local factors built once.
#[derive(Debug, Clone)]
pub struct XiF {
    pub spec: GlobalSpec,
    pub factors: BTreeMap<u64, PadicFactor>,
    chi: DirichletCharacter,
    chi_inf: ArchCharacter,
}

impl XiF {
    pub fn new(spec: &GlobalSpec) -> Result<Self> {
        Ok(Self { factors: spec.local_factors()?, chi: spec.dirichlet(), chi_inf: spec.arch_character(), spec: spec.clone() })
    }

    pub fn arch_factor(&self, s: C64) -> Result<C64> {
        zeta_real(self.spec.arch.0, self.spec.arch.1, s, self.chi_inf)
    }

    /// Local factor at `p`, with the Euler factor removed when `p` does not divide `q`.
    pub fn finite_factor(&self, p: u64, s: C64) -> Result<C64> {
        let lf = self.factors.get(&p).ok_or_else(|| Error::Input(format!("{p} is not in S")))?;
        if self.spec.ramified_at(p) {
            lf.eval(s)
        } else {
            lf.eval_corrected(s)
        }
    }

    pub fn factorization(&self, s: C64) -> Result<GlobalFactorization> {
        let mut local = vec![(Place::Infinite, self.arch_factor(s)?)];
        let mut corrected = Vec::new();
        for &p in self.factors.keys() {
            if !self.spec.ramified_at(p) {
                corrected.push(p);
            }
            local.push((Place::Finite(p), self.finite_factor(p, s)?));
        }
        let l_value = dirichlet_l(s, &self.chi)?;
        let value = local.iter().map(|(_, v)| *v).product::<C64>() * l_value;
        Ok(GlobalFactorization { s, local, corrected, l_value, value })
    }

    pub fn eval(&self, s: C64) -> Result<C64> {
        let mut v = self.arch_factor(s)?;
        if v.norm() == 0.0 {
            return Ok(v);
        }
        for &p in self.factors.keys() {
            v *= self.finite_factor(p, s)?;
        }
        Ok(v * dirichlet_l(s, &self.chi)?)
    }
}

/// `Xi_f(s, chi)` through `L(s, chi)`, with its breakdown.
pub fn assemble_xi_f(spec: &GlobalSpec, s: C64) -> Result<GlobalFactorization> {
    XiF::new(spec)?.factorization(s)
}

pub fn xi_f(spec: &GlobalSpec, s: C64) -> Result<C64> {
    XiF::new(spec)?.eval(s)
}

/// Primes up to `n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

/// Direct product over places for `Re s > 1`: the local factors on `S`, and Euler
/// factors for the primes up to `prime_bound` outside `S`.
///
/// Returns the value and a bound for the relative truncation error.
pub fn xi_f_euler_product(spec: &GlobalSpec, s: C64, prime_bound: u64) -> Result<(C64, f64)> {
    if s.re <= 1.0 {
        return Err(Error::Domain("Euler product needs Re s > 1".into()));
    }
    let xi = XiF::new(spec)?;
    let mut value = xi.arch_factor(s)?;
    for lf in xi.factors.values() {
        value *= lf.eval(s)?;
    }
    let chi = spec.dirichlet();
    let one = C64::new(1.0, 0.0);
    for p in primes_up_to(prime_bound) {
        if spec.finite.contains_key(&p) {
            continue;
        }
        value /= one - chi.value(p as i64) * (-s * (p as f64).ln()).exp();
    }
    // sum_{p > P} p^{-sigma} by partial summation with pi(x) < 1.26 x / ln x
    let sigma = s.re;
    let pb = prime_bound as f64;
    let tail = 1.26 * sigma / pb.ln() * pb.powf(1.0 - sigma) / (sigma - 1.0);
    let log_tail = tail / (1.0 - pb.powf(-sigma));
    Ok((value, log_tail.exp_m1()))
}

/// `e^{-s pi i / 4} (2^{1-s}(1 - 2^{s-1}) + e^{i pi / 4} 2^s (1 - 2^{-s})) Xi(s)`.
pub fn xi_f_reference(s: C64) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let ln2 = 2f64.ln();
    let two_s = (s * ln2).exp();
    let two_adic = 2.0 / two_s * (one - two_s / 2.0) + C64::from_polar(1.0, PI / 4.0) * two_s * (one - one / two_s);
    Ok((C64::new(0.0, -PI / 4.0) * s).exp() * two_adic * completed_xi(s)?)
}

/// `|Xi_f(s) - gamma_f |a|^{1/2 - s} conj(chi(a)) conj(Xi_f(1 - conj s))| / (1 + |Xi_f(s)|)`.
pub fn global_fe_residual(spec: &GlobalSpec, s: C64) -> Result<f64> {
    let xi = XiF::new(spec)?;
    let lhs = xi.eval(s)?;
    let dual = xi.eval(C64::new(1.0, 0.0) - s.conj())?;
    let (modulus, chi_a) = spec.idele_data()?;
    let rhs = spec.weil_index()? * ((0.5 - s) * modulus.ln()).exp() * chi_a.conj() * dual.conj();
    Ok((lhs - rhs).norm() / (1.0 + lhs.norm()))
}

/// Attribution of a zero of `Xi_f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ZeroClass {
    /// Zero of the local factor at this place.
    Local(Place),
    /// Zero of `L(s, chi)`.
    Global,
    /// Root of a removed Euler factor `1 - chi(p) p^{-s}`; not a zero of `Xi_f`.
    Canceled(u64),
}

impl ZeroClass {
    pub fn label(&self) -> &'static str {
        match self {
            ZeroClass::Local(_) => "local",
            ZeroClass::Global => "global",
            ZeroClass::Canceled(_) => "canceled",
        }
    }

    pub fn place(&self) -> Option<Place> {
        match self {
            ZeroClass::Local(v) => Some(*v),
            ZeroClass::Canceled(p) => Some(Place::Finite(*p)),
            ZeroClass::Global => None,
        }
    }
}

/// A zero is attributed to `h` when one Newton step moves it by at most this much.
pub const NEWTON_DISTANCE: f64 = 1e-6;

fn newton_distance<F>(h: &F, z: C64) -> Result<f64>
where
    F: Fn(C64) -> Result<C64>,
{
    let v = h(z)?;
    if v.norm() == 0.0 {
        return Ok(0.0);
    }
    let d = 1e-6 * (1.0 + z.norm());
    let dv = (h(z + d)? - h(z - d)?) / (2.0 * d);
    Ok(if dv.norm() == 0.0 { f64::INFINITY } else { (v / dv).norm() })
}

/// Classifies a certified zero of `Xi_f`.
pub fn classify_zero(z: &ZeroReport, spec: &GlobalSpec) -> Result<ZeroClass> {
    classify_with(z, &XiF::new(spec)?)
}

fn classify_with(z: &ZeroReport, xi: &XiF) -> Result<ZeroClass> {
    let spec = &xi.spec;
    if !z.certified {
        return Err(Error::Uncertified(format!("{}", z.location)));
    }
    let s = z.location;
    let one = C64::new(1.0, 0.0);
    for &p in spec.finite.keys() {
        if spec.ramified_at(p) {
            continue;
        }
        let w = spec.local_character(p).at_p * (-s * (p as f64).ln()).exp();
        if (one - w).norm() < 1e-8 {
            return Ok(ZeroClass::Canceled(p));
        }
    }
    if newton_distance(&|t| xi.arch_factor(t), s)? <= NEWTON_DISTANCE {
        return Ok(ZeroClass::Local(Place::Infinite));
    }
    for &p in xi.factors.keys() {
        if newton_distance(&|t| xi.finite_factor(p, t), s)? <= NEWTON_DISTANCE {
            return Ok(ZeroClass::Local(Place::Finite(p)));
        }
    }
    Ok(ZeroClass::Global)
}

/// A located, certified and classified zero.
#[derive(Debug, Clone, Serialize)]
pub struct ClassifiedZero {
    pub report: ZeroReport,
    pub class: ZeroClass,
}

/// Zeros of `Xi_f` in a box around the critical line.
#[derive(Debug, Clone, Serialize)]
pub struct GlobalScan {
    pub rect: Rect,
    /// Winding number of `Xi_f` around `rect`.
    pub winding: i64,
    /// Zeros found on `Re s = 1/2`, counted with multiplicity in `line_count`.
    pub zeros: Vec<ClassifiedZero>,
    pub line_count: i64,
}

/// Scans `[re_min, re_max] x [t0, t1]` for zeros of `Xi_f`: a line scan on `Re s = 1/2`
/// and an independent winding count of the box. The box edges are split into
/// pieces of height at most `chunk`.
pub fn scan_zeros(spec: &GlobalSpec, re_min: f64, re_max: f64, t0: f64, t1: f64, chunk: f64) -> Result<GlobalScan> {
    scan_zeros_with(spec, &Rect::new(re_min, re_max, t0, t1), chunk, LineScan::default())
}

/// [`scan_zeros`] with explicit line-scan settings.
pub fn scan_zeros_with(spec: &GlobalSpec, rect: &Rect, chunk: f64, scan: LineScan) -> Result<GlobalScan> {
    let (t0, t1) = (rect.im_min, rect.im_max);
    let xi = XiF::new(spec)?;
    let f = |s: C64| xi.eval(s);
    let mut zeros = Vec::new();
    let mut line_count = 0;
    for z in line_zeros(&f, 0.5, t0, t1, scan)? {
        if z.location.im < t0 || z.location.im > t1 {
            continue;
        }
        let class = classify_with(&z, &xi)?;
        if let ZeroClass::Canceled(_) = class {
            continue;
        }
        line_count += z.multiplicity as i64;
        zeros.push(ClassifiedZero { report: z, class });
    }
    let mut reports: Vec<ZeroReport> = zeros.iter().map(|z| z.report.clone()).collect();
    sort_reports(&mut reports);
    zeros.sort_by(|x, y| x.report.location.im.total_cmp(&y.report.location.im));
    let winding = chunked_winding(&f, rect, chunk, &reports)?;
    Ok(GlobalScan { rect: *rect, winding, zeros, line_count })
}

/// Zeros of the completed Riemann zeta function on the critical line.
pub fn xi_line_zeros(t0: f64, t1: f64) -> Result<Vec<ZeroReport>> {
    line_zeros(&completed_xi, 0.5, t0, t1, LineScan::default())
}

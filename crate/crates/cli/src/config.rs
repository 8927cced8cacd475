//! Job descriptions. Every job serializes to a canonical JSON form that can be
//! fed back through `--config`.

use serde::{Deserialize, Serialize};

/// Complex number as `[re, im]`.
pub type Cx = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum JobConfig {
    Local { place: LocalPlace, s: Vec<Cx>, oracle: bool, output: OutputDesc },
    Global { spec: SpecDesc, s: Vec<Cx>, output: OutputDesc },
    Zeros { target: Target, region: Region, scan: ScanTol, output: OutputDesc },
    Verify { suite: Vec<u32>, output: OutputDesc },
    WeilIndex { target: Target, output: OutputDesc },
}

impl JobConfig {
    pub fn command(&self) -> &'static str {
        match self {
            JobConfig::Local { .. } => "local",
            JobConfig::Global { .. } => "global",
            JobConfig::Zeros { .. } => "zeros",
            JobConfig::Verify { .. } => "verify",
            JobConfig::WeilIndex { .. } => "weil-index",
        }
    }

    pub fn output(&self) -> &OutputDesc {
        match self {
            JobConfig::Local { output, .. }
            | JobConfig::Global { output, .. }
            | JobConfig::Zeros { output, .. }
            | JobConfig::Verify { output, .. }
            | JobConfig::WeilIndex { output, .. } => output,
        }
    }
}

/// A single local field with its second degree character and multiplicative character.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "field", rename_all = "kebab-case", deny_unknown_fields)]
pub enum LocalPlace {
    /// `psi_p(a x^2 / 2 + b x)` with `a`, `b` rationals.
    Qp { p: u64, a: String, b: String, chi: CharDesc },
    /// Product over coordinates of `Q_p^n`, trivial character.
    Qpn { p: u64, coords: Vec<[String; 2]> },
    R { a: f64, b: f64, odd: bool },
    /// `psi_C(a |z|^2 / 2 + b z)` with character `(z / |z|)^n`.
    CHermitian { a: f64, b: Cx, n: i64 },
    /// `psi_C(a z^2 / 2 + b z)` with character `(z / |z|)^n`.
    CSquare { a: Cx, b: Cx, n: i64 },
    /// Radial character on `R^dim`, `b` is the norm of the linear term.
    Rn { dim: u32, a: f64, b: f64 },
}

/// Character of `Q_p^*`: `level = 0` is unramified, otherwise the character
/// `t` of `(Z/p^level)^*`. `at_p` is the value on `p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharDesc {
    pub level: u32,
    pub t: u64,
    pub at_p: Cx,
}

impl Default for CharDesc {
    fn default() -> Self {
        CharDesc { level: 0, t: 0, at_p: [1.0, 0.0] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteDesc {
    pub p: u64,
    pub a: String,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChiDesc {
    pub p: u64,
    pub level: u32,
    pub t: u64,
}

/// Global second degree character: the archimedean `(a, b)`, the places of `S`
/// and the prime-power components of the Dirichlet character.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDesc {
    pub arch: [f64; 2],
    pub finite: Vec<FiniteDesc>,
    pub chi: Vec<ChiDesc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Target {
    Global { spec: SpecDesc },
    Local { place: LocalPlace },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Region {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    /// Height of the slabs used for the winding count.
    pub chunk: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanTol {
    pub step: f64,
    pub dip: f64,
    pub residual_tol: f64,
    pub cert_half: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputDesc {
    pub format: Format,
    pub path: Option<String>,
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::*;
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "mellin", version, about = "Local and global zeta integrals of second degree characters")]
pub struct Cli {
    /// Run the job described by a JSON config (the `inputs` object of a previous run).
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a local zeta integral on a set of points.
    Local(LocalArgs),
    /// Evaluate the global function with its factorization and functional-equation residual.
    Global(GlobalArgs),
    /// Locate, certify and classify zeros in a box.
    Zeros(ZerosArgs),
    /// Run the acceptance suite.
    Verify(VerifyArgs),
    /// Weil indices per place and their product.
    WeilIndex(WeilArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Field {
    Qp,
    Qpn,
    R,
    /// Complex numbers with the hermitian form `|z|^2`.
    C,
    /// Complex numbers with the square `z^2`.
    CSquare,
    Rn,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<String>,
}

#[derive(Debug, Args)]
pub struct PlaceArgs {
    #[arg(long, value_enum)]
    pub field: Option<Field>,
    #[arg(long)]
    pub p: Option<u64>,
    /// Quadratic coefficient: a rational for `qp`, a real or complex number otherwise.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Linear coefficient; for `rn` its norm.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Exponent of the unit character `(z / |z|)^n` on `C`.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub n: i64,
    #[arg(long)]
    pub dim: Option<u32>,
    /// Use the sign character on `R`.
    #[arg(long)]
    pub odd: bool,
    /// Conductor exponent of the unit character on `Q_p` (0: unramified).
    #[arg(long, default_value_t = 0)]
    pub chi_level: u32,
    /// Index of the character of `(Z/p^level)^*`, sending the primitive root to `e^{2 pi i t / phi}`.
    #[arg(long, default_value_t = 0)]
    pub chi_t: u64,
    /// Value of the character on `p`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub at_p: String,
    /// Coordinates `a:b` of a product character on `Q_p^n`.
    #[arg(long, value_delimiter = ',')]
    pub coords: Vec<String>,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    /// Named global spec; `reference` is `psi(x^2/2)` at every place with trivial character.
    #[arg(long = "spec", visible_alias = "global")]
    pub preset: Option<String>,
    /// Archimedean `a,b`.
    #[arg(long, allow_hyphen_values = true)]
    pub arch: Option<String>,
    /// Finite place `p:a:b`, repeatable.
    #[arg(long)]
    pub finite: Vec<String>,
    /// Character component `p:level:t`, repeatable.
    #[arg(long)]
    pub chi: Vec<String>,
}

impl SpecArgs {
    fn given(&self) -> bool {
        self.preset.is_some() || self.arch.is_some() || !self.finite.is_empty() || !self.chi.is_empty()
    }
}

#[derive(Debug, Args)]
pub struct PointArgs {
    /// Evaluation point such as `2`, `0.5+14.1i` or `0.5,14.1`; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Vec<String>,
    /// Rectangular grid `re0:re1:nre,im0:im1:nim`.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
}

#[derive(Debug, Args)]
pub struct LocalArgs {
    #[command(flatten)]
    pub place: PlaceArgs,
    #[command(flatten)]
    pub points: PointArgs,
    /// Also evaluate the independent oracle.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub points: PointArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub place: PlaceArgs,
    /// Lower height; defaults to 1 for global targets (above the poles at 0 and 1) and 0 otherwise.
    #[arg(long, allow_hyphen_values = true)]
    pub imin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub imax: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub re_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub re_max: Option<f64>,
    #[arg(long, default_value_t = 3.0)]
    pub chunk: f64,
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub dip: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub residual_tol: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub cert_half: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// `all` or a comma separated list of criterion numbers.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WeilArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub place: PlaceArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn cfg(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn parse_f64(text: &str, what: &str) -> Result<f64, CliError> {
    text.trim().parse::<f64>().map_err(|_| cfg(format!("{what}: cannot read `{text}` as a number")))
}

/// `x`, `x+yi`, `x-yi`, `yi` or `x,y`.
pub fn parse_complex(text: &str) -> Result<Cx, CliError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some((re, im)) = t.split_once(',') {
        return Ok([parse_f64(re, "real part")?, parse_f64(im, "imaginary part")?]);
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok([parse_f64(&t, "complex number")?, 0.0]);
    };
    // split at the last sign that is not an exponent sign or the leading sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let im_of = |s: &str| -> Result<f64, CliError> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => parse_f64(s, "imaginary part"),
        }
    };
    match split {
        Some(i) => Ok([parse_f64(&body[..i], "real part")?, im_of(&body[i..])?]),
        None => Ok([0.0, im_of(body)?]),
    }
}

fn points(args: &PointArgs) -> Result<Vec<Cx>, CliError> {
    let mut out: Vec<Cx> = args.s.iter().map(|s| parse_complex(s)).collect::<Result<_, _>>()?;
    if let Some(g) = &args.grid {
        let axes: Vec<&str> = g.split(',').collect();
        if axes.len() != 2 {
            return Err(cfg("grid must look like re0:re1:nre,im0:im1:nim"));
        }
        let axis = |s: &str| -> Result<Vec<f64>, CliError> {
            let parts: Vec<&str> = s.split(':').collect();
            if parts.len() != 3 {
                return Err(cfg(format!("grid axis `{s}` must be start:end:count")));
            }
            let (a, b) = (parse_f64(parts[0], "grid start")?, parse_f64(parts[1], "grid end")?);
            let n: usize = parts[2].parse().map_err(|_| cfg(format!("grid count `{}`", parts[2])))?;
            Ok(match n {
                0 => Vec::new(),
                1 => vec![a],
                _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
            })
        };
        for re in axis(axes[0])? {
            for im in axis(axes[1])? {
                out.push([re, im]);
            }
        }
    }
    if out.is_empty() {
        return Err(cfg("no evaluation points; pass --s or --grid"));
    }
    Ok(out)
}

fn output(o: &OutputArgs, default: Format) -> OutputDesc {
    OutputDesc { format: o.format.unwrap_or(default), path: o.output.clone() }
}

fn required<T: Clone>(v: &Option<T>, flag: &str, field: &str) -> Result<T, CliError> {
    v.clone().ok_or_else(|| cfg(format!("--{flag} is required for --field {field}")))
}

pub fn place(args: &PlaceArgs) -> Result<LocalPlace, CliError> {
    let field = args.field.ok_or_else(|| cfg("--field is required"))?;
    Ok(match field {
        Field::Qp => LocalPlace::Qp {
            p: required(&args.p, "p", "qp")?,
            a: required(&args.a, "a", "qp")?,
            b: args.b.clone().unwrap_or_else(|| "0".into()),
            chi: CharDesc { level: args.chi_level, t: args.chi_t, at_p: parse_complex(&args.at_p)? },
        },
        Field::Qpn => {
            if args.coords.is_empty() {
                return Err(cfg("--coords a:b,... is required for --field qpn"));
            }
            let coords = args
                .coords
                .iter()
                .map(|c| c.split_once(':').map(|(a, b)| [a.to_string(), b.to_string()]).ok_or_else(|| cfg(format!("coordinate `{c}` must be a:b"))))
                .collect::<Result<_, _>>()?;
            LocalPlace::Qpn { p: required(&args.p, "p", "qpn")?, coords }
        }
        Field::R => LocalPlace::R {
            a: parse_f64(&required(&args.a, "a", "r")?, "a")?,
            b: parse_f64(args.b.as_deref().unwrap_or("0"), "b")?,
            odd: args.odd,
        },
        Field::C => LocalPlace::CHermitian {
            a: parse_f64(&required(&args.a, "a", "c")?, "a")?,
            b: parse_complex(args.b.as_deref().unwrap_or("0"))?,
            n: args.n,
        },
        Field::CSquare => LocalPlace::CSquare {
            a: parse_complex(&required(&args.a, "a", "c-square")?)?,
            b: parse_complex(args.b.as_deref().unwrap_or("0"))?,
            n: args.n,
        },
        Field::Rn => LocalPlace::Rn {
            dim: required(&args.dim, "dim", "rn")?,
            a: parse_f64(&required(&args.a, "a", "rn")?, "a")?,
            b: parse_f64(args.b.as_deref().unwrap_or("0"), "b")?,
        },
    })
}

fn spec(args: &SpecArgs) -> Result<SpecDesc, CliError> {
    if let Some(name) = &args.preset {
        if args.arch.is_some() || !args.finite.is_empty() || !args.chi.is_empty() {
            return Err(cfg("a named spec cannot be combined with --arch, --finite or --chi"));
        }
        return match name.as_str() {
            "reference" => Ok(SpecDesc {
                arch: [1.0, 0.0],
                finite: vec![FiniteDesc { p: 2, a: "1".into(), b: "0".into() }],
                chi: vec![],
            }),
            other => Err(cfg(format!("unknown spec `{other}`"))),
        };
    }
    let arch = match &args.arch {
        Some(t) => {
            let (a, b) = t.split_once(',').ok_or_else(|| cfg("--arch must be a,b"))?;
            [parse_f64(a, "arch a")?, parse_f64(b, "arch b")?]
        }
        None => [1.0, 0.0],
    };
    let finite = args
        .finite
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.split(':').collect();
            match parts.as_slice() {
                [p, a, b] => Ok(FiniteDesc {
                    p: p.parse().map_err(|_| cfg(format!("prime in `{t}`")))?,
                    a: a.to_string(),
                    b: b.to_string(),
                }),
                _ => Err(cfg(format!("--finite `{t}` must be p:a:b"))),
            }
        })
        .collect::<Result<_, _>>()?;
    let chi = args
        .chi
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.split(':').collect();
            let num = |s: &str| s.parse::<u64>().map_err(|_| cfg(format!("--chi `{t}` must be p:level:t")));
            match parts.as_slice() {
                [p, l, k] => Ok(ChiDesc { p: num(p)?, level: num(l)? as u32, t: num(k)? }),
                _ => Err(cfg(format!("--chi `{t}` must be p:level:t"))),
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(SpecDesc { arch, finite, chi })
}

fn target(spec_args: &SpecArgs, place_args: &PlaceArgs) -> Result<Target, CliError> {
    match (spec_args.given(), place_args.field.is_some()) {
        (true, false) => Ok(Target::Global { spec: spec(spec_args)? }),
        (false, true) => Ok(Target::Local { place: place(place_args)? }),
        (true, true) => Err(cfg("give either a global spec or a local --field, not both")),
        (false, false) => Err(cfg("missing target: pass --global/--spec, --arch/--finite/--chi, or --field")),
    }
}

/// The center line of the target's zeros.
pub fn center(target: &Target) -> f64 {
    match target {
        Target::Local { place: LocalPlace::Rn { dim, .. } } => *dim as f64 / 2.0,
        Target::Local { place: LocalPlace::Qpn { coords, .. } } => coords.len() as f64 / 2.0,
        _ => 0.5,
    }
}

pub fn to_config(cmd: &Command) -> Result<JobConfig, CliError> {
    Ok(match cmd {
        Command::Local(a) => JobConfig::Local {
            place: place(&a.place)?,
            s: points(&a.points)?,
            oracle: a.oracle,
            output: output(&a.out, Format::Json),
        },
        Command::Global(a) => {
            if !a.spec.given() {
                return Err(cfg("missing spec: pass --spec reference or --arch/--finite/--chi"));
            }
            JobConfig::Global { spec: spec(&a.spec)?, s: points(&a.points)?, output: output(&a.out, Format::Json) }
        }
        Command::Zeros(a) => {
            let target = target(&a.spec, &a.place)?;
            let is_global = matches!(target, Target::Global { .. });
            let c = center(&target);
            let (dre_min, dre_max) = if is_global { (-0.1, 1.1) } else { (c - 0.4, c + 0.4) };
            let region = Region {
                re_min: a.re_min.unwrap_or(dre_min),
                re_max: a.re_max.unwrap_or(dre_max),
                im_min: a.imin.unwrap_or(if is_global { 1.0 } else { 0.0 }),
                im_max: a.imax,
                chunk: a.chunk,
            };
            let scan = ScanTol { step: a.step, dip: a.dip, residual_tol: a.residual_tol, cert_half: a.cert_half };
            JobConfig::Zeros { target, region, scan, output: output(&a.out, Format::Csv) }
        }
        Command::Verify(a) => {
            let suite = if a.suite.trim() == "all" {
                mellin_core::verify::CRITERIA.iter().map(|c| c.0).collect()
            } else {
                a.suite
                    .split(',')
                    .map(|t| t.trim().parse::<u32>().map_err(|_| cfg(format!("criterion `{t}` is not a number"))))
                    .collect::<Result<_, _>>()?
            };
            JobConfig::Verify { suite, output: output(&a.out, Format::Text) }
        }
        Command::WeilIndex(a) => JobConfig::WeilIndex { target: target(&a.spec, &a.place)?, output: output(&a.out, Format::Json) },
    })
}

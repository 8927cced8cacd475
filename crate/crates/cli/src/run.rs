use mellin_core::arch_zeta::{weil_index_arch, zeta_arch, ArchCharacter, ArchSdc};
use mellin_core::global::{global_fe_residual, scan_zeros_with, GlobalSpec, Place, XiF};
use mellin_core::oracle::*;
use mellin_core::padic::{DirichletCharData, PadicCharacter, PadicSdc};
use mellin_core::padic_zeta::{local_factor, padic_vector_factor, weil_index_padic, PadicFactor};
use mellin_core::verify::{run_criterion, CRITERIA};
use mellin_core::zeros::{chunked_winding, exp_poly_roots, line_zeros, periodic_family, LineScan, Rect, ZeroReport};
use mellin_core::C64;
use serde_json::{json, Value};

use crate::args::center;
use crate::config::*;
use crate::error::CliError;

/// Everything a job produces, before formatting.
#[derive(Debug, Default)]
pub struct Report {
    pub results: Vec<Value>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub text: Vec<String>,
    /// Set when the job ran but a check failed.
    pub failure: Option<String>,
}

/// Seventeen significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn cx(z: C64) -> Value {
    json!([z.re, z.im])
}

fn to_c(z: Cx) -> C64 {
    C64::new(z[0], z[1])
}

enum Built {
    Padic(PadicSdc, PadicCharacter),
    PadicVec(Vec<PadicSdc>),
    Arch(ArchSdc, ArchCharacter),
}

fn build_place(place: &LocalPlace) -> Result<Built, CliError> {
    Ok(match place {
        LocalPlace::Qp { p, a, b, chi } => {
            let f = PadicSdc::parse(*p, a, b)?;
            let unit = if chi.level == 0 {
                PadicCharacter::unramified(to_c(chi.at_p))
            } else {
                PadicCharacter::ramified(DirichletCharData::new(*p, chi.level, chi.t)?).with_at_p(to_c(chi.at_p))
            };
            Built::Padic(f, unit)
        }
        LocalPlace::Qpn { p, coords } => {
            Built::PadicVec(coords.iter().map(|[a, b]| PadicSdc::parse(*p, a, b)).collect::<Result<_, _>>()?)
        }
        LocalPlace::R { a, b, odd } => {
            let chi = if *odd { ArchCharacter::RealSign } else { ArchCharacter::Trivial };
            Built::Arch(ArchSdc::Real { a: *a, b: *b }, chi)
        }
        LocalPlace::CHermitian { a, b, n } => Built::Arch(ArchSdc::ComplexHermitian { a: *a, b: to_c(*b) }, ArchCharacter::ComplexCn(*n)),
        LocalPlace::CSquare { a, b, n } => Built::Arch(ArchSdc::ComplexSquare { a: to_c(*a), b: to_c(*b) }, ArchCharacter::ComplexCn(*n)),
        LocalPlace::Rn { dim, a, b } => Built::Arch(ArchSdc::RealRadial { n: *dim, a: *a, bnorm: *b }, ArchCharacter::Trivial),
    })
}

fn padic_factor(built: &Built) -> Result<Option<PadicFactor>, CliError> {
    Ok(match built {
        Built::Padic(f, chi) => Some(local_factor(f, chi)?),
        Built::PadicVec(fs) => Some(padic_vector_factor(fs)?),
        Built::Arch(..) => None,
    })
}

fn eval_local(built: &Built, factor: &Option<PadicFactor>, s: C64) -> Result<C64, CliError> {
    Ok(match (built, factor) {
        (_, Some(lf)) => lf.eval(s)?,
        (Built::Arch(f, chi), None) => zeta_arch(f, *chi, s)?,
        _ => unreachable!("finite places always carry a factor"),
    })
}

fn oracle_local(built: &Built, s: C64) -> Result<C64, CliError> {
    let opts = ArchOracleOptions::default();
    Ok(match built {
        Built::Padic(f, chi) => oracle_padic_mellin(f, chi, s, PadicOracleOptions::default())?.value,
        Built::PadicVec(fs) => oracle_padic_vector(fs, s, PadicOracleOptions::default())?.value,
        Built::Arch(ArchSdc::Real { a, b }, chi) => {
            oracle_real_mellin(*a, *b, s, *chi == ArchCharacter::RealSign, &ArchOracleOptions { rotate: false, ..opts })?.value
        }
        Built::Arch(ArchSdc::ComplexHermitian { a, b }, chi) => oracle_complex_hermitian(*a, *b, s, cn(*chi), &opts)?.value,
        Built::Arch(ArchSdc::ComplexSquare { a, b }, chi) => {
            let o = ArchOracleOptions { radial_tol: 1e-11, angular_tol: 1e-9, ..opts };
            oracle_complex_square(*a, *b, s, cn(*chi), &o)?.value
        }
        Built::Arch(ArchSdc::RealRadial { n, a, bnorm }, _) => oracle_radial(*n, *a, *bnorm, s, &opts)?.value,
    })
}

fn cn(chi: ArchCharacter) -> i64 {
    match chi {
        ArchCharacter::ComplexCn(n) => n,
        _ => 0,
    }
}

fn build_spec(d: &SpecDesc) -> Result<GlobalSpec, CliError> {
    let finite = d.finite.iter().map(|f| PadicSdc::parse(f.p, &f.a, &f.b)).collect::<Result<Vec<_>, _>>()?;
    let chi = d.chi.iter().map(|c| DirichletCharData::new(c.p, c.level, c.t)).collect::<Result<Vec<_>, _>>()?;
    Ok(GlobalSpec::new((d.arch[0], d.arch[1]), finite, chi)?)
}

fn spec_desc(spec: &GlobalSpec) -> SpecDesc {
    SpecDesc {
        arch: [spec.arch.0, spec.arch.1],
        finite: spec.finite.iter().map(|(&p, f)| FiniteDesc { p, a: f.a.to_string(), b: f.b.to_string() }).collect(),
        chi: spec.chi.iter().map(|c| ChiDesc { p: c.p, level: c.n, t: c.t }).collect(),
    }
}

fn canonical_place(place: &LocalPlace) -> Result<LocalPlace, CliError> {
    Ok(match place {
        LocalPlace::Qp { p, a, b, chi } => {
            let f = PadicSdc::parse(*p, a, b)?;
            let t = if chi.level == 0 { 0 } else { DirichletCharData::new(*p, chi.level, chi.t)?.t };
            LocalPlace::Qp { p: *p, a: f.a.to_string(), b: f.b.to_string(), chi: CharDesc { t, ..chi.clone() } }
        }
        LocalPlace::Qpn { p, coords } => {
            let mut out = Vec::new();
            for [a, b] in coords {
                let f = PadicSdc::parse(*p, a, b)?;
                out.push([f.a.to_string(), f.b.to_string()]);
            }
            LocalPlace::Qpn { p: *p, coords: out }
        }
        other => other.clone(),
    })
}

fn canonical_target(t: &Target) -> Result<Target, CliError> {
    Ok(match t {
        Target::Global { spec } => Target::Global { spec: spec_desc(&build_spec(spec)?) },
        Target::Local { place } => Target::Local { place: canonical_place(place)? },
    })
}

/// Validates a config and rewrites it in canonical form: rationals reduced,
/// character indices reduced, implied places of a global spec made explicit.
pub fn canonicalize(cfg: &JobConfig) -> Result<JobConfig, CliError> {
    Ok(match cfg {
        JobConfig::Local { place, s, oracle, output } => {
            JobConfig::Local { place: canonical_place(place)?, s: s.clone(), oracle: *oracle, output: output.clone() }
        }
        JobConfig::Global { spec, s, output } => JobConfig::Global { spec: spec_desc(&build_spec(spec)?), s: s.clone(), output: output.clone() },
        JobConfig::Zeros { target, region, scan, output } => {
            if !(region.re_min < region.re_max && region.im_min < region.im_max && region.chunk > 0.0) {
                return Err(CliError::Config("empty region or non-positive chunk".into()));
            }
            if !(scan.step > 0.0 && scan.dip > 0.0 && scan.residual_tol > 0.0 && scan.cert_half > 0.0) {
                return Err(CliError::Config("scan tolerances must be positive".into()));
            }
            JobConfig::Zeros { target: canonical_target(target)?, region: region.clone(), scan: scan.clone(), output: output.clone() }
        }
        JobConfig::Verify { suite, output } => {
            let mut ids = suite.clone();
            ids.sort_unstable();
            ids.dedup();
            if let Some(bad) = ids.iter().find(|id| !CRITERIA.iter().any(|c| c.0 == **id)) {
                return Err(CliError::Config(format!("unknown criterion {bad}")));
            }
            JobConfig::Verify { suite: ids, output: output.clone() }
        }
        JobConfig::WeilIndex { target, output } => JobConfig::WeilIndex { target: canonical_target(target)?, output: output.clone() },
    })
}

pub fn run(cfg: &JobConfig) -> Result<Report, CliError> {
    match cfg {
        JobConfig::Local { place, s, oracle, .. } => local(place, s, *oracle),
        JobConfig::Global { spec, s, .. } => global(spec, s),
        JobConfig::Zeros { target, region, scan, .. } => zeros(target, region, scan),
        JobConfig::Verify { suite, .. } => verify(suite),
        JobConfig::WeilIndex { target, .. } => weil(target),
    }
}

fn local(place: &LocalPlace, points: &[Cx], oracle: bool) -> Result<Report, CliError> {
    let built = build_place(place)?;
    let factor = padic_factor(&built)?;
    let mut r = Report { header: vec!["s_re", "s_im", "value_re", "value_im"], ..Default::default() };
    if oracle {
        r.header.extend(["oracle_re", "oracle_im"]);
    }
    for &p in points {
        let s = to_c(p);
        let v = eval_local(&built, &factor, s)?;
        let mut row = vec![num(s.re), num(s.im), num(v.re), num(v.im)];
        let mut entry = json!({ "s": cx(s), "value": cx(v) });
        if oracle {
            let o = oracle_local(&built, s)?;
            row.extend([num(o.re), num(o.im)]);
            entry["oracle"] = cx(o);
        }
        r.rows.push(row);
        r.results.push(entry);
    }
    if let Some(lf) = &factor {
        r.text.push(format!("factor kind: {:?}", lf.kind));
    }
    Ok(r)
}

fn global(desc: &SpecDesc, points: &[Cx]) -> Result<Report, CliError> {
    let spec = build_spec(desc)?;
    let xi = XiF::new(&spec)?;
    let mut r = Report { header: vec!["s_re", "s_im", "value_re", "value_im", "l_re", "l_im", "fe_residual"], ..Default::default() };
    for &p in points {
        let s = to_c(p);
        let fac = xi.factorization(s)?;
        let fe = global_fe_residual(&spec, s)?;
        let local: Vec<Value> = fac.local.iter().map(|(place, v)| json!({ "place": place.to_string(), "value": cx(*v) })).collect();
        r.results.push(json!({
            "s": cx(s),
            "value": cx(fac.value),
            "l_value": cx(fac.l_value),
            "local": local,
            "euler_factor_removed_at": fac.corrected,
            "fe_residual": fe,
        }));
        r.rows.push(vec![num(s.re), num(s.im), num(fac.value.re), num(fac.value.im), num(fac.l_value.re), num(fac.l_value.im), num(fe)]);
    }
    Ok(r)
}

struct ZeroRow {
    report: ZeroReport,
    class: &'static str,
    place: String,
}

fn zeros(target: &Target, region: &Region, tol: &ScanTol) -> Result<Report, CliError> {
    let scan = LineScan { step: tol.step, dip: tol.dip, residual_tol: tol.residual_tol, cert_half: tol.cert_half };
    let rect = Rect::new(region.re_min, region.re_max, region.im_min, region.im_max);
    let mut rows: Vec<ZeroRow> = Vec::new();
    let mut r = Report::default();
    match target {
        Target::Global { spec } => {
            let spec = build_spec(spec)?;
            let res = scan_zeros_with(&spec, &rect, region.chunk, scan)?;
            for z in res.zeros {
                rows.push(ZeroRow { class: z.class.label(), place: z.class.place().map(|p| p.to_string()).unwrap_or_default(), report: z.report });
            }
            r.text.push(format!("winding {} line {}", res.winding, res.line_count));
            if res.winding != res.line_count {
                r.failure = Some(format!("winding count {} differs from the {} zeros found on the line", res.winding, res.line_count));
            }
        }
        Target::Local { place } => {
            let built = build_place(place)?;
            match padic_factor(&built)? {
                Some(lf) => {
                    let period = 2.0 * std::f64::consts::PI / (lf.p as f64).ln();
                    let base = exp_poly_roots(&lf)?;
                    for z in periodic_family(&base, period, region.im_min, region.im_max) {
                        if rect.contains(z.location) {
                            rows.push(ZeroRow { report: z, class: "local", place: lf.p.to_string() });
                        }
                    }
                }
                None => {
                    let Built::Arch(f, chi) = built else { unreachable!() };
                    let g = |s: C64| zeta_arch(&f, chi, s);
                    let c = center(target);
                    let zs: Vec<ZeroReport> = line_zeros(&g, c, region.im_min, region.im_max, scan)?;
                    let wind = chunked_winding(&g, &rect, region.chunk, &zs)?;
                    let count: i64 = zs.iter().filter(|z| rect.contains(z.location)).map(|z| z.multiplicity as i64).sum();
                    r.text.push(format!("winding {wind} line {count}"));
                    if wind != count {
                        r.failure = Some(format!("winding count {wind} differs from the {count} zeros found on the line"));
                    }
                    rows.extend(zs.into_iter().map(|z| ZeroRow { report: z, class: "local", place: Place::Infinite.to_string() }));
                }
            }
        }
    }
    rows.sort_by(|a, b| {
        let (x, y) = (a.report.location, b.report.location);
        x.im.total_cmp(&y.im).then(x.re.total_cmp(&y.re))
    });
    if rows.iter().any(|z| !z.report.certified) && r.failure.is_none() {
        r.failure = Some("uncertified zeros in the region".into());
    }
    r.header = vec!["re", "im", "multiplicity", "certified", "method", "class", "place"];
    for z in &rows {
        let loc = z.report.location;
        r.rows.push(vec![
            num(loc.re),
            num(loc.im),
            z.report.multiplicity.to_string(),
            z.report.certified.to_string(),
            z.report.method.as_str().to_string(),
            z.class.to_string(),
            z.place.clone(),
        ]);
        r.results.push(json!({
            "re": loc.re,
            "im": loc.im,
            "multiplicity": z.report.multiplicity,
            "certified": z.report.certified,
            "method": z.report.method.as_str(),
            "class": z.class,
            "place": z.place,
            "residual": z.report.residual,
        }));
    }
    Ok(r)
}

fn verify(suite: &[u32]) -> Result<Report, CliError> {
    let mut r = Report { header: vec!["id", "title", "passed", "elapsed_s", "budget_s", "detail"], ..Default::default() };
    let mut failed = Vec::new();
    for &id in suite {
        let rep = run_criterion(id).ok_or_else(|| CliError::Config(format!("unknown criterion {id}")))?;
        r.text.push(rep.to_string());
        r.rows.push(vec![
            rep.id.to_string(),
            rep.title.to_string(),
            rep.passed.to_string(),
            format!("{:.3}", rep.elapsed_s),
            format!("{:.0}", rep.budget_s),
            rep.detail.clone(),
        ]);
        if !rep.passed {
            failed.push(format!("{} ({})", rep.id, rep.title));
        }
        r.results.push(serde_json::to_value(&rep).expect("plain data"));
    }
    if !failed.is_empty() {
        r.failure = Some(format!("failing criteria: {}", failed.join(", ")));
    }
    Ok(r)
}

fn weil(target: &Target) -> Result<Report, CliError> {
    let mut entries: Vec<(String, C64)> = Vec::new();
    match target {
        Target::Global { spec } => {
            let spec = build_spec(spec)?;
            entries.push((Place::Infinite.to_string(), weil_index_arch(&ArchSdc::Real { a: spec.arch.0, b: spec.arch.1 })?));
            for (p, f) in &spec.finite {
                entries.push((p.to_string(), weil_index_padic(f)?));
            }
            entries.push(("product".into(), spec.weil_index()?));
        }
        Target::Local { place } => match build_place(place)? {
            Built::Padic(f, _) => entries.push((f.p().to_string(), weil_index_padic(&f)?)),
            Built::PadicVec(fs) => {
                let mut prod = C64::new(1.0, 0.0);
                for (i, f) in fs.iter().enumerate() {
                    let g = weil_index_padic(f)?;
                    prod *= g;
                    entries.push((format!("{}[{i}]", f.p()), g));
                }
                entries.push(("product".into(), prod));
            }
            Built::Arch(f, _) => entries.push(("inf".into(), weil_index_arch(&f)?)),
        },
    }
    let mut r = Report { header: vec!["place", "re", "im"], ..Default::default() };
    for (place, g) in entries {
        r.rows.push(vec![place.clone(), num(g.re), num(g.im)]);
        r.results.push(json!({ "place": place, "value": cx(g) }));
    }
    Ok(r)
}

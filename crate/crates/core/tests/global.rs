use mellin_core::arch_zeta::{zeta_real, ArchCharacter};
use mellin_core::global::*;
use mellin_core::padic::{DirichletCharData, PadicSdc};
use mellin_core::padic_zeta::qp2_special;
use mellin_core::C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn grid() -> Vec<C64> {
    let mut g = Vec::new();
    for re in [0.1, 0.3, 0.5, 0.7, 0.9] {
        for im in [-7.0, -2.0, 0.5, 5.0, 11.0] {
            g.push(c(re, im));
        }
    }
    g
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn reference_spec_matches_explicit_formula() {
    let spec = GlobalSpec::reference();
    for s in grid().into_iter().chain([c(2.0, 0.0), c(-0.5, 3.0), c(1.5, -20.0)]) {
        let a = xi_f(&spec, s).unwrap();
        let b = xi_f_reference(s).unwrap();
        assert!(rel(a, b) < 1e-10, "{s}: {a} vs {b}");
    }
}

#[test]
fn reference_euler_product_at_two() {
    // independent route: archimedean and 2-adic closed forms times odd Euler factors
    let s = c(2.0, 0.0);
    let mut prod = zeta_real(1.0, 0.0, s, ArchCharacter::Trivial).unwrap() * qp2_special(s).unwrap();
    for p in primes_up_to(100_000).into_iter().skip(1) {
        prod /= 1.0 - (p as f64).powi(-2);
    }
    let want = xi_f_reference(s).unwrap();
    assert!(rel(prod, want) < 1e-5, "{prod} vs {want}");
    let (direct, bound) = xi_f_euler_product(&GlobalSpec::reference(), s, 100_000).unwrap();
    assert!(bound < 1e-5);
    assert!(rel(direct, want) <= bound, "{direct} vs {want}, bound {bound}");
}

fn twisted_specs() -> Vec<GlobalSpec> {
    let mut out = Vec::new();
    let f3 = PadicSdc::parse(3, "1", "1/3").unwrap();
    let f2 = PadicSdc::parse(2, "3", "1/2").unwrap();
    let f5 = PadicSdc::parse(5, "2/5", "1").unwrap();
    out.push(GlobalSpec::new((1.0, 0.0), vec![f3.clone()], vec![]).unwrap());
    out.push(GlobalSpec::new((2.0, 0.5), vec![f2.clone(), f5.clone()], vec![]).unwrap());
    for (p, n) in [(3u64, 1u32), (5, 1), (7, 1), (3, 2)] {
        for chi in DirichletCharData::all(p, n).unwrap() {
            if chi.conductor_level() != n {
                continue;
            }
            let b = if chi.is_even() { 0.0 } else { 0.75 };
            out.push(GlobalSpec::new((1.0, b), vec![], vec![chi.clone()]).unwrap());
            out.push(GlobalSpec::new((-0.5, b), vec![f2.clone()], vec![chi.clone()]).unwrap());
        }
    }
    let chi3 = DirichletCharData::new(3, 1, 1).unwrap();
    let chi5 = DirichletCharData::new(5, 1, 1).unwrap();
    out.push(GlobalSpec::new((1.0, 1.0), vec![f5], vec![chi3, chi5]).unwrap());
    out
}

#[test]
fn functional_equation_reference() {
    let spec = GlobalSpec::reference();
    for s in grid() {
        assert!(global_fe_residual(&spec, s).unwrap() <= 1e-9, "{s}");
    }
    assert!(global_fe_residual(&spec, c(0.5, 0.0)).unwrap() <= 1e-10);
}

#[test]
fn functional_equation_twisted() {
    for spec in twisted_specs() {
        let xi = XiF::new(&spec).unwrap();
        for s in [c(0.3, 5.0), c(0.7, -2.0), c(0.2, 0.5)] {
            if xi.eval(s).unwrap().norm() == 0.0 {
                continue;
            }
            let r = global_fe_residual(&spec, s).unwrap();
            assert!(r <= 1e-9, "chi mod {} arch {:?} S {:?} at {s}: {r}", spec.modulus(), spec.arch, spec.finite.keys().collect::<Vec<_>>());
        }
    }
}

#[test]
fn functional_equation_survives_rescaling_at_two() {
    let spec = GlobalSpec::new((1.0, 0.0), vec![PadicSdc::parse(2, "4", "0").unwrap()], vec![]).unwrap();
    for s in [c(0.3, 5.0), c(0.5, 0.0), c(0.8, -3.0)] {
        assert!(global_fe_residual(&spec, s).unwrap() <= 1e-9);
    }
}

#[test]
fn odd_character_with_even_archimedean_part_vanishes() {
    let chi = DirichletCharData::new(5, 1, 1).unwrap();
    assert!(!chi.is_even());
    let spec = GlobalSpec::new((1.0, 0.0), vec![], vec![chi]).unwrap();
    for s in [c(0.3, 1.0), c(2.0, 0.0)] {
        assert_eq!(xi_f(&spec, s).unwrap(), c(0.0, 0.0));
    }
}

#[test]
fn direct_product_agrees_with_l_mode() {
    for spec in twisted_specs() {
        let s = c(2.0, 0.3);
        let l_mode = xi_f(&spec, s).unwrap();
        if l_mode.norm() == 0.0 {
            continue;
        }
        let (direct, bound) = xi_f_euler_product(&spec, s, 100_000).unwrap();
        assert!((direct - l_mode).norm() <= bound * l_mode.norm(), "mod {}: {direct} vs {l_mode}", spec.modulus());
    }
}

#[test]
fn pole_structure_of_reference() {
    let spec = GlobalSpec::reference();
    for center in [c(0.0, 0.0), c(1.0, 0.0)] {
        let vals: Vec<f64> = [1e-2, 1e-3, 1e-4]
            .iter()
            .flat_map(|&r| (0..8).map(move |k| center + C64::from_polar(r, k as f64 * 0.785 + 0.1)))
            .map(|s| (xi_f(&spec, s).unwrap() * s * (1.0 - s)).norm())
            .collect();
        let max = vals.iter().cloned().fold(0.0, f64::max);
        let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(max < 10.0 && max / min < 1.1, "{center}: {min} .. {max}");
    }
}

#[test]
fn trivial_zeros_of_zeta_are_not_zeros() {
    let spec = GlobalSpec::reference();
    for s in [c(-2.0, 1e-7), c(-4.0, 1e-7)] {
        assert!(xi_f(&spec, s).unwrap().norm() > 1e-3, "{s}");
    }
}

#[test]
fn canceled_euler_roots_are_rejected() {
    let spec = GlobalSpec::new((1.0, 0.0), vec![PadicSdc::parse(3, "1", "1/3").unwrap()], vec![]).unwrap();
    let t = 2.0 * std::f64::consts::PI / 3f64.ln();
    let z = mellin_core::zeros::ZeroReport {
        location: c(0.0, t),
        multiplicity: 1,
        method: mellin_core::zeros::ZeroMethod::WindingBisection,
        certified: true,
        residual: 0.0,
    };
    assert_eq!(classify_zero(&z, &spec).unwrap(), ZeroClass::Canceled(3));
    assert!(xi_f(&spec, z.location).unwrap().norm() > 1e-6);
}

#[test]
fn reference_zero_scan_is_line_zeros_of_xi_and_two_adic_family() {
    let t = std::time::Instant::now();
    let spec = GlobalSpec::reference();
    let scan = scan_zeros(&spec, -0.1, 1.1, 1.0, 30.0, 3.0).unwrap();
    assert_eq!(scan.winding, scan.line_count);
    let xi_zeros = xi_line_zeros(1.0, 30.0).unwrap();
    assert_eq!(xi_zeros.len(), 3);
    let xi = XiF::new(&spec).unwrap();
    let base = mellin_core::zeros::exp_poly_roots(&xi.factors[&2]).unwrap();
    let period = 2.0 * std::f64::consts::PI / 2f64.ln();
    let family = mellin_core::zeros::periodic_family(&base, period, 1.0, 30.0);
    assert_eq!(scan.zeros.len(), xi_zeros.len() + family.len());
    for z in &scan.zeros {
        assert!(z.report.certified);
        assert!((z.report.location.re - 0.5).abs() <= 1e-6);
        let near = |v: &[mellin_core::zeros::ZeroReport]| v.iter().any(|w| (w.location - z.report.location).norm() < 1e-6);
        match z.class {
            ZeroClass::Global => assert!(near(&xi_zeros)),
            ZeroClass::Local(Place::Finite(2)) => assert!(near(&family)),
            other => panic!("unexpected class {other:?} at {}", z.report.location),
        }
    }
    eprintln!("scan: {} zeros, {:?}", scan.zeros.len(), t.elapsed());
}

#[test]
fn zero_scan_with_local_zeros_at_three() {
    let spec = GlobalSpec::new((1.0, 0.0), vec![PadicSdc::parse(3, "1", "1/3").unwrap()], vec![]).unwrap();
    let scan = scan_zeros(&spec, -0.1, 1.1, 1.0, 26.0, 3.0).unwrap();
    assert_eq!(scan.winding, scan.line_count);
    let xi = XiF::new(&spec).unwrap();
    let mut expected = xi_line_zeros(1.0, 26.0).unwrap().len();
    for p in [2u64, 3] {
        let base = mellin_core::zeros::exp_poly_roots(&xi.factors[&p]).unwrap();
        let period = 2.0 * std::f64::consts::PI / (p as f64).ln();
        let fam = mellin_core::zeros::periodic_family(&base, period, 1.0, 26.0);
        let local = scan.zeros.iter().filter(|z| z.class == ZeroClass::Local(Place::Finite(p))).count();
        assert_eq!(local, fam.len(), "p = {p}");
        expected += fam.len();
    }
    assert_eq!(scan.zeros.len(), expected);
}

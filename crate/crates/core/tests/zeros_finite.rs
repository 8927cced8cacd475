use mellin_core::padic::{DirichletCharData, PadicCharacter, PadicSdc};
use mellin_core::padic_zeta::*;
use mellin_core::zeros::*;
use mellin_core::C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[test]
fn unramified_k_matches_root_count() {
    for (p, k) in [(3u64, 1u32), (3, 2), (5, 1), (7, 1)] {
        let f = PadicSdc::parse(p, "1", &format!("1/{}", p.pow(k))).unwrap();
        let lf = local_factor_unramified(&f, c(1.0, 0.0)).unwrap();
        let poly = lf.zero_polynomial().unwrap();
        assert_eq!(poly.degree(), 2 * k as usize);
        let zs = exp_poly_roots(&lf).unwrap();
        assert_eq!(zs.len(), 2 * k as usize);
        for z in &zs {
            assert!(z.certified, "{z:?}");
            assert!((z.location.re - 0.5).abs() < 1e-10);
            assert!(z.residual < 1e-10);
        }
    }
}

#[test]
fn no_zeros_for_trivial_profile() {
    let f = PadicSdc::parse(5, "1", "0").unwrap();
    let lf = local_factor_unramified(&f, c(1.0, 0.0)).unwrap();
    assert!(exp_poly_roots(&lf).unwrap().is_empty());
}

#[test]
fn two_adic_roots_have_modulus_sqrt_two() {
    let f = PadicSdc::parse(2, "1", "0").unwrap();
    let lf = local_factor_unramified(&f, c(1.0, 0.0)).unwrap();
    let zs = exp_poly_roots(&lf).unwrap();
    assert_eq!(zs.len(), 2);
    // y = 2^s solves e^{i pi/4} y^2 - (1 + e^{i pi/4}) y + 2 = 0
    let g = C64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    let disc = ((1.0 + g) * (1.0 + g) - 8.0 * g).sqrt();
    let ys = [(1.0 + g + disc) / (2.0 * g), (1.0 + g - disc) / (2.0 * g)];
    for y in ys {
        assert!((y.norm() - 2f64.sqrt()).abs() < 1e-12);
        let s = y.ln() / 2f64.ln();
        let period = 2.0 * std::f64::consts::PI / 2f64.ln();
        assert!(zs.iter().any(|z| {
            let d = z.location - s;
            d.re.abs() < 1e-10 && ((d.im / period) - (d.im / period).round()).abs() < 1e-10
        }));
    }
    for z in &zs {
        assert!(qp2_special(z.location).unwrap().norm() < 1e-10);
    }
}

#[test]
fn ramified_zeros_on_critical_line() {
    for p in [3u64, 5] {
        for n in 1..=2u32 {
            for chi in DirichletCharData::all(p, n).unwrap() {
                if chi.conductor_level() == 0 {
                    continue;
                }
                for (a, b) in [("1", "0"), ("1", "1"), ("2", &format!("1/{p}") as &str), (&format!("1/{p}") as &str, "3")] {
                    let f = PadicSdc::parse(p, a, b).unwrap();
                    let lf = local_factor(&f, &PadicCharacter::ramified(chi.clone())).unwrap();
                    for z in exp_poly_roots(&lf).unwrap() {
                        assert!(z.certified);
                        assert!((z.location.re - 0.5).abs() <= 1e-10, "{z:?}");
                        assert!(lf.eval(z.location).unwrap().norm() < 1e-10);
                    }
                }
            }
        }
    }
}

#[test]
fn vector_zeros_on_shifted_line() {
    for p in [3u64, 5] {
        let fs = vec![PadicSdc::parse(p, "1", &format!("1/{p}")).unwrap(), PadicSdc::parse(p, "1", "0").unwrap()];
        let lf = padic_vector_factor(&fs).unwrap();
        let zs = exp_poly_roots(&lf).unwrap();
        assert!(!zs.is_empty());
        for z in zs {
            assert!(z.certified);
            assert!((z.location.re - 1.0).abs() <= 1e-10);
            assert!(lf.eval(z.location).unwrap().norm() < 1e-10);
        }
    }
}

#[test]
fn line_scan_and_winding_agree_on_two_adic_factor() {
    let f = PadicSdc::parse(2, "1", "0").unwrap();
    let lf = local_factor_unramified(&f, c(1.0, 0.0)).unwrap();
    let g = |s: C64| lf.eval_corrected(s);
    let period = 2.0 * std::f64::consts::PI / 2f64.ln();
    let zs = line_zeros(&g, 0.5, 0.0, period, LineScan::default()).unwrap();
    assert_eq!(zs.len(), 2);
    let w = winding_count(&g, &Rect::new(0.1, 0.9, 0.05, period + 0.05)).unwrap();
    assert_eq!(w, 2);
}

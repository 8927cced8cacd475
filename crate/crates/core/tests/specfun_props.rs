use std::f64::consts::PI;

use mellin_core::global::primes_up_to;
use mellin_core::specfun::*;
use mellin_core::C64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn complex(r: f64) -> impl Strategy<Value = C64> {
    (-r..r, -r..r).prop_map(|(a, b)| c(a, b))
}

fn small_z() -> impl Strategy<Value = C64> {
    (0.0..10.0f64, 0.0..(2.0 * PI)).prop_map(|(r, t)| C64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kummer_transformation(u in complex(3.0), v in prop::sample::select(vec![0.5, 1.0, 1.5, 2.5]), z in small_z()) {
        let lhs = z.exp() * hyp1f1(u, v, -z).unwrap();
        let rhs = hyp1f1(c(v, 0.0) - u, v, z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()), "{} vs {}", lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contiguous_derivative(u in complex(2.0), v in 0.5..3.0f64, z in small_z()) {
        let h = 1e-5;
        let fd = (hyp1f1(u, v, z + h).unwrap() - hyp1f1(u, v, z - h).unwrap()) / (2.0 * h);
        let want = u / v * hyp1f1(u + 1.0, v + 1.0, z).unwrap();
        prop_assert!((fd - want).norm() <= 1e-6 * want.norm().max(1e-3), "{} vs {}", fd, want);
    }

    #[test]
    fn gamma_recurrence(re in -8.0..20.0f64, im in -30.0..30.0f64) {
        let z = c(re, im);
        prop_assume!((z - z.re.round()).norm() > 1e-3 || z.re > 0.5);
        let a = log_gamma(z + 1.0).unwrap();
        let b = log_gamma(z).unwrap() + z.ln();
        // equal modulo 2 pi i
        let d = a - b;
        prop_assert!(d.re.abs() < 1e-12 * (1.0 + a.norm()));
        let k = (d.im / (2.0 * PI)).round();
        prop_assert!((d.im - 2.0 * PI * k).abs() < 1e-11 * (1.0 + a.norm()));
    }
}

#[test]
fn zeta_functional_equation_grid() {
    // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s) zeta(1 - s)
    for re in [0.2, 0.35, 0.5, 0.65, 0.8] {
        for im in [0.0, 7.5, 15.0, 22.5, 30.0] {
            let s = c(re, im);
            let lhs = riemann_zeta(s).unwrap();
            let chi = (s * 2f64.ln()).exp() * ((s - 1.0) * PI.ln()).exp() * (s * PI / 2.0).sin() * gamma(1.0 - s).unwrap();
            let rhs = chi * riemann_zeta(1.0 - s).unwrap();
            assert!((lhs - rhs).norm() <= 1e-9 * lhs.norm().max(1e-300), "{s}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn completed_xi_symmetry_and_values() {
    assert!((completed_xi(c(2.0, 0.0)).unwrap() - PI / 6.0).norm() < 1e-12);
    assert!(completed_xi(c(0.5, 0.0)).unwrap().im.abs() < 1e-12);
    let a = completed_xi(c(0.3, 2.0)).unwrap();
    let b = completed_xi(c(0.7, -2.0)).unwrap();
    assert!((a - b).norm() <= 1e-9 * a.norm());
}

#[test]
fn order_four_character_mod_five_euler_product() {
    // chi(2) = i generates (Z/5)^*
    let mut values = vec![c(0.0, 0.0); 5];
    let mut x = 1usize;
    let mut v = c(1.0, 0.0);
    for _ in 0..4 {
        values[x] = v;
        x = x * 2 % 5;
        v *= c(0.0, 1.0);
    }
    let chi = DirichletCharacter::from_values(5, values).unwrap();
    let s = c(3.0, 0.0);
    let mut prod = c(1.0, 0.0);
    for p in primes_up_to(100_000) {
        prod /= 1.0 - chi.value(p as i64) * (p as f64).powf(-3.0);
    }
    let l = dirichlet_l(s, &chi).unwrap();
    assert!((l - prod).norm() < 1e-8, "{l} vs {prod}");
}

#[test]
fn first_critical_zero_by_line_scan() {
    let zs = mellin_core::zeros::line_zeros(&riemann_zeta, 0.5, 10.0, 15.0, Default::default()).unwrap();
    assert_eq!(zs.len(), 1);
    assert!(riemann_zeta(zs[0].location).unwrap().norm() < 1e-6);
    assert!((zs[0].location.im - 14.134725).abs() < 1e-5);
}

use mellin_core::oracle::{oracle_padic_mellin, PadicOracleOptions};
use mellin_core::padic::{psi_p, unit_average, DirichletCharData, PAdicRational, PadicCharacter, PadicSdc};
use mellin_core::padic_zeta::local_factor;
use mellin_core::C64;
use proptest::prelude::*;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

/// `n / p^k` with small `n`, `k`.
fn rat(p: u64, n: i64, k: i64) -> PAdicRational {
    PAdicRational::new(p, n, 1).unwrap().mul(&PAdicRational::p_power(p, -k))
}

fn sdc(p: u64, an: i64, ak: i64, bn: i64, bk: i64) -> Option<PadicSdc> {
    if an == 0 {
        return None;
    }
    PadicSdc::new(rat(p, an, ak), rat(p, bn, bk)).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn cocycle(p in prime(), an in -20i64..20, ak in -2i64..3, bn in -20i64..20, bk in -2i64..3,
               xn in -200i64..200, xk in -2i64..4, yn in -200i64..200, yk in -2i64..4) {
        let Some(f) = sdc(p, an, ak, bn, bk) else { return Ok(()) };
        let (x, y) = (rat(p, xn, xk), rat(p, yn, yk));
        let lhs = f.eval(&x.add(&y)) / (f.eval(&x) * f.eval(&y));
        let rhs = psi_p(&f.a.mul(&x).mul(&y));
        prop_assert!((lhs - rhs).norm() <= 1e-12, "{} vs {}", lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn coset_constancy(p in prop::sample::select(vec![3u64, 5]), an in 1i64..12, ak in -1i64..2, bn in -12i64..12, bk in -1i64..2,
                       yn in 1i64..30, yk in -1i64..3, twist in 0u64..4) {
        let Some(f) = sdc(p, an, ak, bn, bk) else { return Ok(()) };
        let y = rat(p, yn, yk);
        let chars = DirichletCharData::all(p, 1).unwrap();
        let chi = &chars[twist as usize % chars.len()];
        let base = unit_average(&f, Some(chi), &y, 0).unwrap();
        for margin in 1..3 {
            let v = unit_average(&f, Some(chi), &y, margin).unwrap();
            prop_assert!((v - base).norm() <= 1e-12, "margin {}: {} vs {}", margin, v, base);
        }
    }

    #[test]
    fn equivariance(p in prop::sample::select(vec![3u64, 5, 7]), an in 1i64..12, ak in -1i64..2, bn in -12i64..12, bk in -1i64..2,
                    yn in 1i64..30, yk in -1i64..3, u in 1i64..50, t in 0u64..6) {
        prop_assume!(u % p as i64 != 0);
        let Some(f) = sdc(p, an, ak, bn, bk) else { return Ok(()) };
        let y = rat(p, yn, yk);
        let chi = DirichletCharData::new(p, 1, t % (p - 1)).unwrap();
        let uy = y.mul(&PAdicRational::new(p, u, 1).unwrap());
        let lhs = unit_average(&f, Some(&chi), &uy, 0).unwrap();
        let rhs = chi.value(u).conj() * unit_average(&f, Some(&chi), &y, 0).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn scaling_covariance_random(p in prop::sample::select(vec![3u64, 5]), an in 1i64..10, ak in -1i64..2, bn in -10i64..10, bk in -1i64..2,
                                 cn in 1i64..20, ck in -1i64..2, t in 0u64..4, re in 0.2..1.8f64, im in -5.0..5.0f64) {
        prop_assume!(cn % p as i64 != 0);
        let Some(f) = sdc(p, an, ak, bn, bk) else { return Ok(()) };
        let chi = PadicCharacter::ramified(DirichletCharData::new(p, 1, t % (p - 1)).unwrap());
        let cc = rat(p, cn, ck);
        let g = f.scaled(&cc);
        let s = C64::new(re, im);
        let lhs = local_factor(&g, &chi).unwrap().eval(s).unwrap();
        let rhs = (-s * cc.abs_p().ln()).exp() * chi.value(-ck, cn).conj() * local_factor(&f, &chi).unwrap().eval(s).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-11 * rhs.norm().max(1.0), "{} vs {}", lhs, rhs);
    }
}

#[test]
fn oracle_is_invariant_under_margin_and_window() {
    let s = C64::new(0.7, 1.0);
    for (p, a, b) in [(3u64, "1", "0"), (3, "2/9", "1/3"), (5, "1/5", "2"), (2, "3", "1/2")] {
        let f = PadicSdc::parse(p, a, b).unwrap();
        let chars: Vec<PadicCharacter> = std::iter::once(PadicCharacter::trivial())
            .chain(if p == 2 { vec![] } else { DirichletCharData::all(p, 1).unwrap() }.into_iter().map(PadicCharacter::ramified))
            .collect();
        for chi in chars {
            let base = oracle_padic_mellin(&f, &chi, s, PadicOracleOptions::default()).unwrap().value;
            for opts in [
                PadicOracleOptions { margin: 1, ..Default::default() },
                PadicOracleOptions { widen: 2, ..Default::default() },
                PadicOracleOptions { margin: 1, widen: 1, guard: 3 },
            ] {
                let v = oracle_padic_mellin(&f, &chi, s, opts).unwrap().value;
                assert!((v - base).norm() <= 1e-14 * base.norm().max(1.0), "p={p} a={a} b={b} {opts:?}: {v} vs {base}");
            }
        }
    }
}

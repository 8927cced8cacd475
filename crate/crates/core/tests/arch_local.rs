use std::time::Instant;

use mellin_core::arch_zeta::*;
use mellin_core::oracle::*;
use mellin_core::C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn close(got: C64, want: C64, tol: f64) -> bool {
    (got - want).norm() <= tol * want.norm().max(1e-300)
}

#[test]
fn real_closed_form_matches_oracle() {
    let opts = ArchOracleOptions { rotate: false, ..Default::default() };
    let t = Instant::now();
    for (a, b) in [(1.0, 0.0), (1.0, 1.0), (2.0, 0.5), (-0.5, 1.5)] {
        for odd in [false, true] {
            if odd && b == 0.0 {
                continue;
            }
            let chi = if odd { ArchCharacter::RealSign } else { ArchCharacter::Trivial };
            for s in [c(0.7, 0.0), c(0.4, 2.0), c(1.3, -1.0), c(2.2, 0.5)] {
                let o = oracle_real_mellin(a, b, s, odd, &opts).unwrap();
                let z = zeta_real(a, b, s, chi).unwrap();
                assert!(close(z, o.value, 1e-6), "a={a} b={b} odd={odd} s={s}: {z} vs {}", o.value);
                assert!(o.consistency_ratios().iter().all(|&r| r >= 1.8), "{:?}", o.consistency_ratios());
            }
        }
    }
    eprintln!("real oracle: {:?}", t.elapsed());
}

#[test]
fn odd_oracle_vanishes_without_linear_term() {
    let o = oracle_real_mellin(1.0, 0.0, c(0.6, 1.0), true, &ArchOracleOptions::default()).unwrap();
    assert!(o.value.norm() < 1e-8);
}

#[test]
fn hermitian_closed_form_matches_oracle() {
    let t = Instant::now();
    let opts = ArchOracleOptions::default();
    for (a, b) in [(1.0, c(0.0, 0.0)), (1.0, c(0.3, 0.2)), (2.0, c(-0.4, 0.5))] {
        for n in [-2i64, -1, 0, 1, 2] {
            for s in [c(0.6, 1.0), c(1.0, 0.0), c(0.3, -2.0), c(1.5, 0.5)] {
                let o = oracle_complex_hermitian(a, b, s, n, &opts).unwrap();
                let z = zeta_complex_hermitian(a, b, s, n).unwrap();
                if z.norm() == 0.0 {
                    assert!(o.value.norm() < 1e-7, "a={a} b={b} n={n} s={s}: {}", o.value);
                } else {
                    assert!(close(z, o.value, 1e-5), "a={a} b={b} n={n} s={s}: {z} vs {}", o.value);
                }
            }
        }
    }
    eprintln!("hermitian oracle: {:?}", t.elapsed());
}

#[test]
fn complex_square_closed_form_matches_oracle() {
    let t = Instant::now();
    let opts = ArchOracleOptions { radial_tol: 1e-11, angular_tol: 1e-9, ..Default::default() };
    let cases = [
        (c(1.0, 0.0), c(0.0, 0.0), 0i64),
        (c(0.6, 0.8), c(0.0, 0.0), 2),
        (c(1.0, 0.0), c(0.0, 0.0), -2),
        (c(1.0, 0.0), c(0.3, 0.0), 0),
        (c(0.5, -0.5), c(0.2, 0.3), 0),
    ];
    for (a, b, n) in cases {
        for s in [c(0.6, 1.0), c(0.4, 0.0), c(0.8, -2.0), c(1.3, 0.5)] {
            let o = oracle_complex_square(a, b, s, n, &opts).unwrap();
            let z = zeta_complex_square(a, b, s, n).unwrap();
            assert!(close(z, o.value, 1e-5), "a={a} b={b} n={n} s={s}: {z} vs {} ({:?})", o.value, o.raw);
        }
    }
    eprintln!("square oracle: {:?}", t.elapsed());
}

#[test]
fn radial_closed_form_matches_oracle() {
    let t = Instant::now();
    let opts = ArchOracleOptions::default();
    for n in 2..=4u32 {
        for (a, bn) in [(1.0, 0.0), (1.0, 1.0), (0.7, 0.6)] {
            for s in [c(1.2, 0.7), c(1.0, 0.0), c(0.5, -1.5), c(2.5, 1.0)] {
                let o = oracle_radial(n, a, bn, s, &opts).unwrap();
                let z = zeta_rn_radial(n, a, bn, s).unwrap();
                assert!(close(z, o.value, 1e-5), "n={n} a={a} b={bn} s={s}: {z} vs {}", o.value);
                assert!(o.consistency_ratios().iter().all(|&r| r >= 1.8), "{:?}", o.consistency_ratios());
            }
        }
    }
    eprintln!("radial oracle: {:?}", t.elapsed());
}

use std::f64::consts::PI;

use proptest::prelude::*;
use rfseries::numerics::*;
use rfseries::Complex64;

/// `sum_{n < terms} (n + a)^{-s}` plus the integral bound of the remainder.
fn zeta_by_summation(s: f64, a: f64, terms: usize) -> f64 {
    let mut sum = 0.0;
    for n in (0..terms).rev() {
        sum += (n as f64 + a).powf(-s);
    }
    let x = terms as f64 + a;
    // trapezoid-corrected integral tail
    sum + x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s)
}

#[test]
fn zeta_matches_direct_summation() {
    for (s, a, exact) in [
        (2.0, 1.0, PI * PI / 6.0),
        (2.0, 0.5, PI * PI / 2.0),
        (3.0, 1.0, 1.202_056_903_159_594_3),
    ] {
        let z = hurwitz_zeta(s, a).unwrap();
        let oracle = zeta_by_summation(s, a, 10_000_000);
        assert!((z / oracle - 1.0).abs() <= 1e-10, "s={s} a={a}: {z} vs {oracle}");
        assert!((z / exact - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn zeta_reflection_identity() {
    // zeta(2, t) + zeta(2, 1 - t) = pi^2 / sin^2(pi t) - ... for t in (0, 1)
    for t in [0.01, 0.1, 0.3, 0.5, 0.77, 0.999] {
        let lhs = hurwitz_zeta(2.0, t).unwrap() + hurwitz_zeta(2.0, 1.0 - t).unwrap();
        // sum over all integers n of (t + n)^{-2}
        let rhs = (PI / (PI * t).sin()).powi(2);
        assert!((lhs / rhs - 1.0).abs() < 1e-12, "t={t}");
    }
}

#[test]
fn periodic_quadrature_examples() {
    assert!((periodic_quadrature(|_| 1.0, 7) - 1.0).abs() < 1e-15);
    let s = periodic_quadrature(|t| (PI * t).sin().powi(2), 64);
    assert!((s - 0.5).abs() < 1e-14);
    assert!(periodic_quadrature(|t| (2.0 * PI * t).cos(), 64).abs() < 1e-14);
}

#[test]
fn gaussian_stream_is_deterministic_per_stream() {
    let a = sample_standard_complex_gaussian(32, RngState::new(3, 7)).unwrap();
    let b = sample_standard_complex_gaussian(32, RngState::new(3, 7)).unwrap();
    let c = sample_standard_complex_gaussian(32, RngState::new(3, 8)).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert!(sample_standard_complex_gaussian(0, RngState::new(3, 7)).is_err());
}

proptest! {
    #[test]
    fn fft_matches_direct(values in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 1..80)) {
        let v: Vec<Complex64> = values.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
        let fast = dft(&v);
        let slow = dft_direct(&v);
        let scale = v.iter().map(|z| z.norm()).sum::<f64>().max(1.0);
        for (x, y) in fast.iter().zip(&slow) {
            prop_assert!((x - y).norm() <= 1e-12 * scale);
        }
        let back = inverse_dft(&fast);
        for (x, y) in back.iter().zip(&v) {
            prop_assert!((x - y).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn zeta_decreases_in_shift(s in 1.1f64..6.0, a in 0.01f64..0.99) {
        let lo = hurwitz_zeta(s, a).unwrap();
        let hi = hurwitz_zeta(s, a + 0.01).unwrap();
        prop_assert!(hi < lo);
        // zeta(s, a) = a^{-s} + zeta(s, a + 1) and zeta(s, a + 1) < zeta(s, 1) for a > 0
        prop_assert!(lo - a.powf(-s) < hurwitz_zeta(s, 1.0).unwrap() * (1.0 + 1e-12));
    }
}

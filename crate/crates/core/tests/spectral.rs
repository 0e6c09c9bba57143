use std::f64::consts::PI;

use nalgebra::DMatrix;
use rfseries::fgn::*;
use statrs::function::gamma::gamma;

fn hp(h: f64) -> HurstParameter {
    HurstParameter::new(h).unwrap()
}

/// Independent closed form for the fGn spectral normalization.
fn normalization_oracle(h: f64) -> f64 {
    (PI * h).sin() * gamma(2.0 * h + 1.0) / (2.0 * PI).powf(2.0 * h + 1.0)
}

#[test]
fn normalizing_constant_matches_closed_form() {
    for h in [0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9, 0.95] {
        let c = normalizing_constant(hp(h), DEFAULT_NORMALIZATION_QUAD).unwrap();
        let oracle = normalization_oracle(h);
        assert!((c / oracle - 1.0).abs() < 1e-7, "H={h}: {c} vs {oracle}");
    }
}

#[test]
fn density_integrates_to_one() {
    for h in [0.25, 0.4, 0.6, 0.75, 0.9] {
        let d = SpectralDensity::new(hp(h)).unwrap();
        let total: f64 = d
            .quadrature_nodes(4096)
            .unwrap()
            .iter()
            .map(|&(_, w)| w)
            .sum();
        assert!((total - 1.0).abs() < 1e-6, "H={h}: {total}");
    }
}

#[test]
fn covariance_at_zero_lag_is_one() {
    for i in 0..20 {
        assert_eq!(fgn_covariance(hp(i as f64 / 20.0), 0), 1.0);
    }
}

#[test]
fn covariance_is_positive_and_decays_for_long_memory() {
    for h in [0.55, 0.6, 0.75, 0.9, 0.99] {
        for k in 1..=10_000i64 {
            let g = fgn_covariance(hp(h), k);
            assert!(g > 0.0 && g <= (k as f64).powf(-2.0 * (1.0 - h)), "H={h} k={k} g={g}");
        }
    }
}

#[test]
fn toeplitz_sections_are_positive_semidefinite() {
    for h in [0.0, 0.25, 0.5, 0.75, 0.9] {
        let cov = CovarianceSequence::fgn(hp(h));
        let n = 256;
        let m = DMatrix::from_fn(n, n, |i, j| cov.gamma(i as i64 - j as i64).re);
        let min = m.symmetric_eigenvalues().min();
        assert!(min >= -1e-9, "H={h}: min eigenvalue {min}");
    }
}

#[test]
fn bochner_consistency_for_five_hurst_values() {
    for h in [0.25, 0.4, 0.6, 0.75, 0.9] {
        let d = SpectralDensity::new(hp(h)).unwrap();
        let r = bochner_consistency(&d, 10, 4096).unwrap();
        assert!(r.max_error <= 1e-4, "H={h}: {}", r.max_error);
        // the k = 0 entry is the normalization error
        let k0 = r.lags.iter().find(|l| l.0 == 0).unwrap();
        assert!((k0.3 - (k0.1 - 1.0).abs()).abs() < 1e-15);
    }
    let white = SpectralDensity::new(hp(0.5)).unwrap();
    assert!(bochner_consistency(&white, 10, 64).unwrap().max_error <= 1e-12);
}

#[test]
fn small_hurst_density_scales_like_power() {
    let d = SpectralDensity::new(hp(0.25)).unwrap();
    let scaled: Vec<f64> = [1e-2, 1e-3, 1e-4]
        .iter()
        .map(|&t| d.evaluate(t).unwrap() / t.powf(0.5))
        .collect();
    let (lo, hi) = scaled
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(l, h), &v| (l.min(v), h.max(v)));
    assert!(lo > 0.0 && hi / lo < 1.1, "{scaled:?}");
    let values: Vec<f64> = (1..=6).map(|k| d.evaluate(10f64.powi(-k)).unwrap()).collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn density_ratio_decreases_toward_the_endpoint() {
    let low = SpectralDensity::new(hp(0.5)).unwrap();
    let high = SpectralDensity::new(hp(0.75)).unwrap();
    let ratios: Vec<f64> = [1e-2, 1e-3, 1e-4]
        .iter()
        .map(|&t| low.evaluate(t).unwrap() / high.evaluate(t).unwrap())
        .collect();
    assert!(ratios[0] > ratios[1] && ratios[1] > ratios[2], "{ratios:?}");

    let r = density_ratio_bound(&low, &high, 1 << 12).unwrap();
    for &(t, _) in &r.evaluated {
        assert!(low.evaluate(t).unwrap() <= r.bound * high.evaluate(t).unwrap() * (1.0 + 1e-12));
    }
    let coarse = density_ratio_bound(&low, &high, 1 << 10).unwrap().bound;
    let fine = density_ratio_bound(&low, &high, 1 << 14).unwrap().bound;
    assert!(((coarse - fine) / fine).abs() < 5e-4, "{coarse} vs {fine}");
}

#[test]
fn lp_membership_thresholds() {
    let d = SpectralDensity::new(hp(0.6)).unwrap();
    assert_eq!(lp_membership_diagnostic(&d, 1.0).unwrap().member, Some(true));
    assert_eq!(lp_membership_diagnostic(&d, 5.5).unwrap().member, Some(false));
    let d = SpectralDensity::new(hp(0.75)).unwrap();
    assert_eq!(lp_membership_diagnostic(&d, 1.0).unwrap().member, Some(true));
    assert_eq!(lp_membership_diagnostic(&d, 3.0).unwrap().member, Some(false));
}

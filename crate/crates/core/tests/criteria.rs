use nalgebra::DMatrix;
use proptest::prelude::*;
use rfseries::criteria::*;
use rfseries::fgn::{CovarianceSequence, DecayBound, HurstParameter};
use rfseries::numerics::linalg::power_iteration;
use rfseries::numerics::RngState;
use rfseries::series::{CoefficientDecay, CoefficientSpec, Sides};
use rfseries::Complex64;

fn hp(h: f64) -> HurstParameter {
    HurstParameter::new(h).unwrap()
}

fn verdict(alpha: f64, b: f64) -> Verdict {
    let f = CoefficientSpec::power_law(alpha).unwrap();
    check_condition7(&f, b, 2048, TailModel::Auto).unwrap().verdict
}

#[test]
fn power_law_verdicts_follow_the_threshold() {
    let mut g = RngState::new(2024, 0).gaussians();
    let mut checked = 0;
    while checked < 50 {
        let u = g.complex_normal();
        let b = 0.5 * (0.5 + 0.5 * (u.re / 3.0).tanh());
        let alpha = 0.501 + 1.2 * (0.5 + 0.5 * (u.im / 3.0).tanh());
        let star = power_law_threshold(b).unwrap();
        if (alpha - star).abs() < 0.02 {
            continue;
        }
        let expected = if alpha > star { Verdict::Converges } else { Verdict::Diverges };
        assert_eq!(verdict(alpha, b), expected, "alpha={alpha} b={b}");
        checked += 1;
    }
}

#[test]
fn long_memory_instances() {
    assert_eq!(verdict(0.9, 0.25), Verdict::Converges);
    assert_eq!(verdict(1.0, 0.25), Verdict::Converges);
    assert_eq!(verdict(0.6, 0.25), Verdict::Diverges);
}

#[test]
fn classical_independent_case() {
    // one-sided a_n = n^{-alpha} with b = 0; alpha <= 1/2 is built directly
    for (alpha, expected) in [(0.45, Verdict::Diverges), (0.5, Verdict::Diverges), (0.55, Verdict::Converges), (1.0, Verdict::Converges)] {
        let f = CoefficientSpec::PowerLaw {
            alpha,
            scale: 1.0,
            alternating: false,
            sides: Sides::One,
        };
        let r = check_condition7(&f, 0.0, 1024, TailModel::IntegralComparison).unwrap();
        assert_eq!(r.verdict, expected, "alpha={alpha}");
    }
}

#[test]
fn finite_support_always_converges() {
    let f = CoefficientSpec::FiniteSupport {
        terms: vec![(3, Complex64::new(1.0, 0.0)), (-40, Complex64::new(0.0, 2.0))],
    };
    for b in [0.0, 0.5, 3.0] {
        let r = check_condition7(&f, b, 8, TailModel::Auto).unwrap();
        assert_eq!(r.verdict, Verdict::Converges);
        assert_eq!(r.tail_estimate, 0.0);
        assert!(r.partial_sums.last().unwrap().1.is_finite());
    }
}

#[test]
fn explicit_arrays_need_decay_metadata() {
    let values: Vec<Complex64> = (-64i64..=64)
        .map(|n| if n == 0 { Complex64::default() } else { Complex64::new((n.abs() as f64).powf(-1.2), 0.0) })
        .collect();
    let bare = CoefficientSpec::Explicit {
        first_index: -64,
        values: values.clone(),
        decay: None,
    };
    assert_eq!(check_condition7(&bare, 0.2, 64, TailModel::Auto).unwrap().verdict, Verdict::Inconclusive);
    let declared = CoefficientSpec::Explicit {
        first_index: -64,
        values,
        decay: Some(CoefficientDecay { constant: 1.0, alpha: 1.2 }),
    };
    assert_eq!(check_condition7(&declared, 0.2, 64, TailModel::Auto).unwrap().verdict, Verdict::Converges);
    // too slow a declared envelope cannot certify either way
    let slow = CoefficientSpec::Explicit {
        first_index: 0,
        values: vec![],
        decay: Some(CoefficientDecay { constant: 1.0, alpha: 0.6 }),
    };
    assert_eq!(check_condition7(&slow, 0.2, 64, TailModel::Auto).unwrap().verdict, Verdict::Inconclusive);
}

#[test]
fn prefix_only_never_certifies() {
    let f = CoefficientSpec::power_law(2.0).unwrap();
    assert_eq!(check_condition7(&f, 0.0, 64, TailModel::PrefixOnly).unwrap().verdict, Verdict::Inconclusive);
}

proptest! {
    #[test]
    fn verdict_matches_threshold(alpha in 0.51f64..2.0, b in 0.0f64..1.0) {
        let star = b + 0.5;
        prop_assume!((alpha - star).abs() >= 0.02);
        let expected = if alpha > star { Verdict::Converges } else { Verdict::Diverges };
        prop_assert_eq!(verdict(alpha, b), expected);
    }
}

#[test]
fn decay_bound_for_long_memory() {
    for h in [0.6, 0.75, 0.9] {
        assert!(covariance_decay_check(hp(h), 10_000).unwrap(), "H={h}");
    }
}

#[test]
fn schur_examples() {
    let template = CovarianceSequence::power_law(0.5).unwrap();
    let r = schur_test(&template, 0.3, 0.5, 10_000).unwrap();
    assert!(r.passes, "{}", r.note);
    let fgn = CovarianceSequence::fgn(hp(0.75));
    let r = schur_test(&fgn, 0.25, 0.5, 10_000).unwrap();
    assert!(r.passes && r.k.is_finite());
    // a + b + c <= 1: the weighted tail cannot be bounded
    let r = schur_test(&template, 0.1, 0.3, 256).unwrap();
    assert!(!r.passes);
    // growth exponent c - b - min(a, b + c, a + b + c - 1) > 0
    let r = schur_test(&template, 0.1, 0.9, 256).unwrap();
    assert!(!r.passes && r.growth_exponent > 0.0);
}

#[test]
fn default_exponent_keeps_a_margin() {
    let fgn = CovarianceSequence::fgn(hp(0.75));
    assert_eq!(default_schur_exponent(&fgn, 0.25), 0.5);
    let white = CovarianceSequence::White;
    assert!((default_schur_exponent(&white, 0.1) - 0.95).abs() < 1e-15);
}

#[test]
fn matrix_entries_are_symmetric_and_nonnegative() {
    let explicit = CovarianceSequence::explicit(
        vec![Complex64::new(1.0, 0.0), Complex64::new(0.2, 0.3), Complex64::new(-0.1, 0.05)],
        Some(DecayBound { constant: 1.0, exponent: 1.0 }),
    )
    .unwrap();
    for gamma in [CovarianceSequence::fgn(hp(0.75)), CovarianceSequence::fgn(hp(0.3)), explicit] {
        assert_eq!(schur_matrix_entry(&gamma, 0.25, 0, 0), 0.0);
        for n in -6i64..=6 {
            for m in -6i64..=6 {
                let a = schur_matrix_entry(&gamma, 0.25, n, m);
                assert!(a >= 0.0);
                assert_eq!(a, schur_matrix_entry(&gamma, 0.25, m, n));
            }
        }
    }
}

fn dense_norm(gamma: &CovarianceSequence, b: f64, n_max: usize) -> f64 {
    let len = 2 * n_max + 1;
    let idx = |i: usize| i as i64 - n_max as i64;
    let a = DMatrix::from_fn(len, len, |i, j| schur_matrix_entry(gamma, b, idx(i), idx(j)));
    a.symmetric_eigenvalues().iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

#[test]
fn power_iteration_matches_dense_eigensolver() {
    let gamma = CovarianceSequence::fgn(hp(0.75));
    let fast = operator_norm_estimate(&gamma, 0.25, 256).unwrap().value;
    let dense = dense_norm(&gamma, 0.25, 256);
    assert!((fast / dense - 1.0).abs() < 1e-6, "{fast} vs {dense}");
}

#[test]
fn power_iteration_small_cases() {
    let swap = power_iteration(2, |x, y| {
        y[0] = x[1];
        y[1] = x[0];
    }, 1e-8, 100)
    .unwrap();
    assert!((swap.value - 1.0).abs() < 1e-12);
    let diag = operator_norm_estimate(&CovarianceSequence::White, 0.25, 64).unwrap();
    assert!((diag.value - 1.0).abs() < 1e-8);
}

#[test]
fn schur_constant_dominates_every_truncation() {
    let gamma = CovarianceSequence::fgn(hp(0.75));
    let sizes: Vec<usize> = (6..=12).map(|e| 1usize << e).collect();
    let schur = schur_test(&gamma, 0.25, 0.5, 1 << 12).unwrap();
    assert!(schur.passes);
    let ladder = operator_norm_ladder(&gamma, 0.25, &sizes, 0.05).unwrap();
    for e in &ladder.entries {
        assert!(e.value <= schur.k, "n_max={}: {} > {}", e.n_max, e.value, schur.k);
        // the Schur bound on the section itself is also an upper bound
        let section = schur_test(&gamma, 0.25, 0.5, e.n_max).unwrap();
        assert!(e.value <= section.k);
    }
    assert!(ladder.increasing);
    assert!(ladder.stabilized, "last ratio {}", ladder.last_ratio);
}

#[test]
fn invalid_inputs() {
    let gamma = CovarianceSequence::White;
    assert!(schur_test(&gamma, 0.1, 0.5, 8).is_err());
    assert!(schur_test(&gamma, -0.1, 0.5, 64).is_err());
    assert!(schur_test(&gamma, 0.1, 0.0, 64).is_err());
    assert!(operator_norm_estimate(&gamma, 0.1, 8).is_err());
    assert!(check_condition7(&CoefficientSpec::power_law(1.0).unwrap(), -1.0, 64, TailModel::Auto).is_err());
}

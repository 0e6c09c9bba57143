//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line
//! (written straight to stderr so it survives output capture) and then
//! asserts the same condition.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rfseries::analysis::{comparison_check, oscillation_mc, ScaledModel, SeriesModel, SeriesNoise, XfModel};
use rfseries::criteria::{
    check_condition7, covariance_decay_check, default_schur_exponent, operator_norm_ladder, power_law_threshold,
    schur_test, TailModel, Verdict,
};
use rfseries::fgn::{
    bochner_consistency, density_ratio_bound, fgn_covariance, normalizing_constant, CovarianceSequence,
    HurstParameter, SpectralDensity, DEFAULT_NORMALIZATION_QUAD,
};
use rfseries::numerics::{hurwitz_zeta, RngState};
use rfseries::sampling::{sample_iid, FgnSampler, MeasureSpec};
use rfseries::series::{character, partial_sum_path, CoefficientSpec};
use rfseries::Complex64;

/// Runtimes are part of the criteria, so the checks never overlap.
static SERIAL: Mutex<()> = Mutex::new(());

fn hp(h: f64) -> HurstParameter {
    HurstParameter::new(h).unwrap()
}

fn report(id: u32, name: &str, ok: bool, elapsed: Duration, limit: Duration, detail: &str) {
    let status = if ok && elapsed < limit { "PASS" } else { "FAIL" };
    let line = format!(
        "criterion {id:>2} {status} {name}: {detail} ({:.2} s, limit {} s)\n",
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
    assert!(ok, "criterion {id} ({name}) failed: {detail}");
    assert!(elapsed < limit, "criterion {id} ({name}) too slow: {elapsed:?}");
}

fn mean_se(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    let v = x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (v / n).sqrt())
}

/// Direct summation of `(n + a)^{-s}` over `10^7` terms plus the integral
/// and half-term corrections for the remainder.
fn zeta_oracle(s: f64, a: f64) -> f64 {
    const TERMS: usize = 10_000_000;
    // summed smallest first to limit rounding
    let head: f64 = (0..TERMS).rev().map(|n| (n as f64 + a).powf(-s)).sum();
    let x = TERMS as f64 + a;
    head + x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s) + s * x.powf(-s - 1.0) / 12.0
}

#[test]
fn criterion_01_hurwitz_zeta() {
    let _serial = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let cases = [(2.0, 1.0), (2.0, 0.5), (3.0, 1.0)];
    let oracles: Vec<f64> = cases.iter().map(|&(s, a)| zeta_oracle(s, a)).collect();
    let start = Instant::now();
    let values: Vec<f64> = cases.iter().map(|&(s, a)| hurwitz_zeta(s, a).unwrap()).collect();
    let elapsed = start.elapsed();
    let worst = values
        .iter()
        .zip(&oracles)
        .map(|(v, o)| ((v - o) / o).abs())
        .fold(0.0, f64::max);
    report(
        1,
        "Hurwitz zeta vs direct summation",
        worst <= 1e-10,
        elapsed,
        Duration::from_secs(1),
        &format!("max relative error {worst:.2e}"),
    );
}

#[test]
fn criterion_02_normalization() {
    let _serial = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for h in [0.25, 0.4, 0.6, 0.75, 0.9] {
        let d = SpectralDensity::new(hp(h)).unwrap();
        let total: f64 = d.quadrature_nodes(4096).unwrap().iter().map(|&(_, w)| w).sum();
        worst = worst.max((total - 1.0).abs());
    }
    let white = normalizing_constant(hp(0.5), DEFAULT_NORMALIZATION_QUAD).unwrap();
    let white_err = (white - 1.0 / (4.0 * PI * PI)).abs();
    let elapsed = start.elapsed();
    report(
        2,
        "spectral density normalization",
        worst <= 1e-6 && white_err <= 1e-8,
        elapsed,
        Duration::from_secs(5),
        &format!("max |int phi - 1| = {worst:.2e}, |C(1/2) - 1/(4 pi^2)| = {white_err:.2e}"),
    );
}

#[test]
fn criterion_03_bochner_consistency() {
    let _serial = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for h in [0.25, 0.4, 0.6, 0.75, 0.9] {
        let d = SpectralDensity::new(hp(h)).unwrap();
        worst = worst.max(bochner_consistency(&d, 10, 4096).unwrap().max_error);
    }
    let white = bochner_consistency(&SpectralDensity::new(hp(0.5)).unwrap(), 10, 4096)
        .unwrap()
        .max_error;
    let elapsed = start.elapsed();
    report(
        3,
        "Fourier coefficients of phi_H equal gamma_H",
        worst <= 1e-4 && white <= 1e-12,
        elapsed,
        Duration::from_secs(30),
        &format!("max error {worst:.2e}, white noise {white:.2e}"),
    );
}

#[test]
fn criterion_04_fgn_sampler() {
    let _serial = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    const REPS: u64 = 100_000;
    let start = Instant::now();
    let mut ok = true;
    let mut worst_z: f64 = 0.0;
    for h in [0.25, 0.5, 0.75] {
        let sampler = FgnSampler::new(hp(h), 6).unwrap();
        let draws: Vec<Vec<Complex64>> = (0..REPS)
            .map(|r| sampler.draw(&mut RngState::new(4, r).gaussians()))
            .collect();
        for k in 0..6 {
            let prods: Vec<f64> = draws.iter().map(|d| (d[0] * d[k].conj()).re).collect();
            let (m, se) = mean_se(&prods);
            let z = (m - fgn_covariance(hp(h), k as i64)).abs() / se;
            worst_z = worst_z.max(z);
            ok &= z <= 4.0;
        }
        let sq: Vec<Complex64> = draws.iter().map(|d| d[0] * d[0]).collect();
        for part in [sq.iter().map(|z| z.re).collect::<Vec<_>>(), sq.iter().map(|z| z.im).collect()] {
            let (m, se) = mean_se(&part);
            worst_z = worst_z.max(m.abs() / se);
            ok &= m.abs() <= 4.0 * se;
        }
    }
    let elapsed = start.elapsed();
    report(
        4,
        "fGn sampler covariance and pseudo-covariance",
        ok,
        elapsed,
        Duration::from_secs(60),
        &format!("largest deviation {worst_z:.2} standard errors"),
    );
}

#[test]
fn criterion_05_synthesis() {
    let _serial = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let (order, grid) = (32usize, 128usize);
    let n = order as i64;
    let inputs: Vec<_> = (0..20u64)
        .map(|seed| {
            let values = RngState::new(500 + seed, 0).gaussians().complex_normals(2 * order + 1);
            let coeffs = CoefficientSpec::Explicit {
                first_index: -n,
                values,
                decay: None,
            };
            (coeffs, sample_iid(-n, 2 * order + 1, RngState::new(600 + seed, 0)).unwrap())
        })
        .collect();
    let start = Instant::now();
    let paths: Vec<_> = inputs
        .iter()
        .map(|(c, xi)| partial_sum_path(c, xi, order, grid).unwrap())
        .collect();
    let elapsed = start.elapsed();
    let mut worst: f64 = 0.0;
    for ((coeffs, noise), path) in inputs.iter().zip(&paths) {
        for (k, v) in path.path.values.iter().enumerate() {
            let t = k as f64 / grid as f64;
            let direct: Complex64 = (-n..=n)
                .map(|j| coeffs.coefficient(j) * noise.get(j).unwrap() * character(j, t))
                .sum();
            worst = worst.max((v - direct).norm());
        }
    }
    report(
        5,
        "fast synthesis vs direct summation",
        worst <= 1e-10,
        elapsed,
        Duration::from_secs(1),
        &format!("max deviation {worst:.2e}"),
    );
}

#[test]
fn criterion_06_oscillation_of_a_character() {
    let _serial = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let e1 = |t: f64| character(1, t);
    let model = XfModel::new(&e1, &MeasureSpec::Lebesgue, 64).unwrap();
    let est = oscillation_mc(&model, 10_000, 11).unwrap();
    let elapsed = start.elapsed();
    let z = (est.mean - PI.sqrt()).abs() / est.stderr;
    report(
        6,
        "E osc of a rotating Gaussian is sqrt(pi)",
        z <= 3.0,
        elapsed,
        Duration::from_secs(30),
        &format!("{:.4} +/- {:.4} ({z:.2} stderr)", est.mean, est.stderr),
    );
}

#[test]
fn criterion_07_tail_sum_checker() {
    let _serial = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let verdict = |alpha: f64, b: f64| {
        let f = CoefficientSpec::power_law(alpha).unwrap();
        check_condition7(&f, b, 4096, TailModel::Auto).unwrap().verdict
    };
    let mut g = RngState::new(77, 0).gaussians();
    let (mut checked, mut agree) = (0, 0);
    while checked < 50 {
        let u = g.complex_normal();
        let b = 0.5 * (0.5 + 0.5 * (u.re / 3.0).tanh());
        let alpha = 0.501 + 1.2 * (0.5 + 0.5 * (u.im / 3.0).tanh());
        let star = power_law_threshold(b).unwrap();
        if (alpha - star).abs() < 0.02 {
            continue;
        }
        let expected = if alpha > star { Verdict::Converges } else { Verdict::Diverges };
        agree += usize::from(verdict(alpha, b) == expected);
        checked += 1;
    }
    let long_memory = verdict(0.9, 0.25) == Verdict::Converges && verdict(0.6, 0.25) == Verdict::Diverges;
    let elapsed = start.elapsed();
    report(
        7,
        "weighted tail-sum verdicts",
        agree == 50 && long_memory,
        elapsed,
        Duration::from_secs(5),
        &format!("{agree}/50 random pairs agree, long-memory instances ok: {long_memory}"),
    );
}

#[test]
fn criterion_08_schur_and_decay() {
    let _serial = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let decay = [0.6, 0.75, 0.9]
        .iter()
        .all(|&h| covariance_decay_check(hp(h), 10_000).unwrap());
    let gamma = CovarianceSequence::fgn(hp(0.75));
    let schur = schur_test(&gamma, 0.25, 0.5, 10_000).unwrap();
    let sizes: Vec<usize> = (6..=12).map(|j| 1usize << j).collect();
    let ladder = operator_norm_ladder(&gamma, 0.25, &sizes, 0.05).unwrap();
    let dominated = ladder.entries.iter().all(|e| e.value <= schur.k);
    let elapsed = start.elapsed();
    let top = ladder.entries.last().unwrap().value;
    report(
        8,
        "covariance decay, Schur test, operator-norm ladder",
        decay && schur.passes && dominated && ladder.stabilized,
        elapsed,
        Duration::from_secs(120),
        &format!(
            "decay {decay}, Schur K = {:.3} (passes {}), norm at 2^12 = {top:.4}, last ratio {:.4}",
            schur.k, schur.passes, ladder.last_ratio
        ),
    );
}

#[test]
fn criterion_09_comparison_principle() {
    let _serial = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    const REPS: usize = 10_000;
    let start = Instant::now();
    let hurst = hp(0.75);
    let (order, grid, b) = (32usize, 256usize, 0.25);
    let f = CoefficientSpec::power_law(1.0).unwrap();
    let fgn_model = SeriesModel::new(&f, SeriesNoise::Fgn { hurst }, order, grid).unwrap();

    let half = ScaledModel::new(&fgn_model, Complex64::new(0.5, 0.0));
    let scaled = comparison_check(&fgn_model, &half, REPS, 21, true).unwrap();

    let gamma = CovarianceSequence::fgn(hurst);
    let k = schur_test(&gamma, b, default_schur_exponent(&gamma, b), order.max(16)).unwrap().k;
    let iid = SeriesModel::new(&f.weighted(order, b, k.sqrt()), SeriesNoise::Iid, order, grid).unwrap();
    let dominated = comparison_check(&iid, &fgn_model, REPS, 22, true).unwrap();
    let elapsed = start.elapsed();

    let ok = [&scaled, &dominated]
        .iter()
        .all(|r| r.hypothesis_ok && r.conclusion == Some(true));
    report(
        9,
        "comparison principle with factor 4",
        ok,
        elapsed,
        Duration::from_secs(120),
        &format!(
            "X/2: {:.3} <= {:.3}; fGn vs scaled iid: {:.3} <= {:.3}",
            scaled.lhs.mean, scaled.bound, dominated.lhs.mean, dominated.bound
        ),
    );
}

#[test]
fn criterion_10_density_ratio() {
    let _serial = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let low = SpectralDensity::new(hp(0.5)).unwrap();
    let high = SpectralDensity::new(hp(0.75)).unwrap();
    let ratio = |t: f64| low.evaluate(t).unwrap() / high.evaluate(t).unwrap();
    let r = [ratio(1e-2), ratio(1e-3), ratio(1e-4)];
    let decreasing = r[0] > r[1] && r[1] > r[2];
    let coarse = density_ratio_bound(&low, &high, 1 << 10).unwrap();
    let fine = density_ratio_bound(&low, &high, 1 << 14).unwrap();
    let digits = |x: f64| format!("{x:.2e}");
    let stable = digits(coarse.bound) == digits(fine.bound);
    let dominated = [&coarse, &fine].iter().all(|d| {
        d.evaluated
            .iter()
            .all(|&(t, _)| low.evaluate(t).unwrap() <= d.bound * high.evaluate(t).unwrap())
    });
    let elapsed = start.elapsed();
    report(
        10,
        "density ratio bound",
        decreasing && stable && dominated,
        elapsed,
        Duration::from_secs(10),
        &format!(
            "ratios {:.4} > {:.4} > {:.4}, M = {:.6} (2^10) vs {:.6} (2^14)",
            r[0], r[1], r[2], coarse.bound, fine.bound
        ),
    );
}

fn run_cli(args: &[&str]) -> serde_json::Value {
    let out = Command::new(env!("CARGO_BIN_EXE_rfseries"))
        .args(args)
        .env_remove("RFSERIES_PARALLEL")
        .output()
        .unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    v.as_object_mut().unwrap().remove("metadata");
    v
}

#[test]
fn criterion_11_cli_determinism() {
    let _serial = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let dir = tempfile::tempdir().unwrap();
    let csv = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let fgn_csv = csv("fgn.csv");
    let series_csv = csv("series.csv");
    let invocations: Vec<Vec<&str>> = vec![
        vec!["spectral-density", "--H", "0.75", "--grid", "64"],
        vec!["normalizing-constant", "--H", "0.6"],
        vec!["bochner-check", "--H", "0.75", "--k-max", "5", "--n-quad", "512"],
        vec!["density-ratio", "--h1", "0.5", "--h2", "0.75", "--grid", "256"],
        vec!["sample-fgn", "--H", "0.7", "--n", "64", "--seed", "3", "--csv", &fgn_csv],
        vec!["simulate-series", "--f", "power:1.0", "--H", "0.75", "--N", "16", "--seed", "5", "--csv", &series_csv],
        vec!["pseudo-distance", "--f", "power:1.0", "--measure", "fgn:0.75", "--t", "0.1", "--s", "0.3", "--order", "16", "--n-quad", "256"],
        vec!["check-condition7", "--alpha", "0.9", "--b", "0.25", "--n-terms", "512"],
        vec!["schur-test", "--cov", "fgn:0.75", "--b", "0.25", "--c", "0.5", "--n-max", "256"],
        vec!["operator-norm", "--cov", "fgn:0.75", "--b", "0.25", "--ladder", "32,64,128"],
        vec!["covariance-decay", "--H", "0.75", "--k-max", "1000"],
        vec!["oscillation-mc", "--f", "char:1", "--m", "32", "--reps", "100", "--seed", "9"],
        vec!["pmu-norm", "--f", "power:1.0", "--measure", "fgn:0.75", "--order", "8", "--m", "32", "--reps", "100", "--seed", "9"],
        vec!["comparison-check", "--N", "8", "--reps", "200", "--seed", "4", "--pair", "half"],
        vec!["comparison-check", "--N", "8", "--reps", "200", "--seed", "4"],
        vec!["boundedness-diagnostic", "--f", "power:1.5", "--ladder", "8,16,32", "--reps", "100", "--seed", "2"],
        vec!["interval-domination", "--measure", "fgn:0.75", "--lo", "0.1", "--hi", "0.3", "--grid", "256"],
        vec!["supnorm-mc", "--f", "power:1.0", "--H", "0.75", "--N", "16", "--reps", "100", "--seed", "6"],
    ];
    let start = Instant::now();
    let mut mismatched = Vec::new();
    for args in &invocations {
        let first = run_cli(args);
        let csv_first = [&fgn_csv, &series_csv].map(|p| std::fs::read(p).ok());
        let second = run_cli(args);
        let csv_second = [&fgn_csv, &series_csv].map(|p| std::fs::read(p).ok());
        let bytes = |v: &serde_json::Value| serde_json::to_vec_pretty(v).unwrap();
        if bytes(&first) != bytes(&second) || csv_first != csv_second {
            mismatched.push(args[0]);
        }
    }
    let elapsed = start.elapsed();
    assert!(Path::new(&fgn_csv).exists() && Path::new(&series_csv).exists());
    let names: std::collections::BTreeSet<_> = invocations.iter().map(|a| a[0]).collect();
    report(
        11,
        "CLI determinism",
        mismatched.is_empty() && names.len() == 17,
        elapsed,
        Duration::from_secs(10),
        &format!("{} subcommands, {} invocations, mismatches {mismatched:?}", names.len(), invocations.len()),
    );
}

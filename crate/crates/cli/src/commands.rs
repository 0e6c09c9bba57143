//! Subcommand arguments and their dispatch onto the library.

use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use rfseries::analysis::{self, ScaledModel, SeriesModel, SeriesNoise, XfModel};
use rfseries::criteria::{self, TailModel};
use rfseries::fgn::{self, CovarianceSequence, SpectralDensity, DEFAULT_NORMALIZATION_QUAD};
use rfseries::numerics::RngState;
use rfseries::sampling::{sample_fgn, FgnSampler};
use rfseries::series::{self, partial_sum_path, CoefficientSpec};
use rfseries::Complex64;

use crate::specs;
use crate::CliError;

type CmdResult = Result<Outcome, CliError>;

/// What a subcommand produced, before the result document is assembled.
pub struct Outcome {
    pub config: Value,
    pub outputs: Value,
    pub provenance: Value,
}

fn to_value<T: Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Io(e.to_string()))
}

fn outcome<C: Serialize, O: Serialize>(config: &C, outputs: &O, provenance: Value) -> CmdResult {
    Ok(Outcome {
        config: to_value(config)?,
        outputs: to_value(outputs)?,
        provenance,
    })
}

fn replications(seed: u64, reps: usize) -> Value {
    json!({ "seed": seed, "streams": format!("0..{reps}"), "generator": "chacha20" })
}

fn single_draw(seed: u64, stream: u64) -> Value {
    json!({ "seed": seed, "streams": stream.to_string(), "generator": "chacha20" })
}

fn validation(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

/// Writes `t,re,im` rows.
fn write_path_csv(path: &Path, rows: impl Iterator<Item = (f64, Complex64)>) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(["t", "re", "im"]).map_err(io)?;
    for (t, z) in rows {
        w.serialize((t, z.re, z.im)).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))
}

fn noise_kind(h: Option<f64>) -> Result<SeriesNoise, CliError> {
    Ok(match h {
        None => SeriesNoise::Iid,
        Some(h) => SeriesNoise::Fgn {
            hurst: specs::hurst(h)?,
        },
    })
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// fGn spectral density phi_H(t) = 4 C(H) sin^2(pi t) (zeta(2H+1, t) + zeta(2H+1, 1-t)) on a grid, with C(H).
    SpectralDensity(SpectralDensityArgs),
    /// Normalizing constant C(H) making the fGn spectral density integrate to one.
    NormalizingConstant(NormalizingConstantArgs),
    /// Bochner consistency: max_k |int phi_H e^{2 pi i k t} dt - gamma_H(k)| for the fGn covariance.
    BochnerCheck(BochnerCheckArgs),
    /// Density-ratio bound M = sup phi_{H1} / phi_{H2} with endpoint trend.
    DensityRatio(DensityRatioArgs),
    /// Complex fGn Delta_n = (delta^1_n + i delta^2_n) / sqrt(2) by circulant embedding.
    SampleFgn(SampleFgnArgs),
    /// Partial sum S_N(t) = sum_{|n|<=N} f^(n) xi_n e_n(t) on a uniform grid.
    SimulateSeries(SimulateSeriesArgs),
    /// Pseudo-distance d_f(t, s) = (int |f(t+u) - f(s+u)|^2 dmu(u))^{1/2}.
    PseudoDistance(PseudoDistanceArgs),
    /// Weighted tail-sum condition sum_{|n|>=2} (sum_{|k|>=|n|} |f^(k)|^2 |k|^{2b})^{1/2} / (|n| (log|n|)^{1/2}) < inf.
    CheckCondition7(CheckConditionArgs),
    /// Schur test for a_nm = |gamma(n-m)| |nm|^{-b} with weights |n|^{-c}.
    SchurTest(SchurTestArgs),
    /// Spectral norm of finite sections of a_nm = |gamma(n-m)| |nm|^{-b} along a truncation ladder.
    OperatorNorm(OperatorNormArgs),
    /// Long-memory covariance bound 0 < gamma_H(k) <= k^{-2(1-H)}.
    CovarianceDecay(CovarianceDecayArgs),
    /// Monte Carlo E max_{i,j} |X_f(t_i) - X_f(t_j)| for the process X_f with spectral measure mu.
    OscillationMc(OscillationArgs),
    /// P(mu)-norm estimate E sup |X_f(t) - X_f(s)| + ||f||_inf.
    PmuNorm(OscillationArgs),
    /// Comparison principle E osc(Y) <= 4 E osc(X) under increment domination (complex case).
    ComparisonCheck(ComparisonArgs),
    /// Growth of E max |S_N| along a ladder of truncation orders (evidence only).
    BoundednessDiagnostic(BoundednessArgs),
    /// Lower bound of a spectral density on an interval I: C = 1 / min_I phi and ceil(1/|I|) covering translates.
    IntervalDomination(IntervalArgs),
    /// Monte Carlo E max_grid |S_N| for one truncation order.
    SupnormMc(SupnormArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::SpectralDensity(_) => "spectral-density",
            Command::NormalizingConstant(_) => "normalizing-constant",
            Command::BochnerCheck(_) => "bochner-check",
            Command::DensityRatio(_) => "density-ratio",
            Command::SampleFgn(_) => "sample-fgn",
            Command::SimulateSeries(_) => "simulate-series",
            Command::PseudoDistance(_) => "pseudo-distance",
            Command::CheckCondition7(_) => "check-condition7",
            Command::SchurTest(_) => "schur-test",
            Command::OperatorNorm(_) => "operator-norm",
            Command::CovarianceDecay(_) => "covariance-decay",
            Command::OscillationMc(_) => "oscillation-mc",
            Command::PmuNorm(_) => "pmu-norm",
            Command::ComparisonCheck(_) => "comparison-check",
            Command::BoundednessDiagnostic(_) => "boundedness-diagnostic",
            Command::IntervalDomination(_) => "interval-domination",
            Command::SupnormMc(_) => "supnorm-mc",
        }
    }

    pub fn run(&self) -> CmdResult {
        match self {
            Command::SpectralDensity(a) => spectral_density(a),
            Command::NormalizingConstant(a) => normalizing_constant(a),
            Command::BochnerCheck(a) => bochner_check(a),
            Command::DensityRatio(a) => density_ratio(a),
            Command::SampleFgn(a) => sample_fgn_cmd(a),
            Command::SimulateSeries(a) => simulate_series(a),
            Command::PseudoDistance(a) => pseudo_distance(a),
            Command::CheckCondition7(a) => check_condition(a),
            Command::SchurTest(a) => schur(a),
            Command::OperatorNorm(a) => operator_norm(a),
            Command::CovarianceDecay(a) => covariance_decay(a),
            Command::OscillationMc(a) => oscillation(a, false),
            Command::PmuNorm(a) => oscillation(a, true),
            Command::ComparisonCheck(a) => comparison(a),
            Command::BoundednessDiagnostic(a) => boundedness(a),
            Command::IntervalDomination(a) => interval(a),
            Command::SupnormMc(a) => supnorm(a),
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct SpectralDensityArgs {
    /// Hurst parameter in [0, 1).
    #[arg(long = "H")]
    #[serde(rename = "H")]
    pub h: f64,
    /// Number of grid cells; the table holds t = k / grid for 0 < k < grid.
    #[arg(long, default_value_t = 1024)]
    pub grid: usize,
    /// Starting quadrature budget for C(H).
    #[arg(long, default_value_t = DEFAULT_NORMALIZATION_QUAD)]
    pub n_quad: usize,
}

fn spectral_density(a: &SpectralDensityArgs) -> CmdResult {
    if a.grid < 2 {
        return Err(validation("--grid must be at least 2"));
    }
    let d = SpectralDensity::with_quadrature(specs::hurst(a.h)?, a.n_quad)?;
    let table = (1..a.grid)
        .map(|k| {
            let t = k as f64 / a.grid as f64;
            Ok([t, d.evaluate(t)?])
        })
        .collect::<rfseries::Result<Vec<_>>>()?;
    outcome(
        a,
        &json!({ "normalizing_constant": d.constant(), "columns": ["t", "phi"], "table": table }),
        Value::Null,
    )
}

#[derive(Args, Debug, Serialize)]
pub struct NormalizingConstantArgs {
    #[arg(long = "H")]
    #[serde(rename = "H")]
    pub h: f64,
    #[arg(long, default_value_t = DEFAULT_NORMALIZATION_QUAD)]
    pub n_quad: usize,
}

fn normalizing_constant(a: &NormalizingConstantArgs) -> CmdResult {
    let c = fgn::normalizing_constant(specs::hurst(a.h)?, a.n_quad)?;
    outcome(a, &json!({ "constant": c }), Value::Null)
}

#[derive(Args, Debug, Serialize)]
pub struct BochnerCheckArgs {
    #[arg(long = "H")]
    #[serde(rename = "H")]
    pub h: f64,
    #[arg(long, default_value_t = 10)]
    pub k_max: usize,
    #[arg(long, default_value_t = 4096)]
    pub n_quad: usize,
}

fn bochner_check(a: &BochnerCheckArgs) -> CmdResult {
    let d = SpectralDensity::new(specs::hurst(a.h)?)?;
    let r = fgn::bochner_consistency(&d, a.k_max, a.n_quad)?;
    outcome(a, &r, Value::Null)
}

#[derive(Args, Debug, Serialize)]
pub struct DensityRatioArgs {
    #[arg(long)]
    pub h1: f64,
    #[arg(long)]
    pub h2: f64,
    /// Uniform interior grid size (geometric endpoint refinement is added).
    #[arg(long, default_value_t = 4096)]
    pub grid: usize,
}

fn density_ratio(a: &DensityRatioArgs) -> CmdResult {
    let low = SpectralDensity::new(specs::hurst(a.h1)?)?;
    let high = SpectralDensity::new(specs::hurst(a.h2)?)?;
    let r = fgn::density_ratio_bound(&low, &high, a.grid)?;
    outcome(a, &r, Value::Null)
}

#[derive(Args, Debug, Serialize)]
pub struct SampleFgnArgs {
    #[arg(long = "H")]
    #[serde(rename = "H")]
    pub h: f64,
    /// Number of consecutive values.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
    /// Write `t,re,im` rows (t is the index) to this file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

fn sample_fgn_cmd(a: &SampleFgnArgs) -> CmdResult {
    if a.n == 0 {
        return Err(validation("--n must be at least 1"));
    }
    let h = specs::hurst(a.h)?;
    let rng = RngState::new(a.seed, a.stream);
    let sample = sample_fgn(h, a.n, rng)?;
    let method = FgnSampler::new(h, a.n)?.method();
    // time-averaged autocovariances
    let lags: Vec<[f64; 2]> = (0..a.n.min(6))
        .map(|k| {
            let pairs = a.n - k;
            let s: Complex64 = (0..pairs).map(|j| sample.values[j] * sample.values[j + k].conj()).sum();
            [k as f64, s.re / pairs as f64]
        })
        .collect();
    if let Some(p) = &a.csv {
        write_path_csv(p, sample.values.iter().enumerate().map(|(k, z)| (k as f64, *z)))?;
    }
    outcome(
        a,
        &json!({
            "length": a.n,
            "method": method,
            "sample_autocovariance": lags,
            "csv": a.csv,
        }),
        single_draw(a.seed, a.stream),
    )
}

#[derive(Args, Debug, Serialize)]
pub struct SimulateSeriesArgs {
    /// Coefficients: power:ALPHA[:alt][:one], char:N, const:C or terms:N/RE/IM,...
    #[arg(long)]
    pub f: String,
    /// fGn noise with this Hurst parameter; i.i.d. noise when absent.
    #[arg(long = "H")]
    #[serde(rename = "H")]
    pub h: Option<f64>,
    /// Truncation order.
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub order: usize,
    /// Grid size (default 8N).
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
    /// Write `t,re,im` rows to this file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

fn simulate_series(a: &SimulateSeriesArgs) -> CmdResult {
    let f = specs::coefficients(&a.f)?;
    let m = a.m.unwrap_or(analysis::SUP_GRID_FACTOR * a.order.max(1));
    let rng = RngState::new(a.seed, a.stream);
    let n = a.order as i64;
    let noise = match noise_kind(a.h)? {
        SeriesNoise::Iid => rfseries::sampling::sample_iid(-n, 2 * a.order + 1, rng)?,
        SeriesNoise::Fgn { hurst } => sample_fgn(hurst, 2 * a.order + 1, rng)?.reindexed(-n),
    };
    let path = partial_sum_path(&f, &noise, a.order, m)?;
    if let Some(p) = &a.csv {
        write_path_csv(p, path.path.grid.iter().copied().zip(path.path.values.iter().copied()))?;
    }
    let sup = path.path.values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    outcome(
        a,
        &json!({
            "order": a.order,
            "grid": m,
            "noise": path.noise,
            "max_modulus": sup,
            "oscillation": analysis::grid_oscillation(&path.path.values),
            "csv": a.csv,
        }),
        single_draw(a.seed, a.stream),
    )
}

#[derive(Args, Debug, Serialize)]
pub struct PseudoDistanceArgs {
    #[arg(long)]
    pub f: String,
    /// lebesgue, fgn:H or atoms:T/W,...
    #[arg(long, default_value = "lebesgue")]
    pub measure: String,
    #[arg(long)]
    pub t: f64,
    #[arg(long)]
    pub s: f64,
    /// Truncation order for infinite coefficient families.
    #[arg(long, default_value_t = 64)]
    pub order: usize,
    #[arg(long, default_value_t = 4096)]
    pub n_quad: usize,
}

fn pseudo_distance(a: &PseudoDistanceArgs) -> CmdResult {
    let f = specs::function(&specs::coefficients(&a.f)?, a.order);
    let mu = specs::measure(&a.measure)?;
    let d = series::pseudo_distance(&f, &mu, a.t, a.s, a.n_quad)?;
    outcome(a, &json!({ "distance": d }), Value::Null)
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailArg {
    Auto,
    IntegralComparison,
    FiniteSupport,
    PrefixOnly,
}

impl From<TailArg> for TailModel {
    fn from(t: TailArg) -> Self {
        match t {
            TailArg::Auto => TailModel::Auto,
            TailArg::IntegralComparison => TailModel::IntegralComparison,
            TailArg::FiniteSupport => TailModel::FiniteSupport,
            TailArg::PrefixOnly => TailModel::PrefixOnly,
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct CheckConditionArgs {
    /// Power-law exponent (shorthand for --f power:ALPHA).
    #[arg(long, conflicts_with = "f")]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub f: Option<String>,
    /// Weight exponent b >= 0.
    #[arg(long)]
    pub b: f64,
    #[arg(long, default_value_t = 4096)]
    pub n_terms: u64,
    #[arg(long, value_enum, default_value_t = TailArg::Auto)]
    pub tail_model: TailArg,
}

fn check_condition(a: &CheckConditionArgs) -> CmdResult {
    let f = match (&a.alpha, &a.f) {
        (Some(alpha), None) => CoefficientSpec::power_law(*alpha)?,
        (None, Some(spec)) => specs::coefficients(spec)?,
        _ => return Err(validation("give exactly one of --alpha or --f")),
    };
    let r = criteria::check_condition7(&f, a.b, a.n_terms, a.tail_model.into())?;
    let threshold = criteria::power_law_threshold(a.b)?;
    outcome(a, &json!({ "report": r, "power_law_threshold": threshold }), Value::Null)
}

#[derive(Args, Debug, Serialize)]
pub struct SchurTestArgs {
    /// white, fgn:H or power:A.
    #[arg(long, default_value = "fgn:0.75")]
    pub cov: String,
    #[arg(long)]
    pub b: f64,
    /// Weight exponent (default max(1/2, 1.05 - a - b)).
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    pub n_max: usize,
}

fn schur(a: &SchurTestArgs) -> CmdResult {
    let gamma = specs::covariance(&a.cov)?;
    let c = a.c.unwrap_or_else(|| criteria::default_schur_exponent(&gamma, a.b));
    let r = criteria::schur_test(&gamma, a.b, c, a.n_max)?;
    outcome(a, &r, Value::Null)
}

#[derive(Args, Debug, Serialize)]
pub struct OperatorNormArgs {
    #[arg(long, default_value = "fgn:0.75")]
    pub cov: String,
    #[arg(long)]
    pub b: f64,
    /// Comma-separated truncations n_max.
    #[arg(long, default_value = "64,128,256,512,1024,2048,4096")]
    pub ladder: String,
    /// Relative change over the last step accepted as stabilization.
    #[arg(long, default_value_t = 0.05)]
    pub tolerance: f64,
}

fn operator_norm(a: &OperatorNormArgs) -> CmdResult {
    let gamma = specs::covariance(&a.cov)?;
    let sizes = specs::ladder(&a.ladder)?;
    let r = if sizes.len() == 1 {
        let e = criteria::operator_norm_estimate(&gamma, a.b, sizes[0])?;
        to_value(&json!({ "entries": [e] }))?
    } else {
        to_value(&criteria::operator_norm_ladder(&gamma, a.b, &sizes, a.tolerance)?)?
    };
    outcome(a, &r, Value::Null)
}

#[derive(Args, Debug, Serialize)]
pub struct CovarianceDecayArgs {
    #[arg(long = "H")]
    #[serde(rename = "H")]
    pub h: f64,
    #[arg(long, default_value_t = 10_000)]
    pub k_max: u64,
}

fn covariance_decay(a: &CovarianceDecayArgs) -> CmdResult {
    let r = criteria::covariance_decay_report(specs::hurst(a.h)?, a.k_max)?;
    outcome(a, &r, Value::Null)
}

#[derive(Args, Debug, Serialize)]
pub struct OscillationArgs {
    #[arg(long)]
    pub f: String,
    #[arg(long, default_value = "lebesgue")]
    pub measure: String,
    /// Truncation order for infinite coefficient families.
    #[arg(long, default_value_t = 64)]
    pub order: usize,
    /// Grid size.
    #[arg(long, default_value_t = 256)]
    pub m: usize,
    #[arg(long, default_value_t = 1000)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn oscillation(a: &OscillationArgs, with_sup: bool) -> CmdResult {
    let f = specs::function(&specs::coefficients(&a.f)?, a.order);
    let mu = specs::measure(&a.measure)?;
    let prov = replications(a.seed, a.reps);
    if with_sup {
        let r = analysis::pmu_norm_estimate(&f, &mu, a.m, a.reps, a.seed)?;
        outcome(a, &r, prov)
    } else {
        let model = XfModel::new(&f, &mu, a.m)?;
        let r = analysis::oscillation_mc(&model, a.reps, a.seed)?;
        outcome(a, &r, prov)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairArg {
    /// X: i.i.d.-driven series with coefficients sqrt(K') f^(n) |n|^b; Y: fGn-driven series with f^(n).
    ScaledIid,
    /// X: fGn-driven series; Y = X / 2.
    Half,
}

#[derive(Args, Debug, Serialize)]
pub struct ComparisonArgs {
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.25)]
    pub b: f64,
    #[arg(long = "H", default_value_t = 0.75)]
    #[serde(rename = "H")]
    pub h: f64,
    #[arg(long = "N", default_value_t = 32)]
    #[serde(rename = "N")]
    pub order: usize,
    /// Grid size (default 8N).
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = PairArg::ScaledIid)]
    pub pair: PairArg,
    /// Use the real-case factor 1 instead of the complex-case factor 4.
    #[arg(long)]
    pub real: bool,
}

fn comparison(a: &ComparisonArgs) -> CmdResult {
    let hurst = specs::hurst(a.h)?;
    let f = CoefficientSpec::power_law(a.alpha)?;
    let m = a.m.unwrap_or(analysis::SUP_GRID_FACTOR * a.order.max(1));
    let noise = SeriesNoise::Fgn { hurst };
    let y_model = SeriesModel::new(&f, noise, a.order, m)?;
    let (report, constant) = match a.pair {
        PairArg::ScaledIid => {
            let gamma = CovarianceSequence::fgn(hurst);
            let c = criteria::default_schur_exponent(&gamma, a.b);
            let schur = criteria::schur_test(&gamma, a.b, c, a.order.max(16))?;
            let x_model = SeriesModel::new(&f.weighted(a.order, a.b, schur.k.sqrt()), SeriesNoise::Iid, a.order, m)?;
            (analysis::comparison_check(&x_model, &y_model, a.reps, a.seed, !a.real)?, Some(schur.k))
        }
        PairArg::Half => {
            let half = ScaledModel::new(&y_model, Complex64::new(0.5, 0.0));
            (analysis::comparison_check(&y_model, &half, a.reps, a.seed, !a.real)?, None)
        }
    };
    outcome(
        a,
        &json!({ "report": report, "schur_constant": constant }),
        replications(a.seed, if report.reran { 4 * a.reps } else { a.reps }),
    )
}

#[derive(Args, Debug, Serialize)]
pub struct BoundednessArgs {
    #[arg(long)]
    pub f: String,
    #[arg(long = "H")]
    #[serde(rename = "H")]
    pub h: Option<f64>,
    /// Comma-separated increasing truncation orders; the grid is 8N each.
    #[arg(long, default_value = "16,32,64,128,256,512,1024,2048,4096")]
    pub ladder: String,
    #[arg(long, default_value_t = 200)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn boundedness(a: &BoundednessArgs) -> CmdResult {
    let f = specs::coefficients(&a.f)?;
    let ladder = specs::ladder(&a.ladder)?;
    let r = analysis::boundedness_diagnostic(&f, noise_kind(a.h)?, &ladder, a.reps, a.seed)?;
    outcome(a, &r, replications(a.seed, a.reps))
}

#[derive(Args, Debug, Serialize)]
pub struct IntervalArgs {
    /// lebesgue, fgn:H (atomic measures have no density).
    #[arg(long)]
    pub measure: String,
    #[arg(long)]
    pub lo: f64,
    #[arg(long)]
    pub hi: f64,
    #[arg(long, default_value_t = 4096)]
    pub grid: usize,
}

fn interval(a: &IntervalArgs) -> CmdResult {
    let mu = specs::measure(&a.measure)?;
    let r = analysis::interval_domination_check(&mu, a.lo, a.hi, a.grid)?;
    outcome(a, &r, Value::Null)
}

#[derive(Args, Debug, Serialize)]
pub struct SupnormArgs {
    #[arg(long)]
    pub f: String,
    #[arg(long = "H")]
    #[serde(rename = "H")]
    pub h: Option<f64>,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub order: usize,
    /// Grid size (default 8N).
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn supnorm(a: &SupnormArgs) -> CmdResult {
    let f = specs::coefficients(&a.f)?;
    let m = a.m.unwrap_or(analysis::SUP_GRID_FACTOR * a.order.max(1));
    let r = analysis::supnorm_mc(&f, noise_kind(a.h)?, a.order, m, a.reps, a.seed)?;
    outcome(a, &r, replications(a.seed, a.reps))
}

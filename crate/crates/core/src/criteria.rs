//! Convergence and boundedness criteria for series driven by stationary noise.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::fgn::{fgn_covariance, CovarianceSequence, HurstParameter};
use crate::numerics::linalg::power_iteration;
use crate::numerics::FftCache;
use crate::series::{CoefficientSpec, Sides};

/// Outcome of a convergence check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Converges,
    Diverges,
    Inconclusive,
}

/// How the check treats coefficients and summands beyond `n_terms`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailModel {
    /// Pick the model matching the coefficient kind.
    Auto,
    /// Closed-form integral comparison against a power-law envelope.
    IntegralComparison,
    /// The represented coefficients are all nonzero ones.
    FiniteSupport,
    /// Use the computed prefix only; never certifies convergence.
    PrefixOnly,
}

/// Result of [`check_condition7`].
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub verdict: Verdict,
    /// `(n, partial sum over 2 <= |n'| <= n)` at geometric checkpoints.
    pub partial_sums: Vec<(u64, f64)>,
    /// Upper bound for the summands with `|n| > n_terms`; infinite when the
    /// inner tails diverge, NaN when nothing is known.
    pub tail_estimate: f64,
    pub b: f64,
    pub n_terms: u64,
    pub tail_model: TailModel,
    pub coefficients: String,
    pub note: String,
}

/// `int_lo^hi x^{-e} dx` for `0 < lo <= hi` (`hi` may be infinite when `e > 1`).
fn power_integral(lo: f64, hi: f64, e: f64) -> f64 {
    if (e - 1.0).abs() < 1e-14 {
        (hi / lo).ln()
    } else if hi.is_infinite() {
        if e > 1.0 {
            lo.powf(1.0 - e) / (e - 1.0)
        } else {
            f64::INFINITY
        }
    } else {
        (hi.powf(1.0 - e) - lo.powf(1.0 - e)) / (1.0 - e)
    }
}

/// Power-law envelope on `|f^(k)|^2 |k|^{2b}` summed over both signs of `k`:
/// `weight * k^{-p}` for `k > n_terms`.
struct Envelope {
    weight: f64,
    p: f64,
    /// The envelope is attained (so divergence is certified), not just an upper bound.
    exact: bool,
}

fn envelope(f: &CoefficientSpec, b: f64) -> Option<Envelope> {
    match f {
        CoefficientSpec::PowerLaw {
            alpha, scale, sides, ..
        } => Some(Envelope {
            weight: scale * scale * if *sides == Sides::Two { 2.0 } else { 1.0 },
            p: 2.0 * alpha - 2.0 * b,
            exact: true,
        }),
        CoefficientSpec::Explicit {
            decay: Some(d), ..
        } => Some(Envelope {
            weight: 2.0 * d.constant * d.constant,
            p: 2.0 * d.alpha - 2.0 * b,
            exact: false,
        }),
        _ => None,
    }
}

fn resolve_tail_model(f: &CoefficientSpec, model: TailModel) -> Result<TailModel> {
    let kind = match f {
        CoefficientSpec::PowerLaw { .. } => "power-law",
        CoefficientSpec::Explicit { decay: Some(_), .. } => "explicit with decay",
        CoefficientSpec::Explicit { decay: None, .. } => "explicit",
        CoefficientSpec::FiniteSupport { .. } => "finitely supported",
    };
    let resolved = match (model, f) {
        (TailModel::Auto, CoefficientSpec::FiniteSupport { .. }) => TailModel::FiniteSupport,
        (TailModel::Auto, CoefficientSpec::Explicit { decay: None, .. }) => TailModel::PrefixOnly,
        (TailModel::Auto, _) => TailModel::IntegralComparison,
        (TailModel::IntegralComparison, CoefficientSpec::PowerLaw { .. })
        | (TailModel::IntegralComparison, CoefficientSpec::Explicit { decay: Some(_), .. }) => {
            TailModel::IntegralComparison
        }
        (TailModel::FiniteSupport, CoefficientSpec::FiniteSupport { .. })
        | (TailModel::FiniteSupport, CoefficientSpec::Explicit { .. }) => TailModel::FiniteSupport,
        (TailModel::PrefixOnly, _) => TailModel::PrefixOnly,
        _ => {
            return Err(Error::InvalidTailModel(format!(
                "tail model {model:?} does not apply to {kind} coefficients"
            )))
        }
    };
    Ok(resolved)
}

/// Checks the weighted tail-sum condition
/// `sum_{|n| >= 2} (sum_{|k| >= |n|} |f^(k)|^2 |k|^{2b})^{1/2} / (|n| (log |n|)^{1/2}) < infinity`.
///
/// Summands up to `|n| = n_terms` are computed from exact coefficients with
/// inner tails beyond `n_terms` bounded by the tail model; the outer tail
/// `|n| > n_terms` is bounded in closed form. Divergence is reported only when
/// a lower-bounding comparison diverges.
pub fn check_condition7(f: &CoefficientSpec, b: f64, n_terms: u64, tail_model: TailModel) -> Result<CriterionReport> {
    if !(b >= 0.0 && b.is_finite()) {
        return domain(format!("weight exponent b must be >= 0, got {b}"));
    }
    if n_terms < 2 {
        return domain("n_terms must be at least 2");
    }
    let model = resolve_tail_model(f, tail_model)?;
    let n_terms = match (model, f.support_radius()) {
        // the exact sum is finite: compute it completely
        (TailModel::FiniteSupport, Some(r)) => n_terms.max(r.max(2)),
        (TailModel::FiniteSupport, None) => match f {
            CoefficientSpec::Explicit {
                first_index, values, ..
            } => {
                let hi = (*first_index + values.len() as i64 - 1).unsigned_abs();
                n_terms.max(first_index.unsigned_abs()).max(hi).max(2)
            }
            _ => n_terms,
        },
        _ => n_terms,
    };

    // w_k = (|f^(k)|^2 + |f^(-k)|^2) k^{2b}
    let nt = n_terms as usize;
    let mut inner = vec![0.0; nt + 2];
    for k in (2..=nt).rev() {
        let kk = k as i64;
        let w = (f.coefficient(kk).norm_sqr() + f.coefficient(-kk).norm_sqr()) * (k as f64).powf(2.0 * b);
        inner[k] = inner[k + 1] + w;
    }

    let env = if model == TailModel::IntegralComparison {
        envelope(f, b)
    } else {
        None
    };
    let big_n = n_terms as f64;
    // upper bound for sum_{k > n_terms} w_k
    let inner_tail_upper = match (&env, model) {
        (_, TailModel::FiniteSupport) => 0.0,
        (Some(e), _) if e.weight == 0.0 => 0.0,
        (Some(e), _) => e.weight * power_integral(big_n, f64::INFINITY, e.p),
        (None, _) => f64::NAN,
    };

    let mut partial_sums = Vec::new();
    let mut sum = 0.0;
    let mut next_checkpoint = 2u64;
    for (n, &inner_n) in inner.iter().enumerate().take(nt + 1).skip(2) {
        let t = inner_n + if inner_tail_upper.is_finite() { inner_tail_upper } else { 0.0 };
        let nf = n as f64;
        // both signs of n share the same inner tail
        sum += 2.0 * t.sqrt() / (nf * nf.ln().sqrt());
        if n as u64 == next_checkpoint || n == nt {
            partial_sums.push((n as u64, sum));
            next_checkpoint *= 2;
        }
    }

    let label = f.label();
    let report = |verdict, tail_estimate, note: String, partial_sums| CriterionReport {
        verdict,
        partial_sums,
        tail_estimate,
        b,
        n_terms,
        tail_model: model,
        coefficients: label.clone(),
        note,
    };

    match model {
        TailModel::FiniteSupport => Ok(report(
            Verdict::Converges,
            0.0,
            "finitely many nonzero inner tails; the sum is exact".into(),
            partial_sums,
        )),
        TailModel::PrefixOnly | TailModel::Auto => Ok(report(
            Verdict::Inconclusive,
            f64::NAN,
            "no information beyond the computed prefix".into(),
            partial_sums,
        )),
        TailModel::IntegralComparison => {
            let e = env.expect("integral comparison requires an envelope");
            if e.weight == 0.0 {
                return Ok(report(Verdict::Converges, 0.0, "all coefficients vanish".into(), partial_sums));
            }
            if e.p <= 1.0 {
                let (verdict, note) = if e.exact {
                    (
                        Verdict::Diverges,
                        format!(
                            "inner tails diverge: sum_k k^(-{:.6}) >= int x^(-{:.6}) dx = infinity",
                            e.p, e.p
                        ),
                    )
                } else {
                    (
                        Verdict::Inconclusive,
                        "declared decay is too slow to bound the inner tails".to_string(),
                    )
                };
                return Ok(report(verdict, f64::INFINITY, note, partial_sums));
            }
            // n > n_terms: inner(n) <= weight (n^{-p} + n^{1-p}/(p-1)) <= amp n^{1-p}
            let amp = e.weight * (1.0 / (big_n + 1.0) + 1.0 / (e.p - 1.0));
            let q = 0.5 * (1.0 + e.p);
            let tail = 2.0 * amp.sqrt() * power_integral(big_n, f64::INFINITY, q) / (big_n + 1.0).ln().sqrt();
            // the computed increment over the last checkpoint interval must be
            // consistent with the analytic bound on the same range
            let cauchy_ok = match partial_sums.as_slice() {
                [.., (n0, s0), (_, s1)] => {
                    let n0 = *n0 as f64;
                    let amp0 = e.weight * (1.0 / n0 + 1.0 / (e.p - 1.0));
                    let bound = 2.0 * amp0.sqrt() * (n0.powf(-q) + power_integral(n0, f64::INFINITY, q))
                        / n0.ln().sqrt();
                    s1 - s0 <= bound * (1.0 + 1e-9)
                }
                _ => true,
            };
            if tail.is_finite() && cauchy_ok {
                Ok(report(
                    Verdict::Converges,
                    tail,
                    format!("summands are O(n^(-{q:.6}) (log n)^(-1/2)) with exponent > 1"),
                    partial_sums,
                ))
            } else {
                Ok(report(
                    Verdict::Inconclusive,
                    tail,
                    "partial sums are not consistent with the closed-form tail bound".into(),
                    partial_sums,
                ))
            }
        }
    }
}

/// Exact convergence threshold `alpha* = b + 1/2` of the weighted tail-sum
/// condition for power-law coefficients `|n|^{-alpha}`.
pub fn power_law_threshold(b: f64) -> Result<f64> {
    if !(b >= 0.0 && b.is_finite()) {
        return domain(format!("weight exponent b must be >= 0, got {b}"));
    }
    Ok(b + 0.5)
}

/// Symmetric Toeplitz products `y_i = sum_j g(|i - j|) x_j` via a circulant embedding.
struct ToeplitzProduct {
    len: usize,
    symbol: Vec<Complex64>,
    fft: FftCache,
}

impl ToeplitzProduct {
    fn new(lags: &[f64], len: usize) -> Self {
        let size = (2 * len).next_power_of_two();
        let mut col = vec![Complex64::default(); size];
        for k in 0..len.min(lags.len()) {
            col[k] = Complex64::new(lags[k], 0.0);
            if k > 0 {
                col[size - k] = Complex64::new(lags[k], 0.0);
            }
        }
        let fft = FftCache::new(size);
        fft.forward(&mut col);
        Self { len, symbol: col, fft }
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let mut buf = vec![Complex64::default(); self.symbol.len()];
        for (b, &v) in buf.iter_mut().zip(x) {
            b.re = v;
        }
        self.fft.forward(&mut buf);
        for (b, s) in buf.iter_mut().zip(&self.symbol) {
            *b *= s;
        }
        self.fft.inverse(&mut buf);
        for (yi, b) in y.iter_mut().zip(&buf[..self.len]) {
            *yi = b.re;
        }
    }
}

/// Entry `a_{nm} = |gamma(n - m)| |n m|^{-b}` with `a_{n0} = a_{0m} = 0`.
pub fn schur_matrix_entry(gamma: &CovarianceSequence, b: f64, n: i64, m: i64) -> f64 {
    if n == 0 || m == 0 {
        return 0.0;
    }
    gamma.gamma(n - m).norm() * ((n.unsigned_abs() * m.unsigned_abs()) as f64).powf(-b)
}

/// Exact row sums in the Schur test extend over `|m| <= EXACT_REACH * n_max`.
const EXACT_REACH: usize = 4;

/// Result of [`schur_test`].
#[derive(Debug, Clone, Serialize)]
pub struct SchurReport {
    pub passes: bool,
    /// Largest ratio `(sum_m a_{nm} x_m) / x_n` over `|n| <= n_max`.
    #[serde(rename = "K")]
    pub k: f64,
    pub c: f64,
    pub b: f64,
    pub n_max: usize,
    pub covariance: String,
    /// Largest column ratio; equals `k` because `a` is symmetric.
    pub column_k: f64,
    /// Row `|n|` at which `k` is attained.
    pub argmax: usize,
    /// Asymptotic exponent of the row ratio implied by the declared decay;
    /// boundedness requires it to be nonpositive.
    pub growth_exponent: f64,
    /// Whether rows beyond `n_max` were covered by a closed-form tail bound.
    pub tail_bounded: bool,
    /// `(|n|, ratio)` at geometric checkpoints.
    pub profile: Vec<(usize, f64)>,
    pub note: String,
}

/// Default Schur weight exponent `c = max(1/2, 1.05 - a - b)`, where `a` is
/// the declared covariance decay (`a = 0` without one).
pub fn default_schur_exponent(gamma: &CovarianceSequence, b: f64) -> f64 {
    let a = gamma.decay_bound().map(|d| d.exponent).unwrap_or(0.0);
    (1.05 - a - b).max(0.5)
}

/// Schur test for `(a_{nm})` with weights `x_n = |n|^{-c}`, `x_0 = 1`.
///
/// Rows `|n| <= n_max` are checked. Row sums run exactly over `|m| <= 4 n_max`
/// (FFT convolution); when `gamma` has a declared power-law decay
/// `|gamma(k)| <= C |k|^{-a}`, the remaining terms are added through a
/// closed-form integral bound, and the
/// report passes only if `a + b + c > 1` and the implied asymptotic growth
/// exponent `c - b - min(a, b + c, a + b + c - 1)` of the row ratio is
/// nonpositive (and not at a logarithmic tie).
pub fn schur_test(gamma: &CovarianceSequence, b: f64, c: f64, n_max: usize) -> Result<SchurReport> {
    if !(b >= 0.0 && b.is_finite()) {
        return domain(format!("weight exponent b must be >= 0, got {b}"));
    }
    if !(c > 0.0 && c.is_finite()) {
        return domain(format!("Schur weight exponent c must be > 0, got {c}"));
    }
    if n_max < 16 {
        return domain(format!("n_max must be at least 16, got {n_max}"));
    }
    let d = b + c;
    let decay = gamma.decay_bound();
    let support = gamma.support_radius();
    // finitely supported covariances: extend the exact sums far enough that no tail remains
    // decaying covariances: sum exactly over |m| <= 4 n_max, bound the rest
    let reach = match (decay, support) {
        (None, Some(r)) => n_max + r,
        _ => EXACT_REACH * n_max,
    };
    let len = 2 * reach + 1;
    let lags: Vec<f64> = (0..len as i64).map(|k| gamma.gamma(k).norm()).collect();
    let conv = ToeplitzProduct::new(&lags, len);
    let mut u = vec![0.0; len];
    for (i, ui) in u.iter_mut().enumerate() {
        let m = i as i64 - reach as i64;
        if m != 0 {
            *ui = (m.unsigned_abs() as f64).powf(-d);
        }
    }
    let mut row = vec![0.0; len];
    conv.apply(&u, &mut row);

    let (tail_bounded, growth_exponent, tail_of): (bool, f64, Box<dyn Fn(f64) -> f64>) = match (decay, support) {
        (None, Some(_)) => (true, -2.0 * b, Box::new(|_| 0.0)),
        (Some(db), _) => {
            let a = db.exponent;
            let cst = db.constant;
            let nm = reach as f64;
            let growth = if a + d > 1.0 {
                let floor = a.min(d).min(a + d - 1.0);
                let ties = [a, d, a + d - 1.0].iter().filter(|&&e| (e - floor).abs() < 1e-12).count();
                let e = c - b - floor;
                if ties > 1 && e.abs() < 1e-12 {
                    // logarithmic growth at a zero exponent
                    f64::MIN_POSITIVE
                } else {
                    e
                }
            } else {
                f64::INFINITY
            };
            let tail = move |n: f64| -> f64 {
                if a + d <= 1.0 {
                    return f64::INFINITY;
                }
                // m > L: sum (m - n)^{-a} m^{-d} <= first term + int over [L+1, 2L] and [2L, inf)
                let first = (nm + 1.0 - n).powf(-a) * (nm + 1.0).powf(-d);
                let near = power_integral(nm + 1.0 - n, 2.0 * nm - n, a) * (nm + 1.0).powf(-d);
                let far = 2f64.powf(a) * power_integral(2.0 * nm, f64::INFINITY, a + d);
                // m < -L: sum (m + n)^{-a} m^{-d} <= sum m^{-a-d}
                let opposite = (nm + 1.0).powf(-a - d) + power_integral(nm + 1.0, f64::INFINITY, a + d);
                cst * (first + near + far + opposite)
            };
            (a + d > 1.0, growth, Box::new(tail))
        }
        (None, None) => (false, f64::INFINITY, Box::new(|_| f64::INFINITY)),
    };

    let mut k = 0.0f64;
    let mut argmax = 0;
    let mut profile = Vec::new();
    let mut next = 1usize;
    for n in 1..=n_max {
        let nf = n as f64;
        let idx_pos = reach + n;
        let idx_neg = reach - n;
        let s = row[idx_pos].max(row[idx_neg]) + tail_of(nf);
        let ratio = nf.powf(c - b) * s;
        if ratio > k || ratio.is_nan() {
            k = ratio;
            argmax = n;
        }
        if n == next || n == n_max {
            profile.push((n, ratio));
            next *= 2;
        }
    }
    let passes = k.is_finite() && tail_bounded && growth_exponent <= 0.0;
    let note = if !tail_bounded {
        format!("a + b + c <= 1: the weighted tail sum diverges for c = {c}")
    } else if growth_exponent > 0.0 {
        format!("row ratio grows like |n|^{growth_exponent:.4}")
    } else {
        "row and column ratios are bounded by K".to_string()
    };
    Ok(SchurReport {
        passes,
        k,
        c,
        b,
        n_max,
        covariance: gamma.label(),
        column_k: k,
        argmax,
        growth_exponent,
        tail_bounded,
        profile,
        note,
    })
}

/// Outcome of [`covariance_decay_report`].
#[derive(Debug, Clone, Serialize)]
pub struct DecayReport {
    pub hurst: f64,
    pub k_max: u64,
    pub holds: bool,
    pub first_violation: Option<u64>,
    /// `min_k (k^{-2(1-H)} - gamma_H(k))`.
    pub min_margin: f64,
    pub min_gamma: f64,
}

/// Checks `0 < gamma_H(k) <= k^{-2(1-H)}` for `1 <= k <= k_max`.
pub fn covariance_decay_report(hurst: HurstParameter, k_max: u64) -> Result<DecayReport> {
    let h = hurst.value();
    if !(h > 0.5 && h < 1.0) {
        return domain(format!("covariance decay check needs 1/2 < H < 1, got {h}"));
    }
    if k_max == 0 {
        return domain("k_max must be at least 1");
    }
    let mut first_violation = None;
    let mut min_margin = f64::INFINITY;
    let mut min_gamma = f64::INFINITY;
    for k in 1..=k_max {
        let g = fgn_covariance(hurst, k as i64);
        let bound = (k as f64).powf(-2.0 * (1.0 - h));
        min_margin = min_margin.min(bound - g);
        min_gamma = min_gamma.min(g);
        if first_violation.is_none() && !(g > 0.0 && g <= bound) {
            first_violation = Some(k);
        }
    }
    Ok(DecayReport {
        hurst: h,
        k_max,
        holds: first_violation.is_none(),
        first_violation,
        min_margin,
        min_gamma,
    })
}

pub fn covariance_decay_check(hurst: HurstParameter, k_max: u64) -> Result<bool> {
    Ok(covariance_decay_report(hurst, k_max)?.holds)
}

/// Relative tolerance of the operator-norm power iteration.
pub const OPERATOR_NORM_TOLERANCE: f64 = 1e-8;
const OPERATOR_NORM_MAX_ITER: usize = 200_000;

/// Largest eigenvalue of a finite section of `(a_{nm})`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OperatorNorm {
    pub n_max: usize,
    pub value: f64,
    pub iterations: usize,
}

/// Spectral norm of `(a_{nm})_{|n|, |m| <= n_max}` by power iteration.
pub fn operator_norm_estimate(gamma: &CovarianceSequence, b: f64, n_max: usize) -> Result<OperatorNorm> {
    if !(b >= 0.0 && b.is_finite()) {
        return domain(format!("weight exponent b must be >= 0, got {b}"));
    }
    if n_max < 16 {
        return domain(format!("n_max must be at least 16, got {n_max}"));
    }
    let len = 2 * n_max + 1;
    let lags: Vec<f64> = (0..len as i64).map(|k| gamma.gamma(k).norm()).collect();
    let conv = ToeplitzProduct::new(&lags, len);
    let w: Vec<f64> = (0..len)
        .map(|i| {
            let n = i as i64 - n_max as i64;
            if n == 0 {
                0.0
            } else {
                (n.unsigned_abs() as f64).powf(-b)
            }
        })
        .collect();
    let mut scratch = vec![0.0; len];
    let result = power_iteration(
        len,
        |x, y| {
            for ((s, xi), wi) in scratch.iter_mut().zip(x).zip(&w) {
                *s = xi * wi;
            }
            conv.apply(&scratch, y);
            for (yi, wi) in y.iter_mut().zip(&w) {
                *yi *= wi;
            }
        },
        OPERATOR_NORM_TOLERANCE,
        OPERATOR_NORM_MAX_ITER,
    )?;
    Ok(OperatorNorm {
        n_max,
        value: result.value,
        iterations: result.iterations,
    })
}

/// Operator-norm estimates along a ladder of truncations.
#[derive(Debug, Clone, Serialize)]
pub struct OperatorNormLadder {
    pub entries: Vec<OperatorNorm>,
    /// `value(last) / value(previous)`.
    pub last_ratio: f64,
    /// `|last_ratio - 1| <= tolerance`.
    pub stabilized: bool,
    pub tolerance: f64,
    /// Whether the estimates are nondecreasing along the ladder.
    pub increasing: bool,
}

/// Runs [`operator_norm_estimate`] for each truncation (in parallel).
pub fn operator_norm_ladder(
    gamma: &CovarianceSequence,
    b: f64,
    sizes: &[usize],
    tolerance: f64,
) -> Result<OperatorNormLadder> {
    if sizes.len() < 2 || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return domain("operator-norm ladder needs at least two increasing truncations");
    }
    let entries = sizes
        .par_iter()
        .map(|&n| operator_norm_estimate(gamma, b, n))
        .collect::<Result<Vec<_>>>()?;
    let last = entries[entries.len() - 1].value;
    let prev = entries[entries.len() - 2].value;
    let last_ratio = last / prev;
    Ok(OperatorNormLadder {
        increasing: entries.windows(2).all(|w| w[1].value >= w[0].value * (1.0 - 1e-9)),
        stabilized: (last_ratio - 1.0).abs() <= tolerance,
        last_ratio,
        tolerance,
        entries,
    })
}

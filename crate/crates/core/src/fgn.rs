//! Fractional Gaussian noise: covariance, spectral density and the
//! comparison diagnostics built on top of it.
//!
//! The spectral density is
//!
//! ```text
//! phi_H(t) = 4 C(H) sin^2(pi t) (zeta(2H+1, t) + zeta(2H+1, 1-t)),  0 < t < 1,
//! ```
//!
//! where `C(H)` is fixed numerically by `int_T phi_H = 1`. For `H > 1/2` the
//! density blows up like `t^{1-2H}` at `t = 0 = 1`; quadrature against it uses
//! the substitution `t = u^{1/(2-2H)}` near both endpoints, which turns that
//! singularity into a bounded integrand.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, finite, Error, Result};
use crate::numerics::{composite_gauss_legendre, gauss_legendre, zeta_series};

/// Hurst parameter of fractional Gaussian noise, `0 <= H < 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct HurstParameter(f64);

impl HurstParameter {
    pub fn new(h: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&h) {
            return domain(format!("Hurst parameter must satisfy 0 <= H < 1, got {h}"));
        }
        Ok(Self(h))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `H = 1/2`: the noise is i.i.d. and the density is identically one.
    pub fn is_white(self) -> bool {
        self.0 == 0.5
    }

    /// Exponent `s = 2H + 1` of the Hurwitz zeta terms.
    pub fn zeta_exponent(self) -> f64 {
        2.0 * self.0 + 1.0
    }
}

impl TryFrom<f64> for HurstParameter {
    type Error = Error;
    fn try_from(h: f64) -> Result<Self> {
        Self::new(h)
    }
}

impl From<HurstParameter> for f64 {
    fn from(h: HurstParameter) -> f64 {
        h.0
    }
}

/// `|x|^{2H}` with the convention `0^{2H} = 0`, which keeps `gamma(0) = 1`
/// and `gamma(+-1) = -1/2` at `H = 0`.
fn abs_pow(x: f64, two_h: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.abs().powf(two_h)
    }
}

/// fGn autocovariance `1/2 |k+1|^{2H} + 1/2 |k-1|^{2H} - |k|^{2H}`.
pub fn fgn_covariance(h: HurstParameter, k: i64) -> f64 {
    let two_h = 2.0 * h.0;
    let k = k.unsigned_abs() as f64;
    if k < 2.0 {
        return 0.5 * abs_pow(k + 1.0, two_h) + 0.5 * abs_pow(k - 1.0, two_h) - abs_pow(k, two_h);
    }
    // second difference written with expm1/ln_1p so large lags keep their digits
    let x = 1.0 / k;
    let up = (two_h * x.ln_1p()).exp_m1();
    let down = (two_h * (-x).ln_1p()).exp_m1();
    0.5 * k.powf(two_h) * (up + down)
}

/// Declared power-law bound `|gamma(k)| <= constant * |k|^{-exponent}`, `k != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayBound {
    pub constant: f64,
    pub exponent: f64,
}

/// Covariance sequence `gamma(k) = E(xi_0 conj(xi_k))` of a stationary sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CovarianceSequence {
    /// i.i.d. noise, `gamma = delta_0`.
    White,
    /// Fractional Gaussian noise.
    Fgn { hurst: HurstParameter },
    /// `gamma(k) = |k|^{-exponent}` for `k != 0`.
    PowerLaw { exponent: f64 },
    /// `gamma(k)` for `0 <= k < values.len()`, zero beyond unless `decay` is set
    /// (then the array is only a prefix and `decay` bounds the rest).
    Explicit {
        values: Vec<Complex64>,
        decay: Option<DecayBound>,
    },
}

impl CovarianceSequence {
    pub fn fgn(h: HurstParameter) -> Self {
        if h.is_white() {
            CovarianceSequence::White
        } else {
            CovarianceSequence::Fgn { hurst: h }
        }
    }

    pub fn power_law(exponent: f64) -> Result<Self> {
        if !(exponent > 0.0 && exponent.is_finite()) {
            return domain(format!("power-law covariance exponent must be positive, got {exponent}"));
        }
        Ok(CovarianceSequence::PowerLaw { exponent })
    }

    pub fn explicit(values: Vec<Complex64>, decay: Option<DecayBound>) -> Result<Self> {
        match values.first() {
            Some(g0) if (g0 - Complex64::new(1.0, 0.0)).norm() < 1e-12 => {}
            _ => return domain("explicit covariance must start with gamma(0) = 1"),
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return domain("explicit covariance has non-finite entries");
        }
        Ok(CovarianceSequence::Explicit { values, decay })
    }

    pub fn gamma(&self, k: i64) -> Complex64 {
        let real = |x: f64| Complex64::new(x, 0.0);
        match self {
            CovarianceSequence::White => real(if k == 0 { 1.0 } else { 0.0 }),
            CovarianceSequence::Fgn { hurst } => real(fgn_covariance(*hurst, k)),
            CovarianceSequence::PowerLaw { exponent } => {
                real(if k == 0 { 1.0 } else { (k.unsigned_abs() as f64).powf(-exponent) })
            }
            CovarianceSequence::Explicit { values, .. } => {
                let idx = k.unsigned_abs() as usize;
                let v = values.get(idx).copied().unwrap_or_default();
                if k < 0 {
                    v.conj()
                } else {
                    v
                }
            }
        }
    }

    /// Power-law envelope of `|gamma(k)|`; `None` when the sequence is
    /// finitely supported (or an explicit prefix without declared decay).
    pub fn decay_bound(&self) -> Option<DecayBound> {
        match self {
            CovarianceSequence::White => None,
            CovarianceSequence::Fgn { hurst } => Some(DecayBound {
                constant: 1.0,
                exponent: 2.0 * (1.0 - hurst.value()),
            }),
            CovarianceSequence::PowerLaw { exponent } => Some(DecayBound {
                constant: 1.0,
                exponent: *exponent,
            }),
            CovarianceSequence::Explicit { decay, .. } => *decay,
        }
    }

    /// Largest lag that can be nonzero when the sequence is finitely supported.
    pub fn support_radius(&self) -> Option<usize> {
        match self {
            CovarianceSequence::White => Some(0),
            CovarianceSequence::Explicit { values, decay: None } => Some(values.len() - 1),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            CovarianceSequence::White => "white".into(),
            CovarianceSequence::Fgn { hurst } => format!("fgn(H={})", hurst.value()),
            CovarianceSequence::PowerLaw { exponent } => format!("power-law(a={exponent})"),
            CovarianceSequence::Explicit { values, .. } => format!("explicit(len={})", values.len()),
        }
    }

    /// Row-major `n x n` Toeplitz matrix `(gamma(i - j))`.
    pub fn toeplitz(&self, n: usize) -> Vec<Complex64> {
        let lags: Vec<Complex64> = (0..n as i64).map(|k| self.gamma(k)).collect();
        let mut m = vec![Complex64::default(); n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = if i >= j { lags[i - j] } else { lags[j - i].conj() };
            }
        }
        m
    }
}

/// Gauss-Legendre order used on every panel of the singular rule.
const PANEL_ORDER: usize = 16;
/// Number of geometrically shrinking panels toward each endpoint.
const GRADED_LEVELS: usize = 30;

/// Nodes `(t, weight)` for `int_0^1 g(t) dt` with `t in (0, 1/2]` only: the
/// other half follows from the `t -> 1 - t` symmetry of every fGn density.
///
/// Uses `t = u^q / 2` with `q = 1/(2 - 2H)` on `u in [0, 1]`, composite
/// Gauss-Legendre in `u`, and panels graded geometrically toward `u = 0`.
pub(crate) fn half_circle_rule(h: HurstParameter, budget: usize) -> Vec<(f64, f64)> {
    let q = 1.0 / (2.0 - 2.0 * h.value());
    let uniform_panels = (budget / (2 * PANEL_ORDER)).max(2);
    let width = 1.0 / uniform_panels as f64;
    let mut breaks = vec![0.0];
    for level in (1..=GRADED_LEVELS).rev() {
        breaks.push(width * 0.5f64.powi(level as i32));
    }
    breaks.extend((1..=uniform_panels).map(|i| i as f64 * width));
    let (u, w) = composite_gauss_legendre(&breaks, PANEL_ORDER);
    u.into_iter()
        .zip(w)
        .filter_map(|(u, w)| {
            let t = 0.5 * u.powf(q);
            // negligible mass; would otherwise hit the singular point itself
            (t > 1e-280).then(|| (t, w * 0.5 * q * u.powf(q - 1.0)))
        })
        .collect()
}

/// Unnormalized density `4 sin^2(pi t) (zeta(s, t) + zeta(s, 1 - t))` on `(0, 1)`.
fn unnormalized_density(h: HurstParameter, t: f64) -> Result<f64> {
    let s = h.zeta_exponent();
    if !(t > 0.0 && t < 1.0) {
        return domain(format!("density argument must lie in (0, 1), got {t}"));
    }
    // the leading term u^{-s} is combined with sin^2 so tiny u cannot overflow
    let u = t.min(1.0 - t);
    let sin = (PI * u).sin();
    let sinc = sin / u;
    let leading = sinc * sinc * u.powf(2.0 - s);
    let rest = zeta_series(s, 1.0 + u) + zeta_series(s, 1.0 - u);
    Ok(4.0 * (leading + sin * sin * rest))
}

/// Relative stabilization target for the normalizing integral.
const NORMALIZATION_TOL: f64 = 1e-8;
/// Largest node budget tried while refining the normalizing integral.
const MAX_NORMALIZATION_BUDGET: usize = 1 << 18;

/// Normalizing constant `C(H)` of the fGn spectral density.
///
/// Integrates the unnormalized density with the singularity-aware rule,
/// doubling the node budget from `n_quad` until two successive values agree
/// to `1e-8` relative.
pub fn normalizing_constant(h: HurstParameter, n_quad: usize) -> Result<f64> {
    if n_quad < 256 {
        return domain(format!("normalizing_constant needs n_quad >= 256, got {n_quad}"));
    }
    if h.value() == 0.0 {
        return domain(
            "the Hurwitz representation degenerates at H = 0 (C(H) -> 0); the density is 2 sin^2(pi t)",
        );
    }
    let integral = |budget: usize| -> Result<f64> {
        let mut sum = 0.0;
        for (t, w) in half_circle_rule(h, budget) {
            sum += w * unnormalized_density(h, t)?;
        }
        finite(2.0 * sum, "normalizing integral")
    };
    let mut budget = n_quad;
    let mut previous = integral(budget)?;
    while budget < MAX_NORMALIZATION_BUDGET {
        budget *= 2;
        let current = integral(budget)?;
        if (current - previous).abs() <= NORMALIZATION_TOL * current.abs() {
            return Ok(1.0 / current);
        }
        previous = current;
    }
    Err(Error::Convergence(format!(
        "normalizing integral for H = {} did not stabilize to {NORMALIZATION_TOL:e}",
        h.value()
    )))
}

/// Default starting budget for [`normalizing_constant`].
pub const DEFAULT_NORMALIZATION_QUAD: usize = 1024;

/// The fGn spectral density `phi_H` with its normalizing constant cached.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralDensity {
    hurst: HurstParameter,
    /// `None` at `H = 0`, where the closed form `2 sin^2(pi t)` is used.
    constant: Option<f64>,
}

impl SpectralDensity {
    pub fn new(h: HurstParameter) -> Result<Self> {
        Self::with_quadrature(h, DEFAULT_NORMALIZATION_QUAD)
    }

    pub fn with_quadrature(h: HurstParameter, n_quad: usize) -> Result<Self> {
        let constant = if h.value() == 0.0 {
            None
        } else {
            Some(normalizing_constant(h, n_quad)?)
        };
        Ok(Self { hurst: h, constant })
    }

    pub fn hurst(&self) -> HurstParameter {
        self.hurst
    }

    pub fn constant(&self) -> Option<f64> {
        self.constant
    }

    /// True when the density is unbounded at `t = 0` (`H > 1/2`).
    pub fn is_singular(&self) -> bool {
        self.hurst.value() > 0.5
    }

    /// `phi_H(t)`, with `t` read modulo 1.
    ///
    /// Equals 1 for `H = 1/2`, extends continuously by 0 at `t = 0` for
    /// `H < 1/2`, and is a domain error at `t = 0` for `H > 1/2`.
    pub fn evaluate(&self, t: f64) -> Result<f64> {
        if !t.is_finite() {
            return domain(format!("spectral density argument must be finite, got {t}"));
        }
        if self.hurst.is_white() {
            return Ok(1.0);
        }
        let t = t.rem_euclid(1.0);
        let Some(c) = self.constant else {
            let sin = (PI * t).sin();
            return Ok(2.0 * sin * sin);
        };
        if t == 0.0 {
            return if self.is_singular() {
                domain(format!(
                    "phi_H is singular at t = 0 for H = {} > 1/2",
                    self.hurst.value()
                ))
            } else {
                Ok(0.0)
            };
        }
        finite(c * unnormalized_density(self.hurst, t)?, "spectral density")
    }

    /// Quadrature nodes `(t, mass)` with `sum mass * g(t) ~ int g(t) phi_H(t) dt`.
    ///
    /// Node locations are returned in `[0, 1)`; masses are evaluated at the
    /// representative closest to the singular point so `1 - t` never rounds
    /// onto it.
    pub fn quadrature_nodes(&self, n_quad: usize) -> Result<Vec<(f64, f64)>> {
        let n_quad = n_quad.max(2);
        if self.hurst.is_white() || self.constant.is_none() {
            // smooth periodic density: equal weights
            let n = n_quad as f64;
            return (0..n_quad)
                .map(|k| {
                    let t = k as f64 / n;
                    Ok((t, self.evaluate(t)? / n))
                })
                .collect();
        }
        let rule = half_circle_rule(self.hurst, n_quad);
        let mut nodes = Vec::with_capacity(2 * rule.len());
        for &(t, w) in &rule {
            let mass = w * self.evaluate(t)?;
            nodes.push((t, mass));
            nodes.push(((1.0 - t).rem_euclid(1.0), mass));
        }
        Ok(nodes)
    }

    /// `int phi_H(t) e^{2 pi i k t} dt` by the density's quadrature rule.
    pub fn fourier_coefficient(&self, k: i64, n_quad: usize) -> Result<f64> {
        // the density is even, so the transform is real
        let nodes = self.quadrature_nodes(n_quad)?;
        Ok(nodes
            .iter()
            .map(|(t, m)| m * (2.0 * PI * k as f64 * t).cos())
            .sum())
    }
}

/// `phi_H(t)` for a one-off evaluation; prefer [`SpectralDensity`] for many.
pub fn spectral_density(h: HurstParameter, t: f64) -> Result<f64> {
    SpectralDensity::new(h)?.evaluate(t)
}

/// Per-lag outcome of [`bochner_consistency`].
#[derive(Debug, Clone, Serialize)]
pub struct BochnerReport {
    pub hurst: f64,
    pub n_quad: usize,
    /// `(k, int phi e^{2 pi i k t}, gamma_H(k), |difference|)` for `0 <= k <= k_max`.
    pub lags: Vec<(i64, f64, f64, f64)>,
    pub max_error: f64,
}

/// Compares the Fourier coefficients of `phi_H` with `gamma_H(k)`,
/// `|k| <= k_max`. Negative lags mirror positive ones exactly (both sides are
/// even in `k`), so only `k >= 0` is evaluated.
pub fn bochner_consistency(density: &SpectralDensity, k_max: usize, n_quad: usize) -> Result<BochnerReport> {
    if k_max < 1 {
        return domain("bochner_consistency needs k_max >= 1");
    }
    let nodes = density.quadrature_nodes(n_quad)?;
    let h = density.hurst();
    let mut lags = Vec::with_capacity(k_max + 1);
    let mut max_error: f64 = 0.0;
    for k in 0..=k_max as i64 {
        let integral: f64 = nodes
            .iter()
            .map(|(t, m)| m * (2.0 * PI * k as f64 * t).cos())
            .sum();
        let gamma = fgn_covariance(h, k);
        let err = (integral - gamma).abs();
        max_error = max_error.max(err);
        lags.push((k, integral, gamma, err));
    }
    Ok(BochnerReport {
        hurst: h.value(),
        n_quad,
        lags,
        max_error,
    })
}

/// Sup of `phi_{H1} / phi_{H2}` together with how it was located.
#[derive(Debug, Clone, Serialize)]
pub struct DensityRatio {
    pub h1: f64,
    pub h2: f64,
    pub grid_size: usize,
    /// The bound `M` with `phi_{H1} <= M phi_{H2}` on every evaluated point.
    pub bound: f64,
    pub argmax: f64,
    /// Ratios at `t = 2^{-j}`, `j = 1..=20`, showing the behaviour at the endpoint.
    pub endpoint_trend: Vec<(f64, f64)>,
    /// Every `(t, ratio)` that entered the sup.
    #[serde(skip)]
    pub evaluated: Vec<(f64, f64)>,
}

/// Number of dyadic refinement points `2^{-j}` toward each endpoint.
const RATIO_ENDPOINT_LEVELS: i32 = 20;

/// Grid sup of `phi_{H1}(t) / phi_{H2}(t)` for `H1 <= H2`.
///
/// Evaluates on the interior grid `k / grid_size` together with the dyadic
/// points `2^{-j}` and `1 - 2^{-j}`, `j <= 20`.
pub fn density_ratio_bound(
    low: &SpectralDensity,
    high: &SpectralDensity,
    grid_size: usize,
) -> Result<DensityRatio> {
    let (h1, h2) = (low.hurst().value(), high.hurst().value());
    if h1 > h2 {
        return domain(format!("density_ratio_bound needs H1 <= H2, got {h1} > {h2}"));
    }
    if grid_size < 2 {
        return domain("density ratio grid needs at least two cells");
    }
    let ratio = |t: f64| -> Result<f64> { Ok(low.evaluate(t)? / high.evaluate(t)?) };

    let mut points: Vec<f64> = (1..grid_size).map(|k| k as f64 / grid_size as f64).collect();
    for j in 1..=RATIO_ENDPOINT_LEVELS {
        let e = 0.5f64.powi(j);
        points.push(e);
        points.push(1.0 - e);
    }
    let mut evaluated = Vec::with_capacity(points.len());
    let (mut bound, mut argmax) = (f64::NEG_INFINITY, f64::NAN);
    for t in points {
        let r = finite(ratio(t)?, "density ratio")?;
        if r > bound {
            bound = r;
            argmax = t;
        }
        evaluated.push((t, r));
    }
    let endpoint_trend = (1..=RATIO_ENDPOINT_LEVELS)
        .map(|j| {
            let t = 0.5f64.powi(j);
            Ok((t, ratio(t)?))
        })
        .collect::<Result<_>>()?;
    Ok(DensityRatio {
        h1,
        h2,
        grid_size,
        bound,
        argmax,
        endpoint_trend,
        evaluated,
    })
}

/// Outcome of [`lp_membership_diagnostic`].
#[derive(Debug, Clone, Serialize)]
pub struct LpDiagnostic {
    pub hurst: f64,
    pub p: f64,
    /// `Some(true)`: integrable, `Some(false)`: not, `None`: inside the
    /// inconclusive band around the estimated critical exponent.
    pub member: Option<bool>,
    /// Critical exponent recovered from the shell integrals.
    pub critical_p_estimate: f64,
    /// `int_{2^{-j}}^{1/2} phi^p`, j = 1, 2, ... (stabilizes iff integrable).
    pub truncated_integrals: Vec<f64>,
}

/// Half-width of the inconclusive band around the critical exponent.
pub const LP_INCONCLUSIVE_BAND: f64 = 0.05;
const LP_SHELLS: usize = 60;

/// Decides numerically whether `phi_H` lies in `L^p(T)`, `H > 1/2`.
///
/// Integrates `phi_H^p` over the dyadic shells `[2^{-j-1}, 2^{-j}]` (the
/// endpoint `t = 1` is the mirror image). The ratio of consecutive shell
/// integrals gives the local power law `2^{-e}`; integrability holds iff
/// `e > 0`, and `e` translates back into an estimated critical exponent.
pub fn lp_membership_diagnostic(density: &SpectralDensity, p: f64) -> Result<LpDiagnostic> {
    let h = density.hurst().value();
    if h <= 0.5 {
        return domain(format!("L^p diagnostic requires H > 1/2, got {h}"));
    }
    if !(p >= 1.0 && p.is_finite()) {
        return domain(format!("L^p diagnostic requires p >= 1, got {p}"));
    }
    let (x, w) = gauss_legendre(PANEL_ORDER);
    // int over [lo, 2 lo] in log coordinates t = lo * 2^v
    let shell = |lo: f64| -> Result<f64> {
        let mut acc = 0.0;
        for (xi, wi) in x.iter().zip(&w) {
            let v = 0.5 * (xi + 1.0);
            let t = lo * 2f64.powf(v);
            acc += 0.5 * wi * density.evaluate(t)?.powf(p) * t * std::f64::consts::LN_2;
        }
        Ok(acc)
    };
    let shells = (1..=LP_SHELLS)
        .map(|j| shell(0.5f64.powi(j as i32 + 1)))
        .collect::<Result<Vec<f64>>>()?;
    let mut truncated = Vec::with_capacity(LP_SHELLS);
    let mut running = 0.0;
    for s in &shells {
        running += s;
        truncated.push(running);
    }
    let last = shells[LP_SHELLS - 1];
    let prev = shells[LP_SHELLS - 2];
    let exponent = -(last / prev).log2();
    // exponent = 1 - p (2H - 1) locally, so the critical p solves exponent = 0
    let slope = (1.0 - exponent) / p;
    let critical = if slope > 0.0 { 1.0 / slope } else { f64::INFINITY };
    let member = if p < critical - LP_INCONCLUSIVE_BAND {
        Some(true)
    } else if p > critical + LP_INCONCLUSIVE_BAND {
        Some(false)
    } else {
        None
    };
    Ok(LpDiagnostic {
        hurst: h,
        p,
        member,
        critical_p_estimate: critical,
        truncated_integrals: truncated,
    })
}

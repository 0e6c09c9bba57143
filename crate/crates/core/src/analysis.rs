//! Monte Carlo functionals of sample paths: grid oscillation, the
//! `P(mu)`-norm, the comparison principle and boundedness diagnostics.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::fgn::{CovarianceSequence, HurstParameter};
use crate::numerics::{GaussianStream, RngState};
use crate::sampling::{FgnSampler, MeasureSpec, XfSampler};
use crate::series::{CircleFunction, CoefficientSpec, SeriesSynthesizer};

/// Diameter `max_{i,j} |z_i - z_j|` of a finite point set in the plane.
///
/// Uses the convex hull and rotating calipers, `O(m log m)`.
pub fn grid_oscillation(values: &[Complex64]) -> f64 {
    let hull = convex_hull(values);
    match hull.len() {
        0 | 1 => 0.0,
        2 => (hull[0] - hull[1]).norm(),
        h => {
            let area = |a: Complex64, b: Complex64, c: Complex64| cross(b - a, c - a);
            let mut best = 0.0f64;
            let mut j = 1;
            for i in 0..h {
                let ni = (i + 1) % h;
                while area(hull[i], hull[ni], hull[(j + 1) % h]) > area(hull[i], hull[ni], hull[j]) {
                    j = (j + 1) % h;
                }
                best = best.max((hull[i] - hull[j]).norm()).max((hull[ni] - hull[j]).norm());
            }
            best
        }
    }
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Counter-clockwise hull without collinear points (monotone chain).
fn convex_hull(values: &[Complex64]) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = values.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Complex64>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 1] - hull[hull.len() - 2], p - hull[hull.len() - 2]) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub mean: f64,
    /// Sample standard deviation divided by `sqrt(n_reps)`.
    pub stderr: f64,
    pub n_reps: usize,
    pub base_seed: u64,
    pub grid_size: usize,
    /// Truncation order of the synthesized series, when there is one.
    pub order: Option<usize>,
}

impl MCEstimate {
    pub fn from_samples(samples: &[f64], base_seed: u64, grid_size: usize, order: Option<usize>) -> Result<Self> {
        let n = samples.len();
        if n < 2 {
            return domain("a Monte Carlo estimate needs at least two replications");
        }
        let mean = samples.iter().sum::<f64>() / n as f64;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        Ok(Self {
            mean,
            stderr: (var / n as f64).sqrt(),
            n_reps: n,
            base_seed,
            grid_size,
            order,
        })
    }
}

/// A Gaussian process observed on the grid `t_k = k / m`.
pub trait PathModel: Sync {
    fn grid_size(&self) -> usize;

    /// One path, consuming Gaussians from `gaussians`.
    fn draw(&self, gaussians: &mut GaussianStream) -> Vec<Complex64>;

    /// Row-major `E X(t_i) conj(X(t_j))`.
    fn covariance(&self) -> Result<Vec<Complex64>>;

    fn label(&self) -> String;

    fn truncation(&self) -> Option<usize> {
        None
    }

    fn sample(&self, rng: RngState) -> Vec<Complex64> {
        self.draw(&mut rng.gaussians())
    }
}

impl<M: PathModel + ?Sized> PathModel for &M {
    fn grid_size(&self) -> usize {
        (**self).grid_size()
    }
    fn draw(&self, gaussians: &mut GaussianStream) -> Vec<Complex64> {
        (**self).draw(gaussians)
    }
    fn covariance(&self) -> Result<Vec<Complex64>> {
        (**self).covariance()
    }
    fn label(&self) -> String {
        (**self).label()
    }
    fn truncation(&self) -> Option<usize> {
        (**self).truncation()
    }
}

/// `E|X(t_i) - X(t_j)|^2` from a covariance matrix.
pub fn increment_moments(model: &dyn PathModel) -> Result<Vec<f64>> {
    let m = model.grid_size();
    let k = model.covariance()?;
    if k.len() != m * m {
        return Err(Error::Dimension(format!("covariance has {} entries, expected {}", k.len(), m * m)));
    }
    let mut d = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            d[i * m + j] = (k[i * m + i].re + k[j * m + j].re - 2.0 * k[i * m + j].re).max(0.0);
        }
    }
    Ok(d)
}

/// Driving noise of a random Fourier series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeriesNoise {
    Iid,
    Fgn { hurst: HurstParameter },
}

impl SeriesNoise {
    pub fn covariance(&self) -> CovarianceSequence {
        match self {
            SeriesNoise::Iid => CovarianceSequence::White,
            SeriesNoise::Fgn { hurst } => CovarianceSequence::fgn(*hurst),
        }
    }

    pub fn label(&self) -> String {
        match self {
            SeriesNoise::Iid => "iid".into(),
            SeriesNoise::Fgn { hurst } => format!("fgn(H={})", hurst.value()),
        }
    }
}

/// Draws `xi_{-N} ..= xi_N` for one noise kind.
#[derive(Clone)]
struct NoiseSource {
    len: usize,
    fgn: Option<FgnSampler>,
}

impl NoiseSource {
    fn new(noise: SeriesNoise, half_range: usize) -> Result<Self> {
        let len = 2 * half_range + 1;
        let fgn = match noise {
            SeriesNoise::Iid => None,
            SeriesNoise::Fgn { hurst } => Some(FgnSampler::new(hurst, len)?),
        };
        Ok(Self { len, fgn })
    }

    fn draw(&self, gaussians: &mut GaussianStream) -> Vec<Complex64> {
        match &self.fgn {
            None => gaussians.complex_normals(self.len),
            Some(s) => s.draw(gaussians),
        }
    }
}

/// `S_N(t) = sum_{|n| <= N} f^(n) xi_n e_n(t)` on an `m`-point grid.
pub struct SeriesModel {
    synth: SeriesSynthesizer,
    noise: SeriesNoise,
    source: NoiseSource,
    label: String,
}

impl SeriesModel {
    pub fn new(f: &CoefficientSpec, noise: SeriesNoise, order: usize, grid: usize) -> Result<Self> {
        Ok(Self {
            synth: SeriesSynthesizer::new(f, order, grid)?,
            noise,
            source: NoiseSource::new(noise, order)?,
            label: format!("series({}, {}, N={order})", f.label(), noise.label()),
        })
    }

    pub fn noise(&self) -> SeriesNoise {
        self.noise
    }
}

impl PathModel for SeriesModel {
    fn grid_size(&self) -> usize {
        self.synth.grid_size()
    }

    fn draw(&self, gaussians: &mut GaussianStream) -> Vec<Complex64> {
        let xi = self.source.draw(gaussians);
        self.synth.synthesize(&xi).expect("noise length matches the synthesizer")
    }

    fn covariance(&self) -> Result<Vec<Complex64>> {
        let m = self.synth.grid_size();
        let order = self.synth.order() as i64;
        let coeffs = self.synth.coefficients();
        let active: Vec<(i64, Complex64)> = coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| (j as i64 - order, *c))
            .filter(|(_, c)| *c != Complex64::default())
            .collect();
        let gamma = self.noise.covariance();
        let p = active.len();
        // rows F_{i, n} = c_n e_n(t_i)
        let f: Vec<Complex64> = (0..m)
            .flat_map(|i| {
                let t = i as f64 / m as f64;
                active.iter().map(move |&(n, c)| c * crate::series::character(n, t))
            })
            .collect();
        let g: Vec<Complex64> = (0..p)
            .flat_map(|a| (0..p).map(move |b| (a, b)))
            .map(|(a, b)| gamma.gamma(active[a].0 - active[b].0))
            .collect();
        // H = F G, K = H F^*
        let h: Vec<Complex64> = (0..m)
            .into_par_iter()
            .flat_map_iter(|i| {
                let row = &f[i * p..(i + 1) * p];
                let g = &g;
                (0..p).map(move |b| (0..p).map(|a| row[a] * g[a * p + b]).sum::<Complex64>())
            })
            .collect();
        let k: Vec<Complex64> = (0..m)
            .into_par_iter()
            .flat_map_iter(|i| {
                let hr = &h[i * p..(i + 1) * p];
                let f = &f;
                (0..m).map(move |j| {
                    hr.iter()
                        .zip(&f[j * p..(j + 1) * p])
                        .map(|(x, y)| x * y.conj())
                        .sum::<Complex64>()
                })
            })
            .collect();
        Ok(k)
    }

    fn label(&self) -> String {
        self.label.clone()
    }

    fn truncation(&self) -> Option<usize> {
        Some(self.synth.order())
    }
}

/// `X_f` on a grid, from its factorized kernel.
pub struct XfModel {
    sampler: XfSampler,
    label: String,
}

impl XfModel {
    pub fn new(f: &dyn CircleFunction, measure: &MeasureSpec, m: usize) -> Result<Self> {
        Ok(Self {
            sampler: XfSampler::new(f, measure, m)?,
            label: format!("X_f(mu={})", measure.label()),
        })
    }

    pub fn sampler(&self) -> &XfSampler {
        &self.sampler
    }
}

impl PathModel for XfModel {
    fn grid_size(&self) -> usize {
        self.sampler.grid_size()
    }
    fn draw(&self, gaussians: &mut GaussianStream) -> Vec<Complex64> {
        self.sampler.draw(gaussians)
    }
    fn covariance(&self) -> Result<Vec<Complex64>> {
        Ok(self.sampler.kernel().to_vec())
    }
    fn label(&self) -> String {
        self.label.clone()
    }
}

/// `lambda X` for a model `X`; draws are the scaled draws of `X` under the same seed.
pub struct ScaledModel<M> {
    pub inner: M,
    pub scale: Complex64,
}

impl<M: PathModel> ScaledModel<M> {
    pub fn new(inner: M, scale: Complex64) -> Self {
        Self { inner, scale }
    }
}

impl<M: PathModel> PathModel for ScaledModel<M> {
    fn grid_size(&self) -> usize {
        self.inner.grid_size()
    }
    fn draw(&self, gaussians: &mut GaussianStream) -> Vec<Complex64> {
        let mut v = self.inner.draw(gaussians);
        for z in &mut v {
            *z *= self.scale;
        }
        v
    }
    fn covariance(&self) -> Result<Vec<Complex64>> {
        let s2 = self.scale.norm_sqr();
        Ok(self.inner.covariance()?.into_iter().map(|z| z * s2).collect())
    }
    fn label(&self) -> String {
        format!("{} * {}", self.scale, self.inner.label())
    }
    fn truncation(&self) -> Option<usize> {
        self.inner.truncation()
    }
}

/// `(X^1 + ... + X^k) / k` for independent copies of a model.
pub struct AveragedModel<M> {
    pub inner: M,
    pub copies: usize,
}

impl<M: PathModel> PathModel for AveragedModel<M> {
    fn grid_size(&self) -> usize {
        self.inner.grid_size()
    }
    fn draw(&self, gaussians: &mut GaussianStream) -> Vec<Complex64> {
        let k = self.copies.max(1);
        let mut acc = self.inner.draw(gaussians);
        for _ in 1..k {
            for (a, z) in acc.iter_mut().zip(self.inner.draw(gaussians)) {
                *a += z;
            }
        }
        acc.iter_mut().for_each(|z| *z /= k as f64);
        acc
    }
    fn covariance(&self) -> Result<Vec<Complex64>> {
        let k = self.copies.max(1) as f64;
        Ok(self.inner.covariance()?.into_iter().map(|z| z / k).collect())
    }
    fn label(&self) -> String {
        format!("mean of {} copies of {}", self.copies, self.inner.label())
    }
    fn truncation(&self) -> Option<usize> {
        self.inner.truncation()
    }
}

/// Smallest replication count accepted by the Monte Carlo estimators.
pub const MIN_REPLICATIONS: usize = 100;

/// Per-replication grid oscillations; replication `r` uses stream `r` of `base_seed`.
pub fn oscillation_samples(model: &dyn PathModel, n_reps: usize, base_seed: u64) -> Vec<f64> {
    (0..n_reps as u64)
        .into_par_iter()
        .map(|r| grid_oscillation(&model.sample(RngState::new(base_seed, r))))
        .collect()
}

/// Estimate of `E max_{i,j} |X(t_i) - X(t_j)|` over the model grid.
pub fn oscillation_mc(model: &dyn PathModel, n_reps: usize, base_seed: u64) -> Result<MCEstimate> {
    if n_reps < MIN_REPLICATIONS {
        return domain(format!("need at least {MIN_REPLICATIONS} replications, got {n_reps}"));
    }
    let samples = oscillation_samples(model, n_reps, base_seed);
    MCEstimate::from_samples(&samples, base_seed, model.grid_size(), model.truncation())
}

/// Estimate of `||f||_{P(mu)} = E sup |X_f(t) - X_f(s)| + ||f||_inf`.
#[derive(Debug, Clone, Serialize)]
pub struct PmuNormEstimate {
    pub oscillation: MCEstimate,
    /// `max |f|` on a grid eight times finer than the path grid.
    pub sup_norm: f64,
    pub value: f64,
    pub stderr: f64,
    pub measure: String,
}

pub fn pmu_norm_estimate(
    f: &dyn CircleFunction,
    measure: &MeasureSpec,
    m: usize,
    n_reps: usize,
    base_seed: u64,
) -> Result<PmuNormEstimate> {
    let model = XfModel::new(f, measure, m)?;
    let oscillation = oscillation_mc(&model, n_reps, base_seed)?;
    let fine = 8 * m;
    let sup_norm = (0..fine)
        .map(|k| f.eval(k as f64 / fine as f64).norm())
        .fold(0.0, f64::max);
    Ok(PmuNormEstimate {
        value: oscillation.mean + sup_norm,
        stderr: oscillation.stderr,
        oscillation,
        sup_norm,
        measure: measure.label(),
    })
}

/// Result of [`comparison_check`].
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    /// `E|Y(t_i) - Y(t_j)|^2 <= E|X(t_i) - X(t_j)|^2 + 1e-10` on every grid pair.
    pub hypothesis_ok: bool,
    /// `max (E|dY|^2 - E|dX|^2)` over grid pairs.
    pub max_increment_excess: f64,
    /// Oscillation estimate of `Y`.
    pub lhs: MCEstimate,
    /// Oscillation estimate of `X`.
    pub rhs: MCEstimate,
    pub factor: f64,
    /// `factor * rhs.mean + 3 * combined stderr`.
    pub bound: f64,
    /// `lhs.mean <= bound`; only evaluated when the hypothesis holds.
    pub conclusion: Option<bool>,
    /// Whether the estimate was repeated at four times the replications.
    pub reran: bool,
}

/// Tolerance on increment domination in [`comparison_check`].
pub const INCREMENT_TOLERANCE: f64 = 1e-10;

/// Compares expected oscillations of `Y` and `X` given increment domination
/// `E|Y(t) - Y(s)|^2 <= E|X(t) - X(s)|^2`: checks
/// `E osc(Y) <= factor * E osc(X)` within three combined standard errors,
/// with `factor = 4` for complex processes and `1` for real ones. A failure
/// is rerun once at four times the replications.
pub fn comparison_check(
    x: &dyn PathModel,
    y: &dyn PathModel,
    n_reps: usize,
    base_seed: u64,
    complex_case: bool,
) -> Result<ComparisonReport> {
    if x.grid_size() != y.grid_size() {
        return Err(Error::Dimension(format!(
            "grid sizes differ: X has {}, Y has {}",
            x.grid_size(),
            y.grid_size()
        )));
    }
    let dx = increment_moments(x)?;
    let dy = increment_moments(y)?;
    let max_increment_excess = dy.iter().zip(&dx).map(|(a, b)| a - b).fold(f64::NEG_INFINITY, f64::max);
    let hypothesis_ok = max_increment_excess <= INCREMENT_TOLERANCE;
    let factor = if complex_case { 4.0 } else { 1.0 };
    let run = |reps: usize| -> Result<(MCEstimate, MCEstimate, f64)> {
        let lhs = oscillation_mc(y, reps, base_seed)?;
        let rhs = oscillation_mc(x, reps, base_seed)?;
        let bound = factor * rhs.mean + 3.0 * (lhs.stderr.powi(2) + (factor * rhs.stderr).powi(2)).sqrt();
        Ok((lhs, rhs, bound))
    };
    let (mut lhs, mut rhs, mut bound) = run(n_reps)?;
    let mut reran = false;
    if hypothesis_ok && lhs.mean > bound {
        (lhs, rhs, bound) = run(4 * n_reps)?;
        reran = true;
    }
    Ok(ComparisonReport {
        hypothesis_ok,
        max_increment_excess,
        conclusion: hypothesis_ok.then_some(lhs.mean <= bound),
        lhs,
        rhs,
        factor,
        bound,
        reran,
    })
}

/// One truncation order of a [`BoundednessReport`].
#[derive(Debug, Clone, Serialize)]
pub struct BoundednessRow {
    pub order: usize,
    pub grid: usize,
    /// Estimate of `E max_grid |S_N|`.
    pub estimate: MCEstimate,
    /// `max |S_N| <= sum |f^(n)| max |xi_n|` in every replication.
    pub envelope_holds: bool,
}

/// Growth of `E max |S_N|` along a ladder of truncation orders.
#[derive(Debug, Clone, Serialize)]
pub struct BoundednessReport {
    pub rows: Vec<BoundednessRow>,
    /// `mean(last) / mean(previous)`.
    pub stabilization_ratio: f64,
    pub tolerance: f64,
    pub stabilizing: bool,
    /// Always `"evidence"`: finite simulation cannot certify almost-sure boundedness.
    pub status: String,
    pub coefficients: String,
    pub noise: String,
}

/// Oversampling of the sup grid relative to the truncation order.
pub const SUP_GRID_FACTOR: usize = 8;
/// Relative change over the last doubling accepted as stabilization.
pub const STABILIZATION_TOLERANCE: f64 = 0.05;

fn sup_samples(
    f: &CoefficientSpec,
    noise: SeriesNoise,
    ladder: &[usize],
    n_reps: usize,
    base_seed: u64,
) -> Result<(Vec<Vec<f64>>, Vec<bool>)> {
    let n_max = *ladder.last().expect("nonempty ladder");
    let source = NoiseSource::new(noise, n_max)?;
    let synths = ladder
        .iter()
        .map(|&n| SeriesSynthesizer::new(f, n, SUP_GRID_FACTOR * n))
        .collect::<Result<Vec<_>>>()?;
    let per_rep: Vec<(Vec<f64>, Vec<bool>)> = (0..n_reps as u64)
        .into_par_iter()
        .map(|r| {
            let xi = source.draw(&mut RngState::new(base_seed, r).gaussians());
            synths
                .iter()
                .map(|s| {
                    let n = s.order();
                    // the central block of a stationary sequence has the same law
                    let block = &xi[n_max - n..=n_max + n];
                    let path = s.synthesize(block).expect("block length matches");
                    let sup = path.iter().map(|z| z.norm()).fold(0.0, f64::max);
                    let envelope = s.coefficients().iter().map(|c| c.norm()).sum::<f64>()
                        * block.iter().map(|z| z.norm()).fold(0.0, f64::max);
                    (sup, sup <= envelope * (1.0 + 1e-12))
                })
                .unzip()
        })
        .collect();
    let k = ladder.len();
    let mut sups = vec![Vec::with_capacity(n_reps); k];
    let mut env = vec![true; k];
    for (s, e) in per_rep {
        for j in 0..k {
            sups[j].push(s[j]);
            env[j] &= e[j];
        }
    }
    Ok((sups, env))
}

/// Estimates `E max_grid |S_N|` with `m = 8N` along `ladder`, drawing the
/// noise once per replication for the largest order and reusing its central
/// block for the smaller ones.
pub fn boundedness_diagnostic(
    f: &CoefficientSpec,
    noise: SeriesNoise,
    ladder: &[usize],
    n_reps: usize,
    base_seed: u64,
) -> Result<BoundednessReport> {
    if ladder.len() < 2 || ladder.windows(2).any(|w| w[0] >= w[1]) || ladder[0] == 0 {
        return domain("truncation ladder must hold at least two increasing positive orders");
    }
    if n_reps < 2 {
        return domain("need at least two replications");
    }
    let (sups, env) = sup_samples(f, noise, ladder, n_reps, base_seed)?;
    let rows = ladder
        .iter()
        .zip(sups.iter().zip(env))
        .map(|(&n, (s, e))| {
            Ok(BoundednessRow {
                order: n,
                grid: SUP_GRID_FACTOR * n,
                estimate: MCEstimate::from_samples(s, base_seed, SUP_GRID_FACTOR * n, Some(n))?,
                envelope_holds: e,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let k = rows.len();
    let stabilization_ratio = rows[k - 1].estimate.mean / rows[k - 2].estimate.mean;
    Ok(BoundednessReport {
        stabilizing: (stabilization_ratio - 1.0).abs() <= STABILIZATION_TOLERANCE,
        stabilization_ratio,
        tolerance: STABILIZATION_TOLERANCE,
        status: "evidence".into(),
        coefficients: f.label(),
        noise: noise.label(),
        rows,
    })
}

/// Estimate of `E max_grid |S_N|` on `grid` points.
pub fn supnorm_mc(
    f: &CoefficientSpec,
    noise: SeriesNoise,
    order: usize,
    grid: usize,
    n_reps: usize,
    base_seed: u64,
) -> Result<MCEstimate> {
    if n_reps < 2 {
        return domain("need at least two replications");
    }
    let model = SeriesModel::new(f, noise, order, grid)?;
    let samples: Vec<f64> = (0..n_reps as u64)
        .into_par_iter()
        .map(|r| {
            model
                .sample(RngState::new(base_seed, r))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max)
        })
        .collect();
    MCEstimate::from_samples(&samples, base_seed, grid, Some(order))
}

/// Lower bound of a density on an interval and the translates needed to cover the circle.
#[derive(Debug, Clone, Serialize)]
pub struct IntervalDomination {
    pub lo: f64,
    pub hi: f64,
    pub min_density: f64,
    pub argmin: f64,
    /// `1 / min_I phi`, so that `1 <= C phi` on `I`; absent when the density vanishes.
    pub constant: Option<f64>,
    /// `ceil(1 / |I|)` translates of `I` cover the circle.
    pub covering_count: usize,
    pub ok: bool,
    pub measure: String,
}

/// Checks that the density of `measure` is bounded below on `[lo, hi]`
/// (read modulo 1) using `grid + 1` equispaced points.
pub fn interval_domination_check(measure: &MeasureSpec, lo: f64, hi: f64, grid: usize) -> Result<IntervalDomination> {
    let len = hi - lo;
    if !(len > 0.0 && len <= 1.0) || !lo.is_finite() {
        return domain(format!("interval [{lo}, {hi}] must have length in (0, 1]"));
    }
    if grid < 1 {
        return domain("grid must be positive");
    }
    if matches!(measure, MeasureSpec::Atomic(_)) {
        return domain("an atomic measure has no density");
    }
    let mut min_density = f64::INFINITY;
    let mut argmin = lo;
    for k in 0..=grid {
        let t = lo + len * k as f64 / grid as f64;
        // singular points of the density (value +infinity) do not lower the minimum
        let v = match measure.density_at(t) {
            Ok(v) => v,
            Err(Error::Domain(_)) => continue,
            Err(e) => return Err(e),
        };
        if v < min_density {
            min_density = v;
            argmin = t;
        }
    }
    let ok = min_density > 0.0 && min_density.is_finite();
    Ok(IntervalDomination {
        lo,
        hi,
        min_density,
        argmin,
        constant: ok.then(|| 1.0 / min_density),
        covering_count: (1.0 / len - 1e-12).ceil().max(1.0) as usize,
        ok,
        measure: measure.label(),
    })
}

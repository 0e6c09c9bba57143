//! Samplers for the driving noise and for grid draws of `X_f`.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::fgn::{fgn_covariance, HurstParameter, SpectralDensity};
use crate::numerics::linalg::{cholesky_with_jitter, CholeskyFactor};
use crate::numerics::{FftCache, GaussianStream, RngState};
use crate::series::CircleFunction;

/// A Borel probability measure on the circle.
#[derive(Clone)]
pub enum MeasureSpec {
    Lebesgue,
    /// Spectral measure of fractional Gaussian noise.
    Fgn(SpectralDensity),
    /// User density `phi >= 0` with `int phi = 1`.
    Density {
        label: String,
        density: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
    /// Finite combination of point masses `(location, weight)`.
    Atomic(Vec<(f64, f64)>),
}

impl fmt::Debug for MeasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Mass tolerance accepted for densities.
const DENSITY_MASS_TOL: f64 = 1e-6;
const VALIDATION_NODES: usize = 4096;

impl MeasureSpec {
    pub fn fgn(h: HurstParameter) -> Result<Self> {
        Ok(MeasureSpec::Fgn(SpectralDensity::new(h)?))
    }

    pub fn density<F>(label: impl Into<String>, density: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let m = MeasureSpec::Density {
            label: label.into(),
            density: Arc::new(density),
        };
        m.validate()?;
        Ok(m)
    }

    pub fn atomic(atoms: Vec<(f64, f64)>) -> Result<Self> {
        let m = MeasureSpec::Atomic(atoms);
        m.validate()?;
        Ok(m)
    }

    /// Checks nonnegativity and unit total mass.
    pub fn validate(&self) -> Result<()> {
        match self {
            MeasureSpec::Lebesgue | MeasureSpec::Fgn(_) => Ok(()),
            MeasureSpec::Atomic(atoms) => {
                if atoms.is_empty() {
                    return domain("atomic measure needs at least one atom");
                }
                if atoms.iter().any(|&(t, w)| !w.is_finite() || w < 0.0 || !t.is_finite()) {
                    return domain("atomic weights must be nonnegative and locations finite");
                }
                let total: f64 = atoms.iter().map(|a| a.1).sum();
                if (total - 1.0).abs() > 1e-12 {
                    return domain(format!("atomic weights must sum to 1, got {total}"));
                }
                Ok(())
            }
            MeasureSpec::Density { density, .. } => {
                let n = VALIDATION_NODES as f64;
                let mut total = 0.0;
                for k in 0..VALIDATION_NODES {
                    let v = density((k as f64 + 0.5) / n);
                    if !v.is_finite() || v < 0.0 {
                        return domain(format!("density is negative or non-finite at t = {}", (k as f64 + 0.5) / n));
                    }
                    total += v / n;
                }
                if (total - 1.0).abs() > DENSITY_MASS_TOL {
                    return domain(format!("density must integrate to 1, got {total}"));
                }
                Ok(())
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            MeasureSpec::Lebesgue => "lebesgue".into(),
            MeasureSpec::Fgn(d) => format!("fgn-density(H={})", d.hurst().value()),
            MeasureSpec::Density { label, .. } => format!("density({label})"),
            MeasureSpec::Atomic(a) => format!("atomic({} atoms)", a.len()),
        }
    }

    /// Nodes `(u, mass)` with `sum mass * g(u) ~ int g dmu`; exact for atoms.
    pub fn quadrature_nodes(&self, n_quad: usize) -> Result<Vec<(f64, f64)>> {
        let n_quad = n_quad.max(2);
        match self {
            MeasureSpec::Lebesgue => {
                let n = n_quad as f64;
                Ok((0..n_quad).map(|k| (k as f64 / n, 1.0 / n)).collect())
            }
            MeasureSpec::Fgn(d) => d.quadrature_nodes(n_quad),
            MeasureSpec::Density { density, .. } => {
                let n = n_quad as f64;
                Ok((0..n_quad)
                    .map(|k| {
                        let t = (k as f64 + 0.5) / n;
                        (t, density(t) / n)
                    })
                    .collect())
            }
            MeasureSpec::Atomic(atoms) => Ok(atoms.iter().map(|&(t, w)| (t.rem_euclid(1.0), w)).collect()),
        }
    }

    /// Density value at `t`, if the measure has one.
    pub fn density_at(&self, t: f64) -> Result<f64> {
        match self {
            MeasureSpec::Lebesgue => Ok(1.0),
            MeasureSpec::Fgn(d) => d.evaluate(t),
            MeasureSpec::Density { density, .. } => Ok(density(t.rem_euclid(1.0))),
            MeasureSpec::Atomic(_) => domain("atomic measures have no density"),
        }
    }
}

/// How a noise vector was produced.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoiseDescriptor {
    Iid,
    Fgn { hurst: f64, method: FgnMethod },
    Spectral { measure: String, n_modes: usize },
}

/// fGn synthesis route actually used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FgnMethod {
    CirculantEmbedding,
    DenseFactorization,
}

/// Consecutive noise values `xi_{first_index}, xi_{first_index + 1}, ...`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoiseSample {
    pub values: Vec<Complex64>,
    pub first_index: i64,
    pub descriptor: NoiseDescriptor,
    pub provenance: RngState,
}

impl NoiseSample {
    pub fn last_index(&self) -> i64 {
        self.first_index + self.values.len() as i64 - 1
    }

    pub fn get(&self, n: i64) -> Option<Complex64> {
        let idx = n.checked_sub(self.first_index)?;
        usize::try_from(idx).ok().and_then(|i| self.values.get(i).copied())
    }

    pub fn covers(&self, lo: i64, hi: i64) -> bool {
        self.first_index <= lo && hi <= self.last_index()
    }

    /// Same values relabelled to start at `first_index` (valid for stationary noise).
    pub fn reindexed(mut self, first_index: i64) -> Self {
        self.first_index = first_index;
        self
    }
}

/// Threshold below which a circulant eigenvalue counts as negative.
const CIRCULANT_NEGATIVE_TOL: f64 = 1e-9;

/// Reusable fGn generator for a fixed `(H, n)`.
///
/// Circulant embedding of size `2(n - 1)`; if the embedding has an eigenvalue
/// below `-1e-9` the dense Toeplitz factorization is used instead.
#[derive(Clone)]
pub struct FgnSampler {
    hurst: HurstParameter,
    len: usize,
    route: FgnRoute,
}

#[derive(Clone)]
enum FgnRoute {
    Single,
    Circulant { amplitudes: Vec<f64>, fft: FftCache },
    Dense(CholeskyFactor),
}

impl FgnSampler {
    pub fn new(hurst: HurstParameter, len: usize) -> Result<Self> {
        if len == 0 {
            return domain("fGn length must be at least 1");
        }
        if len == 1 {
            return Ok(Self {
                hurst,
                len,
                route: FgnRoute::Single,
            });
        }
        let size = 2 * (len - 1);
        let mut row: Vec<Complex64> = (0..size)
            .map(|j| {
                let lag = if j < len { j } else { size - j };
                Complex64::new(fgn_covariance(hurst, lag as i64), 0.0)
            })
            .collect();
        let fft = FftCache::new(size);
        fft.forward(&mut row);
        let min_eig = row.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        if min_eig < -CIRCULANT_NEGATIVE_TOL {
            return Self::dense(hurst, len);
        }
        let amplitudes = row.iter().map(|z| (z.re.max(0.0) / size as f64).sqrt()).collect();
        Ok(Self {
            hurst,
            len,
            route: FgnRoute::Circulant { amplitudes, fft },
        })
    }

    /// Forces the dense Toeplitz-factorization route.
    pub fn dense(hurst: HurstParameter, len: usize) -> Result<Self> {
        if len == 0 {
            return domain("fGn length must be at least 1");
        }
        let toeplitz: Vec<Complex64> = (0..len * len)
            .map(|idx| {
                let lag = (idx / len) as i64 - (idx % len) as i64;
                Complex64::new(fgn_covariance(hurst, lag), 0.0)
            })
            .collect();
        let factor = cholesky_with_jitter(&toeplitz, len)?;
        Ok(Self {
            hurst,
            len,
            route: FgnRoute::Dense(factor),
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn method(&self) -> FgnMethod {
        match self.route {
            FgnRoute::Dense(_) => FgnMethod::DenseFactorization,
            _ => FgnMethod::CirculantEmbedding,
        }
    }

    /// Two independent real fGn vectors `(delta^1, delta^2)`.
    pub fn real_pair(&self, gaussians: &mut GaussianStream) -> (Vec<f64>, Vec<f64>) {
        match &self.route {
            FgnRoute::Single => (vec![gaussians.normal()], vec![gaussians.normal()]),
            FgnRoute::Circulant { amplitudes, fft } => {
                // Y = F^* (sqrt(lambda / M) zeta) has E Y Y^* = circulant and
                // E Y Y^T = 0, so sqrt(2) Re Y and sqrt(2) Im Y are independent fGn.
                let mut buf: Vec<Complex64> = amplitudes.iter().map(|a| a * gaussians.complex_normal()).collect();
                fft.backward_unnormalized(&mut buf);
                buf.truncate(self.len);
                buf.iter().map(|y| (SQRT_2 * y.re, SQRT_2 * y.im)).unzip()
            }
            FgnRoute::Dense(factor) => {
                let z1: Vec<Complex64> = gaussians.normals(self.len).into_iter().map(|x| x.into()).collect();
                let z2: Vec<Complex64> = gaussians.normals(self.len).into_iter().map(|x| x.into()).collect();
                let d1 = factor.apply(&z1).into_iter().map(|z| z.re).collect();
                let d2 = factor.apply(&z2).into_iter().map(|z| z.re).collect();
                (d1, d2)
            }
        }
    }

    /// Complex fGn `Delta_n = (delta^1_n + i delta^2_n) / sqrt(2)` drawn from `gaussians`.
    pub fn draw(&self, gaussians: &mut GaussianStream) -> Vec<Complex64> {
        let (d1, d2) = self.real_pair(gaussians);
        d1.into_iter()
            .zip(d2)
            .map(|(a, b)| Complex64::new(a, b) / SQRT_2)
            .collect()
    }

    /// Complex fGn `Delta_0 .. Delta_{len-1}`.
    pub fn sample(&self, rng: RngState) -> NoiseSample {
        let values = self.draw(&mut rng.gaussians());
        NoiseSample {
            values,
            first_index: 0,
            descriptor: NoiseDescriptor::Fgn {
                hurst: self.hurst.value(),
                method: self.method(),
            },
            provenance: rng,
        }
    }
}

/// `n` consecutive values of complex fGn, `Delta_0 .. Delta_{n-1}`.
pub fn sample_fgn(hurst: HurstParameter, n: usize, rng: RngState) -> Result<NoiseSample> {
    Ok(FgnSampler::new(hurst, n)?.sample(rng))
}

/// i.i.d. standard complex Gaussians indexed `first_index ..`.
pub fn sample_iid(first_index: i64, len: usize, rng: RngState) -> Result<NoiseSample> {
    let values = crate::numerics::sample_standard_complex_gaussian(len, rng)?;
    Ok(NoiseSample {
        values,
        first_index,
        descriptor: NoiseDescriptor::Iid,
        provenance: rng,
    })
}

/// Discretized spectral representation of a stationary sequence with
/// spectral measure `mu`: `xi_k = sum_j sqrt(mass_j) Z_j e^{2 pi i k t_j}`.
///
/// Its exact covariance is `sum_j mass_j e^{2 pi i k t_j}`, the quadrature
/// value of `int e^{2 pi i k t} dmu(t)`.
#[derive(Debug, Clone)]
pub struct StationarySampler {
    /// `(t_j, sqrt(mass_j))`.
    modes: Vec<(f64, f64)>,
    label: String,
}

impl StationarySampler {
    pub fn new(measure: &MeasureSpec, n_modes: usize) -> Result<Self> {
        let nodes = measure.quadrature_nodes(n_modes)?;
        let modes = nodes
            .into_iter()
            .map(|(t, mass)| {
                if mass < 0.0 {
                    domain(format!("negative quadrature mass {mass} at t = {t}"))
                } else {
                    Ok((t, mass.sqrt()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            modes,
            label: measure.label(),
        })
    }

    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }

    /// `xi_k` for `|k| <= half_range`.
    pub fn sample(&self, half_range: usize, rng: RngState) -> NoiseSample {
        let mut gaussians = rng.gaussians();
        let len = 2 * half_range + 1;
        let mut values = vec![Complex64::default(); len];
        let start = -(half_range as f64);
        for &(t, amplitude) in &self.modes {
            let z = gaussians.complex_normal() * amplitude;
            let step = Complex64::from_polar(1.0, 2.0 * PI * t);
            let mut phase = Complex64::from_polar(1.0, 2.0 * PI * start * t);
            for (k, v) in values.iter_mut().enumerate() {
                *v += z * phase;
                phase *= step;
                // re-anchor to keep rounding from accumulating over long ranges
                if k % 64 == 63 {
                    phase = Complex64::from_polar(1.0, 2.0 * PI * (start + k as f64 + 1.0) * t);
                }
            }
        }
        NoiseSample {
            values,
            first_index: -(half_range as i64),
            descriptor: NoiseDescriptor::Spectral {
                measure: self.label.clone(),
                n_modes: self.modes.len(),
            },
            provenance: rng,
        }
    }
}

/// Stationary sequence `xi_k`, `|k| <= half_range`, from the discretized
/// spectral representation of `measure` on `n_modes` quadrature nodes.
pub fn sample_stationary_from_density(
    measure: &MeasureSpec,
    half_range: usize,
    n_modes: usize,
    rng: RngState,
) -> Result<NoiseSample> {
    Ok(StationarySampler::new(measure, n_modes)?.sample(half_range, rng))
}

/// Process values on the uniform grid `t_k = k / m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridPath {
    pub grid: Vec<f64>,
    pub values: Vec<Complex64>,
    pub provenance: Option<RngState>,
}

impl GridPath {
    pub fn new(values: Vec<Complex64>, provenance: Option<RngState>) -> Self {
        let m = values.len();
        let grid = (0..m).map(|k| k as f64 / m as f64).collect();
        Self {
            grid,
            values,
            provenance,
        }
    }
}

/// Quadrature size used for the `X_f` kernel on an `m`-point grid.
pub fn kernel_quadrature_size(m: usize) -> usize {
    (8 * m).max(1024)
}

/// Factorized covariance of `X_f` on the uniform `m`-point grid.
///
/// `K(t_i, t_j) = int f(t_i + u) conj(f(t_j + u)) dmu(u)`, factorized once
/// with jitter so draws are a triangular mat-vec each.
pub struct XfSampler {
    m: usize,
    kernel: Vec<Complex64>,
    factor: CholeskyFactor,
}

impl XfSampler {
    pub fn new(f: &dyn CircleFunction, measure: &MeasureSpec, m: usize) -> Result<Self> {
        if m < 2 {
            return domain("X_f grid needs at least two points");
        }
        let nodes = measure.quadrature_nodes(kernel_quadrature_size(m))?;
        let q = nodes.len();
        // rows: f(t_i + u_q) sqrt(mass_q)
        let mut rows = vec![Complex64::default(); m * q];
        for i in 0..m {
            let t = i as f64 / m as f64;
            for (j, &(u, mass)) in nodes.iter().enumerate() {
                rows[i * q + j] = f.eval(t + u) * mass.max(0.0).sqrt();
            }
        }
        let mut kernel = vec![Complex64::default(); m * m];
        for i in 0..m {
            for j in 0..=i {
                let v: Complex64 = rows[i * q..(i + 1) * q]
                    .iter()
                    .zip(&rows[j * q..(j + 1) * q])
                    .map(|(a, b)| a * b.conj())
                    .sum();
                kernel[i * m + j] = v;
                kernel[j * m + i] = v.conj();
            }
        }
        if kernel.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("X_f kernel".into()));
        }
        let factor = cholesky_with_jitter(&kernel, m)?;
        Ok(Self { m, kernel, factor })
    }

    pub fn grid_size(&self) -> usize {
        self.m
    }

    /// Row-major kernel matrix `K(t_i, t_j)`.
    pub fn kernel(&self) -> &[Complex64] {
        &self.kernel
    }

    pub fn jitter(&self) -> f64 {
        self.factor.jitter()
    }

    /// Grid values drawn from `gaussians`.
    pub fn draw(&self, gaussians: &mut GaussianStream) -> Vec<Complex64> {
        let z = gaussians.complex_normals(self.m);
        self.factor.apply(&z)
    }

    pub fn sample_values(&self, rng: RngState) -> Vec<Complex64> {
        self.draw(&mut rng.gaussians())
    }

    pub fn sample(&self, rng: RngState) -> GridPath {
        GridPath::new(self.sample_values(rng), Some(rng))
    }
}

/// One Gaussian draw of `X_f` on the grid `k / m`.
pub fn sample_xf_on_grid(
    f: &dyn CircleFunction,
    measure: &MeasureSpec,
    m: usize,
    rng: RngState,
) -> Result<GridPath> {
    Ok(XfSampler::new(f, measure, m)?.sample(rng))
}

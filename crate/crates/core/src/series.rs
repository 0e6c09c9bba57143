//! Coefficient families, partial-sum synthesis and pseudo-distances.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::fgn::CovarianceSequence;
use crate::numerics::FftCache;
use crate::sampling::{GridPath, MeasureSpec, NoiseDescriptor, NoiseSample};

/// A complex-valued function on the circle `T = R / Z`.
pub trait CircleFunction: Sync {
    fn eval(&self, t: f64) -> Complex64;
}

impl<F> CircleFunction for F
where
    F: Fn(f64) -> Complex64 + Sync,
{
    fn eval(&self, t: f64) -> Complex64 {
        self(t)
    }
}

/// `e_n(t) = e^{2 pi i n t}`.
pub fn character(n: i64, t: f64) -> Complex64 {
    // reduce n t mod 1 first so large n keep full phase accuracy
    let phase = (n as f64 * t).rem_euclid(1.0);
    Complex64::from_polar(1.0, 2.0 * PI * phase)
}

/// Finite sum `sum_n c_n e^{2 pi i n t}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPolynomial {
    pub terms: Vec<(i64, Complex64)>,
}

impl TrigPolynomial {
    pub fn new(terms: Vec<(i64, Complex64)>) -> Self {
        Self { terms }
    }

    pub fn degree(&self) -> u64 {
        self.terms.iter().map(|(n, _)| n.unsigned_abs()).max().unwrap_or(0)
    }

    /// `sum |c_n|`, the Wiener-algebra norm.
    pub fn absolute_sum(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.norm()).sum()
    }
}

impl CircleFunction for TrigPolynomial {
    fn eval(&self, t: f64) -> Complex64 {
        self.terms.iter().map(|&(n, c)| c * character(n, t)).sum()
    }
}

/// Which frequencies a power-law family populates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sides {
    /// `n != 0`.
    Two,
    /// `n >= 1` only.
    One,
}

/// Declared envelope `|f^(k)| <= constant |k|^{-alpha}` beyond an explicit array.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientDecay {
    pub constant: f64,
    pub alpha: f64,
}

/// Fourier coefficients `f^(n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoefficientSpec {
    /// `f^(n) = scale |n|^{-alpha}`, `f^(0) = 0`, optionally with sign `(-1)^n`.
    PowerLaw {
        alpha: f64,
        scale: f64,
        alternating: bool,
        sides: Sides,
    },
    /// `f^(first_index + j) = values[j]`. Without `decay` nothing is known
    /// about the coefficients outside the array.
    Explicit {
        first_index: i64,
        values: Vec<Complex64>,
        decay: Option<CoefficientDecay>,
    },
    /// Exactly these nonzero coefficients.
    FiniteSupport { terms: Vec<(i64, Complex64)> },
}

impl CoefficientSpec {
    /// Two-sided power law `|n|^{-alpha}` with unit scale and positive phase.
    pub fn power_law(alpha: f64) -> Result<Self> {
        Self::power_law_with(alpha, 1.0, false, Sides::Two)
    }

    pub fn power_law_with(alpha: f64, scale: f64, alternating: bool, sides: Sides) -> Result<Self> {
        if !(alpha > 0.5 && alpha.is_finite()) {
            return domain(format!("power-law coefficients need alpha > 1/2 to be square-summable, got {alpha}"));
        }
        if !scale.is_finite() {
            return domain("power-law scale must be finite");
        }
        Ok(CoefficientSpec::PowerLaw {
            alpha,
            scale,
            alternating,
            sides,
        })
    }

    /// A single frequency `f = coefficient * e_n`.
    pub fn monomial(n: i64, coefficient: Complex64) -> Self {
        CoefficientSpec::FiniteSupport {
            terms: vec![(n, coefficient)],
        }
    }

    pub fn coefficient(&self, n: i64) -> Complex64 {
        match self {
            CoefficientSpec::PowerLaw {
                alpha,
                scale,
                alternating,
                sides,
            } => {
                if n == 0 || (*sides == Sides::One && n < 0) {
                    return Complex64::default();
                }
                let sign = if *alternating && n % 2 != 0 { -1.0 } else { 1.0 };
                Complex64::new(sign * scale * (n.unsigned_abs() as f64).powf(-alpha), 0.0)
            }
            CoefficientSpec::Explicit {
                first_index, values, ..
            } => n
                .checked_sub(*first_index)
                .and_then(|j| usize::try_from(j).ok())
                .and_then(|j| values.get(j).copied())
                .unwrap_or_default(),
            CoefficientSpec::FiniteSupport { terms } => terms
                .iter()
                .filter(|(m, _)| *m == n)
                .map(|(_, c)| *c)
                .sum(),
        }
    }

    /// Largest `|n|` with a possibly nonzero coefficient, if finite.
    pub fn support_radius(&self) -> Option<u64> {
        match self {
            CoefficientSpec::PowerLaw { .. } => None,
            CoefficientSpec::Explicit { .. } => None,
            CoefficientSpec::FiniteSupport { terms } => {
                Some(terms.iter().map(|(n, _)| n.unsigned_abs()).max().unwrap_or(0))
            }
        }
    }

    /// Coefficients with `|n| <= order` as a trigonometric polynomial.
    pub fn truncate(&self, order: usize) -> TrigPolynomial {
        let order = order as i64;
        let terms = (-order..=order)
            .map(|n| (n, self.coefficient(n)))
            .filter(|(_, c)| *c != Complex64::default())
            .collect();
        TrigPolynomial { terms }
    }

    /// `sum_{|n| <= order} |f^(n)|^2 |n|^{2 b}`.
    pub fn weighted_energy(&self, order: usize, b: f64) -> f64 {
        let order = order as i64;
        (-order..=order)
            .filter(|&n| n != 0)
            .map(|n| self.coefficient(n).norm_sqr() * (n.unsigned_abs() as f64).powf(2.0 * b))
            .sum::<f64>()
            + self.coefficient(0).norm_sqr()
    }

    /// Coefficients `scale * f^(n) |n|^b` for `|n| <= order`, as an explicit array.
    pub fn weighted(&self, order: usize, b: f64, scale: f64) -> CoefficientSpec {
        let order = order as i64;
        let values = (-order..=order)
            .map(|n| {
                let w = if n == 0 { 1.0 } else { (n.unsigned_abs() as f64).powf(b) };
                self.coefficient(n) * w * scale
            })
            .collect();
        CoefficientSpec::Explicit {
            first_index: -order,
            values,
            decay: None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            CoefficientSpec::PowerLaw {
                alpha,
                alternating,
                sides,
                ..
            } => format!(
                "power(alpha={alpha}{}{})",
                if *alternating { ", alternating" } else { "" },
                if *sides == Sides::One { ", one-sided" } else { "" }
            ),
            CoefficientSpec::Explicit { values, .. } => format!("explicit(len={})", values.len()),
            CoefficientSpec::FiniteSupport { terms } => format!("finite({} terms)", terms.len()),
        }
    }
}

/// Pseudo-distance `d_f(t, s) = (int |f(t+u) - f(s+u)|^2 dmu(u))^{1/2}`.
pub fn pseudo_distance(
    f: &dyn CircleFunction,
    measure: &MeasureSpec,
    t: f64,
    s: f64,
    n_quad: usize,
) -> Result<f64> {
    let nodes = measure.quadrature_nodes(n_quad)?;
    Ok(pseudo_distance_on(f, &nodes, t, s))
}

fn pseudo_distance_on(f: &dyn CircleFunction, nodes: &[(f64, f64)], t: f64, s: f64) -> f64 {
    nodes
        .iter()
        .map(|&(u, m)| m * (f.eval(t + u) - f.eval(s + u)).norm_sqr())
        .sum::<f64>()
        .max(0.0)
        .sqrt()
}

/// Values of `S_N` on a uniform grid with the truncation order and noise used.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesPath {
    pub path: GridPath,
    pub order: usize,
    pub noise: NoiseDescriptor,
}

/// Zero-padded FFT synthesis of `S_N(t_k) = sum_{|n| <= N} c_n xi_n e_n(t_k)`
/// on `t_k = k / m`, for fixed coefficients.
#[derive(Clone)]
pub struct SeriesSynthesizer {
    order: usize,
    grid: usize,
    coefficients: Vec<Complex64>,
    fft: FftCache,
}

impl SeriesSynthesizer {
    pub fn new(f: &CoefficientSpec, order: usize, grid: usize) -> Result<Self> {
        if grid < 2 * order + 1 {
            return Err(Error::Dimension(format!(
                "grid size {grid} is below 2N + 1 = {} for N = {order}",
                2 * order + 1
            )));
        }
        let n = order as i64;
        Ok(Self {
            order,
            grid,
            coefficients: (-n..=n).map(|k| f.coefficient(k)).collect(),
            fft: FftCache::new(grid),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn grid_size(&self) -> usize {
        self.grid
    }

    /// `c_n` for `n = -N ..= N`.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Synthesis from noise values `xi_{-N} ..= xi_N`.
    pub fn synthesize(&self, noise: &[Complex64]) -> Result<Vec<Complex64>> {
        if noise.len() != self.coefficients.len() {
            return Err(Error::Dimension(format!(
                "need {} noise values for N = {}, got {}",
                self.coefficients.len(),
                self.order,
                noise.len()
            )));
        }
        let mut buf = vec![Complex64::default(); self.grid];
        let n = self.order as i64;
        for (j, (c, xi)) in self.coefficients.iter().zip(noise).enumerate() {
            let freq = j as i64 - n;
            buf[freq.rem_euclid(self.grid as i64) as usize] += c * xi;
        }
        self.fft.backward_unnormalized(&mut buf);
        Ok(buf)
    }

    /// Synthesis using the noise entries `xi_{-N} ..= xi_N` of `noise`.
    pub fn synthesize_sample(&self, noise: &NoiseSample) -> Result<Vec<Complex64>> {
        let n = self.order as i64;
        if !noise.covers(-n, n) {
            return Err(Error::Dimension(format!(
                "noise covers [{}, {}], need [-{n}, {n}]",
                noise.first_index,
                noise.last_index()
            )));
        }
        let start = (-n - noise.first_index) as usize;
        self.synthesize(&noise.values[start..start + self.coefficients.len()])
    }
}

/// `S_N` on `m` grid points for the given coefficients and noise.
pub fn partial_sum_path(
    f: &CoefficientSpec,
    noise: &NoiseSample,
    order: usize,
    grid: usize,
) -> Result<SeriesPath> {
    let values = SeriesSynthesizer::new(f, order, grid)?.synthesize_sample(noise)?;
    Ok(SeriesPath {
        path: GridPath::new(values, Some(noise.provenance)),
        order,
        noise: noise.descriptor.clone(),
    })
}

/// Second moment of `S_M(t) - S_N(t)` and its weighted-energy bound.
#[derive(Debug, Clone, Serialize)]
pub struct L2Increment {
    pub n: usize,
    pub m: usize,
    pub t: f64,
    pub b: f64,
    /// `sum gamma(n - m) f^(n) conj(f^(m)) e_n(t) conj(e_m(t))` over `N < |n|, |m| <= M`.
    pub exact: f64,
    /// `sum_{N < |n| <= M} |f^(n)|^2 |n|^{2b}`.
    pub weighted_sum: f64,
    pub constant: Option<f64>,
    /// `exact <= constant * weighted_sum`, when a constant was supplied.
    pub dominated: Option<bool>,
}

/// `E|S_M(t) - S_N(t)|^2` for noise with covariance `gamma`, compared with
/// `K' sum_{N < |n| <= M} |f^(n)|^2 |n|^{2b}` when `K'` is given.
pub fn l2_increment(
    f: &CoefficientSpec,
    gamma: &CovarianceSequence,
    b: f64,
    n: usize,
    m: usize,
    t: f64,
    constant: Option<f64>,
) -> Result<L2Increment> {
    if n > m {
        return domain(format!("l2_increment needs N <= M, got N = {n}, M = {m}"));
    }
    if b < 0.0 {
        return domain("weight exponent b must be nonnegative");
    }
    let indices: Vec<i64> = (n as i64 + 1..=m as i64).flat_map(|k| [-k, k]).collect();
    let w: Vec<Complex64> = indices.iter().map(|&k| f.coefficient(k) * character(k, t)).collect();
    let mut exact = Complex64::default();
    for (a, &ka) in indices.iter().enumerate() {
        for (c, &kc) in indices.iter().enumerate() {
            exact += gamma.gamma(ka - kc) * w[a] * w[c].conj();
        }
    }
    let weighted_sum: f64 = indices
        .iter()
        .map(|&k| f.coefficient(k).norm_sqr() * (k.unsigned_abs() as f64).powf(2.0 * b))
        .sum();
    let dominated = constant.map(|c| exact.re <= c * weighted_sum * (1.0 + 1e-12) + 1e-300);
    Ok(L2Increment {
        n,
        m,
        t,
        b,
        exact: exact.re,
        weighted_sum,
        constant,
        dominated,
    })
}

/// `E|S_{N_{i+1}}(t) - S_{N_i}(t)|^2` along a ladder of truncation orders;
/// tends to zero when the series converges in `L^2(P)` at `t`.
pub fn l2_cauchy_profile(
    f: &CoefficientSpec,
    gamma: &CovarianceSequence,
    t: f64,
    ladder: &[usize],
) -> Result<Vec<(usize, usize, f64)>> {
    ladder
        .windows(2)
        .map(|w| Ok((w[0], w[1], l2_increment(f, gamma, 0.0, w[0], w[1], t, None)?.exact)))
        .collect()
}

/// Outcome of [`lipschitz_contraction_check`].
#[derive(Debug, Clone, Serialize)]
pub struct LipschitzReport {
    pub holds: bool,
    /// `max (d_{T o f} - d_f)` over the pairs (nonpositive when `holds`).
    pub max_excess: f64,
    /// `(t, s, d_f, d_{T o f})`.
    pub pairs: Vec<(f64, f64, f64, f64)>,
}

/// Checks `d_{T o f}(t, s) <= d_f(t, s) + 1e-12` on each pair, for a
/// 1-Lipschitz map `T` of the complex plane.
pub fn lipschitz_contraction_check<T>(
    f: &dyn CircleFunction,
    map: T,
    measure: &MeasureSpec,
    pairs: &[(f64, f64)],
    n_quad: usize,
) -> Result<LipschitzReport>
where
    T: Fn(Complex64) -> Complex64 + Sync,
{
    let nodes = measure.quadrature_nodes(n_quad)?;
    let composed = |t: f64| map(f.eval(t));
    let mut out = Vec::with_capacity(pairs.len());
    let mut max_excess = f64::NEG_INFINITY;
    for &(t, s) in pairs {
        let d = pseudo_distance_on(f, &nodes, t, s);
        let dt = pseudo_distance_on(&composed, &nodes, t, s);
        max_excess = max_excess.max(dt - d);
        out.push((t, s, d, dt));
    }
    Ok(LipschitzReport {
        holds: max_excess <= 1e-12,
        max_excess,
        pairs: out,
    })
}

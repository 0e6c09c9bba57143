//! Dense Hermitian factorization with jitter and power iteration.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Diagonal jitter factors tried in turn, relative to `trace / n`.
pub const JITTER_LADDER: [f64; 7] = [0.0, 1e-12, 1e-11, 1e-10, 1e-9, 1e-8, 1e-6];

/// Pivots within this fraction of the largest diagonal entry count as zero.
const PIVOT_TOLERANCE: f64 = 1e-12;

/// Lower-triangular factor `L` with `L L^* = K + jitter * I`.
#[derive(Debug, Clone)]
pub struct CholeskyFactor {
    n: usize,
    lower: Vec<Complex64>,
    jitter: f64,
}

impl CholeskyFactor {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Absolute diagonal shift that was needed to factorize.
    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.lower[i * self.n + j]
    }

    /// `L z`.
    pub fn apply(&self, z: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(z.len(), self.n);
        (0..self.n)
            .map(|i| {
                let row = &self.lower[i * self.n..i * self.n + i + 1];
                row.iter().zip(z).map(|(l, z)| l * z).sum()
            })
            .collect()
    }
}

/// Semidefinite Cholesky of a row-major Hermitian matrix.
///
/// Pivots in `[-tol, tol]` (tol relative to the largest diagonal entry) are
/// set to zero together with their column, so rank-deficient PSD matrices
/// factor exactly. A pivot below `-tol` fails.
fn semidefinite_cholesky(matrix: &[Complex64], n: usize, shift: f64) -> Option<Vec<Complex64>> {
    let max_diag = (0..n).map(|i| matrix[i * n + i].re).fold(0.0, f64::max) + shift;
    let tol = PIVOT_TOLERANCE * max_diag.max(f64::MIN_POSITIVE);
    let mut lower = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        let mut pivot = matrix[j * n + j].re + shift;
        for k in 0..j {
            pivot -= lower[j * n + k].norm_sqr();
        }
        if pivot < -tol || !pivot.is_finite() {
            return None;
        }
        if pivot <= tol {
            continue;
        }
        let root = pivot.sqrt();
        // same expression as the off-diagonal entries, so equal rows stay bit-identical
        lower[j * n + j] = Complex64::new(pivot / root, 0.0);
        for i in j + 1..n {
            let mut acc = matrix[i * n + j];
            for k in 0..j {
                acc -= lower[i * n + k] * lower[j * n + k].conj();
            }
            lower[i * n + j] = acc / root;
        }
    }
    Some(lower)
}

/// Factorizes `K + eps * (trace / n) * I`, escalating `eps` along
/// [`JITTER_LADDER`] until the factorization succeeds.
pub fn cholesky_with_jitter(matrix: &[Complex64], n: usize) -> Result<CholeskyFactor> {
    if matrix.len() != n * n || n == 0 {
        return Err(Error::Dimension(format!(
            "expected a {n}x{n} matrix, got {} entries",
            matrix.len()
        )));
    }
    let trace: f64 = (0..n).map(|i| matrix[i * n + i].re).sum();
    let scale = (trace / n as f64).abs();
    for eps in JITTER_LADDER {
        let shift = eps * scale;
        if let Some(lower) = semidefinite_cholesky(matrix, n, shift) {
            return Ok(CholeskyFactor {
                n,
                lower,
                jitter: shift,
            });
        }
    }
    Err(Error::Factorization(format!(
        "matrix of order {n} is not positive semidefinite even with jitter {:e}",
        JITTER_LADDER[JITTER_LADDER.len() - 1] * scale
    )))
}

/// Result of a power iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerIteration {
    pub value: f64,
    pub iterations: usize,
}

/// Spectral norm of a real symmetric operator given by its mat-vec.
///
/// Iterates `v <- A v / |A v|` from the all-ones vector and reports `|A v|`
/// once it changes by less than `rel_tol` relative. Measuring `|A v|` instead
/// of the Rayleigh quotient keeps the estimate convergent when `-lambda_max`
/// is also an eigenvalue.
pub fn power_iteration<F>(dim: usize, mut matvec: F, rel_tol: f64, max_iter: usize) -> Result<PowerIteration>
where
    F: FnMut(&[f64], &mut [f64]),
{
    if dim == 0 {
        return Err(Error::Dimension("power iteration on an empty operator".into()));
    }
    let mut v = vec![1.0 / (dim as f64).sqrt(); dim];
    let mut w = vec![0.0; dim];
    let mut previous = f64::NAN;
    for it in 1..=max_iter {
        matvec(&v, &mut w);
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() {
            return Err(Error::NonFinite("power iteration diverged".into()));
        }
        if norm == 0.0 {
            return Ok(PowerIteration {
                value: 0.0,
                iterations: it,
            });
        }
        if (norm - previous).abs() <= rel_tol * norm {
            return Ok(PowerIteration {
                value: norm,
                iterations: it,
            });
        }
        previous = norm;
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / norm;
        }
    }
    Err(Error::Convergence(format!(
        "power iteration did not reach relative tolerance {rel_tol:e} in {max_iter} iterations"
    )))
}

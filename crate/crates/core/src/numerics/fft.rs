use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Forward and inverse plans for one transform length.
///
/// Plans are immutable and can be shared across threads.
#[derive(Clone)]
pub struct FftCache {
    len: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl FftCache {
    pub fn new(len: usize) -> Self {
        assert!(len >= 1, "transform length must be positive");
        let mut planner = FftPlanner::new();
        Self {
            len,
            forward: planner.plan_fft_forward(len),
            inverse: planner.plan_fft_inverse(len),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// In place `X_k = sum_j v_j e^{-2 pi i j k / N}`.
    pub fn forward(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.len);
        self.forward.process(data);
    }

    /// In place `x_j = sum_k v_k e^{+2 pi i j k / N}`, without the `1/N` factor.
    pub fn backward_unnormalized(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.len);
        self.inverse.process(data);
    }

    /// In place inverse of [`FftCache::forward`].
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.backward_unnormalized(data);
        let scale = 1.0 / self.len as f64;
        data.iter_mut().for_each(|x| *x *= scale);
    }
}

/// Forward DFT `X_k = sum_j v_j e^{-2 pi i j k / N}`.
pub fn dft(v: &[Complex64]) -> Vec<Complex64> {
    let mut out = v.to_vec();
    FftCache::new(v.len()).forward(&mut out);
    out
}

/// Inverse DFT, normalized so that `inverse_dft(dft(v)) == v`.
pub fn inverse_dft(v: &[Complex64]) -> Vec<Complex64> {
    let mut out = v.to_vec();
    FftCache::new(v.len()).inverse(&mut out);
    out
}

/// O(N^2) forward DFT by direct summation.
pub fn dft_direct(v: &[Complex64]) -> Vec<Complex64> {
    let n = v.len();
    (0..n)
        .map(|k| {
            v.iter()
                .enumerate()
                .map(|(j, x)| {
                    let phase = -2.0 * std::f64::consts::PI * ((j * k) % n) as f64 / n as f64;
                    x * Complex64::from_polar(1.0, phase)
                })
                .sum()
        })
        .collect()
}

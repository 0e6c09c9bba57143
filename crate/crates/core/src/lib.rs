//! Random Fourier series driven by stationary complex Gaussian sequences.
//!
//! The crate covers the computable side of the theory of Pisier-type
//! algebras `P(mu)`:
//!
//! - [`numerics`]: Hurwitz zeta, periodic and Gauss-Legendre quadrature,
//!   FFT wrappers, counter-based Gaussian sampling, small dense linear algebra.
//! - [`fgn`]: fractional Gaussian noise covariance, its spectral density
//!   through the Hurwitz zeta function, and density-ratio / `L^p` diagnostics.
//! - [`sampling`]: driving-noise samplers (i.i.d., circulant-embedding fGn,
//!   spectral representation) and grid draws of the process `X_f`.
//! - [`series`]: coefficient families, partial-sum synthesis, the
//!   pseudo-distance `d_f`, and `L^2` increment bounds.
//! - [`criteria`]: the weighted tail-sum convergence condition, Schur test,
//!   operator-norm estimation and covariance-decay checks.
//! - [`analysis`]: Monte Carlo estimates of sup-oscillation and of the
//!   `P(mu)` norm, the Gaussian comparison principle, boundedness ladders.

pub mod analysis;
pub mod criteria;
pub mod error;
pub mod fgn;
pub mod numerics;
pub mod sampling;
pub mod series;

pub use error::{Error, Result};
pub use num_complex::Complex64;

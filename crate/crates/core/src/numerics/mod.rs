//! Numerical building blocks shared by every other module.

mod fft;
pub mod linalg;
mod quadrature;
mod rng;
mod zeta;

pub use fft::{dft, dft_direct, inverse_dft, FftCache};
pub use quadrature::{composite_gauss_legendre, gauss_legendre, periodic_quadrature};
pub use rng::{sample_standard_complex_gaussian, GaussianStream, RngState};
pub use zeta::hurwitz_zeta;
pub(crate) use zeta::zeta_series;

//! Continuous wavelet transforms over a Morlet family.
//!
//! Three evaluation paths share one mathematical contract:
//!
//! * [`cwt_direct`] sums the correlation literally for every translation and
//!   serves as the reference.
//! * [`cwt_fft`] computes each scale row with one zero-padded FFT convolution.
//! * [`cwth_strided`] evaluates only translations `0, H, 2H, ...`; its output
//!   column `k` equals full-transform column `k * H`.
//!
//! [`cwth_decimate`] is a different operator: it drops samples first and
//! transforms the shorter signal.
//!
//! Boundaries are zero-padded in every path.

mod grid;
mod matrix;
mod morlet;
mod transform;

pub use grid::{default_scale_grid, make_scale_grid, ScaleGrid};
pub use matrix::CoefficientMatrix;
pub use morlet::{sample_wavelet, scale_to_frequency, MorletParams, SampledWavelet};
pub use transform::{cwt_direct, cwt_fft, cwth_decimate, cwth_strided, plan_strided, RowPath};

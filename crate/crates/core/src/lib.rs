//! Time-frequency feature extraction built around a hop-size continuous
//! wavelet transform.
//!
//! The full CWT evaluates a Morlet correlation at every sample. The hop-size
//! variant ([`wavelet::cwth_strided`]) evaluates it only every `H` samples and
//! returns exactly the retained columns, at a fraction of the cost. A dyadic
//! filter-bank DWT, scalogram rendering and persistence, AUC-ROC scoring and
//! a wall-clock timing harness round out the toolkit.

pub mod bench;
pub mod dwt;
pub mod error;
pub mod metrics;
pub mod par;
pub mod scalogram;
pub mod signal;
pub mod wavelet;

pub use error::{Error, Result};
pub use signal::SignalBuffer;
pub use wavelet::{CoefficientMatrix, MorletParams, ScaleGrid};

/// Hop size used when none is given.
pub const DEFAULT_HOP: usize = 128;

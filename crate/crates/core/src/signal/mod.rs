//! Discrete signals: loading, synthesis, and hop-size decimation.

mod synth;
mod wav;

pub use synth::{synthesize, SynthKind, SynthSpec};
pub use wav::{read_wav, write_wav, WavSampleFormat};

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// A mono discrete signal `x(n)` and its sample rate.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalBuffer {
    samples: Vec<f64>,
    sample_rate: f64,
    source_label: String,
}

impl SignalBuffer {
    pub fn new(
        samples: Vec<f64>,
        sample_rate: f64,
        source_label: impl Into<String>,
    ) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySignal);
        }
        if !(sample_rate.is_finite() && sample_rate > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "sample rate must be positive, got {sample_rate}"
            )));
        }
        Ok(Self {
            samples,
            sample_rate,
            source_label: source_label.into(),
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    /// Always false for a constructed buffer; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }

    /// Same signal scaled by `gain`.
    pub fn scaled(&self, gain: f64) -> Self {
        Self {
            samples: self.samples.iter().map(|x| x * gain).collect(),
            sample_rate: self.sample_rate,
            source_label: self.source_label.clone(),
        }
    }
}

/// Number of frames produced when keeping every `hop`-th of `len` samples.
pub fn frame_count(len: usize, hop: usize) -> usize {
    len.div_ceil(hop)
}

/// Keeps the samples at indices `0, hop, 2*hop, ...`.
///
/// With `anti_alias` set and `hop > 1`, a Hamming-windowed sinc low-pass with
/// cutoff `0.45 / hop` cycles per sample is applied first (zero-phase,
/// evaluated only at the kept indices).
pub fn decimate(signal: &SignalBuffer, hop: usize, anti_alias: bool) -> Result<SignalBuffer> {
    if hop == 0 {
        return Err(Error::InvalidHop(hop));
    }
    let x = signal.samples();
    let samples: Vec<f64> = if anti_alias && hop > 1 {
        let taps = lowpass_taps(hop);
        let half = (taps.len() / 2) as isize;
        (0..x.len())
            .step_by(hop)
            .map(|center| {
                let mut acc = 0.0;
                for (j, h) in taps.iter().enumerate() {
                    let n = center as isize + j as isize - half;
                    if n >= 0 && (n as usize) < x.len() {
                        acc += h * x[n as usize];
                    }
                }
                acc
            })
            .collect()
    } else {
        x.iter().step_by(hop).copied().collect()
    };
    Ok(SignalBuffer {
        samples,
        sample_rate: signal.sample_rate / hop as f64,
        source_label: signal.source_label.clone(),
    })
}

/// Odd-length linear-phase FIR, unity DC gain.
fn lowpass_taps(hop: usize) -> Vec<f64> {
    let cutoff = 0.45 / hop as f64;
    let half = 8 * hop;
    let len = 2 * half + 1;
    let mut taps: Vec<f64> = (0..len)
        .map(|i| {
            let k = i as f64 - half as f64;
            let sinc = if k == 0.0 {
                2.0 * cutoff
            } else {
                (2.0 * PI * cutoff * k).sin() / (PI * k)
            };
            let window = 0.54 - 0.46 * (2.0 * PI * i as f64 / (len - 1) as f64).cos();
            sinc * window
        })
        .collect();
    let dc: f64 = taps.iter().sum();
    taps.iter_mut().for_each(|t| *t /= dc);
    taps
}

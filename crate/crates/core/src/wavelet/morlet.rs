use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex Morlet mother wavelet
/// `psi(t) = (pi B)^(-1/2) exp(-t^2 / B) exp(i 2 pi C t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorletParams {
    /// `C`, cycles per unit of wavelet time.
    pub center_frequency: f64,
    /// `B`, the Gaussian envelope parameter.
    pub bandwidth: f64,
    /// Envelope standard deviations kept on each side when sampling.
    pub support_radius: f64,
}

impl Default for MorletParams {
    fn default() -> Self {
        Self {
            center_frequency: 1.0,
            bandwidth: 1.5,
            support_radius: 6.0,
        }
    }
}

impl MorletParams {
    pub fn new(center_frequency: f64, bandwidth: f64, support_radius: f64) -> Result<Self> {
        let p = Self {
            center_frequency,
            bandwidth,
            support_radius,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let finite_pos = |v: f64| v.is_finite() && v > 0.0;
        if !finite_pos(self.center_frequency) {
            return Err(Error::InvalidParams(format!(
                "center frequency must be positive, got {}",
                self.center_frequency
            )));
        }
        if !finite_pos(self.bandwidth) {
            return Err(Error::InvalidParams(format!(
                "bandwidth must be positive, got {}",
                self.bandwidth
            )));
        }
        if !(self.support_radius.is_finite() && self.support_radius >= 3.0) {
            return Err(Error::InvalidParams(format!(
                "support radius must be at least 3, got {}",
                self.support_radius
            )));
        }
        Ok(())
    }

    /// Half-width `L` in samples of the wavelet sampled at `scale`.
    pub fn half_width(&self, scale: f64) -> usize {
        (self.support_radius * scale * (self.bandwidth / 2.0).sqrt()).ceil() as usize
    }

    /// Conjugated, scale-normalized wavelet value at integer lag `k`:
    /// `a^(-1/2) * conj(psi(k / a))`.
    pub fn conj_tap(&self, scale: f64, k: f64) -> Complex64 {
        let t = k / scale;
        let envelope = (PI * self.bandwidth).powf(-0.5) * (-t * t / self.bandwidth).exp();
        let phase = -2.0 * PI * self.center_frequency * t;
        Complex64::from_polar(envelope / scale.sqrt(), phase)
    }
}

/// Centered taps of one dilated wavelet; `taps[half_width]` is lag zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWavelet {
    pub scale: f64,
    pub taps: Vec<Complex64>,
}

impl SampledWavelet {
    pub fn half_width(&self) -> usize {
        self.taps.len() / 2
    }

    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taps.is_empty()
    }
}

/// Samples `a^(-1/2) conj(psi(k/a))` for `k` in `-L..=L`.
pub fn sample_wavelet(params: &MorletParams, scale: f64) -> Result<SampledWavelet> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::InvalidScale(scale));
    }
    params.validate()?;
    let half = params.half_width(scale) as isize;
    let taps = (-half..=half)
        .map(|k| params.conj_tap(scale, k as f64))
        .collect();
    Ok(SampledWavelet { scale, taps })
}

/// Pseudo-frequency in Hz analysed at `scale`: `C * fs / a`.
pub fn scale_to_frequency(scale: f64, params: &MorletParams, sample_rate: f64) -> Result<f64> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::InvalidScale(scale));
    }
    Ok(params.center_frequency * sample_rate / scale)
}

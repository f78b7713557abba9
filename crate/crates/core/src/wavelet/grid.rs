use super::morlet::MorletParams;
use crate::error::{Error, Result};

/// Strictly ascending positive scales.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleGrid {
    scales: Vec<f64>,
}

impl ScaleGrid {
    pub fn new(scales: Vec<f64>) -> Result<Self> {
        if scales.is_empty() {
            return Err(Error::InvalidCount("scale grid is empty".into()));
        }
        if let Some(&bad) = scales.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
            return Err(Error::InvalidScale(bad));
        }
        if scales.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidRange(
                "scales must be strictly ascending".into(),
            ));
        }
        Ok(Self { scales })
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn count(&self) -> usize {
        self.scales.len()
    }

    pub fn max_scale(&self) -> f64 {
        self.scales[self.scales.len() - 1]
    }
}

/// `count` scales whose analysed frequencies are geometrically spaced from
/// `f_max` down to `f_min`, converted with `a = C * fs / f`.
pub fn make_scale_grid(
    f_min: f64,
    f_max: f64,
    count: usize,
    sample_rate: f64,
    params: &MorletParams,
) -> Result<ScaleGrid> {
    params.validate()?;
    if !(sample_rate.is_finite() && sample_rate > 0.0) {
        return Err(Error::InvalidRange(format!("sample rate {sample_rate} Hz")));
    }
    let nyquist = sample_rate / 2.0;
    if !(f_min.is_finite() && f_max.is_finite() && 0.0 < f_min && f_min <= f_max && f_max < nyquist)
    {
        return Err(Error::InvalidRange(format!(
            "need 0 < f_min <= f_max < {nyquist} Hz, got f_min={f_min}, f_max={f_max}"
        )));
    }
    if count == 0 {
        return Err(Error::InvalidCount("count must be at least 1".into()));
    }
    if count == 1 && f_min != f_max {
        return Err(Error::InvalidCount(
            "a single scale needs f_min == f_max".into(),
        ));
    }
    if count > 1 && f_min == f_max {
        return Err(Error::InvalidCount(format!(
            "{count} scales cannot share one frequency"
        )));
    }
    let c_fs = params.center_frequency * sample_rate;
    let scales = if count == 1 {
        vec![c_fs / f_max]
    } else {
        let ratio = f_min / f_max;
        (0..count)
            .map(|i| {
                let f = f_max * ratio.powf(i as f64 / (count - 1) as f64);
                c_fs / f
            })
            .collect()
    };
    ScaleGrid::new(scales)
}

/// 64 scales covering 20 Hz up to `0.45 * sample_rate`.
pub fn default_scale_grid(sample_rate: f64, params: &MorletParams) -> Result<ScaleGrid> {
    make_scale_grid(20.0, 0.45 * sample_rate, 64, sample_rate, params)
}

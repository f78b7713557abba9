//! Dyadic discrete wavelet transform by iterated two-channel filtering and
//! down-sampling, with periodic extension at the borders.
//!
//! Level `m` corresponds to scale `2^m`; detail coefficient `n` of that level
//! sits at translation `n * 2^m`. Each level holds `ceil(N / 2^m)`
//! coefficients.

use crate::error::{Error, Result};
use crate::scalogram::RealMatrix;
use crate::signal::SignalBuffer;

const ORTHONORMAL_TOL: f64 = 1e-12;

/// Analysis low-pass / high-pass pair.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterBank {
    pub name: String,
    pub lowpass: Vec<f64>,
    pub highpass: Vec<f64>,
}

impl FilterBank {
    pub fn new(name: impl Into<String>, lowpass: Vec<f64>, highpass: Vec<f64>) -> Result<Self> {
        let bank = Self {
            name: name.into(),
            lowpass,
            highpass,
        };
        bank.validate()?;
        Ok(bank)
    }

    /// Orthogonal bank from a scaling filter; the high-pass is its quadrature
    /// mirror `g[k] = (-1)^k h[K-1-k]`.
    pub fn orthogonal(name: impl Into<String>, lowpass: Vec<f64>) -> Result<Self> {
        let k = lowpass.len();
        let highpass = (0..k)
            .map(|i| if i % 2 == 0 { 1.0 } else { -1.0 } * lowpass[k - 1 - i])
            .collect();
        let bank = Self::new(name, lowpass, highpass)?;
        if !bank.is_orthonormal() {
            return Err(Error::InvalidBank(format!(
                "{}: low-pass energy is not 1",
                bank.name
            )));
        }
        Ok(bank)
    }

    pub fn haar() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::orthogonal("haar", vec![s, s]).expect("haar is orthonormal")
    }

    /// Daubechies filter with four vanishing moments (eight taps).
    pub fn db4() -> Self {
        Self::orthogonal(
            "db4",
            vec![
                0.230_377_813_308_855_23,
                0.714_846_570_552_541_5,
                0.630_880_767_929_590_4,
                -0.027_983_769_416_983_85,
                -0.187_034_811_718_881_14,
                0.030_841_381_835_986_965,
                0.032_883_011_666_982_945,
                -0.010_597_401_784_997_278,
            ],
        )
        .expect("db4 is orthonormal")
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "haar" | "db1" => Ok(Self::haar()),
            "db4" => Ok(Self::db4()),
            other => Err(Error::InvalidBank(format!("unknown filter bank {other:?}"))),
        }
    }

    pub fn is_orthonormal(&self) -> bool {
        let energy: f64 = self.lowpass.iter().map(|h| h * h).sum();
        (energy - 1.0).abs() <= ORTHONORMAL_TOL
    }

    fn validate(&self) -> Result<()> {
        if self.lowpass.is_empty() {
            return Err(Error::InvalidBank(format!("{}: no taps", self.name)));
        }
        if self.lowpass.len() != self.highpass.len() {
            return Err(Error::InvalidBank(format!(
                "{}: {} low-pass vs {} high-pass taps",
                self.name,
                self.lowpass.len(),
                self.highpass.len()
            )));
        }
        if self
            .lowpass
            .iter()
            .chain(&self.highpass)
            .any(|t| !t.is_finite())
        {
            return Err(Error::InvalidBank(format!("{}: non-finite tap", self.name)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DwtDecomposition {
    pub levels: usize,
    /// `details[m - 1]` holds level `m`.
    pub details: Vec<Vec<f64>>,
    pub approximation: Vec<f64>,
    pub source_length: usize,
}

impl DwtDecomposition {
    pub fn detail(&self, level: usize) -> &[f64] {
        &self.details[level - 1]
    }

    pub fn coefficient_count(&self) -> usize {
        self.details.iter().map(Vec::len).sum::<usize>() + self.approximation.len()
    }
}

/// One analysis stage: periodic correlation with both filters, even outputs kept.
fn analysis_step(x: &[f64], bank: &FilterBank) -> (Vec<f64>, Vec<f64>) {
    let len = x.len();
    let out = len.div_ceil(2);
    let mut approx = Vec::with_capacity(out);
    let mut detail = Vec::with_capacity(out);
    for n in 0..out {
        let mut a = 0.0;
        let mut d = 0.0;
        for (k, (lo, hi)) in bank.lowpass.iter().zip(&bank.highpass).enumerate() {
            let v = x[(2 * n + k) % len];
            a += lo * v;
            d += hi * v;
        }
        approx.push(a);
        detail.push(d);
    }
    (approx, detail)
}

/// Decomposes `signal` into `levels` detail bands plus a final approximation.
pub fn dwt_decompose(
    signal: &SignalBuffer,
    bank: &FilterBank,
    levels: usize,
) -> Result<DwtDecomposition> {
    bank.validate()?;
    let n = signal.len();
    let max = n.ilog2() as usize;
    if levels == 0 {
        return Err(Error::InvalidCount(
            "at least one DWT level is required".into(),
        ));
    }
    if levels > max {
        return Err(Error::TooManyLevels {
            levels,
            len: n,
            max,
        });
    }
    let mut details = Vec::with_capacity(levels);
    let mut current = signal.samples().to_vec();
    for _ in 0..levels {
        let (approx, detail) = analysis_step(&current, bank);
        details.push(detail);
        current = approx;
    }
    Ok(DwtDecomposition {
        levels,
        details,
        approximation: current,
        source_length: n,
    })
}

/// Sample-and-hold heat map: row `m - 1` repeats `|detail_m[n]|` over
/// `2^m` columns, the last row does the same for the approximation.
/// Rows run fine to coarse.
pub fn dwt_scalogram(decomp: &DwtDecomposition) -> RealMatrix {
    let width = decomp.source_length;
    let bands = decomp
        .details
        .iter()
        .enumerate()
        .map(|(i, d)| (i + 1, d.as_slice()))
        .chain(std::iter::once((
            decomp.levels,
            decomp.approximation.as_slice(),
        )));
    let mut data = Vec::with_capacity((decomp.levels + 1) * width);
    for (level, coeffs) in bands {
        let hold = 1usize << level;
        data.extend((0..width).map(|t| coeffs[t / hold].abs()));
    }
    RealMatrix::new(decomp.levels + 1, width, data).expect("shape follows from decomposition")
}

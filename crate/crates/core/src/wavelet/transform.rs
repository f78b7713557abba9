use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::grid::ScaleGrid;
use super::matrix::CoefficientMatrix;
use super::morlet::{sample_wavelet, MorletParams, SampledWavelet};
use crate::error::{Error, Result};
use crate::par::map_rows;
use crate::signal::{decimate, frame_count, SignalBuffer};

// Cost model for the strided path, in units of one symmetric tap pair
// (two adds and two multiply-adds) per output frame. A dense FFT row (taps
// forward transform, pointwise product, inverse transform) costs about
// FFT_COST_PER_POINT_LOG * M * log2(M) of those units. Measured on x86-64
// with AVX2: ~0.42 ns per tap pair, ~1.9 ns per M*log2(M) for an FFT row.
const FFT_COST_PER_POINT_LOG: f64 = 4.0;

/// How [`cwth_strided`] evaluates one scale row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowPath {
    /// Correlation summed at the retained translations only.
    Direct,
    /// Whole row by FFT convolution, then every `hop`-th column kept.
    DenseFft,
}

fn sample_all(grid: &ScaleGrid, params: &MorletParams) -> Result<Vec<SampledWavelet>> {
    params.validate()?;
    grid.scales()
        .iter()
        .map(|&a| sample_wavelet(params, a))
        .collect()
}

/// Reference transform: literal summation of `x[n] * taps[L + n - b]` for
/// every translation `b`, zero outside the signal.
pub fn cwt_direct(
    signal: &SignalBuffer,
    grid: &ScaleGrid,
    params: &MorletParams,
) -> Result<CoefficientMatrix> {
    let wavelets = sample_all(grid, params)?;
    let x = signal.samples();
    let n = x.len();
    let rows = map_rows(wavelets.len(), |r| {
        let w = &wavelets[r];
        let half = w.half_width() as isize;
        (0..n as isize)
            .map(|b| {
                let lo = (b - half).max(0);
                let hi = (b + half).min(n as isize - 1);
                (lo..=hi)
                    .map(|i| w.taps[(half + i - b) as usize] * x[i as usize])
                    .sum()
            })
            .collect()
    });
    Ok(CoefficientMatrix::from_rows(
        rows,
        n,
        1,
        signal.sample_rate(),
        grid.clone(),
    ))
}

/// Signal spectrum shared by all rows of one FFT transform.
struct SpectralConvolver {
    len: usize,
    signal_len: usize,
    spectrum: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl SpectralConvolver {
    fn new(x: &[f64], max_taps: usize) -> Self {
        let len = (x.len() + max_taps - 1).next_power_of_two();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(len);
        let inverse = planner.plan_fft_inverse(len);
        let mut spectrum = vec![Complex64::default(); len];
        for (s, &v) in spectrum.iter_mut().zip(x) {
            s.re = v;
        }
        forward.process(&mut spectrum);
        Self {
            len,
            signal_len: x.len(),
            spectrum,
            forward,
            inverse,
        }
    }

    /// Full row: linear convolution with the reversed taps, cropped so that
    /// output `b` is centred on sample `b`.
    fn row(&self, w: &SampledWavelet) -> Vec<Complex64> {
        let taps = &w.taps;
        let mut buf = vec![Complex64::default(); self.len];
        for (slot, t) in buf.iter_mut().zip(taps.iter().rev()) {
            *slot = *t;
        }
        let mut scratch = vec![
            Complex64::default();
            self.forward
                .get_inplace_scratch_len()
                .max(self.inverse.get_inplace_scratch_len())
        ];
        self.forward.process_with_scratch(&mut buf, &mut scratch);
        for (b, s) in buf.iter_mut().zip(&self.spectrum) {
            *b *= s;
        }
        self.inverse.process_with_scratch(&mut buf, &mut scratch);
        let scale = 1.0 / self.len as f64;
        let half = w.half_width();
        buf[half..half + self.signal_len]
            .iter()
            .map(|c| c * scale)
            .collect()
    }
}

fn max_taps(wavelets: &[SampledWavelet]) -> usize {
    wavelets.iter().map(SampledWavelet::len).max().unwrap_or(1)
}

/// Full CWT by per-row FFT convolution on a power-of-two length of at least
/// `N + taps - 1`; same values as [`cwt_direct`] up to rounding.
pub fn cwt_fft(
    signal: &SignalBuffer,
    grid: &ScaleGrid,
    params: &MorletParams,
) -> Result<CoefficientMatrix> {
    let wavelets = sample_all(grid, params)?;
    let conv = SpectralConvolver::new(signal.samples(), max_taps(&wavelets));
    let rows = map_rows(wavelets.len(), |r| conv.row(&wavelets[r]));
    Ok(CoefficientMatrix::from_rows(
        rows,
        signal.len(),
        1,
        signal.sample_rate(),
        grid.clone(),
    ))
}

fn fft_len_for(len: usize, grid: &ScaleGrid, params: &MorletParams) -> usize {
    let taps = 2 * params.half_width(grid.max_scale()) + 1;
    (len + taps - 1).next_power_of_two()
}

/// Picks, per row, the cheaper of direct strided summation and a dense FFT
/// row. `hop == 1` always uses the FFT path.
pub fn plan_strided(
    len: usize,
    grid: &ScaleGrid,
    params: &MorletParams,
    hop: usize,
) -> Result<Vec<RowPath>> {
    if hop == 0 {
        return Err(Error::InvalidHop(hop));
    }
    params.validate()?;
    if hop == 1 {
        return Ok(vec![RowPath::DenseFft; grid.count()]);
    }
    let frames = frame_count(len, hop) as f64;
    let m = fft_len_for(len, grid, params) as f64;
    let fft_cost = FFT_COST_PER_POINT_LOG * m * m.log2();
    Ok(grid
        .scales()
        .iter()
        .map(|&a| {
            let direct_cost = frames * (params.half_width(a) as f64 + 1.0);
            if direct_cost <= fft_cost {
                RowPath::Direct
            } else {
                RowPath::DenseFft
            }
        })
        .collect())
}

/// Hop-size CWT: evaluates translations `0, H, 2H, ...` only.
///
/// Column `k` equals column `k * H` of [`cwt_fft`]; the result has
/// `ceil(N / H)` columns and records `hop = H`. Rows take the path chosen by
/// [`plan_strided`]; direct rows do work proportional to the number of
/// retained translations.
pub fn cwth_strided(
    signal: &SignalBuffer,
    grid: &ScaleGrid,
    params: &MorletParams,
    hop: usize,
) -> Result<CoefficientMatrix> {
    let plan = plan_strided(signal.len(), grid, params, hop)?;
    if hop == 1 {
        return cwt_fft(signal, grid, params);
    }
    let wavelets = sample_all(grid, params)?;
    let x = signal.samples();
    let frames = frame_count(x.len(), hop);

    let conv = plan
        .contains(&RowPath::DenseFft)
        .then(|| SpectralConvolver::new(x, max_taps(&wavelets)));
    let pad = wavelets
        .iter()
        .zip(&plan)
        .filter(|(_, p)| **p == RowPath::Direct)
        .map(|(w, _)| w.half_width())
        .max();
    let padded = pad.map(|pad| PaddedSignal::new(x, pad));

    let rows = map_rows(wavelets.len(), |r| match plan[r] {
        RowPath::DenseFft => {
            let dense = conv
                .as_ref()
                .expect("convolver built for dense rows")
                .row(&wavelets[r]);
            dense.into_iter().step_by(hop).collect()
        }
        RowPath::Direct => {
            let padded = padded.as_ref().expect("padding built for direct rows");
            padded.correlate_strided(&SymmetricKernel::new(&wavelets[r]), hop, frames)
        }
    });
    Ok(CoefficientMatrix::from_rows(
        rows,
        frames,
        hop,
        signal.sample_rate(),
        grid.clone(),
    ))
}

/// Decimate-then-transform reading of the hop-size method: the signal is
/// reduced to every `hop`-th sample (optionally low-passed first) and the
/// shorter signal goes through [`cwt_fft`] with the same grid.
pub fn cwth_decimate(
    signal: &SignalBuffer,
    grid: &ScaleGrid,
    params: &MorletParams,
    hop: usize,
    anti_alias: bool,
) -> Result<CoefficientMatrix> {
    let reduced = decimate(signal, hop, anti_alias)?;
    let mut m = cwt_fft(&reduced, grid, params)?;
    m.set_hop(hop);
    m.set_source_rate(reduced.sample_rate());
    Ok(m)
}

/// Morlet taps split as `t[0]` (real) plus positive-lag real and imaginary
/// parts; negative lags are the complex conjugates.
struct SymmetricKernel {
    center: f64,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl SymmetricKernel {
    fn new(w: &SampledWavelet) -> Self {
        let half = w.half_width();
        let positive = &w.taps[half + 1..];
        Self {
            center: w.taps[half].re,
            re: positive.iter().map(|t| t.re).collect(),
            im: positive.iter().map(|t| t.im).collect(),
        }
    }
}

/// Zero-padded signal plus its mirror image, so both lag directions of a
/// correlation read memory forwards.
struct PaddedSignal {
    pad: usize,
    forward: Vec<f64>,
    reversed: Vec<f64>,
}

impl PaddedSignal {
    fn new(x: &[f64], pad: usize) -> Self {
        let mut forward = vec![0.0; x.len() + 2 * pad];
        forward[pad..pad + x.len()].copy_from_slice(x);
        let reversed = forward.iter().rev().copied().collect();
        Self {
            pad,
            forward,
            reversed,
        }
    }

    /// Windows on either side of translation `b`, each `l` samples long.
    fn windows(&self, b: usize, l: usize) -> (&[f64], &[f64]) {
        let c = b + self.pad;
        let p = self.forward.len();
        (
            &self.forward[c + 1..c + 1 + l],
            &self.reversed[p - c..p - c + l],
        )
    }

    fn finish(&self, kernel: &SymmetricKernel, b: usize, (re, im): (f64, f64)) -> Complex64 {
        Complex64::new(self.forward[b + self.pad] * kernel.center + re, im)
    }

    /// Correlation at translations `0, hop, 2*hop, ...` (`frames` of them).
    fn correlate_strided(
        &self,
        kernel: &SymmetricKernel,
        hop: usize,
        frames: usize,
    ) -> Vec<Complex64> {
        let l = kernel.re.len();
        let mut out = Vec::with_capacity(frames);
        let mut k = 0;
        while k + 4 <= frames {
            let b = [k * hop, (k + 1) * hop, (k + 2) * hop, (k + 3) * hop];
            let w = b.map(|b| self.windows(b, l));
            let sums = symmetric_dot4(w.map(|w| w.0), w.map(|w| w.1), &kernel.re, &kernel.im);
            out.extend((0..4).map(|i| self.finish(kernel, b[i], sums[i])));
            k += 4;
        }
        for k in k..frames {
            let (ahead, behind) = self.windows(k * hop, l);
            let sums = symmetric_dot(ahead, behind, &kernel.re, &kernel.im);
            out.push(self.finish(kernel, k * hop, sums));
        }
        out
    }
}

/// [`symmetric_dot`] for four windows sharing one kernel.
fn symmetric_dot4(
    ahead: [&[f64]; 4],
    behind: [&[f64]; 4],
    re: &[f64],
    im: &[f64],
) -> [(f64, f64); 4] {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("avx2") && std::arch::is_x86_feature_detected!("fma")
        {
            // SAFETY: the required CPU features were detected at runtime.
            return unsafe { symmetric_dot4_avx2(ahead, behind, re, im) };
        }
    }
    std::array::from_fn(|f| symmetric_dot_portable(ahead[f], behind[f], re, im))
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2,fma")]
unsafe fn symmetric_dot4_avx2(
    ahead: [&[f64]; 4],
    behind: [&[f64]; 4],
    re: &[f64],
    im: &[f64],
) -> [(f64, f64); 4] {
    use std::arch::x86_64::*;

    let len = re.len();
    assert!(im.len() == len);
    assert!(ahead.iter().chain(&behind).all(|w| w.len() == len));
    let mut acc_re = [_mm256_setzero_pd(); 4];
    let mut acc_im = [_mm256_setzero_pd(); 4];
    let chunks = len / 4;
    for i in 0..chunks {
        let o = i * 4;
        // SAFETY: o + 4 <= len for every slice involved.
        let (vr, vm) = unsafe {
            (
                _mm256_loadu_pd(re.as_ptr().add(o)),
                _mm256_loadu_pd(im.as_ptr().add(o)),
            )
        };
        for f in 0..4 {
            let (va, vb) = unsafe {
                (
                    _mm256_loadu_pd(ahead[f].as_ptr().add(o)),
                    _mm256_loadu_pd(behind[f].as_ptr().add(o)),
                )
            };
            acc_re[f] = _mm256_fmadd_pd(_mm256_add_pd(va, vb), vr, acc_re[f]);
            acc_im[f] = _mm256_fmadd_pd(_mm256_sub_pd(va, vb), vm, acc_im[f]);
        }
    }
    std::array::from_fn(|f| {
        let mut lanes_re = [0.0f64; 4];
        let mut lanes_im = [0.0f64; 4];
        // SAFETY: each destination holds exactly four f64.
        unsafe {
            _mm256_storeu_pd(lanes_re.as_mut_ptr(), acc_re[f]);
            _mm256_storeu_pd(lanes_im.as_mut_ptr(), acc_im[f]);
        }
        let mut sum_re = (lanes_re[0] + lanes_re[1]) + (lanes_re[2] + lanes_re[3]);
        let mut sum_im = (lanes_im[0] + lanes_im[1]) + (lanes_im[2] + lanes_im[3]);
        for o in chunks * 4..len {
            sum_re = (ahead[f][o] + behind[f][o]).mul_add(re[o], sum_re);
            sum_im = (ahead[f][o] - behind[f][o]).mul_add(im[o], sum_im);
        }
        (sum_re, sum_im)
    })
}

/// `(sum (a+b)*re, sum (a-b)*im)`, dispatched to an AVX2/FMA build when the
/// CPU has it.
fn symmetric_dot(ahead: &[f64], behind: &[f64], re: &[f64], im: &[f64]) -> (f64, f64) {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("avx2") && std::arch::is_x86_feature_detected!("fma")
        {
            // SAFETY: the required CPU features were detected at runtime.
            return unsafe { symmetric_dot_avx2(ahead, behind, re, im) };
        }
    }
    symmetric_dot_portable(ahead, behind, re, im)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2,fma")]
unsafe fn symmetric_dot_avx2(ahead: &[f64], behind: &[f64], re: &[f64], im: &[f64]) -> (f64, f64) {
    use std::arch::x86_64::*;

    let len = ahead.len();
    assert!(behind.len() >= len && re.len() >= len && im.len() >= len);
    let (a, b, r, m) = (ahead.as_ptr(), behind.as_ptr(), re.as_ptr(), im.as_ptr());
    let mut acc_re = [_mm256_setzero_pd(); 2];
    let mut acc_im = [_mm256_setzero_pd(); 2];
    let chunks = len / 8;
    for i in 0..chunks {
        for (j, (sr, si)) in acc_re.iter_mut().zip(acc_im.iter_mut()).enumerate() {
            let o = i * 8 + j * 4;
            // SAFETY: o + 4 <= len, and all four slices hold at least len elements.
            let (va, vb) = unsafe { (_mm256_loadu_pd(a.add(o)), _mm256_loadu_pd(b.add(o))) };
            let (vr, vm) = unsafe { (_mm256_loadu_pd(r.add(o)), _mm256_loadu_pd(m.add(o))) };
            *sr = _mm256_fmadd_pd(_mm256_add_pd(va, vb), vr, *sr);
            *si = _mm256_fmadd_pd(_mm256_sub_pd(va, vb), vm, *si);
        }
    }
    let mut lanes_re = [0.0f64; 4];
    let mut lanes_im = [0.0f64; 4];
    // SAFETY: each destination holds exactly four f64.
    unsafe {
        _mm256_storeu_pd(lanes_re.as_mut_ptr(), _mm256_add_pd(acc_re[0], acc_re[1]));
        _mm256_storeu_pd(lanes_im.as_mut_ptr(), _mm256_add_pd(acc_im[0], acc_im[1]));
    }
    let mut sum_re = (lanes_re[0] + lanes_re[1]) + (lanes_re[2] + lanes_re[3]);
    let mut sum_im = (lanes_im[0] + lanes_im[1]) + (lanes_im[2] + lanes_im[3]);
    for o in chunks * 8..len {
        sum_re = (ahead[o] + behind[o]).mul_add(re[o], sum_re);
        sum_im = (ahead[o] - behind[o]).mul_add(im[o], sum_im);
    }
    (sum_re, sum_im)
}

const LANES: usize = 8;

/// Portable version with independent accumulators.
fn symmetric_dot_portable(ahead: &[f64], behind: &[f64], re: &[f64], im: &[f64]) -> (f64, f64) {
    let len = ahead.len();
    let (behind, re, im) = (&behind[..len], &re[..len], &im[..len]);
    let mut acc_re = [0.0f64; LANES];
    let mut acc_im = [0.0f64; LANES];
    let chunks = len / LANES;
    for i in 0..chunks {
        let o = i * LANES;
        for j in 0..LANES {
            acc_re[j] += (ahead[o + j] + behind[o + j]) * re[o + j];
        }
        for j in 0..LANES {
            acc_im[j] += (ahead[o + j] - behind[o + j]) * im[o + j];
        }
    }
    let mut sum_re: f64 = acc_re.iter().sum();
    let mut sum_im: f64 = acc_im.iter().sum();
    for o in chunks * LANES..len {
        sum_re += (ahead[o] + behind[o]) * re[o];
        sum_im += (ahead[o] - behind[o]) * im[o];
    }
    (sum_re, sum_im)
}

//! Wall-clock comparison of the full and hop-size transforms.
//!
//! Every method is run once untimed, then `repetitions` times; the report
//! carries the median and minimum. All methods of one comparison run inside
//! the same thread pool, single-threaded unless asked otherwise.

use std::hint::black_box;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::dwt::{dwt_decompose, FilterBank};
use crate::error::{Error, Result};
use crate::par::with_threads;
use crate::signal::SignalBuffer;
use crate::wavelet::{cwt_direct, cwt_fft, cwth_decimate, cwth_strided, MorletParams, ScaleGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchMethod {
    CwtDirect,
    CwtFft,
    CwthStrided,
    CwthDecimate,
    Dwt,
}

impl std::fmt::Display for BenchMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Self::CwtDirect => "cwt_direct",
            Self::CwtFft => "cwt_fft",
            Self::CwthStrided => "cwth_strided",
            Self::CwthDecimate => "cwth_decimate",
            Self::Dwt => "dwt",
        };
        f.write_str(s)
    }
}

/// One timed method. Serialized as one JSON object per line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub method: BenchMethod,
    pub signal_length: usize,
    pub scale_count: usize,
    pub hop: usize,
    pub repetitions: usize,
    pub median_seconds: f64,
    pub min_seconds: f64,
    /// Median `cwt_fft` time divided by this method's median.
    pub speedup_vs_full: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchOptions {
    pub repetitions: usize,
    /// Worker threads for row parallelism; 1 keeps timing sequential.
    pub threads: usize,
    pub include_decimate: bool,
    pub include_dwt: bool,
    /// The direct reference is O(N * taps) per row; only sensible for short inputs.
    pub include_direct: bool,
    pub anti_alias: bool,
    pub dwt_levels: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            repetitions: 5,
            threads: 1,
            include_decimate: true,
            include_dwt: false,
            include_direct: false,
            anti_alias: false,
            dwt_levels: 6,
        }
    }
}

/// Median and minimum of a set of durations in seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Timing {
    pub median: f64,
    pub min: f64,
}

/// Median of the samples; even counts average the two middle values.
pub fn median(samples: &[f64]) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Runs `op` once to warm up, then `reps` timed times. Returns the timing
/// and the output of the last run.
pub fn time_op<T>(reps: usize, mut op: impl FnMut() -> T) -> (Timing, T) {
    let mut last = black_box(op());
    let mut samples = Vec::with_capacity(reps);
    for _ in 0..reps {
        let start = Instant::now();
        last = black_box(op());
        samples.push(start.elapsed().as_secs_f64().max(1e-9));
    }
    let min = samples.iter().copied().fold(f64::INFINITY, f64::min);
    (
        Timing {
            median: median(&samples),
            min,
        },
        last,
    )
}

/// Times `cwt_fft` against `cwth_strided` and `cwth_decimate` with default
/// options and `reps` repetitions.
pub fn bench_single(
    signal: &SignalBuffer,
    grid: &ScaleGrid,
    params: &MorletParams,
    hop: usize,
    reps: usize,
) -> Result<Vec<BenchReport>> {
    let opts = BenchOptions {
        repetitions: reps,
        ..BenchOptions::default()
    };
    bench_with(signal, grid, params, hop, &opts)
}

pub fn bench_with(
    signal: &SignalBuffer,
    grid: &ScaleGrid,
    params: &MorletParams,
    hop: usize,
    opts: &BenchOptions,
) -> Result<Vec<BenchReport>> {
    if opts.repetitions < 3 {
        return Err(Error::InvalidBench(format!(
            "at least 3 repetitions required, got {}",
            opts.repetitions
        )));
    }
    if hop == 0 {
        return Err(Error::InvalidHop(hop));
    }
    params.validate()?;
    let bank = FilterBank::db4();
    if opts.include_dwt {
        // surface level errors before timing anything
        dwt_decompose(signal, &bank, opts.dwt_levels)?;
    }
    let reps = opts.repetitions;

    let timings = with_threads(opts.threads, || -> Result<Vec<(BenchMethod, Timing)>> {
        let mut out = Vec::new();
        let (t, r) = time_op(reps, || cwt_fft(signal, grid, params));
        r?;
        out.push((BenchMethod::CwtFft, t));
        let (t, r) = time_op(reps, || cwth_strided(signal, grid, params, hop));
        r?;
        out.push((BenchMethod::CwthStrided, t));
        if opts.include_decimate {
            let (t, r) = time_op(reps, || {
                cwth_decimate(signal, grid, params, hop, opts.anti_alias)
            });
            r?;
            out.push((BenchMethod::CwthDecimate, t));
        }
        if opts.include_dwt {
            let (t, r) = time_op(reps, || dwt_decompose(signal, &bank, opts.dwt_levels));
            r?;
            out.push((BenchMethod::Dwt, t));
        }
        if opts.include_direct {
            let (t, r) = time_op(reps, || cwt_direct(signal, grid, params));
            r?;
            out.push((BenchMethod::CwtDirect, t));
        }
        Ok(out)
    })?;

    let full = timings[0].1.median;
    Ok(timings
        .into_iter()
        .map(|(method, t)| BenchReport {
            method,
            signal_length: signal.len(),
            scale_count: grid.count(),
            hop: match method {
                BenchMethod::CwthStrided | BenchMethod::CwthDecimate => hop,
                _ => 1,
            },
            repetitions: reps,
            median_seconds: t.median,
            min_seconds: t.min,
            speedup_vs_full: full / t.median,
        })
        .collect())
}

/// Hours needed to process `file_count` files at `seconds_per_file`.
pub fn dataset_hours(seconds_per_file: f64, file_count: usize) -> f64 {
    seconds_per_file * file_count as f64 / 3600.0
}

/// Linear extrapolation of a single-file median to a whole dataset, in hours.
pub fn extrapolate_dataset(report: &BenchReport, file_count: usize) -> Result<f64> {
    if file_count == 0 {
        return Err(Error::InvalidBench("file count must be at least 1".into()));
    }
    Ok(dataset_hours(report.median_seconds, file_count))
}

/// One JSON object per report, newline-terminated.
pub fn to_json_lines(reports: &[BenchReport]) -> String {
    reports
        .iter()
        .map(|r| serde_json::to_string(r).expect("report serializes") + "\n")
        .collect()
}

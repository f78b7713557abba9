#![allow(dead_code)]

use std::f64::consts::PI;

use cwth::wavelet::{CoefficientMatrix, MorletParams};
use cwth::SignalBuffer;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const RATE: f64 = 16_000.0;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn noise_signal(n: usize, seed: u64) -> SignalBuffer {
    let mut r = rng(seed);
    SignalBuffer::new(
        (0..n).map(|_| r.random_range(-1.0..1.0)).collect(),
        RATE,
        "noise",
    )
    .unwrap()
}

/// Brute-force CWT written from the closed form, independent of the
/// library's tap sampling. Loops over input samples outermost and scatters
/// each sample into every translation it reaches.
pub fn oracle_cwt(x: &[f64], scales: &[f64], p: &MorletParams) -> Vec<Vec<Complex64>> {
    let n = x.len() as isize;
    scales
        .iter()
        .map(|&a| {
            let half = (p.support_radius * a * (p.bandwidth / 2.0).sqrt()).ceil() as isize;
            let norm = 1.0 / ((PI * p.bandwidth).sqrt() * a.sqrt());
            let mut row = vec![Complex64::new(0.0, 0.0); x.len()];
            for i in 0..n {
                let lo = (i - half).max(0);
                let hi = (i + half).min(n - 1);
                for b in lo..=hi {
                    let t = (i - b) as f64 / a;
                    let envelope = norm * (-t * t / p.bandwidth).exp();
                    // conj(exp(i 2 pi C t))
                    let phase = 2.0 * PI * p.center_frequency * t;
                    row[b as usize] +=
                        x[i as usize] * envelope * Complex64::new(phase.cos(), -phase.sin());
                }
            }
            row
        })
        .collect()
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    let d = (a - b).norm();
    if d == 0.0 {
        0.0
    } else {
        d / b.norm()
    }
}

/// Largest elementwise relative error of `got` against `want`.
pub fn max_rel_err(got: &CoefficientMatrix, want: &CoefficientMatrix) -> f64 {
    assert_eq!((got.rows(), got.cols()), (want.rows(), want.cols()));
    got.values()
        .iter()
        .zip(want.values())
        .map(|(&a, &b)| rel_err(a, b))
        .fold(0.0, f64::max)
}

/// Worst relative error of `strided` column `k` against `full` column `k * hop`.
pub fn max_stride_err(strided: &CoefficientMatrix, full: &CoefficientMatrix, hop: usize) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..strided.rows() {
        for k in 0..strided.cols() {
            worst = worst.max(rel_err(strided.get(r, k), full.get(r, k * hop)));
        }
    }
    worst
}

/// Pairwise AUC by enumerating every positive/negative pair.
pub fn pairwise_auc(scores: &[f64], labels: &[bool]) -> f64 {
    let mut twice_wins: u64 = 0;
    let mut pairs: u64 = 0;
    for (i, &li) in labels.iter().enumerate() {
        if !li {
            continue;
        }
        for (j, &lj) in labels.iter().enumerate() {
            if lj {
                continue;
            }
            pairs += 1;
            if scores[i] > scores[j] {
                twice_wins += 2;
            } else if scores[i] == scores[j] {
                twice_wins += 1;
            }
        }
    }
    twice_wins as f64 / (2 * pairs) as f64
}

/// Coefficient of determination of the through-origin fit `y = c * u`.
pub fn r_squared_through_origin(u: &[f64], y: &[f64]) -> f64 {
    let c = u.iter().zip(y).map(|(u, y)| u * y).sum::<f64>() / u.iter().map(|u| u * u).sum::<f64>();
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    let ss_res: f64 = u.iter().zip(y).map(|(u, y)| (y - c * u).powi(2)).sum();
    let ss_tot: f64 = y.iter().map(|y| (y - mean).powi(2)).sum();
    1.0 - ss_res / ss_tot
}

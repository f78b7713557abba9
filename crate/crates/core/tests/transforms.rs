mod common;

use common::*;
use cwth::signal::{synthesize, SynthKind, SynthSpec};
use cwth::wavelet::*;
use cwth::SignalBuffer;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

fn grid(fmin: f64, fmax: f64, count: usize) -> ScaleGrid {
    make_scale_grid(fmin, fmax, count, RATE, &MorletParams::default()).unwrap()
}

#[test]
fn direct_matches_independent_oracle() {
    let p = MorletParams::default();
    let g = grid(60.0, 7000.0, 12);
    let x = noise_signal(256, 17);
    let got = cwt_direct(&x, &g, &p).unwrap();
    let want = oracle_cwt(x.samples(), g.scales(), &p);
    for (r, want_row) in want.iter().enumerate() {
        for (b, &w) in want_row.iter().enumerate() {
            let e = rel_err(got.get(r, b), w);
            assert!(e <= 1e-12, "row {r} col {b}: {e:e}");
        }
    }
}

#[test]
fn fft_matches_direct_on_1024_samples() {
    let p = MorletParams::default();
    let g = grid(20.0, 7200.0, 16);
    let x = noise_signal(1024, 5);
    let e = max_rel_err(
        &cwt_fft(&x, &g, &p).unwrap(),
        &cwt_direct(&x, &g, &p).unwrap(),
    );
    assert!(e <= 1e-9, "{e:e}");
}

#[test]
fn fft_is_linear() {
    let p = MorletParams::default();
    let g = grid(40.0, 6000.0, 10);
    let x = noise_signal(2048, 1);
    let y = noise_signal(2048, 2);
    let mut r = rng(3);
    let (alpha, beta) = (r.random_range(-1.0..1.0), r.random_range(-1.0..1.0));
    let mixed: Vec<f64> = x
        .samples()
        .iter()
        .zip(y.samples())
        .map(|(a, b)| alpha * a + beta * b)
        .collect();
    let mixed = SignalBuffer::new(mixed, RATE, "mix").unwrap();
    let fx = cwt_fft(&x, &g, &p).unwrap();
    let fy = cwt_fft(&y, &g, &p).unwrap();
    let fm = cwt_fft(&mixed, &g, &p).unwrap();
    let sum: Vec<Complex64> = fx
        .values()
        .iter()
        .zip(fy.values())
        .map(|(a, b)| alpha * a + beta * b)
        .collect();
    let worst = fm
        .values()
        .iter()
        .zip(&sum)
        .map(|(&a, &b)| rel_err(a, b))
        .fold(0.0, f64::max);
    assert!(worst <= 1e-9, "{worst:e}");
}

#[test]
fn every_path_is_linear_in_gain() {
    let p = MorletParams::default();
    let g = grid(100.0, 5000.0, 6);
    let x = noise_signal(900, 8);
    let x2 = x.scaled(-0.375);
    let paths: [&dyn Fn(&SignalBuffer) -> CoefficientMatrix; 4] = [
        &|s| cwt_direct(s, &g, &p).unwrap(),
        &|s| cwt_fft(s, &g, &p).unwrap(),
        &|s| cwth_strided(s, &g, &p, 7).unwrap(),
        &|s| cwth_decimate(s, &g, &p, 7, true).unwrap(),
    ];
    for path in paths {
        let (a, b) = (path(&x), path(&x2));
        for (u, v) in a.values().iter().zip(b.values()) {
            assert!(rel_err(*v, u * -0.375) <= 1e-12);
        }
    }
}

#[test]
fn stride_identity_for_several_hops() {
    let p = MorletParams::default();
    let g = grid(20.0, 7200.0, 24);
    let x = noise_signal(4096, 99);
    let full = cwt_fft(&x, &g, &p).unwrap();
    for hop in [1usize, 2, 7, 128] {
        let s = cwth_strided(&x, &g, &p, hop).unwrap();
        assert_eq!(s.cols(), 4096usize.div_ceil(hop));
        assert_eq!(s.hop(), hop);
        let e = max_stride_err(&s, &full, hop);
        assert!(e <= 1e-9, "hop {hop}: {e:e}");
    }
    let same = cwth_strided(&x, &g, &p, 1).unwrap();
    assert!(max_rel_err(&same, &full) <= 1e-12);
}

#[test]
fn frame_count_for_ten_second_file() {
    let p = MorletParams::default();
    let g = grid(500.0, 4000.0, 2);
    let x = SignalBuffer::new(vec![0.0; 160_000], RATE, "silence").unwrap();
    let m = cwth_strided(&x, &g, &p, 128).unwrap();
    assert_eq!(m.cols(), 1_250);
    assert_eq!(cwth_decimate(&x, &g, &p, 128, false).unwrap().cols(), 1_250);
}

#[test]
fn shift_covariance_in_interior() {
    let p = MorletParams::default();
    let g = grid(200.0, 7000.0, 8);
    let taps = 2 * p.half_width(g.max_scale()) + 1;
    let n = 3000;
    let shift = 37;
    let x = noise_signal(n, 4);
    let mut shifted = vec![0.0; n];
    shifted[shift..].copy_from_slice(&x.samples()[..n - shift]);
    let shifted = SignalBuffer::new(shifted, RATE, "shifted").unwrap();
    let a = cwt_fft(&x, &g, &p).unwrap();
    let b = cwt_fft(&shifted, &g, &p).unwrap();
    let mut checked = 0;
    for col in (taps + shift + 1)..(n - taps - 1) {
        for r in 0..g.count() {
            assert!(rel_err(b.get(r, col), a.get(r, col - shift)) <= 1e-9);
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn impulse_peaks_follow_inverse_sqrt_scale() {
    let p = MorletParams::default();
    let g = grid(100.0, 7000.0, 16);
    let half = p.half_width(g.max_scale());
    let n = 2 * half + 1;
    let x = synthesize(&SynthSpec::new(
        SynthKind::Impulse { position: half },
        n,
        RATE,
    ))
    .unwrap();
    let m = cwt_fft(&x, &g, &p).unwrap();
    let peak0 = m.row(0).iter().map(|c| c.norm()).fold(0.0, f64::max);
    for (r, &a) in g.scales().iter().enumerate() {
        let peak = m.row(r).iter().map(|c| c.norm()).fold(0.0, f64::max);
        let predicted = peak0 * (g.scales()[0] / a).sqrt();
        assert!((peak - predicted).abs() <= 1e-6 * predicted, "row {r}");
        // the maximum sits on the impulse
        assert!((m.get(r, half).norm() - peak).abs() <= 1e-12 * peak);
    }
}

#[test]
fn decimate_and_strided_are_different_operators() {
    let p = MorletParams::default();
    let g = grid(20.0, 7200.0, 32);
    let kind = SynthKind::Sine {
        frequency: 6000.0,
        amplitude: 1.0,
    };
    let x = synthesize(&SynthSpec::new(kind, 16_000, RATE)).unwrap();
    let s = cwth_strided(&x, &g, &p, 128).unwrap();
    let d = cwth_decimate(&x, &g, &p, 128, false).unwrap();
    assert_eq!((s.rows(), s.cols()), (d.rows(), d.cols()));
    let worst = s
        .values()
        .iter()
        .zip(d.values())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    assert!(worst > 1e-3, "{worst}");
}

#[test]
fn decimated_sine_peaks_at_its_frequency() {
    let p = MorletParams::default();
    let kind = SynthKind::Sine {
        frequency: 1000.0,
        amplitude: 1.0,
    };
    let x = synthesize(&SynthSpec::new(kind, 8192, RATE)).unwrap();
    // grid for the rate after decimation
    let g = make_scale_grid(50.0, 3500.0, 64, 8000.0, &p).unwrap();
    let m = cwth_decimate(&x, &g, &p, 2, false).unwrap();
    assert_eq!(m.source_rate(), 8000.0);
    let energy: Vec<f64> = (0..m.rows())
        .map(|r| m.row(r)[500..3500].iter().map(|c| c.norm_sqr()).sum())
        .collect();
    let best = (0..energy.len())
        .max_by(|&a, &b| energy[a].total_cmp(&energy[b]))
        .unwrap();
    let f = scale_to_frequency(g.scales()[best], &p, m.source_rate()).unwrap();
    let step = (3500.0f64 / 50.0).powf(1.0 / 63.0);
    // The sqrt(a) normalization biases the magnitude peak ~1.7% below the
    // tone for B = 1.5; allow one grid step either side.
    assert!(f / 1000.0 < step && 1000.0 / f < step, "peak at {f} Hz");
}

#[test]
fn strided_hop_larger_than_signal() {
    let p = MorletParams::default();
    let g = grid(300.0, 3000.0, 3);
    let x = noise_signal(50, 6);
    let m = cwth_strided(&x, &g, &p, 128).unwrap();
    assert_eq!(m.cols(), 1);
    let full = cwt_direct(&x, &g, &p).unwrap();
    assert!(max_stride_err(&m, &full, 128) <= 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fft_matches_direct_for_random_shapes(
        n in 1usize..700,
        count in 1usize..8,
        seed in any::<u64>(),
        c in 0.5f64..2.0,
        b in 0.5f64..3.0,
    ) {
        let p = MorletParams::new(c, b, 6.0).unwrap();
        let fmax = 7000.0;
        let g = if count == 1 {
            make_scale_grid(fmax, fmax, 1, RATE, &p).unwrap()
        } else {
            make_scale_grid(150.0, fmax, count, RATE, &p).unwrap()
        };
        let x = noise_signal(n, seed);
        let e = max_rel_err(&cwt_fft(&x, &g, &p).unwrap(), &cwt_direct(&x, &g, &p).unwrap());
        prop_assert!(e <= 1e-9, "{:e}", e);
    }

    #[test]
    fn strided_columns_are_full_columns(n in 1usize..3000, hop in 1usize..300, seed in any::<u64>()) {
        let p = MorletParams::default();
        let g = grid(80.0, 7000.0, 6);
        let x = noise_signal(n, seed);
        let full = cwt_fft(&x, &g, &p).unwrap();
        let s = cwth_strided(&x, &g, &p, hop).unwrap();
        prop_assert_eq!(s.cols(), n.div_ceil(hop));
        prop_assert!(max_stride_err(&s, &full, hop) <= 1e-9);
    }
}

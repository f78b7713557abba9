mod common;

use common::*;
use cwth::signal::{
    decimate, read_wav, synthesize, write_wav, SynthKind, SynthSpec, WavSampleFormat,
};
use cwth::{Error, SignalBuffer};
use proptest::prelude::*;

fn write_reference_pcm16(path: &std::path::Path, channels: u16, rate: u32, frames: &[Vec<i16>]) {
    let spec = hound::WavSpec {
        channels,
        sample_rate: rate,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut w = hound::WavWriter::create(path, spec).unwrap();
    for frame in frames {
        for &s in frame {
            w.write_sample(s).unwrap();
        }
    }
    w.finalize().unwrap();
}

#[test]
fn ten_second_file_reads_as_160k_samples() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ten.wav");
    let frames: Vec<Vec<i16>> = (0..160_000)
        .map(|i| vec![((i % 200) as i16 - 100) * 50])
        .collect();
    write_reference_pcm16(&path, 1, 16_000, &frames);
    let sig = read_wav(&path).unwrap();
    assert_eq!(sig.len(), 160_000);
    assert_eq!(sig.sample_rate(), 16_000.0);
    assert_eq!(sig.samples()[0], -5000.0 / 32768.0);
}

#[test]
fn reference_stereo_and_float_files() {
    let dir = tempfile::tempdir().unwrap();
    let stereo = dir.path().join("st.wav");
    write_reference_pcm16(
        &stereo,
        2,
        8_000,
        &[vec![16384, 16384], vec![16384, -16384]],
    );
    assert_eq!(read_wav(&stereo).unwrap().samples(), &[0.5, 0.0]);

    // hound writes WAVE_FORMAT_EXTENSIBLE for float data
    let float = dir.path().join("f.wav");
    let spec = hound::WavSpec {
        channels: 3,
        sample_rate: 44_100,
        bits_per_sample: 32,
        sample_format: hound::SampleFormat::Float,
    };
    let mut w = hound::WavWriter::create(&float, spec).unwrap();
    for s in [0.3f32, 0.6, 0.9] {
        w.write_sample(s).unwrap();
    }
    w.finalize().unwrap();
    let sig = read_wav(&float).unwrap();
    assert!(
        (sig.samples()[0] - (0.3f32 as f64 + 0.6f32 as f64 + 0.9f32 as f64) / 3.0).abs() < 1e-15
    );
    assert_eq!(sig.sample_rate(), 44_100.0);
}

#[test]
fn unsupported_and_empty_reference_files() {
    let dir = tempfile::tempdir().unwrap();
    let p24 = dir.path().join("24.wav");
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: 16_000,
        bits_per_sample: 24,
        sample_format: hound::SampleFormat::Int,
    };
    let mut w = hound::WavWriter::create(&p24, spec).unwrap();
    w.write_sample(1000i32).unwrap();
    w.finalize().unwrap();
    assert!(matches!(read_wav(&p24), Err(Error::UnsupportedEncoding(_))));

    let empty = dir.path().join("empty.wav");
    write_reference_pcm16(&empty, 1, 16_000, &[]);
    assert!(matches!(read_wav(&empty), Err(Error::EmptySignal)));

    let junk = dir.path().join("junk.wav");
    std::fs::write(&junk, b"not a wav file at all").unwrap();
    assert!(matches!(read_wav(&junk), Err(Error::MalformedRiff(_))));

    assert!(matches!(
        read_wav(dir.path().join("missing.wav")),
        Err(Error::IoFailure { .. })
    ));
}

#[test]
fn own_writer_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let x = synthesize(&SynthSpec::new(
        SynthKind::WhiteNoise { seed: 9 },
        1000,
        16_000.0,
    ))
    .unwrap();
    let f = dir.path().join("f.wav");
    write_wav(&x, &f, WavSampleFormat::Float32).unwrap();
    let back = read_wav(&f).unwrap();
    for (a, b) in x.samples().iter().zip(back.samples()) {
        assert_eq!(*a as f32 as f64, *b);
    }
    let p = dir.path().join("p.wav");
    write_wav(&x, &p, WavSampleFormat::Pcm16).unwrap();
    let back = read_wav(&p).unwrap();
    assert_eq!(back.len(), 1000);
    for (a, b) in x.samples().iter().zip(back.samples()) {
        assert!((a - b).abs() <= 0.5 / 32768.0 + 1e-15);
    }
    let odd_rate = decimate(&x, 3, false).unwrap();
    assert!(write_wav(&odd_rate, dir.path().join("r.wav"), WavSampleFormat::Pcm16).is_err());
}

proptest! {
    #[test]
    fn decimate_invariants(
        xs in prop::collection::vec(-1.0f64..1.0, 1..500),
        a in 1usize..20,
        b in 1usize..20,
    ) {
        let x = SignalBuffer::new(xs.clone(), RATE, "p").unwrap();
        prop_assert_eq!(&decimate(&x, 1, false).unwrap(), &x);
        let da = decimate(&x, a, false).unwrap();
        prop_assert_eq!(da.len(), xs.len().div_ceil(a));
        let twice = decimate(&da, b, false).unwrap();
        let once = decimate(&x, a * b, false).unwrap();
        prop_assert_eq!(twice.samples(), once.samples());
        // rates are real-valued; only the division order differs
        prop_assert!((twice.sample_rate() - once.sample_rate()).abs() <= 1e-12 * once.sample_rate());
    }

    #[test]
    fn pcm16_reference_round_trip(
        samples in prop::collection::vec(any::<i16>(), 1..300),
        rate in 1u32..200_000,
    ) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.wav");
        let frames: Vec<Vec<i16>> = samples.iter().map(|&s| vec![s]).collect();
        write_reference_pcm16(&path, 1, rate, &frames);
        let sig = read_wav(&path).unwrap();
        prop_assert_eq!(sig.len(), samples.len());
        prop_assert_eq!(sig.sample_rate(), rate as f64);
        for (got, &s) in sig.samples().iter().zip(&samples) {
            prop_assert_eq!(*got, s as f64 / 32768.0);
        }
    }
}

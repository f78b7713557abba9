use std::f64::consts::PI;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SignalBuffer;
use crate::error::{Error, Result};

/// Test-signal family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SynthKind {
    /// A single 1.0 at `position`.
    Impulse {
        position: usize,
    },
    Sine {
        frequency: f64,
        amplitude: f64,
    },
    /// Linear sweep from `f0` to `f1` over the buffer, unit amplitude.
    Chirp {
        f0: f64,
        f1: f64,
    },
    /// Uniform noise in `[-1, 1)` from a seeded ChaCha8 stream.
    WhiteNoise {
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthSpec {
    pub kind: SynthKind,
    pub length_samples: usize,
    pub sample_rate: f64,
}

impl SynthSpec {
    pub fn new(kind: SynthKind, length_samples: usize, sample_rate: f64) -> Self {
        Self {
            kind,
            length_samples,
            sample_rate,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.length_samples == 0 {
            return Err(Error::InvalidSpec(
                "length must be at least 1 sample".into(),
            ));
        }
        if !(self.sample_rate.is_finite() && self.sample_rate > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "sample rate must be positive, got {}",
                self.sample_rate
            )));
        }
        let nyquist = self.sample_rate / 2.0;
        let check_freq = |f: f64| {
            if !(f.is_finite() && f >= 0.0 && f < nyquist) {
                Err(Error::InvalidSpec(format!(
                    "frequency {f} Hz outside [0, {nyquist}) Hz"
                )))
            } else {
                Ok(())
            }
        };
        match self.kind {
            SynthKind::Impulse { position } if position >= self.length_samples => {
                Err(Error::InvalidSpec(format!(
                    "impulse position {position} outside buffer of {} samples",
                    self.length_samples
                )))
            }
            SynthKind::Sine {
                frequency,
                amplitude,
            } => {
                check_freq(frequency)?;
                if !amplitude.is_finite() {
                    return Err(Error::InvalidSpec("amplitude must be finite".into()));
                }
                Ok(())
            }
            SynthKind::Chirp { f0, f1 } => {
                check_freq(f0)?;
                check_freq(f1)
            }
            _ => Ok(()),
        }
    }
}

/// Generates a deterministic test signal.
pub fn synthesize(spec: &SynthSpec) -> Result<SignalBuffer> {
    spec.validate()?;
    let n = spec.length_samples;
    let fs = spec.sample_rate;
    let samples: Vec<f64> = match spec.kind {
        SynthKind::Impulse { position } => {
            let mut v = vec![0.0; n];
            v[position] = 1.0;
            v
        }
        SynthKind::Sine {
            frequency,
            amplitude,
        } => (0..n)
            .map(|k| amplitude * (2.0 * PI * frequency * k as f64 / fs).sin())
            .collect(),
        SynthKind::Chirp { f0, f1 } => {
            let duration = n as f64 / fs;
            (0..n)
                .map(|k| {
                    let t = k as f64 / fs;
                    (2.0 * PI * (f0 * t + (f1 - f0) * t * t / (2.0 * duration))).sin()
                })
                .collect()
        }
        SynthKind::WhiteNoise { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
        }
    };
    SignalBuffer::new(samples, fs, spec.kind.to_string())
}

impl std::fmt::Display for SynthKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SynthKind::Impulse { position } => write!(f, "impulse:{position}"),
            SynthKind::Sine {
                frequency,
                amplitude,
            } => write!(f, "sine:{frequency}:{amplitude}"),
            SynthKind::Chirp { f0, f1 } => write!(f, "chirp:{f0}:{f1}"),
            SynthKind::WhiteNoise { seed } => write!(f, "noise:{seed}"),
        }
    }
}

/// Parses `impulse:POS`, `sine:FREQ[:AMP]`, `chirp:F0:F1` or `noise:SEED`.
impl FromStr for SynthKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidSpec(format!("cannot parse synth spec {s:?}"));
        let num = |i: usize| -> Result<f64> { parts[i].trim().parse::<f64>().map_err(|_| bad()) };
        let int = |i: usize| -> Result<u64> { parts[i].trim().parse::<u64>().map_err(|_| bad()) };
        match (parts[0].trim(), parts.len()) {
            ("impulse", 2) => Ok(SynthKind::Impulse {
                position: int(1)? as usize,
            }),
            ("sine", 2) => Ok(SynthKind::Sine {
                frequency: num(1)?,
                amplitude: 1.0,
            }),
            ("sine", 3) => Ok(SynthKind::Sine {
                frequency: num(1)?,
                amplitude: num(2)?,
            }),
            ("chirp", 3) => Ok(SynthKind::Chirp {
                f0: num(1)?,
                f1: num(2)?,
            }),
            ("noise", 2) => Ok(SynthKind::WhiteNoise { seed: int(1)? }),
            _ => Err(bad()),
        }
    }
}

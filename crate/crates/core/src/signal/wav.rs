use std::fs;
use std::path::Path;

use super::SignalBuffer;
use crate::error::{Error, Result};

const FORMAT_PCM: u16 = 1;
const FORMAT_IEEE_FLOAT: u16 = 3;
const FORMAT_EXTENSIBLE: u16 = 0xFFFE;

/// Sample encoding used when writing a WAV file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WavSampleFormat {
    #[default]
    Pcm16,
    Float32,
}

struct Format {
    code: u16,
    channels: u16,
    sample_rate: u32,
    bits: u16,
}

/// Reads a 16-bit PCM or 32-bit float RIFF/WAVE file as a mono signal.
///
/// Integer samples are divided by 32768; multi-channel frames are averaged.
pub fn read_wav(path: impl AsRef<Path>) -> Result<SignalBuffer> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_wav(&bytes, &path.display().to_string())
}

/// Parses an in-memory RIFF/WAVE image.
pub fn parse_wav(bytes: &[u8], label: &str) -> Result<SignalBuffer> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(Error::MalformedRiff("missing RIFF/WAVE magic".into()));
    }
    let mut format: Option<Format> = None;
    let mut data: Option<&[u8]> = None;
    let mut pos = 12;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let declared = u32::from_le_bytes(bytes[pos + 4..pos + 8].try_into().unwrap()) as usize;
        let body_start = pos + 8;
        let body_end = body_start.saturating_add(declared);
        match id {
            b"fmt " => {
                if body_end > bytes.len() {
                    return Err(Error::MalformedRiff(
                        "fmt chunk runs past end of file".into(),
                    ));
                }
                format = Some(parse_fmt(&bytes[body_start..body_end])?);
            }
            b"data" => {
                // Streaming writers sometimes leave the size unpatched; take what exists.
                data = Some(&bytes[body_start..body_end.min(bytes.len())]);
                break;
            }
            _ => {}
        }
        pos = body_end.saturating_add(declared & 1);
    }
    let format = format.ok_or_else(|| Error::MalformedRiff("no fmt chunk".into()))?;
    let data = data.ok_or_else(|| Error::MalformedRiff("no data chunk".into()))?;

    let channels = format.channels as usize;
    let width = match (format.code, format.bits) {
        (FORMAT_PCM, 16) => 2,
        (FORMAT_IEEE_FLOAT, 32) => 4,
        (code, bits) => {
            return Err(Error::UnsupportedEncoding(format!(
                "format code {code} with {bits} bits per sample"
            )))
        }
    };
    let frame_bytes = width * channels;
    let frames = data.len() / frame_bytes;
    if frames == 0 {
        return Err(Error::EmptySignal);
    }

    let mut samples = Vec::with_capacity(frames);
    for frame in data.chunks_exact(frame_bytes) {
        let sum: f64 = frame
            .chunks_exact(width)
            .map(|s| match width {
                2 => i16::from_le_bytes([s[0], s[1]]) as f64 / 32768.0,
                _ => f32::from_le_bytes([s[0], s[1], s[2], s[3]]) as f64,
            })
            .sum();
        samples.push(sum / channels as f64);
    }
    SignalBuffer::new(samples, format.sample_rate as f64, label)
}

fn parse_fmt(body: &[u8]) -> Result<Format> {
    if body.len() < 16 {
        return Err(Error::MalformedRiff(
            "fmt chunk shorter than 16 bytes".into(),
        ));
    }
    let u16_at = |i: usize| u16::from_le_bytes([body[i], body[i + 1]]);
    let mut code = u16_at(0);
    let channels = u16_at(2);
    let sample_rate = u32::from_le_bytes(body[4..8].try_into().unwrap());
    let bits = u16_at(14);
    if code == FORMAT_EXTENSIBLE {
        if body.len() < 26 {
            return Err(Error::MalformedRiff(
                "truncated WAVE_FORMAT_EXTENSIBLE".into(),
            ));
        }
        // first two bytes of the sub-format GUID carry the plain format code
        code = u16_at(24);
    }
    if channels == 0 {
        return Err(Error::MalformedRiff("zero channels".into()));
    }
    if sample_rate == 0 {
        return Err(Error::MalformedRiff("zero sample rate".into()));
    }
    Ok(Format {
        code,
        channels,
        sample_rate,
        bits,
    })
}

/// Writes a mono WAV file. The sample rate must be a whole number of Hz.
///
/// PCM16 output multiplies by 32768 and saturates at the i16 range.
pub fn write_wav(
    signal: &SignalBuffer,
    path: impl AsRef<Path>,
    format: WavSampleFormat,
) -> Result<()> {
    let path = path.as_ref();
    let rate = signal.sample_rate();
    if rate.fract() != 0.0 || rate > u32::MAX as f64 {
        return Err(Error::InvalidSpec(format!(
            "WAV needs an integer sample rate, got {rate}"
        )));
    }
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: rate as u32,
        bits_per_sample: match format {
            WavSampleFormat::Pcm16 => 16,
            WavSampleFormat::Float32 => 32,
        },
        sample_format: match format {
            WavSampleFormat::Pcm16 => hound::SampleFormat::Int,
            WavSampleFormat::Float32 => hound::SampleFormat::Float,
        },
    };
    let to_io = |e: hound::Error| match e {
        hound::Error::IoError(io) => Error::io(path, io),
        other => Error::io(path, std::io::Error::other(other.to_string())),
    };
    let mut writer = hound::WavWriter::create(path, spec).map_err(to_io)?;
    for &x in signal.samples() {
        match format {
            WavSampleFormat::Pcm16 => {
                let v = (x * 32768.0)
                    .round()
                    .clamp(i16::MIN as f64, i16::MAX as f64) as i16;
                writer.write_sample(v).map_err(to_io)?;
            }
            WavSampleFormat::Float32 => writer.write_sample(x as f32).map_err(to_io)?,
        }
    }
    writer.finalize().map_err(to_io)
}

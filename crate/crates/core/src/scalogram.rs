//! Magnitude maps, 8-bit scalogram images, and file output.
//!
//! Matrix files use a small little-endian container:
//!
//! ```text
//! "SCG1" | u32 rows | u32 cols | u32 hop | f64 source_rate
//!        | rows x f64 scale | rows*cols x (f32 re, f32 im), row-major
//! ```

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::wavelet::{CoefficientMatrix, ScaleGrid};

pub const MATRIX_MAGIC: &[u8; 4] = b"SCG1";
const HEADER_LEN: usize = 4 + 4 + 4 + 4 + 8;
const LOG_FLOOR: f64 = 1e-12;
const LOG_FLOOR_DB: f64 = -240.0;

/// Dense row-major real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "{} values for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MagnitudeMode {
    #[default]
    Abs,
    Power,
    LogDb,
}

impl std::str::FromStr for MagnitudeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "abs" => Ok(Self::Abs),
            "power" => Ok(Self::Power),
            "log_db" | "db" => Ok(Self::LogDb),
            other => Err(Error::InvalidMatrix(format!(
                "unknown magnitude mode {other:?}"
            ))),
        }
    }
}

impl MagnitudeMode {
    pub fn apply(self, c: Complex64) -> f64 {
        match self {
            Self::Abs => c.norm(),
            Self::Power => c.norm_sqr(),
            Self::LogDb => {
                let m = c.norm();
                if m == 0.0 {
                    // log10 of the floor is not exact in binary
                    LOG_FLOOR_DB
                } else {
                    20.0 * (m + LOG_FLOOR).log10()
                }
            }
        }
    }
}

/// `|c|`, `|c|^2` or `20 log10(|c| + 1e-12)` elementwise.
pub fn magnitude(matrix: &CoefficientMatrix, mode: MagnitudeMode) -> RealMatrix {
    let data = matrix.values().iter().map(|&c| mode.apply(c)).collect();
    RealMatrix::new(matrix.rows(), matrix.cols(), data).expect("same shape")
}

/// Grayscale image, row-major, row 0 at the top and holding the highest
/// frequency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalogramImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

/// Min-max maps `matrix` onto 0..=255, rounding half up.
///
/// Input rows are in ascending-scale order, i.e. descending frequency, as
/// produced by the transforms and by [`crate::dwt::dwt_scalogram`]. With
/// `flip_vertical` set (the usual choice) high frequencies land at the top
/// and scale grows downwards, low frequencies at the bottom. Without it the
/// raw row order is drawn bottom-up, so the top image row is the last matrix
/// row. A constant matrix renders black. Non-finite entries render as 0.
pub fn render(matrix: &RealMatrix, flip_vertical: bool) -> ScalogramImage {
    let finite = matrix.data.iter().copied().filter(|v| v.is_finite());
    let (lo, hi) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    let span = hi - lo;
    let to_pixel = |v: f64| -> u8 {
        if span.is_nan() || span <= 0.0 || !v.is_finite() {
            0
        } else {
            ((v - lo) / span * 255.0 + 0.5).floor().clamp(0.0, 255.0) as u8
        }
    };
    let mut pixels = Vec::with_capacity(matrix.data.len());
    for i in 0..matrix.rows {
        let r = if flip_vertical {
            i
        } else {
            matrix.rows - 1 - i
        };
        pixels.extend(matrix.row(r).iter().map(|&v| to_pixel(v)));
    }
    ScalogramImage {
        width: matrix.cols,
        height: matrix.rows,
        pixels,
    }
}

/// Binary PGM (`P5`, maxval 255).
pub fn encode_pgm(image: &ScalogramImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", image.width, image.height).into_bytes();
    out.extend_from_slice(&image.pixels);
    out
}

pub fn write_pgm(image: &ScalogramImage, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &encode_pgm(image))
}

/// Comma-separated rows, nine significant digits, `\n` line endings.
pub fn encode_csv(matrix: &RealMatrix) -> String {
    let mut out = String::with_capacity(matrix.data.len() * 16);
    for r in 0..matrix.rows {
        let line: Vec<String> = matrix.row(r).iter().map(|v| format!("{v:.8e}")).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn write_csv(matrix: &RealMatrix, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), encode_csv(matrix).as_bytes())
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(bytes).map_err(|e| Error::io(path, e))
}

/// Serializes a coefficient matrix. Coefficients are stored as `f32` pairs.
pub fn encode_matrix(matrix: &CoefficientMatrix) -> Result<Vec<u8>> {
    let to_u32 = |v: usize, what: &str| {
        u32::try_from(v).map_err(|_| Error::InvalidMatrix(format!("{what} {v} exceeds u32")))
    };
    let rows = to_u32(matrix.rows(), "rows")?;
    let cols = to_u32(matrix.cols(), "cols")?;
    let hop = to_u32(matrix.hop(), "hop")?;
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * matrix.rows() + 8 * matrix.values().len());
    out.extend_from_slice(MATRIX_MAGIC);
    out.extend_from_slice(&rows.to_le_bytes());
    out.extend_from_slice(&cols.to_le_bytes());
    out.extend_from_slice(&hop.to_le_bytes());
    out.extend_from_slice(&matrix.source_rate().to_le_bytes());
    for a in matrix.scale_grid().scales() {
        out.extend_from_slice(&a.to_le_bytes());
    }
    for c in matrix.values() {
        out.extend_from_slice(&(c.re as f32).to_le_bytes());
        out.extend_from_slice(&(c.im as f32).to_le_bytes());
    }
    Ok(out)
}

pub fn decode_matrix(bytes: &[u8]) -> Result<CoefficientMatrix> {
    let malformed = |msg: &str| Error::MalformedHeader(msg.to_string());
    if bytes.len() < HEADER_LEN {
        return Err(malformed("file shorter than the fixed header"));
    }
    if &bytes[0..4] != MATRIX_MAGIC {
        return Err(malformed("bad magic, expected SCG1"));
    }
    let u32_at = |i: usize| u32::from_le_bytes(bytes[i..i + 4].try_into().unwrap()) as usize;
    let f64_at = |i: usize| f64::from_le_bytes(bytes[i..i + 8].try_into().unwrap());
    let rows = u32_at(4);
    let cols = u32_at(8);
    let hop = u32_at(12);
    let source_rate = f64_at(16);
    if rows == 0 {
        return Err(malformed("zero rows"));
    }
    if hop == 0 {
        return Err(malformed("zero hop"));
    }
    let scales_end = HEADER_LEN + 8 * rows;
    if bytes.len() < scales_end {
        return Err(malformed("scale table truncated"));
    }
    let scales = (0..rows).map(|r| f64_at(HEADER_LEN + 8 * r)).collect();
    let grid = ScaleGrid::new(scales).map_err(|e| Error::MalformedHeader(e.to_string()))?;

    let expected = rows
        .checked_mul(cols)
        .and_then(|n| n.checked_mul(8))
        .ok_or_else(|| malformed("matrix dimensions overflow"))?;
    let found = bytes.len() - scales_end;
    if found < expected {
        return Err(Error::TruncatedPayload { expected, found });
    }
    if found > expected {
        return Err(malformed("trailing bytes after payload"));
    }
    let values = bytes[scales_end..]
        .chunks_exact(8)
        .map(|p| {
            let re = f32::from_le_bytes(p[0..4].try_into().unwrap());
            let im = f32::from_le_bytes(p[4..8].try_into().unwrap());
            Complex64::new(re as f64, im as f64)
        })
        .collect();
    CoefficientMatrix::new(values, cols, hop, source_rate, grid)
        .map_err(|e| Error::MalformedHeader(e.to_string()))
}

pub fn write_matrix_bin(matrix: &CoefficientMatrix, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &encode_matrix(matrix)?)
}

pub fn read_matrix_bin(path: impl AsRef<Path>) -> Result<CoefficientMatrix> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_matrix(&bytes)
}

use num_complex::Complex64;

use super::grid::ScaleGrid;
use crate::error::{Error, Result};

/// Complex wavelet coefficients, one row per scale (ascending) and one column
/// per evaluated translation. Column `k` sits at input sample `k * hop`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMatrix {
    values: Vec<Complex64>,
    rows: usize,
    cols: usize,
    hop: usize,
    source_rate: f64,
    scale_grid: ScaleGrid,
}

impl CoefficientMatrix {
    pub fn new(
        values: Vec<Complex64>,
        cols: usize,
        hop: usize,
        source_rate: f64,
        scale_grid: ScaleGrid,
    ) -> Result<Self> {
        let rows = scale_grid.count();
        if hop == 0 {
            return Err(Error::InvalidHop(0));
        }
        if values.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "{} values for a {rows}x{cols} matrix",
                values.len()
            )));
        }
        if !(source_rate.is_finite() && source_rate > 0.0) {
            return Err(Error::InvalidMatrix(format!("source rate {source_rate}")));
        }
        Ok(Self {
            values,
            rows,
            cols,
            hop,
            source_rate,
            scale_grid,
        })
    }

    /// Concatenates equally long rows.
    pub(crate) fn from_rows(
        rows: Vec<Vec<Complex64>>,
        cols: usize,
        hop: usize,
        source_rate: f64,
        scale_grid: ScaleGrid,
    ) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        let values = rows.into_iter().flatten().collect();
        Self::new(values, cols, hop, source_rate, scale_grid)
            .expect("transform produced an inconsistent matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn hop(&self) -> usize {
        self.hop
    }

    pub fn source_rate(&self) -> f64 {
        self.source_rate
    }

    pub fn scale_grid(&self) -> &ScaleGrid {
        &self.scale_grid
    }

    /// Row-major coefficient storage.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.values[r * self.cols..(r + 1) * self.cols]
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.values[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// Input-sample position of column `c`.
    pub fn translation(&self, c: usize) -> usize {
        c * self.hop
    }

    pub(crate) fn set_hop(&mut self, hop: usize) {
        self.hop = hop;
    }

    pub(crate) fn set_source_rate(&mut self, rate: f64) {
        self.source_rate = rate;
    }
}

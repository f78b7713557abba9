//! Detection metrics.

use crate::error::{Error, Result};
use crate::wavelet::CoefficientMatrix;

/// Anomaly scores with binary labels (`true` = anomalous).
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledScores {
    scores: Vec<f64>,
    labels: Vec<bool>,
}

impl LabeledScores {
    pub fn new(scores: Vec<f64>, labels: Vec<bool>) -> Result<Self> {
        if scores.len() != labels.len() {
            return Err(Error::InvalidScores(format!(
                "{} scores but {} labels",
                scores.len(),
                labels.len()
            )));
        }
        if scores.iter().any(|s| s.is_nan()) {
            return Err(Error::InvalidScores("NaN score".into()));
        }
        Ok(Self { scores, labels })
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }
}

/// Area under the ROC curve via the Mann-Whitney statistic: the probability
/// that a random positive outscores a random negative, ties counting half.
///
/// Computed with mid-ranks in doubled integer arithmetic, so the result is
/// the exact ratio `(2 * wins + ties) / (2 * P * N)` rounded once.
pub fn auc_roc(data: &LabeledScores) -> Result<f64> {
    let positives = data.labels.iter().filter(|&&l| l).count() as u64;
    let negatives = data.labels.len() as u64 - positives;
    if positives == 0 || negatives == 0 {
        return Err(Error::DegenerateLabels);
    }
    let mut order: Vec<usize> = (0..data.scores.len()).collect();
    order.sort_by(|&a, &b| data.scores[a].total_cmp(&data.scores[b]));

    // sum over positives of twice their 1-based mid-rank
    let mut doubled_rank_sum: u64 = 0;
    let mut start = 0;
    while start < order.len() {
        let value = data.scores[order[start]];
        let mut end = start + 1;
        while end < order.len() && data.scores[order[end]] == value {
            end += 1;
        }
        // ranks start+1 ..= end, mid-rank doubled = start + 1 + end
        let doubled_mid = (start + 1 + end) as u64;
        let tied_positives = order[start..end]
            .iter()
            .filter(|&&i| data.labels[i])
            .count() as u64;
        doubled_rank_sum += doubled_mid * tied_positives;
        start = end;
    }
    let doubled_u = doubled_rank_sum - positives * (positives + 1);
    Ok(doubled_u as f64 / (2 * positives * negatives) as f64)
}

/// Mean of `|c|^2` over the matrix.
pub fn energy_score(matrix: &CoefficientMatrix) -> f64 {
    let values = matrix.values();
    if values.is_empty() {
        return 0.0;
    }
    values.iter().map(|c| c.norm_sqr()).sum::<f64>() / values.len() as f64
}

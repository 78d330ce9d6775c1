//! Dataset validation and the rank → select pipeline.

use std::fmt;

use ndarray::Array2;

use crate::error::{FsError, Result};
use crate::types::{
    DataMatrix, Direction, FeatureRanking, FeatureScores, FeatureSubset, LabelVector,
    MethodDescriptor,
};

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NonFinite { row: usize, col: usize },
    TooFewSamples(usize),
    NoFeatures,
    LabelLengthMismatch { labels: usize, samples: usize },
    SingleClass,
    MissingClass(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonFinite { row, col } => write!(f, "non-finite entry at ({row},{col})"),
            Violation::TooFewSamples(t) => write!(f, "need at least 2 samples, got {t}"),
            Violation::NoFeatures => write!(f, "need at least 1 feature"),
            Violation::LabelLengthMismatch { labels, samples } => {
                write!(f, "{labels} labels for {samples} samples")
            }
            Violation::SingleClass => write!(f, "only one class present"),
            Violation::MissingClass(c) => write!(f, "class {c} has no samples"),
        }
    }
}

/// List of invariant violations; empty when the dataset is valid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msgs: Vec<String> = self.violations.iter().map(Violation::to_string).collect();
        f.write_str(&msgs.join("; "))
    }
}

/// Checks the `DataMatrix` and (optional) `LabelVector` invariants. Never fails.
pub fn validate_dataset(data: &DataMatrix, labels: Option<&LabelVector>) -> ValidationReport {
    let mut violations = Vec::new();
    for ((row, col), v) in data.values().indexed_iter() {
        if !v.is_finite() {
            violations.push(Violation::NonFinite { row, col });
        }
    }
    if data.n_samples() < 2 {
        violations.push(Violation::TooFewSamples(data.n_samples()));
    }
    if data.n_features() < 1 {
        violations.push(Violation::NoFeatures);
    }
    if let Some(labels) = labels {
        if labels.len() != data.n_samples() {
            violations.push(Violation::LabelLengthMismatch {
                labels: labels.len(),
                samples: data.n_samples(),
            });
        }
        let counts = labels.class_counts();
        if counts.iter().filter(|&&c| c > 0).count() < 2 {
            violations.push(Violation::SingleClass);
        } else {
            for (c, &count) in counts.iter().enumerate() {
                if count == 0 {
                    violations.push(Violation::MissingClass(c));
                }
            }
        }
    }
    ValidationReport { violations }
}

/// Labels checked for use by a supervised method.
pub(crate) fn require_labels<'a>(
    method: &str,
    data: &DataMatrix,
    labels: Option<&'a LabelVector>,
) -> Result<&'a LabelVector> {
    let labels = labels.ok_or_else(|| FsError::MissingLabels(method.to_string()))?;
    let report = validate_dataset(data, Some(labels));
    if !report.is_valid() {
        return Err(FsError::InvalidData(report.to_string()));
    }
    Ok(labels)
}

pub(crate) fn require_binary<'a>(
    method: &str,
    data: &DataMatrix,
    labels: Option<&'a LabelVector>,
) -> Result<&'a LabelVector> {
    let labels = require_labels(method, data, labels)?;
    if labels.n_classes() != 2 {
        return Err(FsError::NotBinary {
            method: method.to_string(),
            classes: labels.n_classes(),
        });
    }
    Ok(labels)
}

/// Orders features by score (best first); equal scores keep ascending index.
pub fn ranking_from_scores(
    scores: FeatureScores,
    method: MethodDescriptor,
) -> Result<FeatureRanking> {
    let order = order_by_scores(&scores)?;
    Ok(FeatureRanking {
        order,
        scores,
        method,
        seed: None,
    })
}

pub(crate) fn order_by_scores(scores: &FeatureScores) -> Result<Vec<usize>> {
    if let Some(j) = scores.scores.iter().position(|s| s.is_nan()) {
        return Err(FsError::InvalidArgument(format!("score {j} is NaN")));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    let s = &scores.scores;
    // sort_by is stable, so equal scores stay in ascending index order
    match scores.direction {
        Direction::HigherBetter => order.sort_by(|&a, &b| s[b].total_cmp(&s[a])),
        Direction::LowerBetter => order.sort_by(|&a, &b| s[a].total_cmp(&s[b])),
    }
    Ok(order)
}

/// The first `m` ranked features, sorted ascending.
pub fn select_top(ranking: &FeatureRanking, m: usize) -> Result<FeatureSubset> {
    let n = ranking.n_features();
    if m == 0 || m > n {
        return Err(FsError::InvalidArgument(format!(
            "top-m must be in [1, {n}], got {m}"
        )));
    }
    let mut indices = ranking.order[..m].to_vec();
    indices.sort_unstable();
    FeatureSubset::new(indices, n)
}

/// Column-wise z-scoring with population standard deviation. Constant
/// columns become all zeros.
pub fn standardize(data: &DataMatrix) -> DataMatrix {
    let x = data.values();
    let (t, n) = x.dim();
    let mut out = Array2::<f64>::zeros((t, n));
    for j in 0..n {
        let col = x.column(j);
        let first = col[0];
        if col.iter().all(|&v| v == first) {
            continue;
        }
        let mean = col.sum() / t as f64;
        let var = col.iter().map(|&v| (v - mean) * (v - mean)).sum::<f64>() / t as f64;
        let sd = var.sqrt();
        if sd == 0.0 {
            continue;
        }
        for i in 0..t {
            out[[i, j]] = (col[i] - mean) / sd;
        }
    }
    let mut std = DataMatrix::from_array(out);
    if let Some(names) = data.feature_names() {
        std = std
            .with_feature_names(names.to_vec())
            .expect("same column count");
    }
    std
}

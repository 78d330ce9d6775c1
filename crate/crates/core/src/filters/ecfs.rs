//! Eigenvector centrality on a feature-affinity graph built from Fisher and
//! mutual-information relevance.

use ndarray::Array2;

use super::fisher::fisher_score;
use super::mutinf::mutinf_fs;
use crate::error::{FsError, Result};
use crate::numerics::eigen::power_iteration;
use crate::numerics::stats::rescale_unit;
use crate::pipeline::require_labels;
use crate::types::{DataMatrix, FeatureScores, LabelVector};

const POWER_TOL: f64 = 1e-13;
const POWER_MAX_ITER: usize = 100_000;

/// `A = α v vᵀ + (1 - α) m mᵀ`, with `v` and `m` the Fisher and MI scores
/// min-max rescaled to `[0, 1]`.
pub fn ecfs_adjacency(
    data: &DataMatrix,
    labels: &LabelVector,
    alpha: f64,
    bins: Option<usize>,
) -> Result<Array2<f64>> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(FsError::InvalidArgument(format!(
            "alpha must be in [0, 1], got {alpha}"
        )));
    }
    let v = rescale_unit(&fisher_score(data, labels)?.scores);
    let m = rescale_unit(&mutinf_fs(data, labels, bins)?.scores);
    let n = v.len();
    Ok(Array2::from_shape_fn((n, n), |(i, j)| {
        alpha * (v[i] * v[j]) + (1.0 - alpha) * (m[i] * m[j])
    }))
}

/// EC-FS scores: the principal eigenvector of [`ecfs_adjacency`], unit norm
/// and nonnegative.
pub fn ec_fs(
    data: &DataMatrix,
    labels: &LabelVector,
    alpha: f64,
    bins: Option<usize>,
) -> Result<FeatureScores> {
    let labels = require_labels("ecfs", data, Some(labels))?;
    if data.n_features() < 2 {
        return Err(FsError::InvalidArgument(
            "ecfs needs at least 2 features".into(),
        ));
    }
    let a = ecfs_adjacency(data, labels, alpha, bins)?;
    let pair = power_iteration(a.view(), POWER_TOL, POWER_MAX_ITER)?;
    Ok(FeatureScores::higher(pair.vector))
}

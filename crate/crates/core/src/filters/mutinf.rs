use crate::error::Result;
use crate::numerics::info::{default_bins, discretize, mutual_information};
use crate::pipeline::require_labels;
use crate::types::{DataMatrix, FeatureScores, LabelVector};

/// Mutual information (bits) between each binned feature and the class.
///
/// Features are scored independently. `bins = None` uses
/// [`default_bins`] of the sample count.
pub fn mutinf_fs(
    data: &DataMatrix,
    labels: &LabelVector,
    bins: Option<usize>,
) -> Result<FeatureScores> {
    let labels = require_labels("mutinf", data, Some(labels))?;
    let bins = bins.unwrap_or_else(|| default_bins(data.n_samples()));
    let (codes, _) = discretize(data, bins)?;
    let scores = codes
        .iter()
        .map(|c| mutual_information(c, labels.as_slice()))
        .collect::<Result<Vec<_>>>()?;
    Ok(FeatureScores::higher(scores))
}

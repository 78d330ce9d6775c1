//! Minimum-redundancy maximum-relevance greedy forward selection.

use crate::error::Result;
use crate::methods::Method;
use crate::numerics::info::{default_bins, discretize, mutual_information};
use crate::pipeline::require_labels;
use crate::types::{DataMatrix, FeatureRanking, FeatureScores, LabelVector};

/// Full mRMR ranking with the difference (MID) criterion
/// `I(j; y) - mean_{s ∈ S} I(j; s)`.
///
/// The order is the selection order. The score stored for each feature is
/// its criterion value when it was picked, so scores are not necessarily
/// monotone along the ranking.
pub fn mrmr_rank(
    data: &DataMatrix,
    labels: &LabelVector,
    bins: Option<usize>,
) -> Result<FeatureRanking> {
    let labels = require_labels("mrmr", data, Some(labels))?;
    let bins = bins.unwrap_or_else(|| default_bins(data.n_samples()));
    let n = data.n_features();
    let (codes, _) = discretize(data, bins)?;
    let relevance = codes
        .iter()
        .map(|c| mutual_information(c, labels.as_slice()))
        .collect::<Result<Vec<_>>>()?;

    let mut selected = vec![false; n];
    let mut redundancy = vec![0.0; n];
    let mut order = Vec::with_capacity(n);
    let mut scores = vec![0.0; n];
    for step in 0..n {
        let mut best: Option<(usize, f64)> = None;
        for j in (0..n).filter(|&j| !selected[j]) {
            let crit = if step == 0 {
                relevance[j]
            } else {
                relevance[j] - redundancy[j] / step as f64
            };
            if best.is_none_or(|(_, b)| crit > b) {
                best = Some((j, crit));
            }
        }
        let (pick, crit) = best.expect("unselected feature remains");
        selected[pick] = true;
        order.push(pick);
        scores[pick] = crit;
        for j in (0..n).filter(|&j| !selected[j]) {
            redundancy[j] += mutual_information(&codes[j], &codes[pick])?;
        }
    }

    let descriptor = Method::Mrmr
        .descriptor()
        .with_params([("bins".to_string(), bins.to_string())].into());
    Ok(FeatureRanking {
        order,
        scores: FeatureScores::higher(scores),
        method: descriptor,
        seed: None,
    })
}
